#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "copt/gsm.hpp"
#include "copt/objectives.hpp"
#include "copt/pdm.hpp"

namespace copt {

inline constexpr const char* kConfigSchema = "copt-config-1";

struct ObjectiveSpec {
    std::string id;          // fill | rb-thermal | rb-gaussian | eim-gaussian
    std::size_t grid_n = 0;  // 0 = objective default (thermal 33, gaussian 41)
};

// Dimension sweep settings for the compare command. The box template
// replicates scalar bounds to each swept dimension; sample_size 0
// means |S| = 2^d.
struct CompareSpec {
    std::vector<std::size_t> dims;
    std::vector<std::string> methods;
    double box_lower = 0.0;
    double box_upper = 1.0;
};

struct ExperimentConfig {
    std::string method = "pdm"; // pdm | gsm
    ObjectiveSpec objective;
    Box box;
    double tol = 1e-6;
    std::size_t max_iters = 1000;
    std::uint64_t seed = 0;
    Sampler sampler = Sampler::Random;
    std::size_t sample_size = 16;
    bool svg_steps = false;
    std::optional<CompareSpec> compare;
};

// Parses and validates; errors name the offending JSON field.
ExperimentConfig parse_config(const nlohmann::json& j);

// The fully resolved config (defaults applied) that gets embedded in
// every artifact. For sweeps, `dim` resolves the per-dimension box
// and sample size.
nlohmann::json resolved_config_json(const ExperimentConfig& cfg);

std::unique_ptr<Objective> make_objective(const ObjectiveSpec& spec, const Box& box);

struct RunOutcome {
    RunStatus status = RunStatus::MaxIters;
    std::string error;
    std::size_t gamma_size = 0;
    std::size_t distinct_points = 0;
    std::uint64_t total_evals = 0;
    std::size_t final_n_basis = 0;
};

// Executes the configured run and writes trace.csv, summary.json and,
// depending on method/objective, division.json, eim_basis.json, and
// per-step SVGs into out_dir (created if missing).
RunOutcome run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                          std::size_t n_threads);

// Runs every (dim, method) pair of the sweep and writes compare.csv;
// with verify_n > 0 also writes verification.csv with the max J over
// a fixed fresh sample of size verify_n for every gamma prefix.
// Returns the number of failed rows (the sweep continues past them).
std::size_t compare_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                               std::size_t n_threads, std::size_t verify_n);

} // namespace copt
