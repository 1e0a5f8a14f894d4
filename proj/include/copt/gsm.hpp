#pragma once

#include <string>
#include <vector>

#include "copt/objectives.hpp"
#include "copt/sampling.hpp"
#include "copt/trace.hpp"

namespace copt {

enum class Sampler { Random, Lhs };

std::string to_string(Sampler sampler);

struct GsmConfig {
    Sampler sampler = Sampler::Random;
    std::size_t sample_size = 16;
    double tol = 1e-6;
    std::size_t max_iters = 1000;
    std::uint64_t seed = 0;
};

struct GsmResult {
    Configuration gamma;
    std::vector<Vector> samples;
    std::vector<StepRecord> trace;
    RunStatus status = RunStatus::MaxIters;
    std::string error;
};

// Greedy sampling over a sample set S drawn once from the configured
// sampler. Each step evaluates J over S minus the already selected
// points, appends the argmax (ties to the smallest sample index), and
// exits once the recorded err falls to tol, when S is exhausted, on
// max_iters, or on objective failure.
GsmResult gsm_run(Objective& objective, const Box& box, const GsmConfig& cfg,
                  std::size_t n_threads = 1);

// Same loop over a caller-supplied sample set (test hook).
GsmResult gsm_run_with_samples(Objective& objective, std::vector<Vector> samples,
                               const GsmConfig& cfg, std::size_t n_threads = 1);

} // namespace copt
