#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "copt/division.hpp"
#include "copt/objectives.hpp"
#include "copt/trace.hpp"

namespace copt {

struct PdmConfig {
    double tol = 1e-6;
    std::size_t max_iters = 1000;
    std::optional<Vector> initial_point; // default: box center
    bool reevaluate_all = true;
};

struct PdmResult {
    Configuration gamma;
    Division division;
    std::vector<StepRecord> trace;
    RunStatus status = RunStatus::MaxIters;
    std::string error;
};

// argmax of values over the division's cells; ties break to the
// smallest cell id. values must be total over cells.
CellId select_max(const Division& div, const std::map<CellId, double>& values);

// The polytope division method. gamma starts as {p}; each step
// evaluates J at every cell barycenter, selects the argmax cell D,
// records err = J(b_D, gamma), appends b_D, and facet-links D. The
// loop exits once the recorded err falls to tol (the triggering point
// is still appended), on max_iters, or on an objective failure (which
// returns the partial trace with status EvalError).
PdmResult pdm_run(Objective& objective, const Box& box, const PdmConfig& cfg,
                  std::size_t n_threads = 1);

} // namespace copt
