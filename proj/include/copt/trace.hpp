#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "copt/geometry.hpp"

namespace copt {

enum class RunStatus { TolReached, MaxIters, SamplesExhausted, EvalError };

std::string to_string(RunStatus status);

// One greedy step. For PDM, selected_cell is the refined cell id and
// n_cells the division size after refinement; for GSM, selected_cell
// is the chosen sample index and n_cells the candidate count at
// selection. Counters are the objective's cumulative totals and
// wall_ms the elapsed time since the run started.
struct StepRecord {
    std::size_t step = 0;
    CellId selected_cell = 0;
    double err = 0.0;
    std::size_t n_cells = 0;
    std::size_t distinct_points = 0;
    std::uint64_t total_evals = 0;
    double wall_ms = 0.0;
};

} // namespace copt
