#include "copt/trace.hpp"

namespace copt {

std::string to_string(RunStatus status) {
    switch (status) {
        case RunStatus::TolReached: return "tol_reached";
        case RunStatus::MaxIters: return "max_iters";
        case RunStatus::SamplesExhausted: return "samples_exhausted";
        case RunStatus::EvalError: return "eval_error";
    }
    return "unknown";
}

} // namespace copt
