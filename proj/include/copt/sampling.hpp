#pragma once

#include <cstddef>
#include <vector>

#include "copt/geometry.hpp"
#include "copt/rng.hpp"

namespace copt {

// count i.i.d. uniform points, drawn point-major (all axes of point
// 0, then point 1, ...).
std::vector<Vector> uniform_sample(const Box& box, std::size_t count, Rng& rng);

// Latin hypercube: per axis a random permutation of the count strata
// (drawn first, axis order) plus one uniform jitter per coordinate
// (drawn point-major), so each axis has exactly one point per
// stratum.
std::vector<Vector> lhs_sample(const Box& box, std::size_t count, Rng& rng);

} // namespace copt
