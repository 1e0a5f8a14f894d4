#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "copt/geometry.hpp"
#include "copt/rng.hpp"

namespace copt::oracle {

// Brute-force facet enumeration for small vertex sets (<= 16 points,
// d <= 5): every d-subset spanning a hyperplane is extended to the
// maximal coplanar subset, which is a facet iff all remaining points
// lie strictly on one side (tol 1e-9, absolute: fixtures are
// unit-scale). Facets come back deduplicated as sorted index sets.
std::set<std::vector<std::size_t>> brute_force_facets(const std::vector<Vector>& points);

struct McEstimate {
    double estimate;
    double stderr_;
};

// Hit-fraction Monte-Carlo volume with binomial standard error.
McEstimate mc_volume(const Cell& cell, const Box& enclosing_box, Rng& rng, std::size_t n);

} // namespace copt::oracle
