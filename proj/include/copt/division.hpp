#pragma once

#include <map>
#include <vector>

#include "copt/geometry.hpp"
#include "copt/rng.hpp"

namespace copt {

struct RefineEvent {
    CellId parent;
    std::vector<CellId> children;
};

// A proper polytope division of the root box. Iteration order over
// `cells` is ascending id, which fixes every tie-break downstream.
// `values` keeps the last J evaluation per cell; staleness semantics
// belong to the driver. Ids are never reused.
struct Division {
    Box root;
    std::map<CellId, Cell> cells;
    std::map<CellId, Vector> barycenters;
    std::map<CellId, double> values;
    CellId next_id = 0;
    std::vector<RefineEvent> history;
};

struct DivisionReport {
    double volume_sum_rel_err = 0.0;
    std::size_t mc_points = 0;
    std::size_t uncovered = 0;
    std::size_t multiply_covered_interior = 0;
};

// FL(p, root): the 2d initial pyramids. p must be strictly interior.
Division init_division(const Box& box, const Vector& p);

// Replaces the cell by facet_link(barycenter, cell); children get
// fresh contiguous ids and eagerly computed barycenters.
std::vector<CellId> refine(Division& div, CellId cell_id);

// Volume-sum check plus Monte-Carlo coverage/disjointness counts at
// tol = 1e-9 x root diameter.
DivisionReport check_proper(const Division& div, Rng& rng, std::size_t n_samples);

} // namespace copt
