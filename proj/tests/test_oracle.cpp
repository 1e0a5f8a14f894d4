#include "doctest.h"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "copt/oracle.hpp"
#include "test_util.hpp"

using namespace copt;
using copt::testutil::unit_box;

namespace {

// Facet vertex sets from cell_facets, as sets of coordinate tuples.
std::set<std::set<Vector>> facet_vertex_sets(const Cell& cell) {
    std::set<std::set<Vector>> out;
    for (const auto& f : cell_facets(cell)) {
        out.insert(std::set<Vector>(f.vertices.begin(), f.vertices.end()));
    }
    return out;
}

// Same sets derived from the brute-force oracle over the cell's vertices.
std::set<std::set<Vector>> oracle_vertex_sets(const Cell& cell) {
    const auto verts = cell.vertex_list();
    std::set<std::set<Vector>> out;
    for (const auto& idx : oracle::brute_force_facets(verts)) {
        std::set<Vector> facet;
        for (std::size_t i : idx) facet.insert(verts[i]);
        out.insert(std::move(facet));
    }
    return out;
}

} // namespace

TEST_CASE("brute-force facets of canonical shapes") {
    std::vector<Vector> square{{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}};
    auto sq = oracle::brute_force_facets(square);
    std::set<std::vector<std::size_t>> expected_sq{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    CHECK(sq == expected_sq);

    std::vector<Vector> tet{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    auto tf = oracle::brute_force_facets(tet);
    std::set<std::vector<std::size_t>> expected_tet{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    CHECK(tf == expected_tet);

    // Pyramid: apex over the unit-square base.
    std::vector<Vector> pyr{
        {0.5, 0.5, 0.5},
        {0.0, 0.0, 0.0},
        {0.0, 1.0, 0.0},
        {1.0, 0.0, 0.0},
        {1.0, 1.0, 0.0}};
    auto pf = oracle::brute_force_facets(pyr);
    REQUIRE(pf.size() == 5);
    CHECK(pf.count({1, 2, 3, 4}) == 1); // the base
    std::size_t triangles = 0;
    for (const auto& f : pf) {
        if (f.size() == 3) {
            ++triangles;
            CHECK(f[0] == 0); // every side facet passes through the apex
        }
    }
    CHECK(triangles == 4);

    std::vector<Vector> degenerate{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
    CHECK_THROWS_AS((void)oracle::brute_force_facets(degenerate), std::invalid_argument);

    std::vector<Vector> too_many(17, Vector{0.0, 0.0});
    CHECK_THROWS_AS((void)oracle::brute_force_facets(too_many), std::invalid_argument);
}

TEST_CASE("oracle agrees with cell_facets on refinement cells") {
    Rng rng(31);
    for (std::size_t d = 2; d <= 4; ++d) {
        Division div = copt::testutil::random_refined_division(d, 15, rng);
        for (const auto& [id, cell] : div.cells) {
            CAPTURE(d);
            CAPTURE(id);
            CHECK(facet_vertex_sets(cell) == oracle_vertex_sets(cell));
        }
    }
}

TEST_CASE("monte-carlo volume") {
    Rng rng(11);
    const Box square = unit_box(2);
    Cell tri = make_simplex_cell(0, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
    auto [est, se] = oracle::mc_volume(tri, square, rng, 100000);
    CHECK(std::abs(est - 0.5) <= 3.0 * se);

    // Cell covering the whole sampling box: every draw hits.
    Cell big = make_simplex_cell(1, {{-0.5, -0.5}, {2.5, -0.5}, {-0.5, 2.5}});
    auto [est_full, se_full] = oracle::mc_volume(big, square, rng, 2000);
    CHECK(est_full == doctest::Approx(square.volume()));
    CHECK(se_full == 0.0);

    // Random d=4 boundary polytope against exact pyramid volumes.
    Rng gen(17);
    Division div = copt::testutil::random_refined_division(4, 10, gen);
    std::size_t checked = 0;
    for (const auto& [id, cell] : div.cells) {
        if (cell.is_simplex()) continue;
        double exact = cell_volume(cell, div.root.volume());
        if (exact < 0.01) continue; // keep the binomial error informative
        auto [estimate, stderr_] = oracle::mc_volume(cell, div.root, gen, 200000);
        CHECK(std::abs(estimate - exact) <= 4.0 * stderr_);
        if (++checked == 3) break;
    }
    CHECK(checked > 0);

    CHECK_THROWS_AS((void)oracle::mc_volume(tri, square, rng, 10), std::invalid_argument);
}
