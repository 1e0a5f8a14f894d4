#include "copt/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace copt::oracle {

namespace {

constexpr double kSideTol = 1e-9;

// Visits all k-subsets of {0..n-1} in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& visit) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        visit(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

std::set<std::vector<std::size_t>> brute_force_facets(const std::vector<Vector>& points) {
    if (points.empty()) throw std::invalid_argument("brute_force_facets: no points");
    const std::size_t d = points.front().size();
    const std::size_t n = points.size();
    if (n > 16 || d > 5) throw std::invalid_argument("brute_force_facets: size cap exceeded");

    std::vector<Vector> diffs;
    for (std::size_t i = 1; i < n; ++i) diffs.push_back(subtract(points[i], points[0]));
    if (orthonormalize(diffs, kSideTol).size() < d) {
        throw std::invalid_argument("brute_force_facets: points do not span the space");
    }

    std::set<std::vector<std::size_t>> facets;
    for_each_subset(n, d, [&](const std::vector<std::size_t>& subset) {
        Hyperplane h;
        try {
            std::vector<Vector> sel;
            for (std::size_t i : subset) sel.push_back(points[i]);
            h = hyperplane_through(sel);
        } catch (const std::invalid_argument&) {
            return; // subset affinely degenerate
        }
        std::vector<std::size_t> coplanar;
        bool above = false;
        bool below = false;
        for (std::size_t i = 0; i < n; ++i) {
            double s = h.signed_distance(points[i]);
            if (std::abs(s) <= kSideTol) {
                coplanar.push_back(i);
            } else if (s > 0) {
                above = true;
            } else {
                below = true;
            }
        }
        if (above && below) return;
        facets.insert(std::move(coplanar));
    });
    return facets;
}

McEstimate mc_volume(const Cell& cell, const Box& enclosing_box, Rng& rng, std::size_t n) {
    if (n < 1000) throw std::invalid_argument("mc_volume: need n >= 1000");
    const auto planes = facet_planes(cell);
    const double tol = 1e-12 * enclosing_box.diameter();
    std::size_t hits = 0;
    Vector x(enclosing_box.dim());
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = rng.uniform(enclosing_box.lower[i], enclosing_box.upper[i]);
        }
        if (classify_point(x, planes, tol) != Containment::Outside) ++hits;
    }
    const double box_vol = enclosing_box.volume();
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return McEstimate{p * box_vol, box_vol * std::sqrt(p * (1.0 - p) / static_cast<double>(n))};
}

} // namespace copt::oracle
