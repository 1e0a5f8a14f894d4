#include "copt/division.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace copt {

Division init_division(const Box& box, const Vector& p) {
    Division div;
    div.root = box;
    for (Cell& cell : facet_link(p, box, 0)) {
        div.barycenters.emplace(cell.id, barycenter(cell));
        div.next_id = cell.id + 1;
        div.cells.emplace(cell.id, std::move(cell));
    }
    return div;
}

std::vector<CellId> refine(Division& div, CellId cell_id) {
    auto it = div.cells.find(cell_id);
    if (it == div.cells.end()) {
        throw std::invalid_argument("refine: unknown cell id " + std::to_string(cell_id));
    }
    auto children = facet_link(div.barycenters.at(cell_id), it->second, div.next_id);

    div.cells.erase(it);
    div.barycenters.erase(cell_id);
    div.values.erase(cell_id);

    std::vector<CellId> ids;
    ids.reserve(children.size());
    for (Cell& child : children) {
        ids.push_back(child.id);
        div.barycenters.emplace(child.id, barycenter(child));
        div.next_id = child.id + 1;
        div.cells.emplace(child.id, std::move(child));
    }
    div.history.push_back(RefineEvent{cell_id, ids});
    return ids;
}

DivisionReport check_proper(const Division& div, Rng& rng, std::size_t n_samples) {
    if (n_samples < 1) throw std::invalid_argument("check_proper: need n_samples >= 1");

    const double box_vol = div.root.volume();
    double vol_sum = 0.0;
    for (const auto& [id, cell] : div.cells) vol_sum += cell_volume(cell, box_vol);

    DivisionReport report;
    report.volume_sum_rel_err = std::abs(vol_sum - box_vol) / box_vol;
    report.mc_points = n_samples;

    const double tol = default_contains_tol(div.root);
    struct CellGeom {
        Aabb aabb;
        std::vector<Hyperplane> planes;
    };
    std::vector<CellGeom> geoms;
    geoms.reserve(div.cells.size());
    for (const auto& [id, cell] : div.cells) {
        geoms.push_back(CellGeom{cell_aabb(cell), facet_planes(cell)});
    }

    Vector x(div.root.dim());
    for (std::size_t k = 0; k < n_samples; ++k) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = rng.uniform(div.root.lower[i], div.root.upper[i]);
        }
        std::size_t interior = 0;
        bool covered = false;
        for (const CellGeom& g : geoms) {
            if (!g.aabb.contains(x, tol)) continue;
            Containment c = classify_point(x, g.planes, tol);
            if (c == Containment::Outside) continue;
            covered = true;
            if (c == Containment::Interior && ++interior >= 2) break;
        }
        if (!covered) ++report.uncovered;
        if (interior >= 2) ++report.multiply_covered_interior;
    }
    return report;
}

} // namespace copt
