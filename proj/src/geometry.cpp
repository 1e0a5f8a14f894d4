#include "copt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace copt {

double Box::volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < dim(); ++i) v *= upper[i] - lower[i];
    return v;
}

double Box::diameter() const {
    double s = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) {
        double e = upper[i] - lower[i];
        s += e * e;
    }
    return std::sqrt(s);
}

Vector Box::center() const {
    Vector c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = 0.5 * (lower[i] + upper[i]);
    return c;
}

bool Box::contains(const Vector& p, double tol) const {
    if (p.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (p[i] < lower[i] - tol || p[i] > upper[i] + tol) return false;
    }
    return true;
}

void validate_box(const Box& box) {
    if (box.lower.empty() || box.lower.size() != box.upper.size()) {
        throw std::invalid_argument("box: lower/upper size mismatch");
    }
    check_finite(box.lower, "box.lower");
    check_finite(box.upper, "box.upper");
    for (std::size_t i = 0; i < box.dim(); ++i) {
        if (!(box.lower[i] < box.upper[i])) {
            throw std::invalid_argument("box: requires lower < upper on axis " + std::to_string(i));
        }
    }
}

std::vector<BoxFace> box_facets(const Box& box) {
    std::vector<BoxFace> out;
    out.reserve(2 * box.dim());
    for (std::size_t axis = 0; axis < box.dim(); ++axis) {
        out.push_back(BoxFace{box, {{axis, Bound::Lower}}});
        out.push_back(BoxFace{box, {{axis, Bound::Upper}}});
    }
    return out;
}

namespace {

std::vector<std::size_t> free_axes(const BoxFace& face) {
    std::vector<std::size_t> axes;
    axes.reserve(face.dim());
    for (std::size_t axis = 0; axis < face.box.dim(); ++axis) {
        if (!face.fixed.count(axis)) axes.push_back(axis);
    }
    return axes;
}

} // namespace

std::vector<BoxFace> face_subfacets(const BoxFace& face) {
    if (face.depth() == face.box.dim()) {
        throw std::invalid_argument("face_subfacets: a vertex has no facets");
    }
    std::vector<BoxFace> out;
    out.reserve(2 * face.dim());
    for (std::size_t axis : free_axes(face)) {
        for (Bound b : {Bound::Lower, Bound::Upper}) {
            BoxFace child = face;
            child.fixed.emplace(axis, b);
            out.push_back(std::move(child));
        }
    }
    return out;
}

std::vector<Vector> face_vertices(const BoxFace& face) {
    const auto axes = free_axes(face);
    const std::size_t k = axes.size();
    Vector base(face.box.dim());
    for (std::size_t axis = 0; axis < face.box.dim(); ++axis) {
        auto it = face.fixed.find(axis);
        if (it != face.fixed.end()) {
            base[axis] = it->second == Bound::Lower ? face.box.lower[axis] : face.box.upper[axis];
        }
    }
    std::vector<Vector> out;
    out.reserve(std::size_t{1} << k);
    for (std::size_t code = 0; code < (std::size_t{1} << k); ++code) {
        Vector v = base;
        for (std::size_t j = 0; j < k; ++j) {
            bool upper = (code >> (k - 1 - j)) & 1u;
            v[axes[j]] = upper ? face.box.upper[axes[j]] : face.box.lower[axes[j]];
        }
        out.push_back(std::move(v));
    }
    return out;
}

double face_measure(const BoxFace& face) {
    double m = 1.0;
    for (std::size_t axis : free_axes(face)) m *= face.box.upper[axis] - face.box.lower[axis];
    return m;
}

std::size_t Cell::dim() const {
    if (const auto* s = std::get_if<Simplex>(&shape)) return s->vertices.front().size();
    return std::get<BoundaryPolytope>(shape).base.box.dim();
}

std::vector<Vector> Cell::vertex_list() const {
    if (const auto* s = std::get_if<Simplex>(&shape)) return s->vertices;
    const auto& bp = std::get<BoundaryPolytope>(shape);
    std::vector<Vector> out = bp.apexes;
    for (Vector& v : face_vertices(bp.base)) out.push_back(std::move(v));
    return out;
}

Cell make_simplex_cell(CellId id, std::vector<Vector> vertices) {
    if (vertices.empty() || vertices.size() != vertices.front().size() + 1) {
        throw std::invalid_argument("simplex: needs exactly d+1 vertices");
    }
    return Cell{id, Simplex{std::move(vertices)}};
}

Cell make_cell(CellId id, std::vector<Vector> apexes, BoxFace base) {
    const std::size_t d = base.box.dim();
    const std::size_t n = base.depth();
    if (apexes.size() != n || n < 1) {
        throw std::invalid_argument("cell: apex count must equal base depth >= 1");
    }
    const std::size_t corners = std::size_t{1} << (d - n);
    if (apexes.size() + corners == d + 1) {
        std::vector<Vector> vertices = std::move(apexes);
        for (Vector& v : face_vertices(base)) vertices.push_back(std::move(v));
        return make_simplex_cell(id, std::move(vertices));
    }
    return Cell{id, BoundaryPolytope{std::move(apexes), std::move(base)}};
}

std::vector<FacetRef> cell_facets(const Cell& cell) {
    std::vector<FacetRef> out;
    if (const auto* s = std::get_if<Simplex>(&cell.shape)) {
        const auto& verts = s->vertices;
        out.reserve(verts.size());
        for (std::size_t j = 0; j < verts.size(); ++j) {
            FacetRef f{FacetKind::DropVertex, j, std::nullopt, {}, {}};
            f.vertices.reserve(verts.size() - 1);
            for (std::size_t i = 0; i < verts.size(); ++i) {
                if (i != j) f.vertices.push_back(verts[i]);
            }
            out.push_back(std::move(f));
        }
        return out;
    }

    const auto& bp = std::get<BoundaryPolytope>(cell.shape);
    const std::size_t n = bp.apexes.size();
    auto base_corners = face_vertices(bp.base);
    out.reserve(n + 2 * bp.base.dim());

    for (std::size_t i = 0; i < n; ++i) {
        FacetRef f{n == 1 ? FacetKind::BaseFace : FacetKind::DropApex, i, bp.base, {}, {}};
        for (std::size_t k = 0; k < n; ++k) {
            if (k != i) f.apexes.push_back(bp.apexes[k]);
        }
        f.vertices = f.apexes;
        for (const Vector& v : base_corners) f.vertices.push_back(v);
        out.push_back(std::move(f));
    }

    auto subs = face_subfacets(bp.base);
    for (std::size_t g = 0; g < subs.size(); ++g) {
        FacetRef f{FacetKind::SubFace, g, subs[g], bp.apexes, {}};
        f.vertices = bp.apexes;
        for (Vector& v : face_vertices(subs[g])) f.vertices.push_back(std::move(v));
        out.push_back(std::move(f));
    }
    return out;
}

Vector barycenter(const Cell& cell) {
    const auto verts = cell.vertex_list();
    Vector b(verts.front().size(), 0.0);
    for (const Vector& v : verts) axpy(b, 1.0, v);
    for (double& x : b) x /= static_cast<double>(verts.size());
    return b;
}

Aabb cell_aabb(const Cell& cell) {
    const auto verts = cell.vertex_list();
    Aabb box{verts.front(), verts.front()};
    for (const Vector& v : verts) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            box.lower[i] = std::min(box.lower[i], v[i]);
            box.upper[i] = std::max(box.upper[i], v[i]);
        }
    }
    return box;
}

bool Aabb::contains(const Vector& p, double tol) const {
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < lower[i] - tol || p[i] > upper[i] + tol) return false;
    }
    return true;
}

double cell_volume(const Cell& cell, double reference_volume) {
    double vol = 0.0;
    if (const auto* s = std::get_if<Simplex>(&cell.shape)) {
        vol = simplex_volume(s->vertices);
    } else {
        const auto& bp = std::get<BoundaryPolytope>(cell.shape);
        vol = face_measure(bp.base);
        std::vector<Vector> hull_points = face_vertices(bp.base);
        std::size_t k = bp.base.dim();
        for (const Vector& apex : bp.apexes) {
            ++k;
            vol *= dist_to_affine(apex, hull_points) / static_cast<double>(k);
            hull_points.push_back(apex);
        }
    }

    if (reference_volume <= 0.0) {
        const Aabb box = cell_aabb(cell);
        reference_volume = 1.0;
        for (std::size_t i = 0; i < box.lower.size(); ++i) {
            reference_volume *= box.upper[i] - box.lower[i];
        }
    }
    if (!(vol > 1e-14 * reference_volume)) {
        throw std::runtime_error("cell_volume: degenerate cell " + std::to_string(cell.id));
    }
    return vol;
}

std::vector<Hyperplane> facet_planes(const Cell& cell) {
    const Vector b = barycenter(cell);
    std::vector<Hyperplane> planes;
    for (const FacetRef& f : cell_facets(cell)) {
        Hyperplane h = hyperplane_through(f.vertices);
        if (h.signed_distance(b) > 0) {
            for (double& c : h.normal) c = -c;
            h.offset = -h.offset;
        }
        planes.push_back(std::move(h));
    }
    return planes;
}

Containment classify_point(const Vector& point, const std::vector<Hyperplane>& planes, double tol) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const Hyperplane& h : planes) {
        worst = std::max(worst, h.signed_distance(point));
        if (worst > tol) return Containment::Outside;
    }
    return worst < -tol ? Containment::Interior : Containment::Boundary;
}

Containment contains(const Cell& cell, const Vector& point, double tol) {
    return classify_point(point, facet_planes(cell), tol);
}

double default_contains_tol(const Box& box) { return 1e-9 * box.diameter(); }

std::vector<Cell> facet_link(const Vector& p, const Box& box, CellId first_id) {
    validate_box(box);
    for (std::size_t i = 0; i < box.dim(); ++i) {
        double margin = 1e-12 * (box.upper[i] - box.lower[i]);
        if (p[i] <= box.lower[i] + margin || p[i] >= box.upper[i] - margin) {
            throw std::invalid_argument("facet_link: point not strictly interior to box");
        }
    }
    std::vector<Cell> children;
    for (BoxFace& f : box_facets(box)) {
        children.push_back(make_cell(first_id++, {p}, std::move(f)));
    }
    return children;
}

std::vector<Cell> facet_link(const Vector& p, const Cell& cell, CellId first_id) {
    const Aabb box = cell_aabb(cell);
    double diag = 0.0;
    for (std::size_t i = 0; i < box.lower.size(); ++i) {
        double e = box.upper[i] - box.lower[i];
        diag += e * e;
    }
    if (contains(cell, p, 1e-12 * std::sqrt(diag)) != Containment::Interior) {
        throw std::invalid_argument("facet_link: point not strictly interior to cell");
    }

    std::vector<Cell> children;
    for (FacetRef& f : cell_facets(cell)) {
        if (f.kind == FacetKind::DropVertex) {
            std::vector<Vector> verts = std::move(f.vertices);
            verts.push_back(p);
            children.push_back(make_simplex_cell(first_id++, std::move(verts)));
        } else {
            std::vector<Vector> apexes = std::move(f.apexes);
            apexes.push_back(p);
            children.push_back(make_cell(first_id++, std::move(apexes), std::move(*f.face)));
        }
    }
    return children;
}

} // namespace copt
