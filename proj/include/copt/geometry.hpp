#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "copt/numerics.hpp"

namespace copt {

using CellId = std::uint64_t;

enum class Bound { Lower, Upper };

// Axis-aligned root domain [l_1,u_1] x ... x [l_d,u_d], l_i < u_i.
struct Box {
    Vector lower;
    Vector upper;

    std::size_t dim() const { return lower.size(); }
    double volume() const;
    double diameter() const; // length of the main diagonal
    Vector center() const;
    bool contains(const Vector& p, double tol = 0.0) const;
};

void validate_box(const Box& box);

// A face of the root box obtained by pinning `fixed` axes to a bound.
// depth 0 is the box itself; depth d is a single vertex.
struct BoxFace {
    Box box;
    std::map<std::size_t, Bound> fixed;

    std::size_t depth() const { return fixed.size(); }
    std::size_t dim() const { return box.dim() - fixed.size(); }
};

// The 2d facets of the box, axis ascending, Lower before Upper.
std::vector<BoxFace> box_facets(const Box& box);

// The 2(d-n) facets of a face within its own affine hull, one per
// (free axis, bound) pair, axis ascending, Lower before Upper.
// Throws for a vertex (depth d).
std::vector<BoxFace> face_subfacets(const BoxFace& face);

// All 2^(d-n) corner points, ordered lexicographically as coordinate
// tuples (equivalently: smallest free axis is the most significant
// bit, Lower before Upper).
std::vector<Vector> face_vertices(const BoxFace& face);

// Product of free-axis lengths: the face's measure inside its affine hull.
double face_measure(const BoxFace& face);

struct Simplex {
    std::vector<Vector> vertices; // exactly d+1
};

// Conv({x_1,...,x_n} u F): n interior apex points accumulated by
// refinement (insertion order, oldest first) over a depth-n box face.
struct BoundaryPolytope {
    std::vector<Vector> apexes;
    BoxFace base;
};

struct Cell {
    CellId id = 0;
    std::variant<Simplex, BoundaryPolytope> shape;

    bool is_simplex() const { return std::holds_alternative<Simplex>(shape); }
    std::size_t dim() const;
    // Full vertex list: simplex vertices, or apexes followed by base corners.
    std::vector<Vector> vertex_list() const;
};

Cell make_simplex_cell(CellId id, std::vector<Vector> vertices);

// Builds a cell from apexes over a base face. Any cell whose total
// vertex count is exactly d+1 is stored as a Simplex (apexes first,
// then base corners); this covers edge and vertex base faces.
Cell make_cell(CellId id, std::vector<Vector> apexes, BoxFace base);

enum class FacetKind { DropVertex, DropApex, BaseFace, SubFace };

// One facet of a cell plus everything needed to build the child
// pyramid over it: the carried apex list and base face (absent for
// simplex facets) and the materialized vertex list.
struct FacetRef {
    FacetKind kind;
    std::size_t index;
    std::optional<BoxFace> face;
    std::vector<Vector> apexes;
    std::vector<Vector> vertices;
};

// Facets in deterministic order. Simplex: the d+1 drop-one-vertex
// facets by vertex index. BoundaryPolytope with apexes x_1..x_n over
// F: the n facets Conv({x} \ {x_i} u F) by apex index (tagged
// BaseFace when no apex remains), then the 2(d-n) facets
// Conv({x} u G) in face_subfacets order.
std::vector<FacetRef> cell_facets(const Cell& cell);

// Arithmetic mean of the full vertex list.
Vector barycenter(const Cell& cell);

// Simplex volume, or the recursive pyramid rule for boundary
// polytopes: peel apexes newest-first, vol_k = vol_{k-1} * h / k.
// Throws when volume <= 1e-14 * reference_volume (defaults to the
// volume of the cell's bounding box).
double cell_volume(const Cell& cell, double reference_volume = 0.0);

enum class Containment { Outside, Boundary, Interior };

// Outward-oriented facet halfspaces (cell barycenter strictly inside).
std::vector<Hyperplane> facet_planes(const Cell& cell);

Containment classify_point(const Vector& point, const std::vector<Hyperplane>& planes, double tol);

// Interior if strictly inside every facet halfspace by more than tol,
// Outside if beyond any by more than tol, else Boundary.
Containment contains(const Cell& cell, const Vector& point, double tol);

// Scale-aware default membership tolerance for divisions of `box`.
double default_contains_tol(const Box& box);

struct Aabb {
    Vector lower;
    Vector upper;
    bool contains(const Vector& p, double tol) const;
};

Aabb cell_aabb(const Cell& cell);

// Facet linking FL(p, P): one pyramid Conv(p u F) per facet of the
// box. Children get ids first_id, first_id+1, ... in facet order.
std::vector<Cell> facet_link(const Vector& p, const Box& box, CellId first_id = 0);

// Facet linking FL(p, D) for a division cell. p must be strictly
// interior; the new apex is appended after the carried apexes.
std::vector<Cell> facet_link(const Vector& p, const Cell& cell, CellId first_id = 0);

} // namespace copt
