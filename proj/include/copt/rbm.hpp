#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "copt/numerics.hpp"

namespace copt {

// Deterministic parameter-to-solution map u(p) with an internal
// snapshot cache keyed by the exact bytes of p. snapshot() is
// thread-safe; cache hits are silent (no counters live here).
class SnapshotProvider {
  public:
    virtual ~SnapshotProvider() = default;

    virtual std::size_t solution_size() const = 0;

    // Weight applied to squared Euclidean norms so values are
    // resolution-comparable (grid cell area h^2).
    virtual double norm_weight() const = 0;

    virtual Vector snapshot(const Vector& p) = 0;
};

// Orthonormal basis of span{u(p) : p in gamma}, Euclidean inner product.
struct ReducedBasis {
    std::vector<Vector> ortho;

    std::size_t size() const { return ortho.size(); }
};

// Gram-Schmidt with one re-orthogonalization pass; u is dropped when
// its residual norm falls below 1e-10 |u|.
ReducedBasis rb_extend(ReducedBasis basis, const Vector& u);

// |u|^2 - sum_k <u, xi_k>^2, clamped at 0, times norm_weight.
double projection_error_sq(const ReducedBasis& basis, const Vector& u, double norm_weight = 1.0);

// 5-point variable-coefficient diffusion solve on an n x n uniform
// node grid with homogeneous Dirichlet boundary. kappa_nodes holds
// n*n node values (row-major, x fastest), rhs the (n-2)^2 interior
// values; face conductivities are harmonic means of adjacent node
// values. CG to 1e-10 relative residual.
Vector diffusion5_solve(const Vector& kappa_nodes, const Vector& rhs_interior, std::size_t n,
                        double h);

// Blockwise conductivity of the 2-row x m-column thermal block at a
// point of [0,1]^2: block i (1-based) sits at column ceil(i/2), row
// ((i-1) mod 2)+1, rows stacked bottom-to-top, and kappa = p_i there.
double thermal_block_kappa(const Vector& p, double x, double y);

// -div(kappa grad u) = 1 on [0,1]^2, u = 0 on the boundary,
// d = |p| even, kappa blockwise from p in [1,10]^d. Returns the
// (n-2)^2 interior values, row-major with x fastest.
Vector thermal_block_solve(const Vector& p, std::size_t n);

// -Laplace(u) = g(., p) on (-1,1)^2, u = 0 on the boundary, with the
// Gaussian source of the five-parameter family. Returns interior values.
Vector gaussian_poisson_solve(const Vector& p, std::size_t n);

std::shared_ptr<SnapshotProvider> make_thermal_block_provider(std::size_t d, std::size_t n = 33);
std::shared_ptr<SnapshotProvider> make_gaussian_poisson_provider(std::size_t n = 41);

// Flat binary snapshot: 8-byte little-endian length header, then N
// little-endian 64-bit floats.
void write_snapshot_binary(const std::string& path, const Vector& u);
Vector read_snapshot_binary(const std::string& path);

} // namespace copt
