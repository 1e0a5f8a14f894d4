#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "copt/numerics.hpp"

namespace copt {

// Interpolatory basis with magic points. Q holds the basis vectors
// (sup-norm <= 1, value 1 at the own magic index), I the magic
// indices, and B the unit lower-triangular matrix B[k][m] = Q_m[I_k].
struct EimBasis {
    std::vector<Vector> Q;
    std::vector<std::size_t> I;
    Matrix B;

    std::size_t size() const { return Q.size(); }
};

// One greedy step: interpolate the snapshot with the current basis,
// take the residual r, pick the smallest index attaining max|r|, and
// append r / r[i*]. Snapshots with |r[i*]| <= 1e-12 |snapshot|_inf
// are rejected (numerically dependent) and the basis returns
// unchanged.
EimBasis eim_extend(EimBasis basis, const Vector& snapshot);

// Forward-substitute B c = values_at_I and return sum_m c_m Q_m.
Vector eim_apply(const EimBasis& basis, const Vector& values_at_I);

// Convenience: restrict a full snapshot to I, then eim_apply.
Vector eim_interpolate(const EimBasis& basis, const Vector& snapshot);

// The five-parameter Gaussian heat source g(x, p),
// p = (mu1, mu2, sigma1, sigma2, rho), normalized to unit integral.
double gaussian_source(const Vector& x, const Vector& p);

// A parametrized function family s: P -> R^N sampled on a fixed
// spatial grid. evaluate is deterministic and internally cached.
struct ParamFunctionFamily {
    std::vector<Vector> grid;
    std::function<Vector(const Vector&)> evaluate;
};

// g(., p) sampled on the full uniform n x n node grid over [-1,1]^2.
std::shared_ptr<ParamFunctionFamily> make_gaussian_source_family(std::size_t n = 41);

} // namespace copt
