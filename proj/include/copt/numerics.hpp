#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace copt {

using Vector = std::vector<double>;

/// Dense row-major matrix. Small sizes only; this project never needs BLAS.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);
double sq_norm(const Vector& a);

/// y += a * x
void axpy(Vector& y, double a, const Vector& x);
Vector subtract(const Vector& a, const Vector& b);
Vector scaled(const Vector& a, double s);

/// Throws std::invalid_argument if any entry is NaN or infinite.
void check_finite(std::span<const double> values, const char* what);

/// Hyperplane {x : normal . x = offset} with |normal| = 1.
struct Hyperplane {
    Vector normal;
    double offset = 0.0;

    double signed_distance(const Vector& x) const { return dot(normal, x) - offset; }
};

/// Hyperplane through d or more points in R^d whose affine hull has
/// dimension exactly d-1. The normal is the null-space direction of the
/// matrix of difference vectors, found by Householder QR with column
/// pivoting; rank decisions use 1e-10 times the largest column norm.
/// Throws std::invalid_argument on degenerate input.
Hyperplane hyperplane_through(std::span<const Vector> points);

/// Gram-Schmidt with one re-orthogonalization pass. Inputs whose residual
/// norm after projection onto the vectors accepted so far falls below
/// drop_tol (absolute) are dropped.
std::vector<Vector> orthonormalize(std::span<const Vector> vectors, double drop_tol);

/// |det(v1-v0, ..., vd-v0)| / d!  for exactly d+1 vertices in R^d.
/// Degenerate input returns 0.
double simplex_volume(std::span<const Vector> vertices);

/// Euclidean distance from x to the affine hull of a point set.
double dist_to_affine(const Vector& x, std::span<const Vector> points);

using LinearOperator = std::function<void(const Vector& in, Vector& out)>;

/// Conjugate gradients for a symmetric positive definite operator.
/// Returns x with |Ax-b|/|b| <= tol; throws std::runtime_error with the
/// achieved residual if max_iter is exhausted first.
Vector cg_solve(const LinearOperator& apply_a, const Vector& b, double tol, std::size_t max_iter);

} // namespace copt
