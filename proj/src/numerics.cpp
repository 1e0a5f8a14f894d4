#include "copt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace copt {

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double sq_norm(const Vector& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return s;
}

double norm(const Vector& a) { return std::sqrt(sq_norm(a)); }

void axpy(Vector& y, double a, const Vector& x) {
    if (y.size() != x.size()) throw std::invalid_argument("axpy: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

Vector subtract(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("subtract: dimension mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector scaled(const Vector& a, double s) {
    Vector r(a);
    for (double& v : r) v *= s;
    return r;
}

void check_finite(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(what) + ": non-finite entry");
        }
    }
}

namespace {

// Householder QR with column pivoting on a d x k matrix (column-major
// storage). Returns the numerical rank; reflectors stay in `cols` /
// `betas` so the caller can rebuild Q columns.
struct PivotedQr {
    std::size_t d = 0;
    std::size_t rank = 0;
    std::vector<Vector> house; // reflector vectors, one per step, length d

    void factor(std::vector<Vector>& cols, double rel_tol) {
        const std::size_t k = cols.size();
        double max_norm = 0.0;
        for (const Vector& c : cols) max_norm = std::max(max_norm, norm(c));
        const double threshold = rel_tol * max_norm;

        const std::size_t steps = std::min(d, k);
        for (std::size_t t = 0; t < steps; ++t) {
            // Pivot: largest trailing norm among remaining columns.
            std::size_t best = t;
            double best_norm = 0.0;
            for (std::size_t j = t; j < k; ++j) {
                double s = 0.0;
                for (std::size_t i = t; i < d; ++i) s += cols[j][i] * cols[j][i];
                if (s > best_norm) {
                    best_norm = s;
                    best = j;
                }
            }
            best_norm = std::sqrt(best_norm);
            if (best_norm <= threshold || max_norm == 0.0) break;
            std::swap(cols[t], cols[best]);

            // Householder reflector zeroing rows t+1.. of column t.
            Vector v(d, 0.0);
            double alpha = 0.0;
            for (std::size_t i = t; i < d; ++i) alpha += cols[t][i] * cols[t][i];
            alpha = std::sqrt(alpha);
            if (cols[t][t] > 0) alpha = -alpha;
            for (std::size_t i = t; i < d; ++i) v[i] = cols[t][i];
            v[t] -= alpha;
            double vnorm = norm(v);
            if (vnorm > 0) {
                for (double& x : v) x /= vnorm;
                for (std::size_t j = t; j < k; ++j) apply_reflector(v, cols[j]);
            }
            house.push_back(std::move(v));
            ++rank;
        }
    }

    static void apply_reflector(const Vector& v, Vector& x) {
        double c = 2.0 * dot(v, x);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * v[i];
    }

    // Column `idx` of the full orthogonal factor Q = H_0 H_1 ... H_{r-1}.
    Vector q_column(std::size_t idx) const {
        Vector e(d, 0.0);
        e[idx] = 1.0;
        for (std::size_t t = house.size(); t-- > 0;) apply_reflector(house[t], e);
        return e;
    }
};

} // namespace

Hyperplane hyperplane_through(std::span<const Vector> points) {
    if (points.empty()) throw std::invalid_argument("hyperplane_through: no points");
    const std::size_t d = points[0].size();
    if (points.size() < d) {
        throw std::invalid_argument("hyperplane_through: need at least d points");
    }
    for (const Vector& p : points) {
        if (p.size() != d) throw std::invalid_argument("hyperplane_through: dimension mismatch");
    }

    std::vector<Vector> diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(subtract(points[i], points[0]));

    PivotedQr qr;
    qr.d = d;
    qr.factor(diffs, 1e-10);

    if (qr.rank + 1 < d) {
        throw std::invalid_argument("hyperplane_through: degenerate input (affine dimension " +
                                    std::to_string(qr.rank) + " < " + std::to_string(d - 1) + ")");
    }
    if (qr.rank >= d) {
        throw std::invalid_argument("hyperplane_through: points do not lie on a common hyperplane");
    }

    Vector normal = qr.q_column(d - 1);
    double len = norm(normal);
    for (double& v : normal) v /= len;

    // Deterministic sign: largest-magnitude component positive.
    std::size_t imax = 0;
    for (std::size_t i = 1; i < d; ++i) {
        if (std::abs(normal[i]) > std::abs(normal[imax])) imax = i;
    }
    if (normal[imax] < 0) {
        for (double& v : normal) v = -v;
    }

    Vector centroid(d, 0.0);
    for (const Vector& p : points) axpy(centroid, 1.0, p);
    for (double& v : centroid) v /= static_cast<double>(points.size());

    double offset = dot(normal, centroid);
    return Hyperplane{std::move(normal), offset};
}

std::vector<Vector> orthonormalize(std::span<const Vector> vectors, double drop_tol) {
    if (drop_tol <= 0) throw std::invalid_argument("orthonormalize: drop_tol must be positive");
    std::vector<Vector> basis;
    if (vectors.empty()) return basis;
    const std::size_t n = vectors[0].size();
    for (const Vector& v : vectors) {
        if (v.size() != n) throw std::invalid_argument("orthonormalize: dimension mismatch");
        Vector w = v;
        for (int pass = 0; pass < 2; ++pass) {
            for (const Vector& q : basis) axpy(w, -dot(w, q), q);
        }
        double r = norm(w);
        if (r < drop_tol) continue;
        for (double& x : w) x /= r;
        basis.push_back(std::move(w));
    }
    return basis;
}

double simplex_volume(std::span<const Vector> vertices) {
    if (vertices.empty()) throw std::invalid_argument("simplex_volume: no vertices");
    const std::size_t d = vertices[0].size();
    if (vertices.size() != d + 1) {
        throw std::invalid_argument("simplex_volume: need exactly d+1 vertices");
    }

    // |det| via LU with partial pivoting on the difference matrix.
    std::vector<Vector> a;
    a.reserve(d);
    for (std::size_t i = 1; i <= d; ++i) a.push_back(subtract(vertices[i], vertices[0]));

    double det = 1.0;
    for (std::size_t t = 0; t < d; ++t) {
        std::size_t piv = t;
        for (std::size_t i = t + 1; i < d; ++i) {
            if (std::abs(a[i][t]) > std::abs(a[piv][t])) piv = i;
        }
        if (a[piv][t] == 0.0) return 0.0;
        if (piv != t) {
            std::swap(a[piv], a[t]);
            det = -det;
        }
        det *= a[t][t];
        for (std::size_t i = t + 1; i < d; ++i) {
            double f = a[i][t] / a[t][t];
            for (std::size_t j = t; j < d; ++j) a[i][j] -= f * a[t][j];
        }
    }

    double fact = 1.0;
    for (std::size_t i = 2; i <= d; ++i) fact *= static_cast<double>(i);
    return std::abs(det) / fact;
}

double dist_to_affine(const Vector& x, std::span<const Vector> points) {
    if (points.empty()) throw std::invalid_argument("dist_to_affine: no points");
    std::vector<Vector> diffs;
    double scale = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        diffs.push_back(subtract(points[i], points[0]));
        scale = std::max(scale, norm(diffs.back()));
    }
    Vector r = subtract(x, points[0]);
    if (diffs.empty() || scale == 0.0) return norm(r);
    const auto basis = orthonormalize(diffs, 1e-13 * scale);
    for (int pass = 0; pass < 2; ++pass) {
        for (const Vector& q : basis) axpy(r, -dot(r, q), q);
    }
    return norm(r);
}

Vector cg_solve(const LinearOperator& apply_a, const Vector& b, double tol, std::size_t max_iter) {
    if (tol <= 0) throw std::invalid_argument("cg_solve: tol must be positive");
    const std::size_t n = b.size();
    const double bnorm = norm(b);
    Vector x(n, 0.0);
    if (bnorm == 0.0) return x;

    Vector r = b;
    Vector p = r;
    Vector ap(n, 0.0);
    double rr = sq_norm(r);

    for (std::size_t it = 0; it < max_iter; ++it) {
        if (std::sqrt(rr) / bnorm <= tol) return x;
        apply_a(p, ap);
        double pap = dot(p, ap);
        if (pap <= 0.0) throw std::runtime_error("cg_solve: operator not positive definite");
        double alpha = rr / pap;
        axpy(x, alpha, p);
        axpy(r, -alpha, ap);
        double rr_new = sq_norm(r);
        double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    }
    if (std::sqrt(rr) / bnorm <= tol) return x;
    throw std::runtime_error("cg_solve: no convergence after " + std::to_string(max_iter) +
                             " iterations (relative residual " + std::to_string(std::sqrt(rr) / bnorm) + ")");
}

} // namespace copt
