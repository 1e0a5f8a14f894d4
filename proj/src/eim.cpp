#include "copt/eim.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace copt {

EimBasis eim_extend(EimBasis basis, const Vector& snapshot) {
    if (!basis.Q.empty() && snapshot.size() != basis.Q.front().size()) {
        throw std::invalid_argument("eim_extend: snapshot length mismatch");
    }
    check_finite(snapshot, "eim snapshot");

    Vector r = snapshot;
    if (!basis.Q.empty()) {
        const Vector approx = eim_interpolate(basis, snapshot);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= approx[i];
    }

    std::size_t imax = 0;
    double rmax = 0.0;
    double smax = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (std::abs(r[i]) > rmax) {
            rmax = std::abs(r[i]);
            imax = i;
        }
        smax = std::max(smax, std::abs(snapshot[i]));
    }
    if (rmax <= 1e-12 * smax || rmax == 0.0) return basis; // dependent snapshot

    const double pivot = r[imax];
    for (double& v : r) v /= pivot;
    basis.Q.push_back(std::move(r));
    basis.I.push_back(imax);

    const std::size_t k = basis.Q.size();
    Matrix b(k, k, 0.0);
    for (std::size_t row = 0; row < k; ++row) {
        for (std::size_t col = 0; col <= row; ++col) {
            b(row, col) = basis.Q[col][basis.I[row]];
        }
    }
    basis.B = std::move(b);
    return basis;
}

Vector eim_apply(const EimBasis& basis, const Vector& values_at_I) {
    const std::size_t k = basis.size();
    if (values_at_I.size() != k) throw std::invalid_argument("eim_apply: size mismatch");
    if (k == 0) return {};

    Vector c(k);
    for (std::size_t row = 0; row < k; ++row) {
        double v = values_at_I[row];
        for (std::size_t col = 0; col < row; ++col) v -= basis.B(row, col) * c[col];
        c[row] = v; // unit diagonal
    }

    Vector out(basis.Q.front().size(), 0.0);
    for (std::size_t m = 0; m < k; ++m) axpy(out, c[m], basis.Q[m]);
    return out;
}

Vector eim_interpolate(const EimBasis& basis, const Vector& snapshot) {
    if (basis.size() == 0) return Vector(snapshot.size(), 0.0);
    Vector at_I(basis.size());
    for (std::size_t m = 0; m < basis.size(); ++m) at_I[m] = snapshot[basis.I[m]];
    return eim_apply(basis, at_I);
}

double gaussian_source(const Vector& x, const Vector& p) {
    if (x.size() != 2 || p.size() != 5) {
        throw std::invalid_argument("gaussian_source: expects x in R^2, p in R^5");
    }
    const double mu1 = p[0], mu2 = p[1], s1 = p[2], s2 = p[3], rho = p[4];
    if (s1 <= 0 || s2 <= 0) throw std::invalid_argument("gaussian_source: sigma must be positive");
    if (std::abs(rho) >= 1.0) throw std::invalid_argument("gaussian_source: |rho| must be < 1");

    const double z1 = (x[0] - mu1) / s1;
    const double z2 = (x[1] - mu2) / s2;
    const double q = z1 * z1 - 2.0 * rho * z1 * z2 + z2 * z2;
    const double norm_factor =
        1.0 / (2.0 * std::numbers::pi * s1 * s2 * std::sqrt(1.0 - rho * rho));
    return norm_factor * std::exp(-q / (2.0 * (1.0 - rho * rho)));
}

std::shared_ptr<ParamFunctionFamily> make_gaussian_source_family(std::size_t n) {
    if (n < 2) throw std::invalid_argument("gaussian family: need n >= 2");
    auto family = std::make_shared<ParamFunctionFamily>();
    const double h = 2.0 / static_cast<double>(n - 1);
    family->grid.reserve(n * n);
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
            family->grid.push_back(
                {-1.0 + static_cast<double>(ix) * h, -1.0 + static_cast<double>(iy) * h});
        }
    }

    struct Cache {
        std::mutex mu;
        std::map<Vector, Vector> values;
    };
    auto cache = std::make_shared<Cache>();
    family->evaluate = [grid = family->grid, cache](const Vector& p) {
        {
            std::lock_guard<std::mutex> lock(cache->mu);
            auto it = cache->values.find(p);
            if (it != cache->values.end()) return it->second;
        }
        Vector s(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) s[i] = gaussian_source(grid[i], p);
        std::lock_guard<std::mutex> lock(cache->mu);
        return cache->values.emplace(p, std::move(s)).first->second;
    };
    return family;
}

} // namespace copt
