#include "copt/rbm.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>

#include "copt/eim.hpp"

namespace copt {

static_assert(std::endian::native == std::endian::little,
              "snapshot binary format assumes a little-endian host");

ReducedBasis rb_extend(ReducedBasis basis, const Vector& u) {
    Vector w = u;
    for (int pass = 0; pass < 2; ++pass) {
        for (const Vector& q : basis.ortho) axpy(w, -dot(w, q), q);
    }
    const double r = norm(w);
    if (r <= 1e-10 * norm(u)) return basis; // <=: drops the zero vector too
    for (double& x : w) x /= r;
    basis.ortho.push_back(std::move(w));
    return basis;
}

double projection_error_sq(const ReducedBasis& basis, const Vector& u, double norm_weight) {
    double s = sq_norm(u);
    for (const Vector& q : basis.ortho) {
        double c = dot(u, q);
        s -= c * c;
    }
    return norm_weight * std::max(0.0, s);
}

namespace {

inline double harmonic(double a, double b) { return 2.0 * a * b / (a + b); }

} // namespace

Vector diffusion5_solve(const Vector& kappa_nodes, const Vector& rhs_interior, std::size_t n,
                        double h) {
    if (n < 3) throw std::invalid_argument("diffusion5_solve: need n >= 3");
    if (kappa_nodes.size() != n * n) {
        throw std::invalid_argument("diffusion5_solve: kappa size mismatch");
    }
    const std::size_t m = n - 2;
    if (rhs_interior.size() != m * m) {
        throw std::invalid_argument("diffusion5_solve: rhs size mismatch");
    }
    check_finite(kappa_nodes, "kappa");
    for (double k : kappa_nodes) {
        if (k <= 0) throw std::invalid_argument("diffusion5_solve: kappa must be positive");
    }

    // Face conductivities: harmonic means of the adjacent node values.
    std::vector<double> hface((n - 1) * n); // between (ix,iy) and (ix+1,iy)
    std::vector<double> vface(n * (n - 1)); // between (ix,iy) and (ix,iy+1)
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix + 1 < n; ++ix) {
            hface[iy * (n - 1) + ix] = harmonic(kappa_nodes[iy * n + ix], kappa_nodes[iy * n + ix + 1]);
        }
    }
    for (std::size_t iy = 0; iy + 1 < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
            vface[iy * n + ix] = harmonic(kappa_nodes[iy * n + ix], kappa_nodes[(iy + 1) * n + ix]);
        }
    }

    const double inv_h2 = 1.0 / (h * h);
    LinearOperator apply = [&, n, m, inv_h2](const Vector& x, Vector& y) {
        for (std::size_t iy = 1; iy + 1 < n; ++iy) {
            for (std::size_t ix = 1; ix + 1 < n; ++ix) {
                const std::size_t k = (iy - 1) * m + (ix - 1);
                const double aW = hface[iy * (n - 1) + ix - 1];
                const double aE = hface[iy * (n - 1) + ix];
                const double aS = vface[(iy - 1) * n + ix];
                const double aN = vface[iy * n + ix];
                double v = (aW + aE + aS + aN) * x[k];
                if (ix > 1) v -= aW * x[k - 1];
                if (ix + 2 < n) v -= aE * x[k + 1];
                if (iy > 1) v -= aS * x[k - m];
                if (iy + 2 < n) v -= aN * x[k + m];
                y[k] = v * inv_h2;
            }
        }
    };

    return cg_solve(apply, rhs_interior, 1e-10, 200 * n + 10000);
}

double thermal_block_kappa(const Vector& p, double x, double y) {
    const std::size_t d = p.size();
    if (d < 2 || d % 2 != 0) {
        throw std::invalid_argument("thermal_block_kappa: parameter count must be even");
    }
    const std::size_t m = d / 2;
    auto clamp01 = [](double t) { return t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t); };
    const auto col = std::min<std::size_t>(
        m - 1, static_cast<std::size_t>(clamp01(x) * static_cast<double>(m)));
    const auto row =
        std::min<std::size_t>(1, static_cast<std::size_t>(clamp01(y) * 2.0));
    return p[2 * col + row];
}

Vector thermal_block_solve(const Vector& p, std::size_t n) {
    for (double v : p) {
        if (v <= 0) throw std::invalid_argument("thermal_block_solve: conductivities must be positive");
    }
    const double h = 1.0 / static_cast<double>(n - 1);
    Vector kappa(n * n);
    for (std::size_t iy = 0; iy < n; ++iy) {
        for (std::size_t ix = 0; ix < n; ++ix) {
            kappa[iy * n + ix] =
                thermal_block_kappa(p, static_cast<double>(ix) * h, static_cast<double>(iy) * h);
        }
    }
    Vector rhs((n - 2) * (n - 2), 1.0);
    return diffusion5_solve(kappa, rhs, n, h);
}

Vector gaussian_poisson_solve(const Vector& p, std::size_t n) {
    const double h = 2.0 / static_cast<double>(n - 1);
    Vector kappa(n * n, 1.0);
    Vector rhs((n - 2) * (n - 2));
    for (std::size_t iy = 1; iy + 1 < n; ++iy) {
        for (std::size_t ix = 1; ix + 1 < n; ++ix) {
            const Vector x{-1.0 + static_cast<double>(ix) * h, -1.0 + static_cast<double>(iy) * h};
            rhs[(iy - 1) * (n - 2) + (ix - 1)] = gaussian_source(x, p);
        }
    }
    return diffusion5_solve(kappa, rhs, n, h);
}

namespace {

class CachedProvider : public SnapshotProvider {
  public:
    Vector snapshot(const Vector& p) final {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(p);
            if (it != cache_.end()) return it->second;
        }
        Vector u = compute(p);
        std::lock_guard<std::mutex> lock(mu_);
        return cache_.emplace(p, std::move(u)).first->second;
    }

  protected:
    virtual Vector compute(const Vector& p) = 0;

  private:
    std::mutex mu_;
    std::map<Vector, Vector> cache_;
};

class ThermalBlockProvider final : public CachedProvider {
  public:
    ThermalBlockProvider(std::size_t d, std::size_t n) : d_(d), n_(n) {
        if (d < 2 || d % 2 != 0) {
            throw std::invalid_argument("thermal block: dimension must be even and >= 2");
        }
        if (n < 3) throw std::invalid_argument("thermal block: need n >= 3");
    }

    std::size_t solution_size() const override { return (n_ - 2) * (n_ - 2); }

    double norm_weight() const override {
        const double h = 1.0 / static_cast<double>(n_ - 1);
        return h * h;
    }

  protected:
    Vector compute(const Vector& p) override {
        if (p.size() != d_) throw std::invalid_argument("thermal block: parameter size mismatch");
        return thermal_block_solve(p, n_);
    }

  private:
    std::size_t d_;
    std::size_t n_;
};

class GaussianPoissonProvider final : public CachedProvider {
  public:
    explicit GaussianPoissonProvider(std::size_t n) : n_(n) {
        if (n < 3) throw std::invalid_argument("gaussian poisson: need n >= 3");
    }

    std::size_t solution_size() const override { return (n_ - 2) * (n_ - 2); }

    double norm_weight() const override {
        const double h = 2.0 / static_cast<double>(n_ - 1);
        return h * h;
    }

  protected:
    Vector compute(const Vector& p) override { return gaussian_poisson_solve(p, n_); }

  private:
    std::size_t n_;
};

} // namespace

std::shared_ptr<SnapshotProvider> make_thermal_block_provider(std::size_t d, std::size_t n) {
    return std::make_shared<ThermalBlockProvider>(d, n);
}

std::shared_ptr<SnapshotProvider> make_gaussian_poisson_provider(std::size_t n) {
    return std::make_shared<GaussianPoissonProvider>(n);
}

void write_snapshot_binary(const std::string& path, const Vector& u) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_snapshot_binary: cannot open " + path);
    const std::uint64_t n = u.size();
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    out.write(reinterpret_cast<const char*>(u.data()),
              static_cast<std::streamsize>(u.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write_snapshot_binary: write failed for " + path);
}

Vector read_snapshot_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot_binary: cannot open " + path);
    std::uint64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    Vector u(n);
    in.read(reinterpret_cast<char*>(u.data()), static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw std::runtime_error("read_snapshot_binary: truncated file " + path);
    return u;
}

} // namespace copt
