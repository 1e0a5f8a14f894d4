#include "copt/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "copt/eim.hpp"
#include "copt/rbm.hpp"

namespace copt {

bool Configuration::contains(const Vector& q) const {
    return std::find(points.begin(), points.end(), q) != points.end();
}

double Objective::evaluate(const Vector& q) {
    evals_.fetch_add(1, std::memory_order_relaxed);
    {
        std::lock_guard<std::mutex> lock(distinct_mu_);
        distinct_.insert(q);
    }
    return eval_impl(q);
}

void Objective::notify_appended(const Vector& p) {
    if (gamma_.contains(p)) {
        throw std::invalid_argument(name() + ": point already in configuration");
    }
    gamma_.points.push_back(p);
    on_appended(p);
}

std::size_t Objective::distinct_points_evaluated() const {
    std::lock_guard<std::mutex> lock(distinct_mu_);
    return distinct_.size();
}

FillDistanceObjective::FillDistanceObjective(Box box)
    : box_(std::move(box)), center_(box_.center()) {
    double diam = box_.diameter();
    diam_sq_ = diam * diam;
}

double FillDistanceObjective::eval_impl(const Vector& q) {
    const std::size_t n = gamma_.size();
    if (n == 0) {
        Vector diff = subtract(q, center_);
        return sq_norm(diff) + diam_sq_;
    }

    double best = std::numeric_limits<double>::infinity();
    std::size_t k = 0;
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = cache_.find(q);
        if (it != cache_.end()) std::tie(best, k) = it->second;
    }
    for (std::size_t i = k; i < n; ++i) {
        double s = 0.0;
        const Vector& p = gamma_.points[i];
        for (std::size_t a = 0; a < q.size(); ++a) {
            double diff = q[a] - p[a];
            s += diff * diff;
        }
        best = std::min(best, s);
    }
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        cache_[q] = {best, n};
    }
    return best;
}

namespace {

class RbObjective final : public Objective {
  public:
    RbObjective(std::shared_ptr<SnapshotProvider> provider, std::string name)
        : provider_(std::move(provider)), name_(std::move(name)) {}

    std::string name() const override { return name_; }

    const ReducedBasis* reduced_basis() const override { return &basis_; }

  protected:
    double eval_impl(const Vector& q) override {
        const Vector u = provider_->snapshot(q);
        double residual_sq = 0.0;
        std::size_t k = 0;
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(q);
            if (it != cache_.end()) std::tie(residual_sq, k) = it->second;
        }
        if (k == 0) residual_sq = sq_norm(u);
        for (std::size_t i = k; i < basis_.size(); ++i) {
            double c = dot(u, basis_.ortho[i]);
            residual_sq -= c * c;
        }
        {
            std::lock_guard<std::mutex> lock(mu_);
            cache_[q] = {residual_sq, basis_.size()};
        }
        return provider_->norm_weight() * std::max(0.0, residual_sq);
    }

    void on_appended(const Vector& p) override {
        basis_ = rb_extend(std::move(basis_), provider_->snapshot(p));
    }

  private:
    std::shared_ptr<SnapshotProvider> provider_;
    std::string name_;
    ReducedBasis basis_;
    mutable std::mutex mu_;
    // q -> (unweighted squared residual against the first k basis vectors, k)
    std::map<Vector, std::pair<double, std::size_t>> cache_;
};

class EimObjective final : public Objective {
  public:
    EimObjective(std::shared_ptr<ParamFunctionFamily> family, std::string name)
        : family_(std::move(family)), name_(std::move(name)) {}

    std::string name() const override { return name_; }

    const EimBasis* eim_basis() const override { return &basis_; }

  protected:
    double eval_impl(const Vector& q) override {
        const Vector s = family_->evaluate(q);
        double worst = 0.0;
        if (basis_.size() == 0) {
            for (double v : s) worst = std::max(worst, std::abs(v));
            return worst;
        }
        const Vector approx = eim_interpolate(basis_, s);
        for (std::size_t i = 0; i < s.size(); ++i) {
            worst = std::max(worst, std::abs(s[i] - approx[i]));
        }
        return worst;
    }

    void on_appended(const Vector& p) override {
        // A numerically dependent snapshot leaves the basis unchanged.
        basis_ = eim_extend(std::move(basis_), family_->evaluate(p));
    }

  private:
    std::shared_ptr<ParamFunctionFamily> family_;
    std::string name_;
    EimBasis basis_;
};

} // namespace

std::unique_ptr<Objective> make_rb_objective(std::shared_ptr<SnapshotProvider> provider,
                                             std::string name) {
    return std::make_unique<RbObjective>(std::move(provider), std::move(name));
}

std::unique_ptr<Objective> make_eim_objective(std::shared_ptr<ParamFunctionFamily> family,
                                              std::string name) {
    return std::make_unique<EimObjective>(std::move(family), std::move(name));
}

} // namespace copt
