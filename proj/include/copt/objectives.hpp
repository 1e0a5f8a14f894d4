#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "copt/geometry.hpp"
#include "copt/numerics.hpp"

namespace copt {

class SnapshotProvider;
struct ParamFunctionFamily;
struct EimBasis;
struct ReducedBasis;

// A configuration gamma: ordered list of pairwise distinct points.
struct Configuration {
    std::vector<Vector> points;

    std::size_t size() const { return points.size(); }
    bool contains(const Vector& q) const; // exact coordinate comparison
};

// Objective contract J(q, gamma). evaluate() is reentrant and may run
// in parallel within one driver step; notify_appended() is exclusive
// (drivers call it between evaluation phases). Counters measure J
// evaluations: one per evaluate() call, distinct points by exact
// coordinates.
class Objective {
  public:
    virtual ~Objective() = default;

    virtual std::string name() const = 0;

    double evaluate(const Vector& q);

    // Grows gamma by p and updates internal state so that evaluate
    // afterwards reflects J(., gamma u {p}). Duplicate p throws.
    void notify_appended(const Vector& p);

    const Configuration& configuration() const { return gamma_; }
    std::uint64_t total_evaluations() const { return evals_.load(); }
    std::size_t distinct_points_evaluated() const;

    // Views of the internal approximation state for persistence;
    // null for objectives that keep none.
    virtual const EimBasis* eim_basis() const { return nullptr; }
    virtual const ReducedBasis* reduced_basis() const { return nullptr; }

  protected:
    virtual double eval_impl(const Vector& q) = 0;
    virtual void on_appended(const Vector& p) = 0;

    Configuration gamma_;

  private:
    std::atomic<std::uint64_t> evals_{0};
    mutable std::mutex distinct_mu_;
    std::set<Vector> distinct_;
};

// min_{p in gamma} |q - p|^2; an empty gamma returns
// |q - box_center|^2 + box_diam^2 so the first pick is deterministic.
// Greedy on this objective is farthest-point sampling.
class FillDistanceObjective final : public Objective {
  public:
    explicit FillDistanceObjective(Box box);

    std::string name() const override { return "fill"; }

  protected:
    double eval_impl(const Vector& q) override;
    void on_appended(const Vector&) override {}

  private:
    Box box_;
    Vector center_;
    double diam_sq_;
    mutable std::mutex cache_mu_;
    // q -> (min squared distance over the first k gamma points, k)
    mutable std::map<Vector, std::pair<double, std::size_t>> cache_;
};

// J(q, gamma) = |u(q) - P_{V_gamma} u(q)|^2 in the provider's scaled
// Euclidean norm; the basis grows by rb_extend on notify_appended.
std::unique_ptr<Objective> make_rb_objective(std::shared_ptr<SnapshotProvider> provider,
                                             std::string name);

// J(q, gamma) = sup-norm EIM interpolation residual of s(q).
std::unique_ptr<Objective> make_eim_objective(std::shared_ptr<ParamFunctionFamily> family,
                                              std::string name);

} // namespace copt
