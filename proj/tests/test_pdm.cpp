#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "copt/pdm.hpp"
#include "test_util.hpp"

using namespace copt;
using copt::testutil::unit_box;

namespace {

class ZeroObjective final : public Objective {
  public:
    std::string name() const override { return "zero"; }

  protected:
    double eval_impl(const Vector&) override { return 0.0; }
    void on_appended(const Vector&) override {}
};

class FailingObjective final : public Objective {
  public:
    explicit FailingObjective(std::uint64_t budget) : budget_(budget) {}
    std::string name() const override { return "failing"; }

  protected:
    double eval_impl(const Vector& q) override {
        if (total_evaluations() > budget_) throw std::runtime_error("budget exceeded");
        return sq_norm(q);
    }
    void on_appended(const Vector&) override {}

  private:
    std::uint64_t budget_;
};

bool traces_equal(const std::vector<StepRecord>& a, const std::vector<StepRecord>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].step != b[i].step || a[i].selected_cell != b[i].selected_cell ||
            a[i].err != b[i].err || a[i].n_cells != b[i].n_cells ||
            a[i].distinct_points != b[i].distinct_points ||
            a[i].total_evals != b[i].total_evals)
            return false; // wall_ms deliberately ignored
    }
    return true;
}

} // namespace

TEST_CASE("select_max tie break") {
    const Box box = unit_box(2);
    Division div = init_division(box, {0.5, 0.5}); // cells 0..3

    std::map<CellId, double> values{{0, 0.5}, {1, 0.9}, {2, 0.9}, {3, 0.1}};
    CHECK(select_max(div, values) == 1);

    values = {{0, 0.2}, {1, 0.2}, {2, 0.2}, {3, 0.2}};
    CHECK(select_max(div, values) == 0);

    values = {{0, -1.0}, {1, -0.5}, {2, -2.0}, {3, -0.5}};
    CHECK(select_max(div, values) == 1);
}

TEST_CASE("identically zero objective stops after one step") {
    ZeroObjective obj;
    const Box box = unit_box(2);
    PdmConfig cfg;
    cfg.tol = 0.0;
    auto res = pdm_run(obj, box, cfg);

    CHECK(res.status == RunStatus::TolReached);
    REQUIRE(res.trace.size() == 1);
    // err <= tol still appends the triggering barycenter first.
    CHECK(res.gamma.size() == 2);
    CHECK(res.trace[0].step == 1);
    CHECK(res.trace[0].selected_cell == 0);
    CHECK(res.trace[0].err == 0.0);
    CHECK(res.trace[0].n_cells == 6); // four triangles, one replaced by three children
    CHECK(res.division.cells.size() == 6);
}

TEST_CASE("first fill step picks the lowest-id triangle barycenter") {
    const Box box = unit_box(2);
    FillDistanceObjective obj(box);
    PdmConfig cfg;
    cfg.tol = 0.0;
    cfg.max_iters = 1;
    auto res = pdm_run(obj, box, cfg);

    CHECK(res.status == RunStatus::MaxIters);
    REQUIRE(res.trace.size() == 1);
    // All four triangle barycenters are 1/3 from the centre; tie goes
    // to cell 0, whose barycenter is (1/6, 1/2).
    CHECK(res.trace[0].selected_cell == 0);
    CHECK(res.trace[0].err == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    REQUIRE(res.gamma.size() == 2);
    CHECK(res.gamma.points[0] == Vector{0.5, 0.5});
    CHECK(res.gamma.points[1][0] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(res.gamma.points[1][1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("custom initial point") {
    const Box box = unit_box(2);
    FillDistanceObjective obj(box);
    PdmConfig cfg;
    cfg.tol = 0.0;
    cfg.max_iters = 1;
    cfg.initial_point = Vector{0.25, 0.25};
    auto res = pdm_run(obj, box, cfg);
    CHECK(res.gamma.points[0] == Vector{0.25, 0.25});
    CHECK(res.division.root.lower == box.lower);
}

TEST_CASE("growth bounds and point validity") {
    for (std::size_t d : {2, 3, 5}) {
        const Box box = unit_box(d);
        FillDistanceObjective obj(box);
        PdmConfig cfg;
        cfg.tol = 0.0;
        const std::size_t j = 25;
        cfg.max_iters = j;
        auto res = pdm_run(obj, box, cfg, 4);

        CHECK(res.status == RunStatus::MaxIters);
        CHECK(res.trace.size() == j);
        CHECK(res.gamma.size() == 1 + j);
        CHECK(obj.distinct_points_evaluated() <= 1 + 2 * d * (j + 1));
        CHECK(res.division.cells.size() <= 2 * d + j * (2 * d - 1));
        for (const auto& p : res.gamma.points) {
            for (std::size_t k = 0; k < d; ++k) {
                CHECK(p[k] > box.lower[k]);
                CHECK(p[k] < box.upper[k]);
            }
        }
        // Trace counters are consistent with the objective.
        CHECK(res.trace.back().total_evals == obj.total_evaluations());
        CHECK(res.trace.back().distinct_points == obj.distinct_points_evaluated());
        CHECK(res.trace.back().n_cells == res.division.cells.size());
    }
}

TEST_CASE("determinism across runs and thread counts") {
    const Box box = unit_box(3);
    PdmConfig cfg;
    cfg.tol = 0.0;
    cfg.max_iters = 30;

    FillDistanceObjective a(box);
    auto ra = pdm_run(a, box, cfg, 1);
    FillDistanceObjective b(box);
    auto rb = pdm_run(b, box, cfg, 7);

    CHECK(traces_equal(ra.trace, rb.trace));
    CHECK(ra.gamma.points == rb.gamma.points);
}

TEST_CASE("evaluation failure yields partial trace") {
    FailingObjective obj(10);
    const Box box = unit_box(2);
    PdmConfig cfg;
    cfg.tol = 0.0;
    cfg.max_iters = 50;
    auto res = pdm_run(obj, box, cfg, 3);

    CHECK(res.status == RunStatus::EvalError);
    CHECK(res.error.find("budget exceeded") != std::string::npos);
    CHECK(res.trace.size() < 50);
}

TEST_CASE("config validation") {
    FillDistanceObjective obj(unit_box(2));
    PdmConfig cfg;
    cfg.tol = -1.0;
    CHECK_THROWS_AS(pdm_run(obj, unit_box(2), cfg), std::invalid_argument);
    cfg.tol = 1.0;
    cfg.max_iters = 0;
    CHECK_THROWS_AS(pdm_run(obj, unit_box(2), cfg), std::invalid_argument);
    cfg.max_iters = 1;
    cfg.initial_point = Vector{0.0, 0.5}; // on the boundary
    CHECK_THROWS_AS(pdm_run(obj, unit_box(2), cfg), std::invalid_argument);
}
