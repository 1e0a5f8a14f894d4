#include "copt/pdm.hpp"

#include <chrono>
#include <stdexcept>

#include "copt/parallel.hpp"

namespace copt {

CellId select_max(const Division& div, const std::map<CellId, double>& values) {
    if (div.cells.empty()) throw std::invalid_argument("select_max: empty division");
    CellId best_id = div.cells.begin()->first;
    double best = values.at(best_id);
    for (const auto& [id, cell] : div.cells) {
        double v = values.at(id);
        if (v > best) {
            best = v;
            best_id = id;
        }
    }
    return best_id;
}

PdmResult pdm_run(Objective& objective, const Box& box, const PdmConfig& cfg,
                  std::size_t n_threads) {
    if (cfg.tol < 0) throw std::invalid_argument("pdm_run: tol must be nonnegative");
    if (cfg.max_iters < 1) throw std::invalid_argument("pdm_run: max_iters must be >= 1");
    validate_box(box);

    const Vector p = cfg.initial_point.value_or(box.center());
    PdmResult result;
    result.division = init_division(box, p); // validates interiority
    objective.notify_appended(p);
    Division& div = result.division;

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&t0] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };

    while (true) {
        if (result.trace.size() >= cfg.max_iters) {
            result.status = RunStatus::MaxIters;
            break;
        }

        // Evaluate J at the barycenters (all of them by default: J
        // depends on gamma, which grew last step).
        std::vector<std::pair<CellId, const Vector*>> todo;
        todo.reserve(div.barycenters.size());
        for (const auto& [id, b] : div.barycenters) {
            if (cfg.reevaluate_all || !div.values.count(id)) todo.emplace_back(id, &b);
        }
        std::vector<double> vals(todo.size());
        try {
            parallel_for(todo.size(), n_threads,
                         [&](std::size_t i) { vals[i] = objective.evaluate(*todo[i].second); });
        } catch (const std::exception& e) {
            result.status = RunStatus::EvalError;
            result.error = e.what();
            break;
        }
        for (std::size_t i = 0; i < todo.size(); ++i) div.values[todo[i].first] = vals[i];

        const CellId selected = select_max(div, div.values);
        const double err = div.values.at(selected);
        const Vector b = div.barycenters.at(selected);

        objective.notify_appended(b);
        refine(div, selected);

        StepRecord rec;
        rec.step = result.trace.size() + 1;
        rec.selected_cell = selected;
        rec.err = err;
        rec.n_cells = div.cells.size();
        rec.distinct_points = objective.distinct_points_evaluated();
        rec.total_evals = objective.total_evaluations();
        rec.wall_ms = elapsed_ms();
        result.trace.push_back(rec);

        if (err <= cfg.tol) {
            result.status = RunStatus::TolReached;
            break;
        }
    }

    result.gamma = objective.configuration();
    return result;
}

} // namespace copt
