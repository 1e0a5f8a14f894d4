#include "copt/gsm.hpp"

#include <chrono>
#include <stdexcept>

#include "copt/parallel.hpp"

namespace copt {

std::string to_string(Sampler sampler) {
    return sampler == Sampler::Random ? "random" : "lhs";
}

GsmResult gsm_run(Objective& objective, const Box& box, const GsmConfig& cfg,
                  std::size_t n_threads) {
    validate_box(box);
    if (cfg.sample_size < 1) throw std::invalid_argument("gsm_run: sample_size must be >= 1");
    Rng rng(cfg.seed);
    auto samples = cfg.sampler == Sampler::Random ? uniform_sample(box, cfg.sample_size, rng)
                                                  : lhs_sample(box, cfg.sample_size, rng);
    return gsm_run_with_samples(objective, std::move(samples), cfg, n_threads);
}

GsmResult gsm_run_with_samples(Objective& objective, std::vector<Vector> samples,
                               const GsmConfig& cfg, std::size_t n_threads) {
    if (cfg.tol < 0) throw std::invalid_argument("gsm_run: tol must be nonnegative");
    if (cfg.max_iters < 1) throw std::invalid_argument("gsm_run: max_iters must be >= 1");
    if (samples.empty()) throw std::invalid_argument("gsm_run: empty sample set");

    GsmResult result;
    result.samples = std::move(samples);
    const std::vector<Vector>& s = result.samples;
    std::vector<bool> used(s.size(), false);

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

        std::vector<std::size_t> candidates;
        candidates.reserve(s.size());
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (!used[k] && !objective.configuration().contains(s[k])) candidates.push_back(k);
        }
        if (candidates.empty()) {
            result.status = RunStatus::SamplesExhausted;
            break;
        }

        std::vector<double> vals(candidates.size());
        try {
            parallel_for(candidates.size(), n_threads,
                         [&](std::size_t i) { vals[i] = objective.evaluate(s[candidates[i]]); });
        } catch (const std::exception& e) {
            result.status = RunStatus::EvalError;
            result.error = e.what();
            break;
        }

        std::size_t best = 0;
        for (std::size_t i = 1; i < candidates.size(); ++i) {
            if (vals[i] > vals[best]) best = i; // ties keep the smallest sample index
        }
        const std::size_t chosen = candidates[best];
        const double err = vals[best];

        objective.notify_appended(s[chosen]);
        used[chosen] = true;

        StepRecord rec;
        rec.step = result.trace.size() + 1;
        rec.selected_cell = chosen;
        rec.err = err;
        rec.n_cells = candidates.size();
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
