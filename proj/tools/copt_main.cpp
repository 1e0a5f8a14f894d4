// copt: deterministic experiment runner for greedy configuration
// optimization over polytope divisions.
//
//   copt run            --config cfg.json [--out-dir DIR] [--threads N] [--seed S]
//   copt compare        --config cfg.json [--out-dir DIR] [--threads N] [--seed S] [--verify N]
//   copt check-division --config division.json [--samples N] [--seed S]
//   copt snapshot-svg   --config division.json --out FILE
//
// Exit codes: 0 ok, 1 invariant/convergence failure, 2 config error.
// COPT_OUT_DIR and COPT_THREADS override the defaults; explicit flags
// beat both.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "copt/division.hpp"
#include "copt/experiment.hpp"
#include "copt/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

nlohmann::json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    // Parse with exceptions on: messages carry line/column positions.
    return nlohmann::json::parse(f);
}

struct CommonOpts {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::size_t> threads;
    std::optional<std::uint64_t> seed;
};

std::string resolve_out_dir(const CommonOpts& opts, const nlohmann::json& cfg_json) {
    if (opts.out_dir) return *opts.out_dir;
    if (const char* env = std::getenv("COPT_OUT_DIR")) return env;
    if (cfg_json.contains("out_dir")) return cfg_json.at("out_dir").get<std::string>();
    return "out";
}

std::size_t resolve_threads(const CommonOpts& opts) {
    if (opts.threads) return *opts.threads ? *opts.threads : 1;
    if (const char* env = std::getenv("COPT_THREADS")) {
        const long v = std::atol(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 1;
}

int cmd_run(const CommonOpts& opts) {
    const auto cfg_json = load_json(opts.config_path);
    auto cfg = copt::parse_config(cfg_json);
    if (cfg.compare) {
        std::cerr << "config declares a sweep; use 'copt compare'\n";
        return kExitConfig;
    }
    if (opts.seed) cfg.seed = *opts.seed;
    const auto out_dir = resolve_out_dir(opts, cfg_json);
    const auto outcome = copt::run_experiment(cfg, out_dir, resolve_threads(opts));
    std::cout << "status=" << copt::to_string(outcome.status)
              << " gamma=" << outcome.gamma_size
              << " distinct_points=" << outcome.distinct_points
              << " total_evals=" << outcome.total_evals << " out=" << out_dir << "\n";
    if (outcome.status == copt::RunStatus::EvalError) {
        std::cerr << "evaluation failed: " << outcome.error << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_compare(const CommonOpts& opts, std::size_t verify_n) {
    const auto cfg_json = load_json(opts.config_path);
    auto cfg = copt::parse_config(cfg_json);
    if (!cfg.compare) {
        std::cerr << "config lacks a 'compare' sweep; use 'copt run'\n";
        return kExitConfig;
    }
    if (opts.seed) cfg.seed = *opts.seed;
    const auto out_dir = resolve_out_dir(opts, cfg_json);
    const auto failures = copt::compare_experiment(cfg, out_dir, resolve_threads(opts), verify_n);
    std::cout << "rows_failed=" << failures << " out=" << out_dir << "\n";
    return failures == 0 ? kExitOk : kExitFailure;
}

int cmd_check_division(const CommonOpts& opts, std::size_t samples) {
    const auto div = copt::division_from_json(load_json(opts.config_path));
    copt::Rng rng(opts.seed.value_or(0));
    const auto report = copt::check_proper(div, rng, samples);
    std::printf("cells=%zu volume_sum_rel_err=%.3e mc_points=%zu uncovered=%zu "
                "multiply_covered_interior=%zu\n",
                div.cells.size(), report.volume_sum_rel_err, report.mc_points, report.uncovered,
                report.multiply_covered_interior);
    const bool ok = report.uncovered == 0 && report.multiply_covered_interior == 0 &&
                    report.volume_sum_rel_err <= 1e-8;
    return ok ? kExitOk : kExitFailure;
}

int cmd_snapshot_svg(const CommonOpts& opts, const std::string& out_file) {
    const auto j = load_json(opts.config_path);
    const auto div = copt::division_from_json(j);
    const auto svg = copt::render_division_svg(div, copt::gamma_from_json(j));
    copt::write_text_file(out_file, svg);
    std::cout << "wrote " << out_file << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"greedy configuration optimization over polytope divisions"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::size_t verify_n = 0;
    std::size_t samples = 100000;
    std::string out_file;

    auto add_common = [&](CLI::App* sub, bool with_out_dir) {
        sub->add_option("--config", opts.config_path, "input JSON path")->required();
        sub->add_option("--seed", opts.seed, "seed override");
        if (with_out_dir) {
            sub->add_option("--out-dir", opts.out_dir, "output directory");
            sub->add_option("--threads", opts.threads, "evaluation threads");
        }
    };

    auto* run = app.add_subcommand("run", "run one configured experiment");
    add_common(run, true);
    auto* compare = app.add_subcommand("compare", "run a dimension sweep of PDM vs GSM");
    add_common(compare, true);
    compare->add_option("--verify", verify_n, "verification sample size (0 = off)");
    auto* check = app.add_subcommand("check-division", "validate a serialized division");
    add_common(check, false);
    check->add_option("--samples", samples, "Monte-Carlo sample count");
    auto* svg = app.add_subcommand("snapshot-svg", "render a 2-d division to SVG");
    add_common(svg, false);
    svg->add_option("--out", out_file, "output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(opts);
        if (compare->parsed()) return cmd_compare(opts, verify_n);
        if (check->parsed()) return cmd_check_division(opts, samples);
        return cmd_snapshot_svg(opts, out_file);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}
