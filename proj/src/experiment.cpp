#include "copt/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "copt/eim.hpp"
#include "copt/io.hpp"
#include "copt/parallel.hpp"
#include "copt/rbm.hpp"

namespace copt {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& field, const std::string& msg) {
    throw std::invalid_argument("config field '" + field + "': " + msg);
}

double require_number(const json& j, const std::string& field) {
    if (!j.is_number()) config_error(field, "expected a number");
    return j.get<double>();
}

std::size_t require_count(const json& j, const std::string& field, std::size_t min_value) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        config_error(field, "expected a nonnegative integer");
    }
    const auto v = j.get<std::size_t>();
    if (v < min_value) {
        config_error(field, "must be >= " + std::to_string(min_value));
    }
    return v;
}

std::string require_string(const json& j, const std::string& field) {
    if (!j.is_string()) config_error(field, "expected a string");
    return j.get<std::string>();
}

Box parse_box(const json& j) {
    if (!j.is_object() || !j.contains("lower") || !j.contains("upper")) {
        config_error("box", "expected an object with 'lower' and 'upper' arrays");
    }
    Box box;
    box.lower = j.at("lower").get<Vector>();
    box.upper = j.at("upper").get<Vector>();
    try {
        validate_box(box);
    } catch (const std::exception& e) {
        config_error("box", e.what());
    }
    return box;
}

bool is_known_objective(const std::string& id) {
    return id == "fill" || id == "rb-thermal" || id == "rb-gaussian" || id == "eim-gaussian";
}

std::size_t default_grid(const std::string& id) {
    if (id == "rb-thermal") return 33;
    if (id == "rb-gaussian" || id == "eim-gaussian") return 41;
    return 0;
}

void check_objective_box(const ObjectiveSpec& spec, const Box& box, const std::string& field) {
    if (spec.id == "rb-thermal") {
        if (box.dim() < 2 || box.dim() % 2 != 0) {
            config_error(field, "rb-thermal needs an even box dimension (2 x m blocks)");
        }
    } else if (spec.id == "rb-gaussian" || spec.id == "eim-gaussian") {
        if (box.dim() != 5) {
            config_error(field, spec.id + " needs a 5-dimensional parameter box");
        }
    }
}

std::string out_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

struct ObjectiveArtifacts {
    const EimBasis* eim = nullptr;
    const ReducedBasis* rb = nullptr;
};

std::size_t basis_size(const Objective& obj) {
    if (const auto* e = obj.eim_basis()) return e->size();
    if (const auto* r = obj.reduced_basis()) return r->size();
    return 0;
}

json summary_json(const ExperimentConfig& cfg, const Objective& obj, RunStatus status,
                  const std::string& error, const std::vector<StepRecord>& trace,
                  std::size_t n_cells) {
    json s;
    s["schema"] = kSummarySchema;
    s["config"] = resolved_config_json(cfg);
    s["method"] = cfg.method;
    s["objective"] = cfg.objective.id;
    s["seed"] = cfg.seed;
    s["status"] = to_string(status);
    if (!error.empty()) s["error"] = error;
    s["steps"] = trace.size();
    s["final_gamma_size"] = obj.configuration().size();
    s["distinct_points"] = obj.distinct_points_evaluated();
    s["total_evals"] = obj.total_evaluations();
    s["final_n_basis"] = basis_size(obj);
    if (cfg.method == "gsm") {
        s["sampler"] = to_string(cfg.sampler);
        s["sample_size"] = cfg.sample_size;
    } else {
        s["n_cells"] = n_cells;
    }
    json pts = json::array();
    for (const auto& p : obj.configuration().points) pts.push_back(p);
    s["gamma"] = std::move(pts);
    return s;
}

void write_svg_steps(const std::string& out_dir, const PdmResult& res, const Box& box) {
    // Replay the refinement history; refine() hands out the same ids
    // as the original run, so intermediate divisions are exact.
    Division div = init_division(box, res.gamma.points.at(0));
    std::vector<Vector> gamma{res.gamma.points.at(0)};
    char name[32];
    std::snprintf(name, sizeof name, "step_%04zu.svg", static_cast<std::size_t>(0));
    write_text_file(out_path(out_dir, name), render_division_svg(div, gamma));
    for (std::size_t k = 0; k < res.division.history.size(); ++k) {
        refine(div, res.division.history[k].parent);
        gamma.push_back(res.gamma.points.at(k + 1));
        std::snprintf(name, sizeof name, "step_%04zu.svg", k + 1);
        write_text_file(out_path(out_dir, name), render_division_svg(div, gamma));
    }
}

} // namespace

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    if (j.contains("schema") && j.at("schema").get<std::string>() != kConfigSchema) {
        config_error("schema", std::string("expected \"") + kConfigSchema + "\"");
    }
    static const std::vector<std::string> known{
        "schema", "method", "objective", "box",       "tol",    "max_iters",
        "seed",   "gsm",    "svg_steps", "compare",   "out_dir"};
    for (const auto& [key, val] : j.items()) {
        (void)val;
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            config_error(key, "unknown field");
        }
    }

    ExperimentConfig cfg;
    if (j.contains("method")) {
        cfg.method = require_string(j.at("method"), "method");
        if (cfg.method != "pdm" && cfg.method != "gsm") {
            config_error("method", "must be 'pdm' or 'gsm'");
        }
    }

    if (!j.contains("objective")) config_error("objective", "required");
    const auto& obj = j.at("objective");
    if (!obj.is_object()) config_error("objective", "expected an object");
    if (!obj.contains("id")) config_error("objective.id", "required");
    cfg.objective.id = require_string(obj.at("id"), "objective.id");
    if (!is_known_objective(cfg.objective.id)) {
        config_error("objective.id", "unknown objective '" + cfg.objective.id + "'");
    }
    if (obj.contains("grid_n")) {
        cfg.objective.grid_n = require_count(obj.at("grid_n"), "objective.grid_n", 3);
    } else {
        cfg.objective.grid_n = default_grid(cfg.objective.id);
    }

    if (j.contains("tol")) {
        cfg.tol = require_number(j.at("tol"), "tol");
        if (cfg.tol < 0) config_error("tol", "must be nonnegative");
    }
    if (j.contains("max_iters")) cfg.max_iters = require_count(j.at("max_iters"), "max_iters", 1);
    if (j.contains("seed")) cfg.seed = require_count(j.at("seed"), "seed", 0);

    if (j.contains("gsm")) {
        const auto& g = j.at("gsm");
        if (!g.is_object()) config_error("gsm", "expected an object");
        if (g.contains("sampler")) {
            const auto s = require_string(g.at("sampler"), "gsm.sampler");
            if (s == "random") cfg.sampler = Sampler::Random;
            else if (s == "lhs") cfg.sampler = Sampler::Lhs;
            else config_error("gsm.sampler", "must be 'random' or 'lhs'");
        }
        if (g.contains("sample_size")) {
            cfg.sample_size = require_count(g.at("sample_size"), "gsm.sample_size", 0);
        }
    }
    if (j.contains("svg_steps")) {
        if (!j.at("svg_steps").is_boolean()) config_error("svg_steps", "expected a boolean");
        cfg.svg_steps = j.at("svg_steps").get<bool>();
    }

    if (j.contains("compare")) {
        const auto& c = j.at("compare");
        if (!c.is_object()) config_error("compare", "expected an object");
        CompareSpec spec;
        if (!c.contains("dims")) config_error("compare.dims", "required");
        for (const auto& dj : c.at("dims")) {
            spec.dims.push_back(require_count(dj, "compare.dims", 1));
        }
        if (spec.dims.empty()) config_error("compare.dims", "must be nonempty");
        if (c.contains("methods")) {
            for (const auto& mj : c.at("methods")) {
                const auto m = require_string(mj, "compare.methods");
                if (m != "pdm" && m != "gsm") config_error("compare.methods", "unknown method");
                spec.methods.push_back(m);
            }
        } else {
            spec.methods = {"pdm", "gsm"};
        }
        if (!c.contains("box_template")) config_error("compare.box_template", "required");
        const auto& bt = c.at("box_template");
        if (!bt.contains("lower") || !bt.contains("upper")) {
            config_error("compare.box_template", "needs 'lower' and 'upper' numbers");
        }
        spec.box_lower = require_number(bt.at("lower"), "compare.box_template.lower");
        spec.box_upper = require_number(bt.at("upper"), "compare.box_template.upper");
        if (!(spec.box_lower < spec.box_upper)) {
            config_error("compare.box_template", "needs lower < upper");
        }
        cfg.compare = std::move(spec);
        // The sweep builds per-dimension boxes; a top-level box is unused.
        if (j.contains("box")) config_error("box", "not allowed together with 'compare'");
        cfg.box = Box{{0.0}, {1.0}}; // placeholder, never used directly
    } else {
        if (!j.contains("box")) config_error("box", "required");
        cfg.box = parse_box(j.at("box"));
        check_objective_box(cfg.objective, cfg.box, "box");
        if (cfg.method == "gsm" && cfg.sample_size < 1) {
            config_error("gsm.sample_size", "must be >= 1 for a single run");
        }
    }
    return cfg;
}

json resolved_config_json(const ExperimentConfig& cfg) {
    json j;
    j["schema"] = kConfigSchema;
    j["method"] = cfg.method;
    j["objective"] = json{{"id", cfg.objective.id}};
    if (cfg.objective.grid_n) j["objective"]["grid_n"] = cfg.objective.grid_n;
    j["tol"] = cfg.tol;
    j["max_iters"] = cfg.max_iters;
    j["seed"] = cfg.seed;
    j["gsm"] = {{"sampler", to_string(cfg.sampler)}, {"sample_size", cfg.sample_size}};
    j["svg_steps"] = cfg.svg_steps;
    if (cfg.compare) {
        j["compare"] = {{"dims", cfg.compare->dims},
                        {"methods", cfg.compare->methods},
                        {"box_template",
                         {{"lower", cfg.compare->box_lower}, {"upper", cfg.compare->box_upper}}}};
    } else {
        j["box"] = {{"lower", cfg.box.lower}, {"upper", cfg.box.upper}};
    }
    return j;
}

std::unique_ptr<Objective> make_objective(const ObjectiveSpec& spec, const Box& box) {
    if (spec.id == "fill") {
        return std::make_unique<FillDistanceObjective>(box);
    }
    if (spec.id == "rb-thermal") {
        const std::size_t n = spec.grid_n ? spec.grid_n : 33;
        return make_rb_objective(make_thermal_block_provider(box.dim(), n), spec.id);
    }
    if (spec.id == "rb-gaussian") {
        const std::size_t n = spec.grid_n ? spec.grid_n : 41;
        return make_rb_objective(make_gaussian_poisson_provider(n), spec.id);
    }
    if (spec.id == "eim-gaussian") {
        const std::size_t n = spec.grid_n ? spec.grid_n : 41;
        return make_eim_objective(make_gaussian_source_family(n), spec.id);
    }
    throw std::invalid_argument("unknown objective id '" + spec.id + "'");
}

RunOutcome run_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                          std::size_t n_threads) {
    if (cfg.compare) {
        throw std::invalid_argument("run_experiment: config declares a sweep; use compare");
    }
    std::filesystem::create_directories(out_dir);
    auto objective = make_objective(cfg.objective, cfg.box);
    const std::string config_line = resolved_config_json(cfg).dump();

    RunOutcome outcome;
    std::vector<StepRecord> trace;
    std::size_t n_cells = 0;

    if (cfg.method == "pdm") {
        PdmConfig pc;
        pc.tol = cfg.tol;
        pc.max_iters = cfg.max_iters;
        auto res = pdm_run(*objective, cfg.box, pc, n_threads);
        trace = res.trace;
        outcome.status = res.status;
        outcome.error = res.error;
        n_cells = res.division.cells.size();
        write_text_file(out_path(out_dir, "division.json"),
                        division_to_json(res.division, res.gamma.points).dump(2) + "\n");
        if (cfg.svg_steps && cfg.box.dim() == 2) write_svg_steps(out_dir, res, cfg.box);
    } else {
        GsmConfig gc;
        gc.sampler = cfg.sampler;
        gc.sample_size = cfg.sample_size;
        gc.tol = cfg.tol;
        gc.max_iters = cfg.max_iters;
        gc.seed = cfg.seed;
        auto res = gsm_run(*objective, cfg.box, gc, n_threads);
        trace = res.trace;
        outcome.status = res.status;
        outcome.error = res.error;
    }

    write_text_file(out_path(out_dir, "trace.csv"), trace_to_csv(trace, config_line));
    if (const auto* eim = objective->eim_basis()) {
        write_text_file(out_path(out_dir, "eim_basis.json"), eim_to_json(*eim).dump(2) + "\n");
    }
    write_text_file(
        out_path(out_dir, "summary.json"),
        summary_json(cfg, *objective, outcome.status, outcome.error, trace, n_cells).dump(2) +
            "\n");

    outcome.gamma_size = objective->configuration().size();
    outcome.distinct_points = objective->distinct_points_evaluated();
    outcome.total_evals = objective->total_evaluations();
    outcome.final_n_basis = basis_size(*objective);
    return outcome;
}

namespace {

Box sweep_box(const CompareSpec& spec, std::size_t dim) {
    Box box;
    box.lower.assign(dim, spec.box_lower);
    box.upper.assign(dim, spec.box_upper);
    return box;
}

// Max J over the verification sample for every prefix of gamma,
// rebuilt on a fresh objective so the curve reflects exactly the
// saved configuration order.
std::vector<double> verification_curve(const ExperimentConfig& cfg, const Box& box,
                                       const std::vector<Vector>& gamma,
                                       const std::vector<Vector>& verify_set,
                                       std::size_t n_threads) {
    auto obj = make_objective(cfg.objective, box);
    std::vector<double> curve;
    std::vector<double> vals(verify_set.size());
    for (std::size_t k = 0;; ++k) {
        parallel_for(verify_set.size(), n_threads,
                     [&](std::size_t i) { vals[i] = obj->evaluate(verify_set[i]); });
        double mx = 0.0;
        for (double v : vals) mx = std::max(mx, v);
        curve.push_back(mx);
        if (k == gamma.size()) break;
        obj->notify_appended(gamma[k]);
    }
    return curve;
}

} // namespace

std::size_t compare_experiment(const ExperimentConfig& cfg, const std::string& out_dir,
                               std::size_t n_threads, std::size_t verify_n) {
    if (!cfg.compare) {
        throw std::invalid_argument("compare_experiment: config lacks a 'compare' sweep");
    }
    std::filesystem::create_directories(out_dir);
    const CompareSpec& sweep = *cfg.compare;
    const std::string config_line = resolved_config_json(cfg).dump();

    std::ostringstream csv;
    csv << "# schema=" << kCompareSchema << "\n# config=" << config_line << "\n";
    csv << "dim,method,distinct_points,total_evals,final_n_basis\n";
    std::ostringstream verify_csv;
    verify_csv << "# schema=" << kVerifySchema << "\n# config=" << config_line << "\n";
    verify_csv << "dim,method,k,max_err\n";
    std::ostringstream log;

    std::size_t failures = 0;
    for (std::size_t dim : sweep.dims) {
        const Box box = sweep_box(sweep, dim);
        try {
            check_objective_box(cfg.objective, box, "compare.dims");
        } catch (const std::exception& e) {
            ++failures;
            log << "dim=" << dim << ": " << e.what() << "\n";
            continue;
        }
        // One fixed verification sample per dimension, shared by both
        // methods so their curves are comparable.
        std::vector<Vector> verify_set;
        if (verify_n > 0) {
            Rng vr = Rng(cfg.seed).split("verify").split(dim);
            verify_set = uniform_sample(box, verify_n, vr);
        }
        for (const std::string& method : sweep.methods) {
            try {
                auto objective = make_objective(cfg.objective, box);
                std::vector<Vector> gamma;
                RunStatus status = RunStatus::MaxIters;
                std::string error;
                if (method == "pdm") {
                    PdmConfig pc;
                    pc.tol = cfg.tol;
                    pc.max_iters = cfg.max_iters;
                    auto res = pdm_run(*objective, box, pc, n_threads);
                    status = res.status;
                    error = res.error;
                    gamma = res.gamma.points;
                } else {
                    GsmConfig gc;
                    gc.sampler = cfg.sampler;
                    gc.sample_size = cfg.sample_size ? cfg.sample_size
                                                     : (std::size_t{1} << dim); // |S| = 2^d
                    gc.tol = cfg.tol;
                    gc.max_iters = cfg.max_iters;
                    gc.seed = cfg.seed;
                    auto res = gsm_run(*objective, box, gc, n_threads);
                    status = res.status;
                    error = res.error;
                    gamma = res.gamma.points;
                }
                if (status == RunStatus::EvalError) {
                    ++failures;
                    log << "dim=" << dim << " method=" << method << ": " << error << "\n";
                }
                csv << dim << ',' << method << ',' << objective->distinct_points_evaluated()
                    << ',' << objective->total_evaluations() << ',' << basis_size(*objective)
                    << "\n";
                if (verify_n > 0) {
                    auto curve = verification_curve(cfg, box, gamma, verify_set, n_threads);
                    for (std::size_t k = 0; k < curve.size(); ++k) {
                        char buf[40];
                        std::snprintf(buf, sizeof buf, "%.17g", curve[k]);
                        verify_csv << dim << ',' << method << ',' << k << ',' << buf << "\n";
                    }
                }
            } catch (const std::exception& e) {
                ++failures;
                log << "dim=" << dim << " method=" << method << ": " << e.what() << "\n";
            }
        }
    }

    write_text_file(out_path(out_dir, "compare.csv"), csv.str());
    if (verify_n > 0) write_text_file(out_path(out_dir, "verification.csv"), verify_csv.str());
    if (failures > 0) write_text_file(out_path(out_dir, "compare.log"), log.str());
    return failures;
}

} // namespace copt
