#include "doctest.h"

#include <filesystem>
#include <sstream>

#include "copt/experiment.hpp"
#include "copt/io.hpp"

using namespace copt;
using nlohmann::json;

namespace {

json minimal_fill_config() {
    return json{{"method", "pdm"},
                {"objective", {{"id", "fill"}}},
                {"box", {{"lower", {0.0, 0.0}}, {"upper", {1.0, 1.0}}}}};
}

std::string fresh_dir(const std::string& leaf) {
    auto p = std::filesystem::temp_directory_path() / "copt_tests" / leaf;
    std::filesystem::remove_all(p);
    return p.string();
}

} // namespace

TEST_CASE("config defaults and validation") {
    auto cfg = parse_config(minimal_fill_config());
    CHECK(cfg.method == "pdm");
    CHECK(cfg.objective.id == "fill");
    CHECK(cfg.tol == 1e-6);
    CHECK(cfg.max_iters == 1000);
    CHECK(cfg.seed == 0);
    CHECK(cfg.sampler == Sampler::Random);
    CHECK(cfg.sample_size == 16);
    CHECK_FALSE(cfg.compare);

    // Resolved config parses back to an equivalent config.
    auto round = parse_config(resolved_config_json(cfg));
    CHECK(resolved_config_json(round) == resolved_config_json(cfg));

    auto bad = minimal_fill_config();
    bad["surprise"] = 1;
    CHECK_THROWS_WITH_AS(parse_config(bad), "config field 'surprise': unknown field",
                         std::invalid_argument);

    bad = minimal_fill_config();
    bad.erase("box");
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);

    bad = minimal_fill_config();
    bad["objective"]["id"] = "nope";
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);

    bad = minimal_fill_config();
    bad["tol"] = -1.0;
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);

    bad = minimal_fill_config();
    bad["objective"]["id"] = "rb-thermal";
    bad["box"] = {{"lower", {1.0, 1.0, 1.0}}, {"upper", {10.0, 10.0, 10.0}}};
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument); // odd dimension

    bad = minimal_fill_config();
    bad["objective"]["id"] = "eim-gaussian";
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument); // needs 5 axes

    bad = minimal_fill_config();
    bad["method"] = "gsm";
    bad["gsm"] = {{"sample_size", 0}};
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument); // 0 only valid in sweeps

    bad = minimal_fill_config();
    bad["compare"] = {{"dims", {2, 3}}, {"box_template", {{"lower", 0.0}, {"upper", 1.0}}}};
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument); // box + compare clash
}

TEST_CASE("objective factory") {
    const Box box5{{-1, -1, 1, 1, -0.8}, {1, 1, 3, 3, 0.8}};
    auto fill = make_objective({"fill", 0}, Box{{0, 0}, {1, 1}});
    CHECK(fill->name() == "fill");
    auto rbt = make_objective({"rb-thermal", 9}, Box{{1, 1}, {10, 10}});
    CHECK(rbt->name() == "rb-thermal");
    CHECK(rbt->reduced_basis() != nullptr);
    auto rbg = make_objective({"rb-gaussian", 9}, box5);
    CHECK(rbg->name() == "rb-gaussian");
    CHECK(rbg->reduced_basis() != nullptr);
    auto eim = make_objective({"eim-gaussian", 9}, box5);
    CHECK(eim->name() == "eim-gaussian");
    CHECK(eim->eim_basis() != nullptr);
    CHECK_THROWS_AS(make_objective({"nope", 0}, box5), std::invalid_argument);
}

TEST_CASE("run_experiment writes replayable artifacts") {
    auto j = minimal_fill_config();
    j["tol"] = 0.01;
    j["max_iters"] = 25;
    j["svg_steps"] = true;
    auto cfg = parse_config(j);

    const auto dir_a = fresh_dir("run_a");
    const auto dir_b = fresh_dir("run_b");
    auto out_a = run_experiment(cfg, dir_a, 1);
    auto out_b = run_experiment(cfg, dir_b, 4); // thread count must not matter

    CHECK(out_a.gamma_size == out_b.gamma_size);
    CHECK(out_a.total_evals == out_b.total_evals);

    const auto csv_a = read_text_file(dir_a + "/trace.csv");
    const auto csv_b = read_text_file(dir_b + "/trace.csv");
    CHECK(strip_wall_ms(csv_a) == strip_wall_ms(csv_b));

    auto division = division_from_json(json::parse(read_text_file(dir_a + "/division.json")));
    CHECK(division.cells.size() > 4);
    auto summary = json::parse(read_text_file(dir_a + "/summary.json"));
    CHECK(summary.at("schema") == kSummarySchema);
    CHECK(summary.at("final_gamma_size").get<std::size_t>() == out_a.gamma_size);
    CHECK(summary.at("gamma").size() == out_a.gamma_size);
    CHECK(summary.at("config").at("tol") == 0.01);
    CHECK(std::filesystem::exists(dir_a + "/step_0000.svg"));

    // GSM summaries expose the sampler settings.
    j = minimal_fill_config();
    j["method"] = "gsm";
    j["gsm"] = {{"sampler", "random"}, {"sample_size", 8}};
    j["tol"] = 0.0;
    const auto dir_c = fresh_dir("run_c");
    run_experiment(parse_config(j), dir_c, 1);
    auto gsm_summary = json::parse(read_text_file(dir_c + "/summary.json"));
    CHECK(gsm_summary.at("sampler") == "random");
    CHECK(gsm_summary.at("sample_size") == 8);
    CHECK(gsm_summary.at("status") == "samples_exhausted");
}

TEST_CASE("eim run saves its basis") {
    json j{{"method", "gsm"},
           {"objective", {{"id", "eim-gaussian"}, {"grid_n", 11}}},
           {"box", {{"lower", {-1.0, -1.0, 1.0, 1.0, -0.8}}, {"upper", {1.0, 1.0, 3.0, 3.0, 0.8}}}},
           {"tol", 1e-6},
           {"max_iters", 6},
           {"gsm", {{"sampler", "lhs"}, {"sample_size", 10}}}};
    const auto dir = fresh_dir("run_eim");
    auto outcome = run_experiment(parse_config(j), dir, 2);
    CHECK(outcome.final_n_basis > 0);

    auto basis = eim_from_json(json::parse(read_text_file(dir + "/eim_basis.json")));
    CHECK(basis.size() == outcome.final_n_basis);
    auto summary = json::parse(read_text_file(dir + "/summary.json"));
    CHECK(summary.at("final_n_basis").get<std::size_t>() == outcome.final_n_basis);
}

TEST_CASE("compare_experiment sweeps dimensions") {
    json j{{"objective", {{"id", "fill"}}},
           {"compare",
            {{"dims", {2, 3}},
             {"methods", {"pdm", "gsm"}},
             {"box_template", {{"lower", 0.0}, {"upper", 1.0}}}}},
           {"tol", 0.05},
           {"max_iters", 40},
           {"seed", 5},
           {"gsm", {{"sampler", "random"}, {"sample_size", 0}}}};
    auto cfg = parse_config(j);
    REQUIRE(cfg.compare);

    const auto dir = fresh_dir("cmp");
    CHECK(compare_experiment(cfg, dir, 2, 25) == 0);

    const auto csv = read_text_file(dir + "/compare.csv");
    std::vector<std::string> rows;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    }
    REQUIRE(rows.size() == 5); // header + 2 dims x 2 methods
    CHECK(rows[0] == "dim,method,distinct_points,total_evals,final_n_basis");
    CHECK(rows[2].rfind("2,gsm,4,", 0) == 0); // |S| = 2^2 exactly
    CHECK(rows[4].rfind("3,gsm,8,", 0) == 0);

    const auto verify = read_text_file(dir + "/verification.csv");
    CHECK(verify.find("dim,method,k,max_err") != std::string::npos);

    // Identical reruns produce identical sweep artifacts.
    const auto dir2 = fresh_dir("cmp2");
    compare_experiment(cfg, dir2, 1, 25);
    CHECK(read_text_file(dir2 + "/compare.csv") == csv);
    CHECK(read_text_file(dir2 + "/verification.csv") == verify);
}
