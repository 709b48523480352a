#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "lsqb/config.hpp"
#include "lsqb/errors.hpp"
#include "lsqb/json_out.hpp"
#include "lsqb/presets.hpp"
#include "lsqb/svg.hpp"
#include "lsqb/table.hpp"

using namespace lsqb;
using nlohmann::json;

namespace {

json minimal_config() {
    return json::parse(R"({
      "schema_version": "1",
      "design": {"kind": "iid_bounded_columns", "column_stddevs": [0.4472135954999579, 1.0]},
      "noise": {"kind": "uniform", "half_width": 1.0},
      "r": 0.8, "eps": 0.01, "trials": 50, "base_seed": 5,
      "axis": {"name": "r", "values": [0.8, 1.6]},
      "bound": "main",
      "output": {"csv": "/tmp/unused.csv"}
    })");
}

}  // namespace

TEST_CASE("result CSV round-trips exactly") {
    ResultRow a;
    a.axis_name = "r";
    a.axis_value = 0.1;
    a.n_bound_real = 1.0 / 3.0;
    a.n_bound_ceil = 1;
    a.binding_term = "n3";
    a.s_opt_n2 = 0.2315993763957;
    a.p_hat = 1e-300;
    a.ci_low = 0.0;
    a.ci_high = std::nextafter(0.5, 1.0);
    a.trials = 50000;
    a.seed = std::numeric_limits<std::uint64_t>::max();
    ResultRow b = a;
    b.n_bound_real.reset();
    b.n_bound_ceil.reset();
    b.tau_opt = 0.37;
    std::ostringstream out;
    write_result_csv(out, {a, b});
    std::istringstream in(out.str());
    const auto rows = parse_result_csv(in);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == a);
    CHECK(rows[1] == b);
    CHECK(out.str().find('\r') == std::string::npos);
    CHECK(out.str().rfind("axis_name,axis_value,n_bound_real,n_bound_ceil,binding_term,s_opt_n2,s_opt_n3,"
                          "tau_opt,p_hat,ci_low,ci_high,trials,seed\n",
                          0) == 0);
}

TEST_CASE("CSV parsing rejects malformed input") {
    std::istringstream bad_header("a,b\n");
    CHECK_THROWS_AS(parse_result_csv(bad_header), ParameterError);
    std::ostringstream out;
    write_result_csv(out, {});
    std::istringstream short_row(out.str() + "r,1\n");
    CHECK_THROWS_AS(parse_result_csv(short_row), ParameterError);
}

TEST_CASE("numbers are written with 17 significant digits") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2");
}

TEST_CASE("run config parses and serializes back to the same document") {
    const auto c = parse_run_config(minimal_config());
    CHECK(c.experiment.trials == 50);
    CHECK(c.experiment.base_seed == 5);
    CHECK(c.axis.kind == AxisKind::r);
    CHECK(c.bound == Theorem::main);
    const auto again = parse_run_config(run_config_to_json(c));
    CHECK(run_config_to_json(again) == run_config_to_json(c));
}

TEST_CASE("run config rejects unknown keys and other schema versions") {
    auto j = minimal_config();
    j["extra"] = 1;
    CHECK_THROWS_AS(parse_run_config(j), ConfigError);
    j = minimal_config();
    j["noise"]["sigma"] = 1.0;
    CHECK_THROWS_AS(parse_run_config(j), ConfigError);
    j = minimal_config();
    j["schema_version"] = "2";
    CHECK_THROWS_AS(parse_run_config(j), ConfigError);
    j = minimal_config();
    j.erase("axis");
    CHECK_THROWS_AS(parse_run_config(j), ConfigError);
    j = minimal_config();
    j["eps"] = 1.5;
    CHECK_THROWS_AS(parse_run_config(j), ParameterError);
}

TEST_CASE("noise and design documents round-trip") {
    const NoiseModel models[] = {NoiseModel{GaussianNoise{0.3}}, NoiseModel{GaussianMixtureNoise{0.05, 0.2, 0.1}},
                                 NoiseModel{UniformNoise{2.0}}, NoiseModel{UniformPlusGaussianNoise{1.0, 0.5}},
                                 NoiseModel{RademacherNoise{1.0}},
                                 fir_mds({1.0, 0.5}, 0.2, NoiseModel{UniformNoise{0.1}})};
    for (const auto& m : models) CHECK(noise_from_json(noise_to_json(m)) == m);
    const DesignModel designs[] = {
        DesignModel{IidBoundedColumns{{1.0, 2.0}, EntryLaw::scaled_rademacher}},
        DesignModel{ToeplitzPilot{{1, -1, 1, 1}, 2}},
        DesignModel{FixedMatrix{Matrix(2, 1, {1.0, -2.5})}},
    };
    for (const auto& d : designs) CHECK(design_from_json(design_to_json(d)) == d);
    const auto gen = design_from_json(json::parse(R"({"kind":"toeplitz_pilot","p":3,"pilot_count":64,"pilot_seed":9})"));
    CHECK(std::get<ToeplitzPilot>(gen.family).pilots == random_bpsk_pilots(64, 9));
}

TEST_CASE("default seed honours the environment override") {
    ::unsetenv(kSeedEnvVar);
    CHECK(default_seed() == kDefaultSeed);
    ::setenv(kSeedEnvVar, "123", 1);
    CHECK(default_seed() == 123);
    ::setenv(kSeedEnvVar, "abc", 1);
    CHECK_THROWS_AS(default_seed(), ParameterError);
    ::unsetenv(kSeedEnvVar);
}

TEST_CASE("simulation tables are byte-identical across reruns") {
    const auto c = parse_run_config(minimal_config());
    auto table = [&] {
        std::vector<ResultRow> rows;
        for (const auto& r : sweep(c.experiment, c.axis, c.bound, c.eps)) rows.push_back(to_result_row(r));
        std::ostringstream out;
        write_result_csv(out, rows);
        return out.str();
    };
    CHECK(table() == table());
}

TEST_CASE("bound JSON carries terms, witnesses and metadata") {
    ProblemParams P;
    P.p = 2;
    P.R = 1.0;
    const auto b = n_main({1.0, 0.05}, P);
    const auto j = bound_to_json(b, P, {1.0, 0.05});
    CHECK(j["binding"] == "n_rand");
    CHECK(j["terms"]["n2"].is_number());
    CHECK(j["witnesses"]["tau_opt"].is_null());
    CHECK(j["metadata"]["beta_form"] == "proof");
    CHECK(j["params"]["b"].is_null());
}

TEST_CASE("SVG switches to a log axis across wide ranges") {
    const auto narrow = render_line_plot("t", "x", "y", {{"a", {1, 2}, {1, 3}}});
    const auto wide = render_line_plot("t", "x", "y", {{"a", {1, 2}, {1, 1e4}}});
    CHECK(narrow.find("log scale") == std::string::npos);
    CHECK(wide.find("log scale") != std::string::npos);
    CHECK(wide.rfind("<svg", 0) == 0);
    CHECK(render_line_plot("a<b", "x", "y", {}).find("a&lt;b") != std::string::npos);
}

TEST_CASE("figure presets carry their stated parameters") {
    CHECK(figure_ids().size() == 6);
    const auto f5 = figure_preset("fig5");
    CHECK(f5.eps == 0.01);
    CHECK(f5.variants[0].design.p() == 8);
    CHECK(subgaussian_param(f5.variants[0].noise) == doctest::Approx(0.1).epsilon(1e-12));
    const auto f1 = figure_preset("fig1");
    CHECK(f1.r == 0.01);
    CHECK(f1.variants[0].design.p() == 8);
    CHECK(subgaussian_param(f1.variants[0].noise) <= 0.1);
    CHECK(subgaussian_param(f1.variants[0].noise) > 0.0999);
    const auto f2 = figure_preset("fig2");
    const auto P2 = implied_problem_params(f2.variants[0].design, f2.variants[0].noise);
    CHECK(P2.sigma_min == doctest::Approx(0.2));
    CHECK(P2.sigma_max == doctest::Approx(1.0));
    CHECK(*P2.R == 1.0);
    CHECK_THROWS_AS(figure_preset("fig7"), ParameterError);
}

TEST_CASE("fig1 bound grows as eps shrinks") {
    const auto f = figure_preset("fig1");
    const auto P = implied_problem_params(f.variants[0].design, f.variants[0].noise);
    double prev = 0.0;
    for (double eps : f.axis.values) {  // listed from large to small
        const double n = n_main({f.r, eps}, P).n_final;
        CHECK(n >= prev);
        prev = n;
    }
}

TEST_CASE("fig3 main bound stays below the MDS bound on its grid") {
    const auto f = figure_preset("fig3");
    const auto& v = f.variants[0];
    const auto P = implied_problem_params(v.design, v.noise);
    for (double r : f.axis.values) {
        CHECK(n_main({r, f.eps}, P).n_final <= n_mds_subgaussian({r, f.eps}, P).n_final);
    }
}
