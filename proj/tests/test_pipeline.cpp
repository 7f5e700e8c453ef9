#include <doctest.h>

#include <atomic>
#include <cmath>
#include <sstream>

#include "latspec/error.hpp"
#include "latspec/pipeline.hpp"

using namespace latspec;
using namespace std::complex_literals;

namespace {

RunConfig config_for(std::vector<std::uint64_t> dims, std::vector<double> probs) {
    RunConfig c;
    c.dims = std::move(dims);
    c.probs = std::move(probs);
    return c;
}

double cdf_at(const SpectralCurve& c, double x) { return step_cdf(c, x); }

} // namespace

TEST_SUITE("pipeline") {

TEST_CASE("JSON config") {
    RunConfig c;
    apply_json_config(c, R"({"dims": [30, 50], "probs": [0.7, 0.5], "trials": 7, "epsilon": 0.01,
                             "normalized": true, "threads": 2})");
    CHECK(c.dims == std::vector<std::uint64_t>{30, 50});
    CHECK(c.probs == std::vector<double>{0.7, 0.5});
    CHECK(c.trials == 7);
    CHECK(c.seed == 42);
    CHECK(c.grid_points == 2000);
    CHECK(c.epsilon == 0.01);
    CHECK(c.normalized);
    CHECK(c.threads == 2);
    apply_json_config(c, R"({"epsilon": "auto"})");
    CHECK_FALSE(c.epsilon.has_value());

    CHECK_THROWS_AS(apply_json_config(c, R"({"dimz": [3]})"), ConfigError);
    CHECK_THROWS_AS(apply_json_config(c, R"({"trials": "many"})"), ConfigError);
    CHECK_THROWS_AS(apply_json_config(c, "{not json"), ConfigError);
    CHECK_THROWS_AS(load_json_config_file("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("config validation") {
    CHECK_NOTHROW(config_for({3}, {0.5}).validate());
    CHECK_THROWS_AS(config_for({3}, {}).validate(), ConfigError);
    auto c = config_for({3}, {0.5});
    c.trials = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = config_for({3}, {0.5});
    c.epsilon = -1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("parse_complex") {
    CHECK(parse_complex("0.2+0.7i") == 0.2 + 0.7i);
    CHECK(parse_complex("-1-0.05i") == -1.0 - 0.05i);
    CHECK(parse_complex("2i") == 2.0i);
    CHECK(parse_complex("1.5") == 1.5 + 0.0i);
    CHECK(parse_complex("1e-3+2e-1i") == 1e-3 + 0.2i);
    CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
    CHECK_THROWS_AS(parse_complex("1+2"), ConfigError);
}

TEST_CASE("format_double round-trips") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("CSV layout") {
    SpectralCurve det;
    det.grid = {0.0, 0.5};
    det.density = {1.0, 2.0};
    det.cdf = {0.25, 0.75};
    SpectralCurve emp = det;
    emp.density = {3.0, 4.0};

    std::ostringstream both;
    write_csv(both, &det, &emp);
    CHECK(both.str() == "x,f_det,F_det,f_emp,F_emp\n0,1,0.25,3,0.25\n0.5,2,0.75,4,0.75\n");

    std::ostringstream only;
    write_csv(only, &det, nullptr);
    CHECK(only.str() == "x,f_det,F_det\n0,1,0.25\n0.5,2,0.75\n");

    std::ostringstream emp_only;
    write_csv(emp_only, nullptr, &emp);
    CHECK(emp_only.str().rfind("x,f_emp,F_emp\n", 0) == 0);
}

TEST_CASE("parallel_for visits every index once") {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, 4, [&](std::size_t k) { hits[k]++; });
    for (auto& h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t k) { if (k == 7) throw ConfigError("x"); }), ConfigError);
}

TEST_CASE("solve on dims (30,50)") {
    const auto r = run_solve(config_for({30, 50}, {0.7, 0.5}));
    CHECK(r.curve.grid.size() == 2000);
    CHECK(r.curve.cdf.back() >= 0.97);
    CHECK(r.curve.epsilon == doctest::Approx(2.0 * grid_spacing(r.curve.grid)));
}

TEST_CASE("simulate the full 4-cycle") {
    auto c = config_for({2, 2}, {1.0, 1.0});
    c.trials = 1;
    const auto r = run_simulate(c);
    CHECK(r.pooled.eigenvalues.size() == 4);
    CHECK(cdf_at(r.curve, -1.05) == 0.0);
    CHECK(cdf_at(r.curve, -0.5) == 0.25);
    CHECK(cdf_at(r.curve, 0.5) == 0.75);
    CHECK(cdf_at(r.curve, 1.05) == 1.0);
}

TEST_CASE("output does not depend on the thread count") {
    auto c = config_for({6, 7}, {0.6, 0.4});
    c.trials = 5;
    c.grid_points = 300;
    std::string text[2];
    for (unsigned t : {1U, 3U}) {
        c.threads = t;
        const auto r = run_compare(c);
        std::ostringstream os;
        write_csv(os, &r.deterministic, &r.empirical);
        text[t == 1 ? 0 : 1] = os.str();
    }
    CHECK(text[0] == text[1]);
}

TEST_CASE("compare with p = 1 matches after equal smoothing") {
    auto c = config_for({10, 12}, {1.0, 1.0});
    c.trials = 2;
    const auto r = run_compare(c);
    CHECK(r.smoothed_kolmogorov <= 0.02);
    CHECK(r.distances.levy <= r.distances.kolmogorov);
    CHECK_FALSE(r.normalized_levy.has_value());
}

TEST_CASE("normalized compare reports the scaled-vs-normalized distance") {
    auto c = config_for({6, 6}, {0.6, 0.6});
    c.trials = 3;
    c.normalized = true;
    c.grid_points = 400;
    const auto r = run_compare(c);
    REQUIRE(r.normalized_levy.has_value());
    CHECK(*r.normalized_levy >= 0.0);
    CHECK(*r.normalized_levy <= 1.0);
}

TEST_CASE("conditions and oracle runs") {
    const auto g = run_conditions(config_for({10, 10, 20}, {0.8, 0.7, 0.6}));
    CHECK(g.max_entry_bound == doctest::Approx(1.0 / 24.9));
    const auto pts = default_oracle_points();
    CHECK(pts.size() == 25);
    for (const auto& line : run_oracle(config_for({4, 5}, {0.7, 0.5}), {0.2 + 0.7i, -1.0 + 0.05i})) {
        CHECK(line.difference <= 1e-8);
        CHECK(line.form_residual <= 1e-6);
    }
    CHECK_THROWS_AS(run_oracle(config_for({30, 50}, {0.7, 0.5}), {0.2 + 0.7i}), SizeLimitError);
}

TEST_CASE("size limits surface as SizeLimitError") {
    auto c = config_for({70, 70}, {0.5, 0.5});
    c.trials = 1;
    CHECK_THROWS_AS(run_simulate(c), SizeLimitError);
}

} // TEST_SUITE
