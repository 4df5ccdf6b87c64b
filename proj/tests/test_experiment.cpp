#include "doctest.h"

#include <numbers>

#include "circinv/experiment.hpp"

using namespace circinv;
using std::numbers::pi;

namespace {
std::string base_cfg(const char* extra) {
    std::string s = R"({"symbol": {"alpha": 0.25, "theta0": 1.0471975511965976,
                        "numerator": [1.0], "denominator": [1.0]},
                       "sizes": [64, 128], "x": 0.5, "formula": "deux")";
    s += extra;
    s += "}";
    return s;
}
}  // namespace

TEST_CASE("config validation") {
    CHECK_THROWS_AS(ExperimentConfig::from_json_text("{}"), ConfigError);
    CHECK_THROWS_AS(
        ExperimentConfig::from_json_text(
            R"({"symbol": {"alpha": 0.25, "theta0": 1.0}, "sizes": [128, 64]})"),
        ConfigError);
    CHECK_THROWS_AS(
        ExperimentConfig::from_json_text(
            R"({"symbol": {"alpha": 0.25, "theta0": 1.0}, "sizes": [64], "x": 1.5})"),
        ConfigError);
    CHECK_THROWS_AS(
        ExperimentConfig::from_json_text(
            R"({"symbol": {"alpha": 0.25, "theta0": 1.0}, "sizes": [64],
                "pairs": [[0.5, 0.5]]})"),
        ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(base_cfg(R"(, "formula": "nope")")),
                    ConfigError);
    CHECK_NOTHROW(ExperimentConfig::from_json_text(base_cfg("")));
}

TEST_CASE("deterministic output across thread counts and runs") {
    auto cfg = ExperimentConfig::from_json_text(base_cfg(""));
    const auto a = run_experiment(cfg, 1).to_csv();
    const auto b = run_experiment(cfg, 8).to_csv();
    const auto c = run_experiment(cfg, 8).to_csv();
    CHECK(a == b);
    CHECK(b == c);
}

TEST_CASE("csv round trip revalidates rows") {
    auto cfg = ExperimentConfig::from_json_text(base_cfg(""));
    auto res = run_experiment(cfg, 2);
    auto rows = parse_csv(res.to_csv());
    REQUIRE(rows.size() == res.rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].N == res.rows[i].N);
        CHECK(rows[i].k == res.rows[i].k);
        CHECK(rows[i].exact_re == res.rows[i].exact_re);  // 17 digits survive
        CHECK(rows[i].status == "ok");
    }
    CHECK_THROWS_AS(parse_csv("bad header\n"), ConfigError);
}

TEST_CASE("per-row error capture instead of fail-fast") {
    // toep1 predictions require alpha > 0; the sweep must finish and record
    // the failure in the status column
    auto cfg = ExperimentConfig::from_json_text(
        R"({"symbol": {"alpha": -0.25, "theta0": 1.0471975511965976,
            "numerator": [1.0], "denominator": [1.0]},
           "sizes": [32], "pairs": [[0.25, 0.5]], "formula": "toep1"})");
    auto res = run_experiment(cfg, 2);
    REQUIRE(res.rows.size() == 1);
    CHECK(res.rows[0].status.substr(0, 6) == "error:");
}

TEST_CASE("error column decreases along the size ladder") {
    auto cfg = ExperimentConfig::from_json_text(base_cfg(""));
    cfg.sizes = {128, 256, 512};
    auto res = run_experiment(cfg, 4);
    REQUIRE(res.rows.size() == 3);
    CHECK(res.rows[1].rel_env_err < res.rows[0].rel_env_err);
    CHECK(res.rows[2].rel_env_err < res.rows[1].rel_env_err);
}

TEST_CASE("orthogonal-coefficient sweep rows") {
    auto cfg = ExperimentConfig::from_json_text(base_cfg(""));
    cfg.formula = "gegen";
    cfg.sizes = {256};
    cfg.x = 0.5;
    auto res = run_experiment(cfg, 2);
    REQUIRE(res.rows.size() == 1);
    CHECK(res.rows[0].status == "ok");
    CHECK(res.rows[0].rel_env_err < 0.10);
}

TEST_CASE("pair-rule sweep rows run concurrently") {
    auto cfg = ExperimentConfig::from_json_text(
        R"({"symbol": {"alpha": 0.25, "theta0": 1.0471975511965976,
            "numerator": [1.0], "denominator": [1.0]},
           "sizes": [128, 256], "pairs": [[0.25, 0.5], [0.3, 0.7], [0.2, 0.9]],
           "formula": "toep1"})");
    auto res = run_experiment(cfg, 8);  // exercises concurrent builds/solves
    REQUIRE(res.rows.size() == 6);
    for (const auto& r : res.rows) CHECK(r.status == "ok");
    // the documented factor-2 statement defect: predicted magnitude is about
    // twice the exact one at index pairs away from the cosine nodes
    const auto& r = res.rows[4];  // N=256, (64, 128)
    if (std::abs(r.exact_re) > 1e-6)
        CHECK(r.env_pred / r.env_exact == doctest::Approx(2.0).epsilon(0.2));
}
