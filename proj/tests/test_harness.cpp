#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "hermite/errors.hpp"
#include "hermite/harness.hpp"

using namespace hermite;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small(ExperimentKind kind) {
  ExperimentConfig c;
  c.qValues = {2};
  c.hValues = {0.8};
  c.nValues = {16, 32, 64};
  c.replications = 6;
  c.oversampling = 8;
  c.seed = 2024;
  c.experimentKind = kind;
  return c;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "hermite_harness_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("config validation") {
  auto c = small(ExperimentKind::consistency);
  CHECK_NOTHROW(validate(c));
  auto bad = c;
  bad.replications = 1;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = c;
  bad.nValues = {16, 16};
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad.nValues = {32, 16};
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad.nValues = {24};
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = c;
  bad.hValues = {1.2};
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = c;
  bad.experimentKind = ExperimentKind::cltQ1;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = c;
  bad.qValues = {1};
  bad.hValues = {0.7};
  bad.experimentKind = ExperimentKind::rosenblattLimit;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad = c;
  bad.qValues.clear();
  CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("resource ceilings are checked before any work") {
  auto c = small(ExperimentKind::consistency);
  c.nValues = {1 << 20};
  c.oversampling = 64;
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
  c = small(ExperimentKind::consistency);
  c.memoryBudget = 1024;
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
}

TEST_CASE("runs are deterministic and independent of the worker count") {
  auto c = small(ExperimentKind::varianceScaling);
  c.replications = 2;
  c.nValues = {32};
  CHECK(run_experiment(c) == run_experiment(c));

  c = small(ExperimentKind::varianceScaling);
  c.workers = 1;
  const auto one = run_experiment(c);
  c.workers = 3;
  const auto three = run_experiment(c);
  CHECK(one == three);
  REQUIRE(one.size() == 3);
  CHECK(one[0].N == 16);
  CHECK(one[2].N == 64);
  REQUIRE(one[0].slope.has_value());
  CHECK(one[0].slope->slope == one[2].slope->slope);

  c.seed = 2025;
  CHECK(run_experiment(c)[0].perReplicate != one[0].perReplicate);
}

TEST_CASE("every kind tracks its statistic") {
  for (auto kind : {ExperimentKind::consistency, ExperimentKind::varianceScaling, ExperimentKind::rosenblattLimit,
                    ExperimentKind::estimatorLimit, ExperimentKind::fourthMoment}) {
    const auto res = run_experiment(small(kind));
    REQUIRE(res.size() == 3);
    for (const auto& r : res) {
      CHECK(r.summary.count(tracked_statistic(kind)) == 1);
      CHECK(r.perReplicate.size() == 6);
      CHECK(max_identity_ulps(r) <= 8);
      const bool limit = kind == ExperimentKind::rosenblattLimit || kind == ExperimentKind::estimatorLimit;
      CHECK(r.ks.has_value() == limit);
      if (limit) {
        CHECK(r.ks->sizeA == 6);
        CHECK(r.ks->sizeB == 6);
      }
    }
    CHECK(parse_experiment_kind(to_string(kind)) == kind);
  }
  auto c = small(ExperimentKind::cltQ1);
  c.qValues = {1};
  c.hValues = {0.6};
  const auto res = run_experiment(c);
  const auto xs = statistic_samples(res[1], "sqrt_n_v_n");
  CHECK(xs[0] == doctest::Approx(std::sqrt(32.0) * res[1].perReplicate[0].vN));
  CHECK_THROWS_AS(parse_experiment_kind("bogus"), ConfigError);
}

TEST_CASE("consistency experiment error shrinks with N") {
  ExperimentConfig c;
  c.qValues = {2};
  c.hValues = {0.8};
  c.nValues = {256, 1024, 4096};
  c.replications = 100;
  c.seed = 11;
  c.experimentKind = ExperimentKind::consistency;
  const auto res = run_experiment(c);
  CHECK(res[0].summary.at("abs_error").mean > res[1].summary.at("abs_error").mean);
  CHECK(res[1].summary.at("abs_error").mean > res[2].summary.at("abs_error").mean);
}

TEST_CASE("variance scaling slope matches the limit exponent") {
  ExperimentConfig c;
  c.qValues = {2};
  c.hValues = {0.8};
  c.nValues = {256, 1024, 4096};
  c.replications = 300;
  c.seed = 12;
  c.experimentKind = ExperimentKind::varianceScaling;
  const auto res = run_experiment(c);
  REQUIRE(res[0].slope.has_value());
  CHECK(std::abs(res[0].slope->slope - (-0.4)) < 0.15);
}

TEST_CASE("results round trip through JSON and CSV") {
  auto c = small(ExperimentKind::rosenblattLimit);
  c.hValues = {0.7, 0.8};
  const auto res = run_experiment(c);
  const auto path = scratch("results.json");
  persist_results(res, path);
  const auto back = load_results(path);
  CHECK(back == res);
  for (const auto& r : back) CHECK(summarize(r.kind, r.q, r.H, r.perReplicate) == r.summary);

  const auto csv = scratch("summary.csv");
  write_summary_csv(res, csv);
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "q,H,N,stat,mean,var,skew,kurt,slope,slope_se,ks");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == static_cast<int>(res.size()));

  {
    std::ofstream out(scratch("future.json"));
    out << R"({"schema_version": 99, "results": []})";
  }
  CHECK_THROWS_AS(load_results(scratch("future.json")), SchemaVersionError);
  CHECK_THROWS(load_results(scratch("missing.json")));
}

TEST_CASE("config JSON") {
  auto c = small(ExperimentKind::fourthMoment);
  c.seed = 0xfedcba9876543210ULL;
  const auto back = config_from_json(config_to_json(c));
  CHECK(back.seed == c.seed);
  CHECK(back.nValues == c.nValues);
  CHECK(back.hValues == c.hValues);
  CHECK(back.experimentKind == c.experimentKind);
  CHECK(back.oversampling == c.oversampling);

  const auto minimal = config_from_json(
      R"({"q_values":[1],"h_values":[0.6],"n_values":[64,128],"replications":10,"experiment_kind":"clt-q1"})");
  CHECK(minimal.oversampling == 64);
  CHECK_THROWS_AS(config_from_json(R"({"q_values":[2],"h_values":[0.8],"n_values":[64],"replications":10,
      "experiment_kind":"consistency","extra":1})"),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json("{not json"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"q_values":[2]})"), ConfigError);
}
