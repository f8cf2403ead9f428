#include <doctest.h>

#include <cmath>

#include "divkit/harness.hpp"
#include "divkit/report_json.hpp"

using namespace divkit;

namespace {

BenchPlan small_plan() {
  BenchPlan plan;
  plan.sizes = {64, 128, 256};
  plan.dim = 16;
  plan.repeats = 3;
  return plan;
}

}  // namespace

TEST_CASE("scaling exponent recovers exact power laws") {
  const std::vector<double> n{512, 1024, 2048, 4096};
  std::vector<double> quad, cubic;
  for (double x : n) {
    quad.push_back(3e-6 * x * x);
    cubic.push_back(1e-9 * x * x * x);
  }
  CHECK(std::abs(fit_scaling_exponent(n, quad) - 2.0) <= 1e-12);
  CHECK(std::abs(fit_scaling_exponent(n, cubic) - 3.0) <= 1e-12);
}

TEST_CASE("scaling exponent errors") {
  const std::vector<double> a{1, 2, 3}, b{1, 2}, zero{1, 0, 2}, flat{2, 2, 2};
  CHECK_THROWS_AS(fit_scaling_exponent(a, b), InputError);
  CHECK_THROWS_AS(fit_scaling_exponent(b, b), InputError);
  CHECK_THROWS_AS(fit_scaling_exponent(a, zero), InputError);
  CHECK_THROWS_AS(fit_scaling_exponent(flat, a), InputError);
}

TEST_CASE("bench plan validation") {
  BenchPlan plan = small_plan();
  plan.repeats = 2;
  CHECK_THROWS_AS(plan.validate(), ParameterError);
  plan = small_plan();
  plan.sizes = {128, 64};
  CHECK_THROWS_AS(plan.validate(), ParameterError);
  plan = small_plan();
  plan.methods = {Method::kDistinctN};
  CHECK_THROWS_AS(plan.validate(), ParameterError);
  plan = small_plan();
  plan.sizes = {};
  CHECK_THROWS_AS(plan.validate(), ParameterError);
}

TEST_CASE("random_unit_rows is seeded and unit norm") {
  const EmbeddingMatrix a = random_unit_rows(50, 8, 3);
  CHECK(a == random_unit_rows(50, 8, 3));
  CHECK_FALSE(a == random_unit_rows(50, 8, 4));
  for (std::size_t i = 0; i < a.n(); ++i) CHECK(std::abs(squared_norm(a.row(i)) - 1.0) <= 1e-12);
}

TEST_CASE("bench report shape, scores and JSON") {
  const BenchPlan plan = small_plan();
  const BenchReport report = run_bench(plan);
  CHECK(report.results.size() == plan.methods.size() * plan.sizes.size() * 2);
  CHECK(report.scores.size() == plan.methods.size() * plan.sizes.size());

  MethodParams params;
  params.dcscore.kernel = plan.kernel;
  params.vendi.kernel = plan.kernel;
  for (const BenchScore& s : report.scores) {
    CHECK(s.identical_across_repeats);
    const DiversityReport direct =
        score_embeddings(random_unit_rows(s.n, plan.dim, plan.seed), parse_method(s.method), params);
    CHECK(direct.score == s.score);
  }
  for (const BenchResult& r : report.results) {
    CHECK(r.mean_ms >= 0.0);
    CHECK(r.std_ms >= 0.0);
  }
  CHECK(report.stage_means("dcscore", stage::kSummarization).size() == 3);
  CHECK(report.total_mean_ms("vendi", 128) ==
        report.find("vendi", 128, stage::kSimilarity).mean_ms +
            report.find("vendi", 128, stage::kSummarization).mean_ms);
  CHECK_THROWS_AS(report.find("vendi", 100, stage::kSimilarity), InputError);

  const nlohmann::json j = to_json(report);
  CHECK(j.at("plan").at("sizes") == nlohmann::json({64, 128, 256}));
  CHECK(j.at("plan").at("dims") == 16);
  CHECK(j.at("plan").at("repeats") == 3);
  CHECK(j.at("plan").at("kernel").at("kind") == "rbf");
  CHECK(j.at("plan").at("methods") == nlohmann::json({"dcscore", "vendi", "kmeans"}));
  CHECK(j.at("results").size() == report.results.size());
  for (const auto& r : j.at("results")) {
    for (const char* key : {"method", "n", "stage", "mean_ms", "std_ms"}) CHECK(r.contains(key));
  }
  CHECK(j.at("env").at("threads") == 1);
  CHECK(j.at("env").at("timestamp").get<std::string>().size() == 20);

  const std::string table = format_bench_table(report);
  CHECK(table.find("dcscore") != std::string::npos);
  CHECK(table.find("n=256") != std::string::npos);
}
