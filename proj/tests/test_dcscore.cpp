#include <doctest.h>

#include <cmath>
#include <random>

#include "axioms.hpp"
#include "divkit/dcscore.hpp"
#include "divkit/harness.hpp"
#include "divkit/parallel.hpp"
#include "test_util.hpp"

using namespace divkit;

namespace {

double oracle_score(const oracle::Rows& rows, double tau = 1.0) {
  return oracle::dcscore(oracle::inner_kernel(rows), tau);
}

}  // namespace

TEST_CASE("identical unit rows score 1") {
  const EmbeddingMatrix h(Matrix{{0.6, 0.8}, {0.6, 0.8}, {0.6, 0.8}});
  CHECK(std::abs(dcscore(h, {}).score - 1.0) <= 1e-9);
}

TEST_CASE("a single row scores exactly 1") {
  CHECK(dcscore(EmbeddingMatrix(Matrix{{3.0, -7.0, 0.5}}), {}).score == 1.0);
  for (KernelKind kind : axioms::kKinds) {
    DCScoreParams p;
    p.kernel.kind = kind;
    CHECK(dcscore(EmbeddingMatrix(Matrix{{0.2, 0.1}}), p).score == 1.0);
  }
}

TEST_CASE("2 x 2 identity gives 2e/(e+1)") {
  const double s = dcscore(EmbeddingMatrix(Matrix{{1, 0}, {0, 1}}), {}).score;
  CHECK(std::abs(s - 1.4621171572600098) <= 1e-6);
  CHECK(std::abs(s - 2.0 * std::numbers::e / (std::numbers::e + 1.0)) <= 1e-15);
}

TEST_CASE("matches the definition on random inputs") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const oracle::Rows rows = oracle::gaussian_rows(1 + rng() % 40, 1 + rng() % 16, rng, trial % 2 == 0);
    DCScoreParams p;
    p.tau = 0.5 + (rng() % 100) / 50.0;
    const double got = dcscore(testutil::embeddings(rows), p).score;
    CHECK(std::abs(got - oracle_score(rows, p.tau)) <= 1e-9 * std::max(1.0, got));
  }
}

TEST_CASE("report contents") {
  DCScoreParams p;
  p.kernel = {KernelKind::kRbf, 0.25};
  const DiversityReport r = dcscore(EmbeddingMatrix(Matrix{{1, 0}, {0, 1}, {1, 1}}), p);
  CHECK(r.method == "dcscore");
  CHECK(r.n == 3);
  CHECK(std::get<double>(r.params.at("tau")) == 1.0);
  CHECK(std::get<std::string>(r.params.at("kernel")) == "rbf");
  CHECK(std::get<double>(r.params.at("gamma")) == 0.25);
  CHECK(r.timings_ms.contains(stage::kSimilarity));
  CHECK(r.timings_ms.contains(stage::kSummarization));
  CHECK_FALSE(r.batch_scores.has_value());
}

TEST_CASE("parameter errors") {
  const EmbeddingMatrix h(Matrix{{1, 0}});
  DCScoreParams p;
  p.tau = 0.0;
  CHECK_THROWS_AS(dcscore(h, p), ParameterError);
  p.tau = -2.0;
  CHECK_THROWS_AS(dcscore(h, p), ParameterError);
  p.tau = INFINITY;
  CHECK_THROWS_AS(dcscore(h, p), ParameterError);
  CHECK_THROWS_AS(parse_protocol("streaming"), ParameterError);
  CHECK(parse_protocol("batched") == Protocol::kBatched);
}

TEST_CASE("batched: single-record batches average to 1") {
  const EmbeddingMatrix h(Matrix{{1, 0}, {0, 1}});
  const std::vector<std::string> tags{"a", "b"};
  const DiversityReport r = dcscore_batched(h, tags, {});
  CHECK(r.score == 1.0);
  REQUIRE(r.batch_scores.has_value());
  CHECK(r.batch_scores->size() == 2);
}

TEST_CASE("batched: identical batches give that batch's score") {
  const EmbeddingMatrix h(Matrix{{1, 0}, {0, 1}, {1, 0}, {0, 1}});
  const std::vector<std::string> tags{"x", "x", "y", "y"};
  const DiversityReport r = dcscore_batched(h, tags, {});
  CHECK(std::abs(r.score - 1.4621171572600098) <= 1e-6);
}

TEST_CASE("batched: sizes 2 and 3 average the per-batch oracle scores") {
  const oracle::Rows rows{{1, 0, 0}, {0.6, 0.8, 0}, {0, 0, 1}, {0, 1, 0}, {0.5, 0.5, 0.5}};
  // Tags interleave so grouping, not position, defines the batches.
  const std::vector<std::string> tags{"b", "a", "b", "a", "a"};
  const double a = oracle_score({rows[1], rows[3], rows[4]});
  const double b = oracle_score({rows[0], rows[2]});
  const DiversityReport r = dcscore_batched(testutil::embeddings(rows), tags, {});
  CHECK(std::abs(r.score - (a + b) / 2.0) <= 1e-12);
  REQUIRE(r.batch_scores.has_value());
  CHECK((*r.batch_scores)[0].batch == "b");
  CHECK((*r.batch_scores)[0].n == 2);
  CHECK(std::abs((*r.batch_scores)[0].score - b) <= 1e-12);
  CHECK((*r.batch_scores)[1].batch == "a");
  CHECK(std::abs((*r.batch_scores)[1].score - a) <= 1e-12);
}

TEST_CASE("batched corpus requires batch tags") {
  const Corpus tagged({{"1", "a cat", {}, "x"}, {"2", "a dog", {}, "x"}, {"3", "the sun", {}, "y"}});
  const DiversityReport r = dcscore_batched(tagged, EmbedderSpec::hashed(), {});
  CHECK(r.batch_scores->size() == 2);
  CHECK(r.timings_ms.contains(stage::kRepresentation));
  const Corpus untagged({{"1", "a cat", {}, "x"}, {"2", "a dog", {}, {}}});
  CHECK_THROWS_AS(dcscore_batched(untagged, EmbedderSpec::hashed(), {}), InputError);
  const std::vector<std::string> short_tags{"a"};
  CHECK_THROWS_AS(dcscore_batched(EmbeddingMatrix(Matrix{{1}, {2}}), short_tags, {}), InputError);
}

TEST_CASE("axioms: bounds, stack invariance and permutation invariance") {
  std::mt19937_64 rng(42);
  for (std::size_t i = 0; i < 200; ++i) {
    const axioms::Instance inst = axioms::random_instance(rng, i);
    const axioms::Outcome out = axioms::check_instance(inst, rng);
    INFO("instance " << i << " " << out.detail);
    CHECK(out.bounds);
    CHECK(out.stack_err <= 1e-8);
    CHECK(out.perm_err <= 1e-9);
  }
}

TEST_CASE("axioms: unnormalized inner-product rows stay in bounds") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 100; ++i) {
    const EmbeddingMatrix h = testutil::random_embeddings(1 + rng() % 32, 1 + rng() % 8, rng, false);
    const double s = dcscore(h, {}).score;
    CHECK(s >= 1.0 - 1e-6);
    CHECK(s <= static_cast<double>(h.n()) + 1e-6);
  }
}

TEST_CASE("axioms: identical rows score 1 for every kernel") {
  std::mt19937_64 rng(44);
  for (KernelKind kind : axioms::kKinds) {
    const EmbeddingMatrix one = testutil::random_embeddings(1, 7, rng);
    Matrix m(9, 7);
    for (std::size_t i = 0; i < 9; ++i) std::ranges::copy(one.row(0), m.row(i).begin());
    DCScoreParams p;
    p.kernel.kind = kind;
    CHECK(std::abs(dcscore(EmbeddingMatrix(m), p).score - 1.0) <= 1e-9);
  }
}

TEST_CASE("axioms: score decreases as a new sample rotates toward an existing one") {
  for (KernelKind kind : axioms::kKinds) {
    DCScoreParams p;
    p.kernel.kind = kind;
    CAPTURE(to_string(kind));
    CHECK(axioms::strictly_decreasing(axioms::rotation_scores(p)));
  }
}

TEST_CASE("low temperature approaches n for distinct unit rows") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    const EmbeddingMatrix h = testutil::random_embeddings(2 + rng() % 60, 2 + rng() % 30, rng);
    DCScoreParams p;
    p.tau = 1e-6;
    CHECK(std::abs(dcscore(h, p).score - static_cast<double>(h.n())) <= 1e-3);
  }
}

TEST_CASE("duplicating a random subset changes the score by under 0.5%") {
  std::mt19937_64 rng(46);
  const EmbeddingMatrix h = random_unit_rows(300, 32, 9);
  const double base = dcscore(h, {}).score;
  for (std::size_t m : {3, 30, 150, 300}) {
    auto perm = testutil::random_permutation(h.n(), rng);
    perm.resize(m);
    const EmbeddingMatrix dup(vstack(h.values(), select_rows(h.values(), perm)));
    CHECK(std::abs(dcscore(dup, {}).score - base) / base < 0.005);
  }
}

TEST_CASE("score is identical for any thread count") {
  const EmbeddingMatrix h = random_unit_rows(400, 24, 3);
  for (KernelKind kind : axioms::kKinds) {
    DCScoreParams p;
    p.kernel.kind = kind;
    set_num_threads(1);
    const double one = dcscore(h, p).score;
    set_num_threads(4);
    const double four = dcscore(h, p).score;
    set_num_threads(1);
    CHECK(one == four);
  }
}
