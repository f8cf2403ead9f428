#include <doctest.h>

#include <cmath>
#include <random>

#include "divkit/baselines.hpp"
#include "divkit/harness.hpp"
#include "divkit/parallel.hpp"
#include "test_util.hpp"

using namespace divkit;

namespace {

double vendi_oracle(const oracle::Rows& rows) {
  oracle::Rows k = oracle::inner_kernel(rows);
  for (auto& r : k) for (double& v : r) v /= static_cast<double>(rows.size());
  auto ev = oracle::jacobi_eigenvalues(k);
  for (double& l : ev) if (l < 0.0 && l >= -1e-8) l = 0.0;
  return oracle::exp_entropy(ev);
}

Corpus texts(std::initializer_list<const char*> items) {
  std::vector<Record> records;
  for (const char* t : items) records.push_back({std::to_string(records.size()), t, {}, {}});
  return Corpus(std::move(records));
}

VendiParams path(bool fast) {
  VendiParams p;
  p.fast_gram_path = fast;
  return p;
}

}  // namespace

TEST_CASE("vendi: identity embeddings give n") {
  const EmbeddingMatrix h(Matrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(std::abs(vendi_score(h).score - 4.0) <= 1e-9);
  CHECK(std::abs(vendi_score(h, path(false)).score - 4.0) <= 1e-9);
}

TEST_CASE("vendi: identical rows give 1") {
  const EmbeddingMatrix h(Matrix{{0.6, 0.8}, {0.6, 0.8}, {0.6, 0.8}});
  CHECK(std::abs(vendi_score(h, path(false)).score - 1.0) <= 1e-9);
  CHECK(std::abs(vendi_score(h, path(true)).score - 1.0) <= 1e-9);
}

TEST_CASE("vendi: fast Gram path matches the Jacobi oracle and the direct path") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 127, d = 1 + rng() % 16;
    const oracle::Rows rows = oracle::gaussian_rows(n, d, rng, trial % 3 != 0);
    const EmbeddingMatrix h = testutil::embeddings(rows);
    const double fast = vendi_score(h, path(true)).score;
    const double direct = vendi_score(h, path(false)).score;
    CHECK(std::abs(fast - direct) <= 1e-8);
    if (n <= 64) CHECK(std::abs(direct - vendi_oracle(rows)) <= 1e-8);
  }
  std::mt19937_64 rng2(52);
  const oracle::Rows rows = oracle::gaussian_rows(50, 4, rng2, true);
  CHECK(std::abs(vendi_score(testutil::embeddings(rows), path(true)).score - vendi_oracle(rows)) <= 1e-8);
}

TEST_CASE("vendi: default path choice") {
  const EmbeddingMatrix tall = random_unit_rows(40, 4, 1);
  CHECK(std::get<bool>(vendi_score(tall).params.at("fast_gram_path")));
  const EmbeddingMatrix wide = random_unit_rows(4, 40, 1);
  CHECK_FALSE(std::get<bool>(vendi_score(wide).params.at("fast_gram_path")));
  VendiParams rbf;
  rbf.kernel.kind = KernelKind::kRbf;
  CHECK_FALSE(std::get<bool>(vendi_score(tall, rbf).params.at("fast_gram_path")));
  rbf.fast_gram_path = true;
  CHECK_THROWS_AS(vendi_score(tall, rbf), ParameterError);
}

TEST_CASE("vendi: indefinite kernel raises a numerical error") {
  VendiParams p;
  p.kernel = {KernelKind::kPolynomial, 1.0};
  p.kernel.degree = 1;
  p.kernel.coef0 = -1.0;
  // K = x.y - 1 on orthonormal rows is [[0,-1],[-1,0]] with eigenvalue -1.
  const EmbeddingMatrix h(Matrix{{1, 0}, {0, 1}});
  CHECK_THROWS_AS(vendi_score(h, p), NumericalError);
}

TEST_CASE("exp_entropy clamps tiny negatives and rejects larger ones") {
  const std::vector<double> ok{0.5, 0.5, -1e-9};
  CHECK(std::abs(exp_entropy(ok) - 2.0) <= 1e-12);
  const std::vector<double> bad{0.5, 0.5, -1e-6};
  CHECK_THROWS_AS(exp_entropy(bad), NumericalError);
}

TEST_CASE("vendi: bounds, permutation and stack invariance") {
  std::mt19937_64 rng(53);
  const KernelKind kinds[] = {KernelKind::kInnerProduct, KernelKind::kRbf, KernelKind::kLaplacian};
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 48, d = 1 + rng() % 24;
    const EmbeddingMatrix h = testutil::random_embeddings(n, d, rng);
    VendiParams p;
    p.kernel.kind = kinds[trial % 3];
    const double s = vendi_score(h, p).score;
    CHECK(s >= 1.0 - 1e-6);
    CHECK(s <= static_cast<double>(n) + 1e-6);
    const EmbeddingMatrix permuted(select_rows(h.values(), testutil::random_permutation(n, rng)));
    CHECK(std::abs(vendi_score(permuted, p).score - s) <= 1e-8);
    const EmbeddingMatrix stacked(vstack(h.values(), h.values()));
    CHECK(std::abs(vendi_score(stacked, p).score - s) <= 1e-6);
  }
}

TEST_CASE("symmetric_eigenvalues") {
  const auto ev = symmetric_eigenvalues(Matrix{{2, 1}, {1, 2}});
  CHECK(std::abs(ev[0] - 1.0) <= 1e-14);
  CHECK(std::abs(ev[1] - 3.0) <= 1e-14);
}

TEST_CASE("distinct-n: hand-enumerated bigrams") {
  CHECK(std::abs(distinct_n(texts({"the cat sat the cat"}), 2).score - 0.75) <= 1e-9);
}

TEST_CASE("distinct-n: all tokens distinct") {
  const Corpus c = texts({"alpha beta gamma delta epsilon zeta"});
  for (int n = 1; n <= 6; ++n) CHECK(distinct_n(c, n).score == 1.0);
}

TEST_CASE("distinct-n: a repeated record halves the unigram ratio") {
  const double single = distinct_n(texts({"the cat sat the cat"}), 1).score;
  const double twice = distinct_n(texts({"the cat sat the cat", "the cat sat the cat"}), 1).score;
  CHECK(std::abs(single - 0.6) <= 1e-12);
  CHECK(std::abs(twice - single / 2.0) <= 1e-12);
}

TEST_CASE("distinct-n: n-grams never span records") {
  // Spanning would add "b c" to the bigrams; without it there are two, both unique.
  CHECK(distinct_n(texts({"a b", "c d"}), 2).score == 1.0);
  CHECK(distinct_n(texts({"a b", "c d"}), 2).params.contains("ngram"));
}

TEST_CASE("distinct-n: depends only on the n-gram multiset of a record") {
  // Both texts have the bigram multiset {x y, y x, x y}.
  CHECK(distinct_n(texts({"x y x y"}), 2).score == distinct_n(texts({"y x y x"}), 2).score);
}

TEST_CASE("distinct-n: errors") {
  CHECK_THROWS_AS(distinct_n(texts({"one two"}), 5), InputError);
  CHECK_THROWS_AS(distinct_n(texts({"one two"}), 0), ParameterError);
  const Corpus no_text({{"a", {}, std::vector<double>{1.0}, {}}});
  CHECK_THROWS_AS(distinct_n(no_text, 1), InputError);
}

TEST_CASE("kmeans: 1-D {0, 2} with k = 1") {
  KMeansParams p;
  p.k = 1;
  const KMeansResult r = kmeans(EmbeddingMatrix(Matrix{{0}, {2}}), p);
  CHECK(std::abs(r.inertia - 2.0) <= 1e-9);
  CHECK(r.centroids(0, 0) == 1.0);
  CHECK(kmeans_inertia(EmbeddingMatrix(Matrix{{0}, {2}}), p).score == r.inertia);
}

TEST_CASE("kmeans: k = n gives zero inertia") {
  std::mt19937_64 rng(54);
  const EmbeddingMatrix h = testutil::random_embeddings(12, 5, rng);
  KMeansParams p;
  p.k = 12;
  CHECK(kmeans_inertia(h, p).score <= 1e-9);
}

TEST_CASE("kmeans: duplicated pairs with k = 2") {
  KMeansParams p;
  p.k = 2;
  const KMeansResult r = kmeans(EmbeddingMatrix(Matrix{{1, 2}, {1, 2}, {-3, 5}, {-3, 5}}), p);
  CHECK(r.inertia == 0.0);
  CHECK(r.labels[0] == r.labels[1]);
  CHECK(r.labels[2] == r.labels[3]);
  CHECK(r.labels[0] != r.labels[2]);
}

TEST_CASE("kmeans: parameter errors") {
  const EmbeddingMatrix h(Matrix{{0}, {1}});
  KMeansParams p;
  p.k = 3;
  CHECK_THROWS_AS(kmeans_inertia(h, p), ParameterError);
  p.k = 0;
  CHECK_THROWS_AS(kmeans_inertia(h, p), ParameterError);
  p.k = 1;
  p.n_init = 0;
  CHECK_THROWS_AS(kmeans_inertia(h, p), ParameterError);
}

TEST_CASE("kmeans: inertia is non-increasing in k") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 5; ++trial) {
    const EmbeddingMatrix h = testutil::random_embeddings(60, 4, rng, false);
    double prev = INFINITY;
    for (std::size_t k = 1; k <= 12; ++k) {
      KMeansParams p;
      p.k = k;
      p.seed = 5;
      p.n_init = 8;
      const double inertia = kmeans_inertia(h, p).score;
      CHECK(inertia <= prev + 1e-9);
      prev = inertia;
    }
  }
}

TEST_CASE("kmeans: deterministic for a seed and any thread count") {
  const EmbeddingMatrix h = random_unit_rows(300, 16, 4);
  KMeansParams p;
  p.seed = 17;
  set_num_threads(1);
  const KMeansResult a = kmeans(h, p);
  const KMeansResult b = kmeans(h, p);
  set_num_threads(4);
  const KMeansResult c = kmeans(h, p);
  set_num_threads(1);
  CHECK(a.inertia == b.inertia);
  CHECK(a.labels == b.labels);
  CHECK(a.inertia == c.inertia);
  CHECK(a.centroids == c.centroids);
}

TEST_CASE("kmeans: inertia matches a direct recomputation") {
  const EmbeddingMatrix h = random_unit_rows(100, 8, 6);
  const KMeansResult r = kmeans(h, {});
  double total = 0.0;
  for (std::size_t i = 0; i < h.n(); ++i) {
    for (std::size_t t = 0; t < h.d(); ++t) {
      const double diff = h.values()(i, t) - r.centroids(r.labels[i], t);
      total += diff * diff;
    }
  }
  CHECK(std::abs(total - r.inertia) <= 1e-9 * total);
}
