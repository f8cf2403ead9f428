#include <algorithm>
#include <limits>
#include <random>

#include "divkit/baselines.hpp"
#include "divkit/parallel.hpp"

namespace divkit {
namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}

// Uniform in [0, 1) from the top 53 bits; identical on every standard library.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Matrix seed_plus_plus(const Matrix& x, std::size_t k, std::mt19937_64& rng) {
  const std::size_t n = x.rows();
  Matrix centroids(k, x.cols());
  std::vector<bool> chosen(n, false);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());

  auto take = [&](std::size_t c, std::size_t idx) {
    chosen[idx] = true;
    std::ranges::copy(x.row(idx), centroids.row(c).begin());
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], squared_distance(x.row(i), x.row(idx)));
    }
  };

  take(0, std::min(n - 1, static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(n))));
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = unit_uniform(rng) * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        acc += d2[i];
        pick = i;
        if (acc > target) break;
      }
    } else {
      // Fewer distinct points than clusters: fall back to the first unused row.
      for (std::size_t i = 0; i < n && pick == n; ++i) {
        if (!chosen[i]) pick = i;
      }
    }
    take(c, pick);
  }
  return centroids;
}

KMeansResult lloyd(const Matrix& x, const KMeansParams& params, std::uint64_t run) {
  std::seed_seq seq{static_cast<std::uint32_t>(params.seed),
                    static_cast<std::uint32_t>(params.seed >> 32), static_cast<std::uint32_t>(run)};
  std::mt19937_64 rng(seq);

  const std::size_t n = x.rows(), d = x.cols(), k = params.k;
  KMeansResult result;
  result.centroids = seed_plus_plus(x, k, rng);
  result.labels.assign(n, k);

  for (int it = 0; it < params.max_iters; ++it) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double dist = squared_distance(x.row(i), result.centroids.row(c));
        if (dist < best_d) {
          best_d = dist;
          best = c;
        }
      }
      if (result.labels[i] != best) {
        result.labels[i] = best;
        changed = true;
      }
    }
    result.iterations = it + 1;
    if (!changed) break;

    Matrix sums(k, d);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto s = sums.row(result.labels[i]);
      const auto row = x.row(i);
      for (std::size_t j = 0; j < d; ++j) s[j] += row[j];
      ++counts[result.labels[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;  // empty cluster keeps its centroid
      auto dst = result.centroids.row(c);
      const auto s = sums.row(c);
      for (std::size_t j = 0; j < d; ++j) dst[j] = s[j] / static_cast<double>(counts[c]);
    }
  }

  result.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    result.inertia += squared_distance(x.row(i), result.centroids.row(result.labels[i]));
  }
  return result;
}

}  // namespace

void KMeansParams::validate(std::size_t n) const {
  if (k < 1) throw ParameterError("k-means needs k >= 1");
  if (k > n) {
    throw ParameterError("k-means k=" + std::to_string(k) + " exceeds the sample count " +
                         std::to_string(n));
  }
  if (max_iters < 1) throw ParameterError("k-means max_iters must be >= 1");
  if (n_init < 1) throw ParameterError("k-means n_init must be >= 1");
}

KMeansResult kmeans(const EmbeddingMatrix& h, const KMeansParams& params) {
  params.validate(h.n());
  std::vector<KMeansResult> runs(static_cast<std::size_t>(params.n_init));
  parallel_for(runs.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) runs[r] = lloyd(h.values(), params, r);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].inertia < runs[best].inertia) best = r;
  }
  return std::move(runs[best]);
}

DiversityReport kmeans_inertia(const EmbeddingMatrix& h, const KMeansParams& params) {
  DiversityReport report;
  report.method = "kmeans";
  report.n = h.n();
  report.params["k"] = static_cast<std::int64_t>(params.k);
  report.params["max_iters"] = std::int64_t{params.max_iters};
  report.params["n_init"] = std::int64_t{params.n_init};
  report.params["seed"] = static_cast<std::int64_t>(params.seed);

  KMeansResult fit = timed(report.timings_ms[stage::kSimilarity], [&] { return kmeans(h, params); });
  report.score = timed(report.timings_ms[stage::kSummarization], [&] {
    double inertia = 0.0;
    for (std::size_t i = 0; i < h.n(); ++i) {
      inertia += squared_distance(h.row(i), fit.centroids.row(fit.labels[i]));
    }
    return inertia;
  });
  report.params["iterations"] = std::int64_t{fit.iterations};
  return report;
}

}  // namespace divkit
