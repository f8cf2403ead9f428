#include "divkit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "divkit/parallel.hpp"

namespace divkit {
namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    stream};
  return std::mt19937_64(seq);
}

constexpr std::uint32_t kAnchorStream = 0xA0C0;

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

RankCorrelation spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InputError("spearman: length mismatch (" + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw InputError("spearman: need at least two pairs");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::ranges::all_of(x, finite) || !std::ranges::all_of(y, finite)) {
    throw InputError("spearman: values must be finite");
  }

  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;  // mean of any average-rank vector
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean, dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw UndefinedCorrelation("spearman: correlation undefined, one sequence is constant");
  }
  const double rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return {rho, x.size()};
}

void SyntheticSpec::validate() const {
  if (levels.size() < 2) throw ParameterError("synthetic spec needs at least two levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0) || !std::isfinite(levels[i])) {
      throw ParameterError("synthetic levels must be positive and finite");
    }
    if (i > 0 && !(levels[i] > levels[i - 1])) {
      throw ParameterError("synthetic levels must be strictly increasing");
    }
  }
  if (samples_per_level < 2) throw ParameterError("samples_per_level must be >= 2");
  if (clusters < 1) throw ParameterError("clusters must be >= 1");
  if (dim < 2) throw ParameterError("dim must be >= 2");
}

SyntheticSpec SyntheticSpec::standard() {
  SyntheticSpec spec;
  for (int i = 0; i <= 20; ++i) spec.levels.push_back(0.2 + 0.05 * i);
  return spec;
}

std::vector<SyntheticLevel> generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const std::size_t d = spec.dim;

  Matrix anchors(spec.clusters, d);
  {
    auto rng = seeded(spec.seed, kAnchorStream);
    std::normal_distribution<double> gauss(0.0, 1.0);
    do {
      for (double& v : anchors.data()) v = gauss(rng);
    } while (!normalize_rows(anchors).empty());
  }

  std::vector<Matrix> mats(spec.levels.size());
  parallel_for(spec.levels.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t level = begin; level < end; ++level) {
      auto rng = seeded(spec.seed, static_cast<std::uint32_t>(level + 1));
      std::normal_distribution<double> gauss(0.0, spec.levels[level] / std::sqrt(double(d)));
      Matrix m(spec.samples_per_level, d);
      for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto anchor = anchors.row(i % spec.clusters);
        auto row = m.row(i);
        for (std::size_t j = 0; j < d; ++j) row[j] = anchor[j] + gauss(rng);
      }
      normalize_rows(m);
      mats[level] = std::move(m);
    }
  });

  std::vector<SyntheticLevel> out;
  out.reserve(mats.size());
  for (std::size_t level = 0; level < mats.size(); ++level) {
    out.push_back({spec.levels[level], EmbeddingMatrix(std::move(mats[level]))});
  }
  return out;
}

SweepCorrelation correlate_levels(std::span<const SyntheticLevel> levels, Method method,
                                  const MethodParams& params) {
  SweepCorrelation result;
  for (const SyntheticLevel& level : levels) {
    result.sigmas.push_back(level.sigma);
    result.scores.push_back(score_embeddings(level.embeddings, method, params).score);
  }
  result.correlation = spearman_rho(result.sigmas, result.scores);
  return result;
}

SweepCorrelation correlate_metric(const SyntheticSpec& spec, Method method,
                                  const MethodParams& params) {
  if (method == Method::kDistinctN) {
    throw ParameterError("distinct-n needs text; synthetic sweeps produce embeddings only");
  }
  if (spec.levels.size() >= 2 &&
      std::ranges::all_of(spec.levels, [&](double s) { return s == spec.levels.front(); })) {
    throw UndefinedCorrelation("correlation undefined: every dispersion level is the same");
  }
  const std::vector<SyntheticLevel> levels = generate_synthetic(spec);
  return correlate_levels(levels, method, params);
}

}  // namespace divkit
