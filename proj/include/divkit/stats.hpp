#pragma once

// Rank correlation and the dispersion-controlled synthetic generator used to
// check that a metric tracks a known diversity ordering.

#include <cstdint>
#include <span>
#include <vector>

#include "divkit/core.hpp"
#include "divkit/methods.hpp"

namespace divkit {

struct RankCorrelation {
  double rho = 0.0;
  std::size_t n_pairs = 0;
};

/// Ranks starting at 1; tied values share the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman's rho: Pearson correlation of the average-rank vectors.
/// Throws UndefinedCorrelation when either side has zero rank variance.
RankCorrelation spearman_rho(std::span<const double> x, std::span<const double> y);

struct SyntheticSpec {
  /// Noise scales, strictly increasing and positive.
  std::vector<double> levels;
  std::size_t samples_per_level = 100;
  std::size_t clusters = 5;
  std::size_t dim = 64;
  std::uint64_t seed = 7;

  void validate() const;
  /// 21 levels 0.20, 0.25, ..., 1.20 with the defaults above.
  static SyntheticSpec standard();
};

struct SyntheticLevel {
  double sigma = 0.0;
  EmbeddingMatrix embeddings;
};

/// For each level: sample i sits at anchor (i mod clusters) plus isotropic
/// Gaussian noise with expected norm sigma (per-coordinate sd sigma/sqrt(dim)),
/// then is scaled to unit norm. The anchors are random unit vectors shared by
/// all levels. Deterministic given the seed.
std::vector<SyntheticLevel> generate_synthetic(const SyntheticSpec& spec);

struct SweepCorrelation {
  RankCorrelation correlation;
  std::vector<double> sigmas;
  std::vector<double> scores;
};

/// Scores every level with `method` and rank-correlates the scores with sigma.
SweepCorrelation correlate_metric(const SyntheticSpec& spec, Method method,
                                  const MethodParams& params = {});

/// Same, over levels that were already generated.
SweepCorrelation correlate_levels(std::span<const SyntheticLevel> levels, Method method,
                                  const MethodParams& params = {});

}  // namespace divkit
