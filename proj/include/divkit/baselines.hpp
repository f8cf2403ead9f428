#pragma once

// Comparison metrics: VendiScore, distinct-n and K-means inertia.

#include <cstdint>
#include <optional>
#include <vector>

#include "divkit/core.hpp"
#include "divkit/embed.hpp"
#include "divkit/kernel.hpp"

namespace divkit {

struct VendiParams {
  KernelSpec kernel{};
  /// Use the d x d Gram route. Unset: on when the kernel is the inner product and n > d.
  std::optional<bool> fast_gram_path;
};

/// Ascending eigenvalues of a symmetric matrix.
std::vector<double> symmetric_eigenvalues(const Matrix& m);

/// exp(-sum lambda log lambda) with 0 log 0 = 0. Eigenvalues in [-1e-8, 0) count
/// as zero; anything more negative throws NumericalError.
double exp_entropy(std::span<const double> eigenvalues);

/// exp of the Shannon entropy of the spectrum of K / n.
DiversityReport vendi_score(const EmbeddingMatrix& h, const VendiParams& params = {});

/// Ratio of unique to total n-grams over the corpus texts. N-grams never span
/// two records.
DiversityReport distinct_n(const Corpus& corpus, int n_gram = 5);

struct KMeansParams {
  std::size_t k = 10;
  int max_iters = 100;
  std::uint64_t seed = 0;
  int n_init = 4;

  void validate(std::size_t n) const;
};

struct KMeansResult {
  Matrix centroids;
  std::vector<std::size_t> labels;
  double inertia = 0.0;
  int iterations = 0;
};

/// Lloyd's algorithm with k-means++ seeding; the best of n_init seeded runs by
/// inertia (ties go to the lower run index).
KMeansResult kmeans(const EmbeddingMatrix& h, const KMeansParams& params);

/// Sum of squared distances from each sample to its cluster centroid.
DiversityReport kmeans_inertia(const EmbeddingMatrix& h, const KMeansParams& params = {});

}  // namespace divkit
