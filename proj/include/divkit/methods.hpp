#pragma once

#include <string_view>

#include "divkit/baselines.hpp"
#include "divkit/dcscore.hpp"

namespace divkit {

enum class Method { kDCScore, kVendi, kDistinctN, kKMeans };

/// Accepts "dcscore", "vendi", "distinct-n", "kmeans" / "kmeans-inertia".
Method parse_method(std::string_view name);
std::string_view to_string(Method m) noexcept;

struct MethodParams {
  DCScoreParams dcscore{};
  VendiParams vendi{};
  KMeansParams kmeans{};
  int ngram = 5;
};

/// Scores an embedding matrix with any embedding-based method. distinct-n
/// works on text and is rejected here.
DiversityReport score_embeddings(const EmbeddingMatrix& h, Method method, const MethodParams& params);

}  // namespace divkit
