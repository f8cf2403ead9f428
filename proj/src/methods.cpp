#include "divkit/methods.hpp"

#include <string>

namespace divkit {

Method parse_method(std::string_view name) {
  if (name == "dcscore") return Method::kDCScore;
  if (name == "vendi" || name == "vendiscore") return Method::kVendi;
  if (name == "distinct-n" || name == "distinct") return Method::kDistinctN;
  if (name == "kmeans" || name == "kmeans-inertia") return Method::kKMeans;
  throw ParameterError("unknown method \"" + std::string(name) + "\"");
}

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::kDCScore: return "dcscore";
    case Method::kVendi: return "vendi";
    case Method::kDistinctN: return "distinct-n";
    case Method::kKMeans: return "kmeans";
  }
  return "unknown";
}

DiversityReport score_embeddings(const EmbeddingMatrix& h, Method method, const MethodParams& params) {
  switch (method) {
    case Method::kDCScore: return dcscore(h, params.dcscore);
    case Method::kVendi: return vendi_score(h, params.vendi);
    case Method::kKMeans: return kmeans_inertia(h, params.kmeans);
    case Method::kDistinctN:
      throw ParameterError("distinct-n scores text; it cannot be applied to an embedding matrix");
  }
  throw ParameterError("unknown method");
}

}  // namespace divkit
