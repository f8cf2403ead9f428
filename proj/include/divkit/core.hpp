#pragma once

// Domain types shared by every metric: the embedding matrix H, kernel matrix
// K, classification probability matrix P, and the report each metric emits.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "divkit/error.hpp"
#include "divkit/matrix.hpp"

namespace divkit {

/// Marks constructors that skip invariant checks; only for producers that
/// establish the invariant by construction.
struct Unchecked {
  explicit Unchecked() = default;
};

/// n x d sample representations, one row per sample. Entries are finite.
class EmbeddingMatrix {
 public:
  explicit EmbeddingMatrix(Matrix values);
  EmbeddingMatrix(Matrix values, Unchecked) : values_(std::move(values)) {}

  std::size_t n() const noexcept { return values_.rows(); }
  std::size_t d() const noexcept { return values_.cols(); }
  std::span<const double> row(std::size_t i) const noexcept { return values_.row(i); }
  const Matrix& values() const noexcept { return values_; }

  bool operator==(const EmbeddingMatrix&) const = default;

 private:
  Matrix values_;
};

/// n x n pairwise similarities. Symmetric and finite.
class KernelMatrix {
 public:
  KernelMatrix(Matrix values, bool psd_declared);
  KernelMatrix(Matrix values, bool psd_declared, Unchecked)
      : values_(std::move(values)), psd_declared_(psd_declared) {}

  std::size_t n() const noexcept { return values_.rows(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_(i, j); }
  const Matrix& values() const noexcept { return values_; }
  /// True when the producing kernel guarantees positive semi-definiteness.
  bool psd_declared() const noexcept { return psd_declared_; }

 private:
  Matrix values_;
  bool psd_declared_ = false;
};

/// n x n row-stochastic matrix; entry (i, j) is the probability that sample i
/// is classified into the category of sample j.
class ProbabilityMatrix {
 public:
  explicit ProbabilityMatrix(Matrix values);
  ProbabilityMatrix(Matrix values, Unchecked) : values_(std::move(values)) {}

  std::size_t n() const noexcept { return values_.rows(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_(i, j); }
  const Matrix& values() const noexcept { return values_; }

 private:
  Matrix values_;
};

/// Row-wise softmax of logits / tau. Each row is shifted by its maximum before
/// exponentiation, so large-magnitude logits do not overflow.
ProbabilityMatrix row_softmax(const Matrix& logits, double tau);

/// Sum of the diagonal.
double trace(const ProbabilityMatrix& p) noexcept;

using ParamValue = std::variant<bool, std::int64_t, double, std::string>;

struct BatchScore {
  std::string batch;
  std::size_t n = 0;
  double score = 0.0;
};

namespace stage {
inline constexpr const char* kRepresentation = "representation";
inline constexpr const char* kSimilarity = "similarity";
inline constexpr const char* kSummarization = "summarization";
}  // namespace stage

struct DiversityReport {
  std::string method;
  std::size_t n = 0;
  std::map<std::string, ParamValue> params;
  double score = 0.0;
  std::optional<std::vector<BatchScore>> batch_scores;
  /// Stage name -> wall-clock milliseconds.
  std::map<std::string, double> timings_ms;
  std::vector<std::string> warnings;

  double total_ms() const noexcept;
};

}  // namespace divkit
