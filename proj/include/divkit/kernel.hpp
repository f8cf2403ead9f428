#pragma once

// Pairwise similarity stage: K = Kernel(H).

#include <optional>
#include <string>
#include <string_view>

#include "divkit/core.hpp"

namespace divkit {

enum class KernelKind { kInnerProduct, kRbf, kLaplacian, kPolynomial };

struct KernelSpec {
  KernelKind kind = KernelKind::kInnerProduct;
  /// Scale for rbf, laplacian and polynomial. Unset means 1/d.
  std::optional<double> gamma = std::nullopt;
  int degree = 3;
  double coef0 = 1.0;

  void validate() const;
  double resolved_gamma(std::size_t d) const;
  /// Whether the family is positive semi-definite on every valid input.
  bool psd_declared() const noexcept;
};

/// Accepts "inner" / "inner-product", "rbf", "laplacian", "poly" / "polynomial".
KernelKind parse_kernel_kind(std::string_view name);
std::string_view to_string(KernelKind k) noexcept;

/// Entry (i, j) by family:
///   inner-product  h_i . h_j
///   rbf            exp(-gamma * |h_i - h_j|_2^2)
///   laplacian      exp(-gamma * |h_i - h_j|_1)
///   polynomial     (gamma * h_i . h_j + coef0)^degree
/// Each unordered pair is computed once and mirrored, so K is exactly symmetric.
KernelMatrix compute_kernel(const EmbeddingMatrix& h, const KernelSpec& spec);

/// H^T H (d x d). Its nonzero eigenvalues match those of H H^T, which makes it
/// the cheap route to the inner-product spectrum when n >> d.
Matrix gram_dual(const EmbeddingMatrix& h);

}  // namespace divkit
