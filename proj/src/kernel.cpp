#include "divkit/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "divkit/parallel.hpp"

namespace divkit {
namespace {

double l1_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
  return s;
}

// Fills the upper triangle with entry(i, j) and mirrors it.
template <class Entry>
Matrix symmetric_fill(std::size_t n, Entry entry) {
  Matrix k(n, n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i; j < n; ++j) k(i, j) = entry(i, j);
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) k(i, j) = k(j, i);
  }
  return k;
}

}  // namespace

void KernelSpec::validate() const {
  if (gamma && !(*gamma > 0.0 && std::isfinite(*gamma))) {
    throw ParameterError("kernel gamma must be a positive finite number");
  }
  if (kind == KernelKind::kPolynomial) {
    if (degree < 1) throw ParameterError("polynomial kernel degree must be >= 1");
    if (!std::isfinite(coef0)) throw ParameterError("polynomial kernel coef0 must be finite");
  }
}

double KernelSpec::resolved_gamma(std::size_t d) const {
  return gamma ? *gamma : 1.0 / static_cast<double>(std::max<std::size_t>(d, 1));
}

bool KernelSpec::psd_declared() const noexcept {
  return kind != KernelKind::kPolynomial || coef0 >= 0.0;
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "inner" || name == "inner-product") return KernelKind::kInnerProduct;
  if (name == "rbf") return KernelKind::kRbf;
  if (name == "laplacian") return KernelKind::kLaplacian;
  if (name == "poly" || name == "polynomial") return KernelKind::kPolynomial;
  throw ParameterError("unknown kernel \"" + std::string(name) + "\"");
}

std::string_view to_string(KernelKind k) noexcept {
  switch (k) {
    case KernelKind::kInnerProduct: return "inner";
    case KernelKind::kRbf: return "rbf";
    case KernelKind::kLaplacian: return "laplacian";
    case KernelKind::kPolynomial: return "poly";
  }
  return "unknown";
}

KernelMatrix compute_kernel(const EmbeddingMatrix& h, const KernelSpec& spec) {
  spec.validate();
  const std::size_t n = h.n();
  const double gamma = spec.resolved_gamma(h.d());

  Matrix k;
  switch (spec.kind) {
    case KernelKind::kInnerProduct:
      k = symmetric_fill(n, [&](std::size_t i, std::size_t j) { return dot(h.row(i), h.row(j)); });
      break;
    case KernelKind::kRbf: {
      std::vector<double> norms(n);
      for (std::size_t i = 0; i < n; ++i) norms[i] = squared_norm(h.row(i));
      k = symmetric_fill(n, [&](std::size_t i, std::size_t j) {
        if (i == j) return 1.0;
        const double d2 = std::max(0.0, norms[i] + norms[j] - 2.0 * dot(h.row(i), h.row(j)));
        return std::exp(-gamma * d2);
      });
      break;
    }
    case KernelKind::kLaplacian:
      k = symmetric_fill(n, [&](std::size_t i, std::size_t j) {
        return std::exp(-gamma * l1_distance(h.row(i), h.row(j)));
      });
      break;
    case KernelKind::kPolynomial:
      k = symmetric_fill(n, [&](std::size_t i, std::size_t j) {
        return std::pow(gamma * dot(h.row(i), h.row(j)) + spec.coef0, spec.degree);
      });
      break;
  }
  if (!std::ranges::all_of(k.data(), [](double v) { return std::isfinite(v); })) {
    throw NumericalError("kernel matrix overflowed; reduce gamma or degree");
  }
  return KernelMatrix(std::move(k), spec.psd_declared(), Unchecked{});
}

Matrix gram_dual(const EmbeddingMatrix& h) {
  const std::size_t d = h.d();
  Matrix g(d, d);
  for (std::size_t r = 0; r < h.n(); ++r) {
    const auto row = h.row(r);
    for (std::size_t a = 0; a < d; ++a) {
      const double x = row[a];
      if (x == 0.0) continue;
      for (std::size_t b = a; b < d; ++b) g(a, b) += x * row[b];
    }
  }
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < a; ++b) g(a, b) = g(b, a);
  }
  return g;
}

}  // namespace divkit
