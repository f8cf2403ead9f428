#include "divkit/core.hpp"

#include <algorithm>
#include <cmath>

#include "divkit/parallel.hpp"

namespace divkit {
namespace {

bool all_finite(const Matrix& m) {
  return std::ranges::all_of(m.data(), [](double v) { return std::isfinite(v); });
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.cols() == 0) {
    throw InputError("embedding matrix must have at least one row and one column");
  }
  if (!all_finite(values_)) throw InputError("embedding matrix contains non-finite values");
}

KernelMatrix::KernelMatrix(Matrix values, bool psd_declared)
    : values_(std::move(values)), psd_declared_(psd_declared) {
  const std::size_t n = values_.rows();
  if (values_.cols() != n) throw InputError("kernel matrix must be square");
  if (!all_finite(values_)) throw InputError("kernel matrix contains non-finite values");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = values_(i, j);
      if (std::abs(a - values_(j, i)) > 1e-9 * std::max(1.0, std::abs(a))) {
        throw InputError("kernel matrix is not symmetric at (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
      }
    }
  }
}

ProbabilityMatrix::ProbabilityMatrix(Matrix values) : values_(std::move(values)) {
  const std::size_t n = values_.rows();
  if (values_.cols() != n) throw InputError("probability matrix must be square");
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (double p : values_.row(i)) {
      if (!(p >= 0.0 && p <= 1.0)) throw InputError("probability outside [0, 1] in row " +
                                                    std::to_string(i));
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw InputError("row " + std::to_string(i) + " does not sum to 1");
    }
  }
}

ProbabilityMatrix row_softmax(const Matrix& logits, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ParameterError("softmax temperature must be a positive finite number");
  }
  if (logits.rows() != logits.cols()) throw InputError("softmax logits must be square");
  if (!all_finite(logits)) throw InputError("softmax logits contain non-finite values");

  const std::size_t n = logits.rows();
  Matrix out(n, n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto in = logits.row(i);
      auto row = out.row(i);
      const double peak = *std::ranges::max_element(in);
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        row[j] = std::exp((in[j] - peak) / tau);
        sum += row[j];
      }
      for (double& v : row) v /= sum;
    }
  });
  return ProbabilityMatrix(std::move(out), Unchecked{});
}

double trace(const ProbabilityMatrix& p) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.n(); ++i) sum += p(i, i);
  return sum;
}

double DiversityReport::total_ms() const noexcept {
  double total = 0.0;
  for (const auto& [_, ms] : timings_ms) total += ms;
  return total;
}

}  // namespace divkit
