#pragma once

// Wall-clock benchmark of the similarity and summarization stages across
// sample sizes, plus the log-log scaling fit used to read off complexity.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "divkit/kernel.hpp"
#include "divkit/methods.hpp"

namespace divkit {

struct BenchPlan {
  std::vector<std::size_t> sizes{512, 1024, 2048, 4096};
  std::size_t dim = 64;
  KernelSpec kernel{KernelKind::kRbf};
  std::vector<Method> methods{Method::kDCScore, Method::kVendi, Method::kKMeans};
  int repeats = 5;
  std::uint64_t seed = 0;
  /// Library worker threads during the run; 1 keeps methods from interfering.
  std::size_t threads = 1;

  void validate() const;
};

struct BenchResult {
  std::string method;
  std::size_t n = 0;
  std::string stage;
  double mean_ms = 0.0;
  double std_ms = 0.0;
};

struct BenchScore {
  std::string method;
  std::size_t n = 0;
  double score = 0.0;
  /// Every timed repeat produced bitwise the same score.
  bool identical_across_repeats = true;
};

struct BenchReport {
  BenchPlan plan;
  std::vector<BenchResult> results;
  std::vector<BenchScore> scores;
  std::size_t threads = 1;
  std::string timestamp;

  /// Throws InputError when no such row exists.
  const BenchResult& find(std::string_view method, std::size_t n, std::string_view stage) const;
  /// Sum of stage means for one (method, n).
  double total_mean_ms(std::string_view method, std::size_t n) const;
  /// Stage means for one method, ordered like plan.sizes.
  std::vector<double> stage_means(std::string_view method, std::string_view stage) const;
};

/// Seeded matrix of n unit-norm rows with Gaussian directions; the bench input.
EmbeddingMatrix random_unit_rows(std::size_t n, std::size_t d, std::uint64_t seed);

BenchReport run_bench(const BenchPlan& plan);

/// Least-squares slope of log(time) against log(size).
double fit_scaling_exponent(std::span<const double> sizes, std::span<const double> times);

/// Aligned text table: one row per method, one column per size, cells are
/// total mean +- std in milliseconds.
std::string format_bench_table(const BenchReport& report);

}  // namespace divkit
