#include "divkit/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <random>
#include <sstream>

#include "divkit/parallel.hpp"

namespace divkit {
namespace {

struct ThreadScope {
  std::size_t saved = num_threads();
  explicit ThreadScope(std::size_t n) { set_num_threads(n); }
  ~ThreadScope() { set_num_threads(saved); }
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::pair<double, double> mean_std(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var = xs.size() > 1 ? var / static_cast<double>(xs.size() - 1) : 0.0;
  return {mean, std::sqrt(var)};
}

}  // namespace

void BenchPlan::validate() const {
  if (sizes.empty()) throw ParameterError("bench plan needs at least one size");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw ParameterError("bench sizes must be >= 1");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw ParameterError("bench sizes must be ascending");
  }
  if (dim < 1) throw ParameterError("bench dim must be >= 1");
  if (repeats < 3) throw ParameterError("bench repeats must be >= 3");
  if (methods.empty()) throw ParameterError("bench plan needs at least one method");
  for (Method m : methods) {
    if (m == Method::kDistinctN) throw ParameterError("distinct-n cannot be benchmarked on embeddings");
  }
  kernel.validate();
}

const BenchResult& BenchReport::find(std::string_view method, std::size_t n,
                                     std::string_view stage) const {
  for (const BenchResult& r : results) {
    if (r.method == method && r.n == n && r.stage == stage) return r;
  }
  throw InputError("no bench result for " + std::string(method) + " n=" + std::to_string(n) +
                   " stage " + std::string(stage));
}

double BenchReport::total_mean_ms(std::string_view method, std::size_t n) const {
  return find(method, n, stage::kSimilarity).mean_ms + find(method, n, stage::kSummarization).mean_ms;
}

std::vector<double> BenchReport::stage_means(std::string_view method, std::string_view stage) const {
  std::vector<double> out;
  for (std::size_t n : plan.sizes) out.push_back(find(method, n, stage).mean_ms);
  return out;
}

EmbeddingMatrix random_unit_rows(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(d)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(n, d);
  do {
    for (double& v : m.data()) v = gauss(rng);
  } while (!normalize_rows(m).empty());
  return EmbeddingMatrix(std::move(m));
}

BenchReport run_bench(const BenchPlan& plan) {
  plan.validate();
  ThreadScope scope(plan.threads);

  MethodParams params;
  params.dcscore.kernel = plan.kernel;
  params.vendi.kernel = plan.kernel;

  BenchReport report;
  report.plan = plan;
  report.threads = plan.threads;
  report.timestamp = utc_timestamp();

  for (Method method : plan.methods) {
    const std::string name(to_string(method));
    for (std::size_t n : plan.sizes) {
      const EmbeddingMatrix h = random_unit_rows(n, plan.dim, plan.seed);
      score_embeddings(h, method, params);  // warm-up, discarded

      std::vector<double> sim, summ;
      BenchScore score{name, n, 0.0, true};
      for (int r = 0; r < plan.repeats; ++r) {
        const DiversityReport rep = score_embeddings(h, method, params);
        sim.push_back(rep.timings_ms.at(stage::kSimilarity));
        summ.push_back(rep.timings_ms.at(stage::kSummarization));
        if (r == 0) {
          score.score = rep.score;
        } else if (rep.score != score.score) {
          score.identical_across_repeats = false;
        }
      }
      const auto [sim_mean, sim_std] = mean_std(sim);
      const auto [sum_mean, sum_std] = mean_std(summ);
      report.results.push_back({name, n, stage::kSimilarity, sim_mean, sim_std});
      report.results.push_back({name, n, stage::kSummarization, sum_mean, sum_std});
      report.scores.push_back(score);
    }
  }
  return report;
}

double fit_scaling_exponent(std::span<const double> sizes, std::span<const double> times) {
  if (sizes.size() != times.size()) throw InputError("scaling fit: sizes and times differ in length");
  if (sizes.size() < 3) throw InputError("scaling fit needs at least three points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (!(sizes[i] > 0.0)) throw InputError("scaling fit: sizes must be positive");
    if (!(times[i] > 0.0)) throw InputError("scaling fit: times must be positive");
    lx.push_back(std::log(sizes[i]));
    ly.push_back(std::log(times[i]));
  }
  const double k = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw InputError("scaling fit: sizes must not all be equal");
  return sxy / sxx;
}

std::string format_bench_table(const BenchReport& report) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"method"};
  for (std::size_t n : report.plan.sizes) header.push_back("n=" + std::to_string(n));
  cells.push_back(header);
  for (Method m : report.plan.methods) {
    const std::string name(to_string(m));
    std::vector<std::string> row{name};
    for (std::size_t n : report.plan.sizes) {
      const BenchResult& a = report.find(name, n, stage::kSimilarity);
      const BenchResult& b = report.find(name, n, stage::kSummarization);
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(2) << (a.mean_ms + b.mean_ms) << " +- "
           << std::sqrt(a.std_ms * a.std_ms + b.std_ms * b.std_ms);
      row.push_back(cell.str());
    }
    cells.push_back(row);
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  out << "total time (ms), kernel=" << to_string(report.plan.kernel.kind)
      << ", d=" << report.plan.dim << ", repeats=" << report.plan.repeats << "\n";
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t c = 0; c < cells[r].size(); ++c) {
      if (c == 0) {
        out << std::left << std::setw(static_cast<int>(width[c])) << cells[r][c];
      } else {
        out << "  " << std::right << std::setw(static_cast<int>(width[c])) << cells[r][c];
      }
    }
    out << "\n";
    if (r == 0) {
      std::size_t line = 0;
      for (std::size_t w : width) line += w + 2;
      out << std::string(line - 2, '-') << "\n";
    }
  }
  return out.str();
}

}  // namespace divkit
