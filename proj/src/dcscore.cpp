#include "divkit/dcscore.hpp"

#include <cmath>
#include <unordered_map>

#include "divkit/parallel.hpp"

namespace divkit {
namespace {

void describe(DiversityReport& r, const DCScoreParams& p, std::size_t d) {
  r.params["tau"] = p.tau;
  r.params["kernel"] = std::string(to_string(p.kernel.kind));
  r.params["protocol"] = std::string(to_string(p.protocol));
  if (p.kernel.kind != KernelKind::kInnerProduct) r.params["gamma"] = p.kernel.resolved_gamma(d);
  if (p.kernel.kind == KernelKind::kPolynomial) {
    r.params["degree"] = std::int64_t{p.kernel.degree};
    r.params["coef0"] = p.kernel.coef0;
  }
}

}  // namespace

Protocol parse_protocol(std::string_view name) {
  if (name == "overall") return Protocol::kOverall;
  if (name == "batched" || name == "batch") return Protocol::kBatched;
  throw ParameterError("unknown protocol \"" + std::string(name) + "\"");
}

std::string_view to_string(Protocol p) noexcept {
  return p == Protocol::kOverall ? "overall" : "batched";
}

void DCScoreParams::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ParameterError("tau must be a positive finite number");
  kernel.validate();
}

DiversityReport dcscore(const EmbeddingMatrix& h, const DCScoreParams& params) {
  params.validate();
  DiversityReport report;
  report.method = "dcscore";
  report.n = h.n();
  describe(report, params, h.d());
  report.params["protocol"] = std::string("overall");

  double& sim_ms = report.timings_ms[stage::kSimilarity];
  double& sum_ms = report.timings_ms[stage::kSummarization];
  const KernelMatrix k = timed(sim_ms, [&] { return compute_kernel(h, params.kernel); });
  report.score = timed(sum_ms, [&] { return trace(row_softmax(k.values(), params.tau)); });
  return report;
}

std::vector<std::pair<std::string, std::vector<std::size_t>>> group_batches(
    std::span<const std::string> batches) {
  std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < batches.size(); ++i) {
    auto [it, fresh] = slot.try_emplace(batches[i], groups.size());
    if (fresh) groups.emplace_back(batches[i], std::vector<std::size_t>{});
    groups[it->second].second.push_back(i);
  }
  return groups;
}

DiversityReport dcscore_batched(const EmbeddingMatrix& h, std::span<const std::string> batches,
                                const DCScoreParams& params) {
  params.validate();
  if (batches.size() != h.n()) {
    throw InputError("batched protocol needs one batch tag per row (" + std::to_string(h.n()) +
                     " rows, " + std::to_string(batches.size()) + " tags)");
  }
  DiversityReport report;
  report.method = "dcscore";
  report.n = h.n();
  describe(report, params, h.d());
  report.params["protocol"] = std::string("batched");
  report.timings_ms[stage::kSimilarity] = 0.0;
  report.timings_ms[stage::kSummarization] = 0.0;

  std::vector<BatchScore> scores;
  double total = 0.0;
  for (const auto& [tag, rows] : group_batches(batches)) {
    const EmbeddingMatrix sub(select_rows(h.values(), rows), Unchecked{});
    const DiversityReport part = dcscore(sub, params);
    for (const auto& [stage_name, ms] : part.timings_ms) report.timings_ms[stage_name] += ms;
    scores.push_back({tag, rows.size(), part.score});
    total += part.score;
  }
  report.score = total / static_cast<double>(scores.size());
  report.params["batches"] = static_cast<std::int64_t>(scores.size());
  report.batch_scores = std::move(scores);
  return report;
}

DiversityReport dcscore_batched(const Corpus& corpus, const EmbedderSpec& embedder,
                                const DCScoreParams& params) {
  if (!corpus.all_have_batch()) {
    for (const Record& r : corpus.records()) {
      if (!r.batch) throw InputError("batched protocol: record \"" + r.id + "\" has no batch tag");
    }
  }
  double embed_ms = 0.0;
  const Embedding emb = timed(embed_ms, [&] { return embed_corpus(corpus, embedder); });
  std::vector<std::string> tags;
  tags.reserve(corpus.size());
  for (const Record& r : corpus.records()) tags.push_back(*r.batch);

  DiversityReport report = dcscore_batched(emb.matrix, tags, params);
  report.timings_ms[stage::kRepresentation] = embed_ms;
  for (std::size_t row : emb.zero_rows) {
    report.warnings.push_back("record \"" + corpus[row].id + "\" produced an all-zero embedding");
  }
  return report;
}

}  // namespace divkit
