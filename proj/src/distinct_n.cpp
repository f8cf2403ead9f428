#include <unordered_set>

#include "divkit/baselines.hpp"
#include "divkit/parallel.hpp"

namespace divkit {
namespace {

// Length-prefixed join, so distinct token sequences never collide.
std::string encode_ngram(std::span<const std::string> tokens) {
  std::string key;
  for (const std::string& t : tokens) {
    key += std::to_string(t.size());
    key.push_back(':');
    key += t;
  }
  return key;
}

}  // namespace

DiversityReport distinct_n(const Corpus& corpus, int n_gram) {
  if (n_gram < 1) throw ParameterError("distinct-n order must be >= 1");
  if (corpus.empty()) throw InputError("distinct-n needs a non-empty corpus");
  for (const Record& r : corpus.records()) {
    if (!r.text) throw InputError("distinct-n: record \"" + r.id + "\" has no text");
  }

  DiversityReport report;
  report.method = "distinct-n";
  report.n = corpus.size();
  report.params["ngram"] = std::int64_t{n_gram};

  const auto order = static_cast<std::size_t>(n_gram);
  std::vector<std::string> grams;
  std::size_t token_count = 0;
  timed(report.timings_ms[stage::kRepresentation], [&] {
    for (const Record& r : corpus.records()) {
      const std::vector<std::string> tokens = tokenize(*r.text);
      token_count += tokens.size();
      for (std::size_t s = 0; s + order <= tokens.size(); ++s) {
        grams.push_back(encode_ngram(std::span(tokens).subspan(s, order)));
      }
    }
  });
  if (token_count < order) {
    throw InputError("distinct-n: corpus has " + std::to_string(token_count) +
                     " tokens, fewer than the n-gram order " + std::to_string(n_gram));
  }
  if (grams.empty()) {
    throw InputError("distinct-n: no record has at least " + std::to_string(n_gram) + " tokens");
  }

  const std::size_t unique = timed(report.timings_ms[stage::kSimilarity], [&] {
    return std::unordered_set<std::string>(grams.begin(), grams.end()).size();
  });
  report.score = timed(report.timings_ms[stage::kSummarization], [&] {
    return static_cast<double>(unique) / static_cast<double>(grams.size());
  });
  return report;
}

}  // namespace divkit
