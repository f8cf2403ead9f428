#pragma once

// DCScore: diversity as the trace of the sample-level classification
// probability matrix P = softmax(K / tau).

#include <span>
#include <string>
#include <string_view>

#include "divkit/core.hpp"
#include "divkit/embed.hpp"
#include "divkit/kernel.hpp"

namespace divkit {

enum class Protocol { kOverall, kBatched };

Protocol parse_protocol(std::string_view name);
std::string_view to_string(Protocol p) noexcept;

struct DCScoreParams {
  double tau = 1.0;
  KernelSpec kernel{};
  Protocol protocol = Protocol::kOverall;

  void validate() const;
};

/// Overall protocol: trace(row_softmax(compute_kernel(H), tau)) over all rows.
/// The score lies in [1, n]; it is 1 when all rows are identical.
DiversityReport dcscore(const EmbeddingMatrix& h, const DCScoreParams& params);

/// Batched protocol over precomputed rows: rows sharing a tag are scored
/// together and the per-batch scores averaged without weighting. Batches are
/// reported in first-appearance order of their tags.
DiversityReport dcscore_batched(const EmbeddingMatrix& h, std::span<const std::string> batches,
                                const DCScoreParams& params);

/// Embeds the corpus, then applies the batched protocol using each record's
/// batch tag. Every record must carry one.
DiversityReport dcscore_batched(const Corpus& corpus, const EmbedderSpec& embedder,
                                const DCScoreParams& params);

/// Groups row indices by tag, in first-appearance order of the tags.
std::vector<std::pair<std::string, std::vector<std::size_t>>> group_batches(
    std::span<const std::string> batches);

}  // namespace divkit
