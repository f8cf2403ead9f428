#pragma once

// Text representation stage: corpora, tokenization, the built-in hashed
// n-gram embedder, and embedding file formats.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "divkit/core.hpp"

namespace divkit {

struct Record {
  std::string id;
  std::optional<std::string> text;
  std::optional<std::vector<double>> embedding;
  std::optional<std::string> batch;
};

/// Ordered records. Ids are unique, every record has text or an embedding,
/// and all embeddings share one length.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Record> records);

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const Record& operator[](std::size_t i) const noexcept { return records_[i]; }
  const std::vector<Record>& records() const noexcept { return records_; }

  bool all_have_text() const noexcept;
  bool all_have_embedding() const noexcept;
  bool all_have_batch() const noexcept;
  /// Length shared by the records' embeddings, if any record carries one.
  std::optional<std::size_t> embedding_dim() const noexcept { return embedding_dim_; }

 private:
  std::vector<Record> records_;
  std::optional<std::size_t> embedding_dim_;
};

/// Lowercases ASCII, splits on Unicode whitespace, strips leading and trailing
/// ASCII punctuation, and drops tokens left empty.
std::vector<std::string> tokenize(std::string_view text);

enum class EmbedderKind { kHashedNgram, kExternal };

struct EmbedderSpec {
  EmbedderKind kind = EmbedderKind::kHashedNgram;
  /// Word n-grams of every order 1..ngram_order are hashed.
  int ngram_order = 3;
  /// Power of two, at least 16.
  std::size_t dim = 256;
  bool normalize = true;
  /// Keep only the first max_tokens tokens of each text.
  std::optional<std::size_t> max_tokens;

  static EmbedderSpec hashed(int ngram_order = 3, std::size_t dim = 256) {
    return {EmbedderKind::kHashedNgram, ngram_order, dim, true, std::nullopt};
  }
  static EmbedderSpec external(bool normalize = false) {
    return {EmbedderKind::kExternal, 3, 256, normalize, std::nullopt};
  }

  void validate() const;
};

struct Embedding {
  EmbeddingMatrix matrix;
  /// Rows that came out all-zero (no tokens); kept as zeros and never normalized.
  std::vector<std::size_t> zero_rows;
};

/// Seeded 64-bit hash used for feature hashing: FNV-1a over a fixed seed
/// prefix and the bytes, finished with the splitmix64 mixer.
std::uint64_t feature_hash(std::string_view bytes) noexcept;

/// Signed feature-hashing vector for one text.
std::vector<double> hash_text(std::string_view text, const EmbedderSpec& spec);

Embedding embed_corpus(const Corpus& corpus, const EmbedderSpec& spec);

/// Scales every nonzero row to unit Euclidean norm; returns indices of zero rows.
std::vector<std::size_t> normalize_rows(Matrix& m);

enum class FileFormat { kCsv, kF32Binary, kJsonl };

/// Parses "csv", "f32-binary" or "jsonl".
FileFormat parse_file_format(std::string_view name);
std::string_view to_string(FileFormat f) noexcept;
/// Guesses the format from the file extension (.csv, .jsonl/.json, anything else binary).
FileFormat format_from_extension(const std::filesystem::path& path);

EmbeddingMatrix load_embeddings(const std::filesystem::path& path, FileFormat format);
Corpus load_corpus(const std::filesystem::path& path);

EmbeddingMatrix parse_csv_embeddings(std::string_view content);
EmbeddingMatrix parse_f32_embeddings(std::string_view bytes);
Corpus parse_jsonl_corpus(std::string_view content);

/// Writes H in the given format. JSONL records get ids "0", "1", ... and,
/// when `batch` is set, that batch tag.
void write_embeddings(const std::filesystem::path& path, const EmbeddingMatrix& h,
                      FileFormat format, const std::optional<std::string>& batch = std::nullopt);
std::string format_csv_embeddings(const EmbeddingMatrix& h);
std::string format_f32_embeddings(const EmbeddingMatrix& h);

}  // namespace divkit
