#include "divkit/embed.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_set>

#include "divkit/parallel.hpp"

namespace divkit {
namespace {

// Decodes the code point starting at s[i] and stores its byte length in len.
// Malformed sequences decode as a single opaque byte.
char32_t decode_utf8(std::string_view s, std::size_t i, std::size_t& len) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  auto cont = [&](std::size_t k) -> int {
    if (i + k >= s.size()) return -1;
    const auto b = static_cast<unsigned char>(s[i + k]);
    return (b & 0xC0) == 0x80 ? (b & 0x3F) : -1;
  };
  if (b0 < 0x80) {
    len = 1;
    return b0;
  }
  if ((b0 & 0xE0) == 0xC0) {
    if (int c1 = cont(1); c1 >= 0) {
      len = 2;
      return (char32_t(b0 & 0x1F) << 6) | char32_t(c1);
    }
  } else if ((b0 & 0xF0) == 0xE0) {
    int c1 = cont(1), c2 = cont(2);
    if (c1 >= 0 && c2 >= 0) {
      len = 3;
      return (char32_t(b0 & 0x0F) << 12) | (char32_t(c1) << 6) | char32_t(c2);
    }
  } else if ((b0 & 0xF8) == 0xF0) {
    int c1 = cont(1), c2 = cont(2), c3 = cont(3);
    if (c1 >= 0 && c2 >= 0 && c3 >= 0) {
      len = 4;
      return (char32_t(b0 & 0x07) << 18) | (char32_t(c1) << 12) | (char32_t(c2) << 6) |
             char32_t(c3);
    }
  }
  len = 1;
  return 0xFFFD;
}

bool is_unicode_space(char32_t c) noexcept {
  return (c >= 0x09 && c <= 0x0D) || c == 0x20 || c == 0x85 || c == 0xA0 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 || c == 0x202F ||
         c == 0x205F || c == 0x3000;
}

bool is_ascii_punct(char c) noexcept { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::string finish_token(std::string_view raw) {
  std::size_t b = 0, e = raw.size();
  while (b < e && is_ascii_punct(raw[b])) ++b;
  while (e > b && is_ascii_punct(raw[e - 1])) --e;
  std::string out(raw.substr(b, e - b));
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Corpus::Corpus(std::vector<Record> records) : records_(std::move(records)) {
  std::unordered_set<std::string_view> ids;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const Record& r = records_[i];
    if (!ids.insert(r.id).second) throw InputError("duplicate record id \"" + r.id + "\"");
    if (!r.text && !r.embedding) {
      throw InputError("record \"" + r.id + "\" has neither text nor embedding");
    }
    if (r.embedding) {
      if (r.embedding->empty()) throw InputError("record \"" + r.id + "\" has an empty embedding");
      if (!embedding_dim_) {
        embedding_dim_ = r.embedding->size();
      } else if (*embedding_dim_ != r.embedding->size()) {
        throw InputError("record \"" + r.id + "\" embedding has length " +
                         std::to_string(r.embedding->size()) + ", expected " +
                         std::to_string(*embedding_dim_));
      }
    }
  }
}

bool Corpus::all_have_text() const noexcept {
  return std::ranges::all_of(records_, [](const Record& r) { return r.text.has_value(); });
}
bool Corpus::all_have_embedding() const noexcept {
  return std::ranges::all_of(records_, [](const Record& r) { return r.embedding.has_value(); });
}
bool Corpus::all_have_batch() const noexcept {
  return std::ranges::all_of(records_, [](const Record& r) { return r.batch.has_value(); });
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t start = 0, i = 0;
  auto flush = [&](std::size_t end) {
    if (end > start) {
      std::string tok = finish_token(text.substr(start, end - start));
      if (!tok.empty()) tokens.push_back(std::move(tok));
    }
  };
  while (i < text.size()) {
    std::size_t len = 1;
    const char32_t cp = decode_utf8(text, i, len);
    if (is_unicode_space(cp)) {
      flush(i);
      start = i + len;
    }
    i += len;
  }
  flush(text.size());
  return tokens;
}

void EmbedderSpec::validate() const {
  if (kind != EmbedderKind::kHashedNgram) return;
  if (ngram_order < 1) throw ParameterError("embedder n-gram order must be >= 1");
  if (dim < 16 || (dim & (dim - 1)) != 0) {
    throw ParameterError("hashed embedder dimension must be a power of two >= 16");
  }
  if (max_tokens && *max_tokens == 0) throw ParameterError("max_tokens must be >= 1");
}

std::uint64_t feature_hash(std::string_view bytes) noexcept {
  constexpr std::uint64_t kPrime = 0x100000001B3ULL;
  constexpr std::string_view kSeed = "divkit-hash-v1";
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : kSeed) h = (h ^ static_cast<unsigned char>(c)) * kPrime;
  for (char c : bytes) h = (h ^ static_cast<unsigned char>(c)) * kPrime;
  return splitmix64(h);
}

std::vector<double> hash_text(std::string_view text, const EmbedderSpec& spec) {
  std::vector<std::string> tokens = tokenize(text);
  if (spec.max_tokens && tokens.size() > *spec.max_tokens) tokens.resize(*spec.max_tokens);

  std::vector<double> v(spec.dim, 0.0);
  const std::uint64_t mask = spec.dim - 1;
  std::string gram;
  for (int order = 1; order <= spec.ngram_order; ++order) {
    const auto len = static_cast<std::size_t>(order);
    for (std::size_t s = 0; s + len <= tokens.size(); ++s) {
      gram.clear();
      gram.push_back(static_cast<char>('0' + order % 10));
      for (std::size_t k = 0; k < len; ++k) {
        gram.push_back('\x1f');
        gram += tokens[s + k];
      }
      const std::uint64_t h = feature_hash(gram);
      v[h & mask] += (h >> 63) ? -1.0 : 1.0;
    }
  }
  return v;
}

std::vector<std::size_t> normalize_rows(Matrix& m) {
  std::vector<std::size_t> zero_rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = m.row(i);
    const double norm = std::sqrt(squared_norm(row));
    if (norm == 0.0) {
      zero_rows.push_back(i);
      continue;
    }
    for (double& x : row) x /= norm;
  }
  return zero_rows;
}

Embedding embed_corpus(const Corpus& corpus, const EmbedderSpec& spec) {
  spec.validate();
  if (corpus.empty()) throw InputError("cannot embed an empty corpus");

  Matrix m;
  if (spec.kind == EmbedderKind::kHashedNgram) {
    for (const Record& r : corpus.records()) {
      if (!r.text) throw InputError("record \"" + r.id + "\" has no text to embed");
    }
    m = Matrix(corpus.size(), spec.dim);
    parallel_for(corpus.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        std::vector<double> v = hash_text(*corpus[i].text, spec);
        std::ranges::copy(v, m.row(i).begin());
      }
    });
  } else {
    if (!corpus.all_have_embedding()) {
      for (const Record& r : corpus.records()) {
        if (!r.embedding) throw InputError("record \"" + r.id + "\" has no embedding");
      }
    }
    const std::size_t d = *corpus.embedding_dim();
    m = Matrix(corpus.size(), d);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      std::ranges::copy(*corpus[i].embedding, m.row(i).begin());
    }
  }

  std::vector<std::size_t> zero_rows;
  if (spec.normalize) {
    zero_rows = normalize_rows(m);
  } else {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (squared_norm(m.row(i)) == 0.0) zero_rows.push_back(i);
    }
  }
  return {EmbeddingMatrix(std::move(m)), std::move(zero_rows)};
}

}  // namespace divkit
