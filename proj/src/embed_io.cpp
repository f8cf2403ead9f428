#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "divkit/embed.hpp"

namespace divkit {
namespace {

constexpr std::size_t kHeaderBytes = 16;
constexpr char kMagic[4] = {'D', 'V', 'K', '1'};

std::string_view trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

// Splits on '\n', keeping 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> split_lines(std::string_view content) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 1, start = 0;
  while (start <= content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    lines.emplace_back(line_no++, content.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

std::uint32_t read_u32_le(const unsigned char* p) noexcept {
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
         (std::uint32_t(p[3]) << 24);
}

void append_u32_le(std::string& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xFF));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw InputError("error reading " + path.string());
  return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("error writing " + path.string());
}

std::string shortest(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

FileFormat parse_file_format(std::string_view name) {
  if (name == "csv") return FileFormat::kCsv;
  if (name == "f32-binary" || name == "f32" || name == "bin") return FileFormat::kF32Binary;
  if (name == "jsonl") return FileFormat::kJsonl;
  throw ParameterError("unknown file format \"" + std::string(name) + "\"");
}

std::string_view to_string(FileFormat f) noexcept {
  switch (f) {
    case FileFormat::kCsv: return "csv";
    case FileFormat::kF32Binary: return "f32-binary";
    case FileFormat::kJsonl: return "jsonl";
  }
  return "unknown";
}

FileFormat format_from_extension(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".csv") return FileFormat::kCsv;
  if (ext == ".jsonl" || ext == ".json") return FileFormat::kJsonl;
  return FileFormat::kF32Binary;
}

EmbeddingMatrix parse_csv_embeddings(std::string_view content) {
  const auto lines = split_lines(content);
  auto it = std::ranges::find_if(lines, [](const auto& l) { return !trim(l.second).empty(); });
  if (it == lines.end()) throw FormatError("csv: missing \"n,d\" header");

  const auto [header_line, header] = *it;
  const auto comma = header.find(',');
  std::size_t n = 0, d = 0;
  if (comma == std::string_view::npos || !parse_number(header.substr(0, comma), n) ||
      !parse_number(header.substr(comma + 1), d)) {
    throw FormatError("csv line " + std::to_string(header_line) + ": malformed header, expected \"n,d\"");
  }
  if (n == 0 || d == 0) {
    throw FormatError("csv line " + std::to_string(header_line) + ": header declares an empty matrix");
  }

  std::vector<double> data;
  data.reserve(n * d);
  std::size_t rows = 0;
  for (++it; it != lines.end(); ++it) {
    const auto [line_no, raw] = *it;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::string where = "csv line " + std::to_string(line_no) + ": ";
    if (rows == n) throw FormatError(where + "more rows than the header's n=" + std::to_string(n));
    std::size_t fields = 0, start = 0;
    while (true) {
      const std::size_t end = std::min(line.find(',', start), line.size());
      double v = 0.0;
      if (!parse_number(line.substr(start, end - start), v)) {
        throw FormatError(where + "field " + std::to_string(fields + 1) + " is not a number");
      }
      if (!std::isfinite(v)) {
        throw FormatError(where + "field " + std::to_string(fields + 1) + " is not finite");
      }
      data.push_back(v);
      ++fields;
      if (end == line.size()) break;
      start = end + 1;
    }
    if (fields != d) {
      throw FormatError(where + "expected " + std::to_string(d) + " values, found " +
                        std::to_string(fields));
    }
    ++rows;
  }
  if (rows != n) {
    throw FormatError("csv: header declares " + std::to_string(n) + " rows, found " +
                      std::to_string(rows));
  }
  return EmbeddingMatrix(Matrix(n, d, std::move(data)), Unchecked{});
}

EmbeddingMatrix parse_f32_embeddings(std::string_view bytes) {
  if (bytes.size() < kHeaderBytes) {
    throw FormatError("f32-binary: file is " + std::to_string(bytes.size()) +
                      " bytes, shorter than the 16-byte header");
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  if (std::memcmp(p, kMagic, 4) != 0) throw FormatError("f32-binary offset 0: bad magic, expected \"DVK1\"");
  const std::uint32_t n = read_u32_le(p + 4);
  const std::uint32_t d = read_u32_le(p + 8);
  const std::uint32_t reserved = read_u32_le(p + 12);
  if (n == 0) throw FormatError("f32-binary offset 4: n is 0, empty dataset");
  if (d == 0) throw FormatError("f32-binary offset 8: d is 0");
  if (reserved != 0) throw FormatError("f32-binary offset 12: reserved field must be 0");

  const std::uint64_t count = std::uint64_t(n) * d;
  const std::uint64_t expected = kHeaderBytes + 4 * count;
  if (bytes.size() != expected) {
    throw FormatError("f32-binary: expected " + std::to_string(expected) + " bytes for " +
                      std::to_string(n) + "x" + std::to_string(d) + ", found " +
                      std::to_string(bytes.size()));
  }
  std::vector<double> data(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::size_t offset = kHeaderBytes + 4 * k;
    const float v = std::bit_cast<float>(read_u32_le(p + offset));
    if (!std::isfinite(v)) {
      throw FormatError("f32-binary offset " + std::to_string(offset) + ": non-finite value");
    }
    data[k] = v;
  }
  return EmbeddingMatrix(Matrix(n, d, std::move(data)), Unchecked{});
}

Corpus parse_jsonl_corpus(std::string_view content) {
  using nlohmann::json;
  std::vector<Record> records;
  for (const auto& [line_no, raw] : split_lines(content)) {
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::string where = "jsonl line " + std::to_string(line_no) + ": ";
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError(where + "invalid JSON (" + e.what() + ")");
    }
    if (!obj.is_object()) throw FormatError(where + "expected a JSON object");

    Record r;
    auto id = obj.find("id");
    if (id == obj.end() || !id->is_string()) throw FormatError(where + "\"id\" must be a string");
    r.id = id->get<std::string>();
    if (auto t = obj.find("text"); t != obj.end() && !t->is_null()) {
      if (!t->is_string()) throw FormatError(where + "\"text\" must be a string");
      r.text = t->get<std::string>();
    }
    if (auto b = obj.find("batch"); b != obj.end() && !b->is_null()) {
      if (!b->is_string()) throw FormatError(where + "\"batch\" must be a string");
      r.batch = b->get<std::string>();
    }
    if (auto e = obj.find("embedding"); e != obj.end() && !e->is_null()) {
      if (!e->is_array()) throw FormatError(where + "\"embedding\" must be an array");
      std::vector<double> v;
      v.reserve(e->size());
      for (const json& x : *e) {
        if (!x.is_number()) throw FormatError(where + "\"embedding\" must contain only numbers");
        v.push_back(x.get<double>());
      }
      r.embedding = std::move(v);
    }
    records.push_back(std::move(r));
  }
  if (records.empty()) throw FormatError("jsonl: no records");
  try {
    return Corpus(std::move(records));
  } catch (const InputError& e) {
    throw FormatError(std::string("jsonl: ") + e.what());
  }
}

Corpus load_corpus(const std::filesystem::path& path) {
  return parse_jsonl_corpus(read_file(path));
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path, FileFormat format) {
  const std::string content = read_file(path);
  switch (format) {
    case FileFormat::kCsv: return parse_csv_embeddings(content);
    case FileFormat::kF32Binary: return parse_f32_embeddings(content);
    case FileFormat::kJsonl: {
      const Corpus corpus = parse_jsonl_corpus(content);
      if (!corpus.all_have_embedding()) {
        throw FormatError("jsonl: every record needs an \"embedding\" to load a matrix");
      }
      return embed_corpus(corpus, EmbedderSpec::external(false)).matrix;
    }
  }
  throw ParameterError("unknown file format");
}

std::string format_csv_embeddings(const EmbeddingMatrix& h) {
  std::string out = std::to_string(h.n()) + "," + std::to_string(h.d()) + "\n";
  for (std::size_t i = 0; i < h.n(); ++i) {
    const auto row = h.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out.push_back(',');
      out += shortest(row[j]);
    }
    out.push_back('\n');
  }
  return out;
}

std::string format_f32_embeddings(const EmbeddingMatrix& h) {
  if (h.n() > UINT32_MAX || h.d() > UINT32_MAX) throw InputError("matrix too large for f32-binary");
  std::string out(kMagic, 4);
  append_u32_le(out, static_cast<std::uint32_t>(h.n()));
  append_u32_le(out, static_cast<std::uint32_t>(h.d()));
  append_u32_le(out, 0);
  out.reserve(kHeaderBytes + 4 * h.n() * h.d());
  for (double v : h.values().data()) {
    const float f = static_cast<float>(v);
    if (!std::isfinite(f)) throw InputError("value out of binary32 range");
    append_u32_le(out, std::bit_cast<std::uint32_t>(f));
  }
  return out;
}

void write_embeddings(const std::filesystem::path& path, const EmbeddingMatrix& h,
                      FileFormat format, const std::optional<std::string>& batch) {
  switch (format) {
    case FileFormat::kCsv: write_file(path, format_csv_embeddings(h)); return;
    case FileFormat::kF32Binary: write_file(path, format_f32_embeddings(h)); return;
    case FileFormat::kJsonl: {
      std::string out;
      for (std::size_t i = 0; i < h.n(); ++i) {
        nlohmann::json rec;
        rec["id"] = std::to_string(i);
        const auto row = h.row(i);
        rec["embedding"] = std::vector<double>(row.begin(), row.end());
        if (batch) rec["batch"] = *batch;
        out += rec.dump();
        out.push_back('\n');
      }
      write_file(path, out);
      return;
    }
  }
}

}  // namespace divkit
