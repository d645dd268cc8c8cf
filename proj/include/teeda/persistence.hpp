#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "teeda/document.hpp"

namespace teeda {

namespace fs = std::filesystem;

namespace detail {

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed on '" + path.string() + "'");
  return buf.str();
}

/// Writes through a sibling temp file and renames, so readers never see a
/// half-written file.
inline void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed on '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot replace '" + path.string() + "': " + ec.message());
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

inline bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra = 0;
    if (c < 0x80) extra = 0;
    else if ((c & 0xE0) == 0xC0 && c >= 0xC2) extra = 1;
    else if ((c & 0xF0) == 0xE0) extra = 2;
    else if ((c & 0xF8) == 0xF0 && c <= 0xF4) extra = 3;
    else return false;
    if (i + extra >= s.size() && extra > 0) return false;
    for (std::size_t k = 1; k <= extra; ++k)
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    i += extra + 1;
  }
  return true;
}

inline std::string dump_line(const Json& doc) { return doc.dump() + "\n"; }

}  // namespace detail

/// One JSON document per line, UTF-8. Blank lines are ignored.
inline Corpus parse_corpus(std::string_view text, const DocumentOptions& opts = {}) {
  Corpus corpus;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    Json doc;
    try {
      doc = Json::parse(line);
    } catch (const nlohmann::json::parse_error& ex) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + ex.what(), {},
                  line_no);
    }
    auto item = from_document(doc, opts);
    if (!item)
      throw Error(ErrorCode::ValidationError,
                  "line " + std::to_string(line_no) + ": " + item.summary(), item.errors(), line_no);
    const auto& id = item_id(item.value());
    if (!id.empty() && corpus.contains(id))
      throw Error(ErrorCode::DuplicateId, "line " + std::to_string(line_no) + ": duplicate id '" + id + "'",
                  {}, line_no);
    corpus.add(std::move(item).value());
  }
  return corpus;
}

inline Corpus load_corpus(const fs::path& path, const DocumentOptions& opts = {}) {
  return parse_corpus(detail::read_file(path), opts);
}

inline std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const auto& item : corpus) out += detail::dump_line(to_document(item));
  return out;
}

inline void save_corpus(const Corpus& corpus, const fs::path& path) {
  detail::write_file_atomic(path, serialize_corpus(corpus));
}

// --- CSV ---------------------------------------------------------------------

/// RFC 4180 style: comma separated, double-quoted fields may contain commas,
/// newlines and doubled quotes. Each record carries its starting line number.
struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

inline std::vector<CsvRecord> parse_csv(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<CsvRecord> records;
  CsvRecord rec{1, {}};
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;

  auto end_field = [&] {
    rec.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&](std::size_t next_line) {
    end_field();
    const bool blank = rec.fields.size() == 1 && rec.fields[0].empty();
    if (!blank) records.push_back(std::move(rec));
    rec = CsvRecord{next_line, {}};
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field_started) quoted = true;
        else field.push_back(c);
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        [[fallthrough]];
      case '\n':
        ++line;
        end_record(line);
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (quoted) throw Error(ErrorCode::ParseError, "unterminated quoted field", {}, rec.line);
  if (field_started || !rec.fields.empty()) end_record(line);
  return records;
}

/// Splits a ";"-delimited cell into trimmed, non-empty pieces.
inline std::vector<std::string> split_list(std::string_view cell) {
  std::vector<std::string> out;
  if (detail::trim(cell).empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto pos = cell.find(';', start);
    auto piece = detail::trim(cell.substr(start, pos == std::string_view::npos ? cell.npos : pos - start));
    if (!piece.empty()) out.emplace_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct RowError {
  std::size_t row = 0;
  std::vector<FieldError> errors;

  std::string message() const {
    std::string out = "row " + std::to_string(row) + ":";
    for (const auto& e : errors) out += " " + e.message() + ";";
    out.pop_back();
    return out;
  }
};

struct ImportResult {
  std::vector<Item> items;
  std::vector<RowError> errors;
};

namespace detail {

inline const std::vector<std::string>& csv_columns(DataKind kind) {
  static const std::vector<std::string> request{"id", "name", "variables", "purpose", "category"};
  static const std::vector<std::string> providable{"id",    "name",    "variables", "outline",
                                                   "types", "formats", "sharing"};
  return kind == DataKind::Request ? request : providable;
}

}  // namespace detail

/// Header must name `name` and `variables` plus any of the optional columns
/// for the kind (requests: id, purpose, category; providable: id, outline,
/// types, formats, sharing). List cells use ";". Bad rows are reported and
/// skipped; only a bad header fails the whole import.
inline ImportResult import_csv_text(std::string_view text, DataKind kind) {
  const auto records = parse_csv(text);
  ImportResult result;
  if (records.empty()) throw Error(ErrorCode::HeaderMismatch, "missing header row");

  const auto& allowed = detail::csv_columns(kind);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < records[0].fields.size(); ++i) {
    auto name = detail::collapse_lower(records[0].fields[i]);
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
      throw Error(ErrorCode::HeaderMismatch, "unexpected column '" + name + "' for " +
                                                 std::string(token(kind)) + " import");
    if (!col.emplace(name, i).second)
      throw Error(ErrorCode::HeaderMismatch, "duplicate column '" + name + "'");
  }
  for (const char* required : {"name", "variables"})
    if (!col.count(required))
      throw Error(ErrorCode::HeaderMismatch, std::string("missing column '") + required + "'");

  const std::size_t width = records[0].fields.size();
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != width) {
      result.errors.push_back(
          {rec.line, {{"", ErrorCode::ParseError,
                       "expected " + std::to_string(width) + " columns, got " +
                           std::to_string(rec.fields.size())}}});
      continue;
    }
    if (!std::all_of(rec.fields.begin(), rec.fields.end(),
                     [](const std::string& f) { return detail::valid_utf8(f); })) {
      result.errors.push_back({rec.line, {{"", ErrorCode::ParseError, "invalid UTF-8"}}});
      continue;
    }
    auto cell = [&](const char* name) -> std::optional<std::string> {
      auto it = col.find(name);
      if (it == col.end()) return std::nullopt;
      return rec.fields[it->second];
    };

    Json doc;
    doc["id"] = std::string(detail::trim(cell("id").value_or("")));
    doc["kind"] = token(kind);
    doc["name"] = cell("name").value_or("");
    doc["variables"] = split_list(cell("variables").value_or(""));
    if (kind == DataKind::Request) {
      if (auto p = cell("purpose"); p && !detail::blank(*p)) doc["purpose"] = *p;
      if (auto c = cell("category"); c && !detail::blank(*c)) doc["category"] = *c;
    } else {
      if (auto o = cell("outline"); o && !detail::blank(*o)) doc["outline"] = *o;
      doc["types"] = split_list(cell("types").value_or(""));
      doc["formats"] = split_list(cell("formats").value_or(""));
      if (auto s = cell("sharing"); s && !detail::blank(*s)) doc["sharing"] = *s;
    }
    auto item = from_document(doc);
    if (!item) {
      result.errors.push_back({rec.line, item.errors()});
      continue;
    }
    result.items.push_back(std::move(item).value());
  }
  return result;
}

inline ImportResult import_csv(const fs::path& path, DataKind kind) {
  return import_csv_text(detail::read_file(path), kind);
}

/// Line-delimited item documents; records of the other kind are row errors.
inline ImportResult import_records_text(std::string_view text, DataKind kind,
                                        const DocumentOptions& opts = {}) {
  ImportResult result;
  std::size_t line_no = 0;
  for (auto line : detail::split_lines(text)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    Json doc;
    try {
      doc = Json::parse(line);
    } catch (const nlohmann::json::parse_error& ex) {
      result.errors.push_back({line_no, {{"", ErrorCode::ParseError, ex.what()}}});
      continue;
    }
    auto item = from_document(doc, opts);
    if (!item) {
      result.errors.push_back({line_no, item.errors()});
      continue;
    }
    if (item_kind(item.value()) != kind) {
      result.errors.push_back(
          {line_no, {{"kind", ErrorCode::KindMismatch, std::string(token(item_kind(item.value())))}}});
      continue;
    }
    result.items.push_back(std::move(item).value());
  }
  return result;
}

inline ImportResult import_records(const fs::path& path, DataKind kind,
                                   const DocumentOptions& opts = {}) {
  return import_records_text(detail::read_file(path), kind, opts);
}

// --- network -----------------------------------------------------------------

inline std::string serialize_network(const ExchangeNetwork& net) {
  return to_document(net).dump() + "\n";
}

inline void export_network(const ExchangeNetwork& net, const fs::path& path) {
  detail::write_file_atomic(path, serialize_network(net));
}

inline ExchangeNetwork load_network(const fs::path& path) {
  const auto text = detail::read_file(path);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(ErrorCode::ParseError, std::string("network document: ") + ex.what());
  }
  return network_from_document(doc);
}

}  // namespace teeda
