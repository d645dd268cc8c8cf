#pragma once

// JSON shapes shared by the corpus file, the network export, the CLI's
// structured output and the HTTP service. Field names here are the wire
// contract.

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "teeda/analytics.hpp"
#include "teeda/corpus.hpp"
#include "teeda/network.hpp"
#include "teeda/scenario.hpp"

namespace teeda {

using Json = nlohmann::ordered_json;

struct DocumentOptions {
  /// Keep unrecognized fields verbatim instead of rejecting the record.
  bool lenient = false;
};

namespace detail {

inline Json labels_json(const VariableSet& vars) {
  Json arr = Json::array();
  for (const auto& l : vars) arr.push_back(l.text());
  return arr;
}

template <typename Range>
Json labels_json_range(const Range& vars) {
  Json arr = Json::array();
  for (const auto& l : vars) arr.push_back(l.text());
  return arr;
}

template <typename E>
Json tokens_json(const EnumSet<E>& set) {
  Json arr = Json::array();
  for (E v : set.values()) arr.push_back(std::string(token(v)));
  return arr;
}

inline void append_extensions(Json& doc, const std::string& extensions) {
  if (extensions.empty()) return;
  const Json extra = Json::parse(extensions);
  for (const auto& [key, value] : extra.items()) doc[key] = value;
}

inline Json ratio_json(const std::optional<Ratio>& r) {
  return r ? Json(r->value()) : Json(nullptr);
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace detail

inline Json to_document(const DataRequest& r) {
  Json doc;
  doc["id"] = r.id;
  doc["kind"] = token(DataKind::Request);
  doc["name"] = r.name;
  doc["variables"] = detail::labels_json(r.variables);
  if (r.purpose) doc["purpose"] = *r.purpose;
  if (r.category) doc["category"] = token(*r.category);
  detail::append_extensions(doc, r.extensions);
  return doc;
}

inline Json to_document(const DataJacket& j) {
  Json doc;
  doc["id"] = j.id;
  doc["kind"] = token(DataKind::Providable);
  doc["name"] = j.name;
  doc["variables"] = detail::labels_json(j.variables);
  if (j.outline) doc["outline"] = *j.outline;
  doc["types"] = detail::tokens_json(j.types);
  doc["formats"] = detail::tokens_json(j.formats);
  if (j.sharing) doc["sharing"] = token(*j.sharing);
  detail::append_extensions(doc, j.extensions);
  return doc;
}

inline Json to_document(const Item& item) {
  return std::visit([](const auto& i) { return to_document(i); }, item);
}

namespace detail {

inline const std::set<std::string, std::less<>>& request_fields() {
  static const std::set<std::string, std::less<>> f{"id", "kind", "name", "variables",
                                                    "purpose", "category"};
  return f;
}
inline const std::set<std::string, std::less<>>& jacket_fields() {
  static const std::set<std::string, std::less<>> f{"id",      "kind",  "name",    "variables",
                                                    "outline", "types", "formats", "sharing"};
  return f;
}
inline bool is_item_field(std::string_view key) {
  return request_fields().count(key) || jacket_fields().count(key);
}

struct Reader {
  const Json& doc;
  std::vector<FieldError>& errors;

  std::optional<std::string> text(const char* key) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) {
      errors.push_back({key, ErrorCode::ParseError, "expected string"});
      return std::nullopt;
    }
    return it->get<std::string>();
  }

  std::vector<std::string> strings(const char* key) {
    std::vector<std::string> out;
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) return out;
    if (!it->is_array()) {
      errors.push_back({key, ErrorCode::ParseError, "expected array of strings"});
      return out;
    }
    for (const auto& v : *it) {
      if (!v.is_string()) {
        errors.push_back({key, ErrorCode::ParseError, "expected array of strings"});
        return {};
      }
      out.push_back(v.get<std::string>());
    }
    return out;
  }
};

}  // namespace detail

/// Validates an item document. Request documents may not carry jacket
/// fields and vice versa; unknown fields are rejected unless lenient.
inline Validated<Item> from_document(const Json& doc, const DocumentOptions& opts = {}) {
  std::vector<FieldError> errors;
  if (!doc.is_object()) return std::vector<FieldError>{{"", ErrorCode::ParseError, "expected object"}};

  detail::Reader read{doc, errors};
  const auto id = read.text("id").value_or("");
  const auto kind_text = read.text("kind");
  std::optional<DataKind> kind = kind_text ? parse_token<DataKind>(*kind_text) : std::nullopt;
  if (!kind) {
    errors.push_back({"kind", ErrorCode::UnknownKind, kind_text.value_or("")});
    return errors;
  }

  const auto& allowed =
      *kind == DataKind::Request ? detail::request_fields() : detail::jacket_fields();
  Json extensions = Json::object();
  for (const auto& [key, value] : doc.items()) {
    if (allowed.count(key)) continue;
    if (detail::is_item_field(key))
      errors.push_back({key, ErrorCode::FieldNotAllowed, std::string(token(*kind))});
    else if (opts.lenient)
      extensions[key] = value;
    else
      errors.push_back({key, ErrorCode::UnknownField, {}});
  }

  const auto name = read.text("name").value_or("");
  const auto variables = read.strings("variables");
  std::vector<std::string> warnings;
  Item item;
  if (*kind == DataKind::Request) {
    const auto purpose = read.text("purpose");
    const auto category_text = read.text("category");
    std::optional<Category> category;
    if (category_text) {
      category = parse_token<Category>(*category_text);
      if (!category) errors.push_back({"category", ErrorCode::UnknownCategory, *category_text});
    }
    auto v = validate_request(name, variables, purpose);
    if (!v) errors.insert(errors.end(), v.errors().begin(), v.errors().end());
    if (!errors.empty()) return errors;
    warnings = v.warnings();
    DataRequest req = std::move(v).value();
    req.category = category;
    item = std::move(req);
  } else {
    const auto outline = read.text("outline");
    const auto types = read.strings("types");
    const auto formats = read.strings("formats");
    const auto sharing = read.text("sharing");
    auto v = validate_jacket(name, variables, outline, types, formats, sharing);
    if (!v) errors.insert(errors.end(), v.errors().begin(), v.errors().end());
    if (!errors.empty()) return errors;
    warnings = v.warnings();
    item = std::move(v).value();
  }
  set_item_id(item, id);
  if (!extensions.empty())
    std::visit([&](auto& i) { i.extensions = extensions.dump(); }, item);
  return {std::move(item), std::move(warnings)};
}

inline Json errors_json(const std::vector<FieldError>& errors) {
  Json arr = Json::array();
  for (const auto& e : errors) {
    Json one;
    one["field"] = e.field;
    one["reason"] = std::string(to_string(e.code));
    if (!e.detail.empty()) one["detail"] = e.detail;
    arr.push_back(std::move(one));
  }
  return arr;
}

// --- network ---------------------------------------------------------------

inline Json to_document(const ExchangeNetwork& net) {
  Json doc;
  doc["nodes"] = Json::array();
  for (const auto& n : net.nodes) {
    Json node;
    node["id"] = n.id;
    node["kind"] = token(n.kind);
    node["name"] = n.name;
    doc["nodes"].push_back(std::move(node));
  }
  doc["edges"] = Json::array();
  for (const auto& e : net.edges) {
    Json edge;
    edge["source"] = e.a;
    edge["target"] = e.b;
    edge["weight"] = e.weight;
    edge["shared"] = detail::labels_json(e.shared);
    doc["edges"].push_back(std::move(edge));
  }
  return doc;
}

/// Throws ParseError on a malformed document.
inline ExchangeNetwork network_from_document(const Json& doc) {
  auto fail = [](const std::string& what) -> Error {
    return Error(ErrorCode::ParseError, "network document: " + what);
  };
  if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges") ||
      !doc["nodes"].is_array() || !doc["edges"].is_array())
    throw fail("expected {nodes:[...], edges:[...]}");
  ExchangeNetwork net;
  try {
    for (const auto& n : doc["nodes"]) {
      auto kind = parse_token<DataKind>(n.at("kind").get<std::string>());
      if (!kind) throw fail("unknown node kind");
      net.nodes.push_back({n.at("id").get<std::string>(), *kind, n.at("name").get<std::string>()});
    }
    for (const auto& e : doc["edges"]) {
      Edge edge{e.at("source").get<std::string>(), e.at("target").get<std::string>(),
                e.at("weight").get<std::size_t>(), {}};
      for (const auto& l : e.at("shared")) edge.shared.insert(normalize_label(l.get<std::string>()));
      net.edges.push_back(std::move(edge));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw fail(ex.what());
  }
  return net;
}

// --- analytics ---------------------------------------------------------------

inline Json to_document(const SideStats& s) {
  Json doc;
  doc["items"] = s.items;
  doc["variables"] = s.total_variables;
  doc["variable_types"] = s.distinct_variables;
  doc["average"] = detail::ratio_json(s.avg_variables);
  doc["average_exact"] = s.avg_variables ? Json(s.avg_variables->str()) : Json(nullptr);
  doc["max"] = detail::optional_json(s.max_variables);
  doc["min"] = detail::optional_json(s.min_variables);
  return doc;
}

inline Json to_document(const CorpusStats& s) {
  Json doc;
  doc["all"] = to_document(s.all);
  doc["request"] = to_document(s.requests);
  doc["providable"] = to_document(s.jackets);
  return doc;
}

inline Json to_document(const FrequencyTable& t) {
  Json arr = Json::array();
  for (const auto& r : t.rows) {
    Json row;
    row["variable"] = r.label.text();
    row["count"] = r.count;
    arr.push_back(std::move(row));
  }
  return arr;
}

inline Json to_document(const BreakdownReport& b) {
  Json doc;
  doc["dimension"] = std::string(to_string(b.dimension));
  doc["denominator"] = b.denominator;
  doc["rows"] = Json::array();
  for (const auto& r : b.rows) {
    Json row;
    row["token"] = r.token;
    row["count"] = r.count;
    row["proportion"] = detail::ratio_json(r.proportion);
    doc["rows"].push_back(std::move(row));
  }
  return doc;
}

inline Json to_document(const PairedBreakdown& p) {
  Json doc;
  doc["a"] = to_document(p.a);
  doc["b"] = to_document(p.b);
  return doc;
}

inline Json to_document(const SatisfactionReport& r) {
  Json doc;
  doc["request"] = r.request_id;
  doc["jacket"] = r.jacket_id;
  doc["coverage"] = r.coverage.value();
  doc["coverage_exact"] = r.coverage.str();
  doc["satisfied"] = r.satisfied;
  doc["covered"] = detail::labels_json(r.covered);
  doc["missing"] = detail::labels_json(r.missing);
  return doc;
}

inline Json to_document(const std::vector<SatisfactionReport>& ranked) {
  Json arr = Json::array();
  for (const auto& r : ranked) arr.push_back(to_document(r));
  return arr;
}

inline Json to_document(const std::vector<UnmetRequest>& unmet) {
  Json arr = Json::array();
  for (const auto& u : unmet) {
    Json row;
    row["request"] = u.request_id;
    row["best_coverage"] = u.best_coverage.value();
    row["best_coverage_exact"] = u.best_coverage.str();
    row["best_jacket"] = detail::optional_json(u.best_jacket);
    row["missing"] = detail::labels_json(u.missing);
    arr.push_back(std::move(row));
  }
  return arr;
}

inline Json to_document(const ScenarioReport& rep) {
  Json doc;
  doc["categories"] = Json::array();
  for (const auto& sec : rep.sections) {
    Json s;
    s["category"] = token(sec.category);
    s["count"] = sec.count;
    s["profile"] = to_document(sec.profile);
    s["missing"] = detail::labels_json_range(sec.missing);
    s["suggestions"] = detail::labels_json_range(sec.suggestions);
    doc["categories"].push_back(std::move(s));
  }
  doc["uncategorized"] = rep.uncategorized;
  return doc;
}

}  // namespace teeda
