#pragma once

// Test-only helpers: seeded random corpora and brute-force oracles. The
// oracles work on plain strings and nested loops and never call into the
// library's algorithms, only its accessors.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "teeda/teeda.hpp"

namespace teeda::testing {

inline std::string fixture(const std::string& name) { return std::string(TEEDA_FIXTURES) + "/" + name; }

// Fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() / ("teeda-" + tag + "-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline DataRequest needs_request() {
  auto r = validate_request("Needs of countries in the world during COVID-19 pandemic",
                            {"Country", "needs", "product name", "service name", "reason", "age",
                             "age group", "address"},
                            std::string("There was hoarding and a toilet paper shortage. We must clarify what "
                                        "products were really needed and lacking in practice."))
               .value();
  r.id = "needs";
  return r;
}

inline DataJacket positive_cases_jacket() {
  auto j = validate_jacket(JacketInput{"Trends in the number of positive cases by date of confirmation",
                                       {"Total number of cases", "daily number of cases", "date"},
                                       std::string("Open data provided by the Tokyo Metropolitan Government."),
                                       {"Time series", "number", "table", "image"},
                                       {"CSV", "others"},
                                       std::string("Generally shareable")})
               .value();
  j.id = "cases";
  return j;
}

inline DataRequest make_request(const std::string& id, std::vector<std::string> vars,
                                std::optional<Category> category = std::nullopt) {
  auto r = validate_request("request " + id, vars).value();
  r.id = id;
  r.category = category;
  return r;
}

inline DataJacket make_jacket(const std::string& id, std::vector<std::string> vars,
                              std::optional<std::string> sharing = std::nullopt) {
  auto j = validate_jacket(JacketInput{"jacket " + id, std::move(vars), std::nullopt, {}, {}, std::move(sharing)})
               .value();
  j.id = id;
  return j;
}

// Surface forms deliberately include case and spacing variants and UTF-8.
inline const std::vector<std::string>& label_pool() {
  static const std::vector<std::string> pool{
      "date", "Date", " date ", "area name", "Area  Name", "address", "location",
      "prefecture name", "city name", "country name", "age", "sex", "age group",
      "number of cases", "daily number of cases", "total number of cases", "number of tests",
      "type of business", "sales", "population", "time of day", "reason", "needs",
      "product name", "service name", "item people touch", "type of anxiety",
      "consultation content", "preference", "industry", "economic loss", "hospital name",
      "number of beds", "latitude", "longitude", "event name", "temperature", "humidity",
      "日付", "都道府県名", "市区町村名", "Straße", "café name", "número de casos",
  };
  return pool;
}

struct RandomCorpusOptions {
  std::size_t max_items = 100;
  std::size_t max_variables = 18;
  bool categories = true;
};

inline Corpus random_corpus(std::mt19937_64& rng, const RandomCorpusOptions& opt = {}) {
  const auto& pool = label_pool();
  std::uniform_int_distribution<std::size_t> n_items(0, opt.max_items);
  std::uniform_int_distribution<std::size_t> n_vars(1, opt.max_variables);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> sharing(-1, 6);
  std::uniform_int_distribution<int> category(-1, 2);

  Corpus corpus;
  const std::size_t n = n_items(rng);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> vars;
    const std::size_t k = n_vars(rng);
    for (std::size_t v = 0; v < k; ++v) vars.push_back(pool[pick(rng)]);
    const std::string name = "item " + std::to_string(i) + " ü";
    if (coin(rng)) {
      auto req = validate_request(name, vars, coin(rng) ? std::optional<std::string>("purpose " + std::to_string(i))
                                                       : std::nullopt)
                     .value();
      if (opt.categories) {
        const int c = category(rng);
        if (c >= 0) req.category = all_values<Category>()[static_cast<std::size_t>(c)];
      }
      req.id = "r" + std::to_string(i);
      corpus.add(std::move(req));
    } else {
      JacketInput in;
      in.name = name;
      in.variables = vars;
      if (coin(rng)) in.outline = "outline " + std::to_string(i);
      for (auto t : all_values<DataType>())
        if (coin(rng)) in.types.emplace_back(token(t));
      for (auto f : all_values<DataFormat>())
        if (coin(rng)) in.formats.emplace_back(token(f));
      if (const int s = sharing(rng); s >= 0)
        in.sharing = std::string(token(all_values<SharingCondition>()[static_cast<std::size_t>(s)]));
      auto dj = validate_jacket(in).value();
      dj.id = "j" + std::to_string(i);
      corpus.add(std::move(dj));
    }
  }
  return corpus;
}

// --- oracle model -------------------------------------------------------------

struct PlainItem {
  std::string id;
  bool request = false;
  std::vector<std::string> vars;  // labels as stored, any order
  std::optional<int> category;
  std::optional<int> sharing;
  std::vector<int> types;
  std::vector<int> formats;
};

inline std::vector<PlainItem> plain(const Corpus& corpus) {
  std::vector<PlainItem> out;
  for (const auto& item : corpus) {
    PlainItem p;
    p.id = item_id(item);
    p.request = item_kind(item) == DataKind::Request;
    for (const auto& l : item_variables(item)) p.vars.push_back(l.text());
    if (const auto* r = std::get_if<DataRequest>(&item)) {
      if (r->category) p.category = static_cast<int>(*r->category);
    } else {
      const auto& j = std::get<DataJacket>(item);
      if (j.sharing) p.sharing = static_cast<int>(*j.sharing);
      for (auto t : all_values<DataType>())
        if (j.types.contains(t)) p.types.push_back(static_cast<int>(t));
      for (auto f : all_values<DataFormat>())
        if (j.formats.contains(f)) p.formats.push_back(static_cast<int>(f));
    }
    out.push_back(std::move(p));
  }
  return out;
}

inline bool has(const std::vector<std::string>& v, const std::string& s) {
  for (const auto& x : v)
    if (x == s) return true;
  return false;
}

inline bool has(const std::vector<int>& v, int s) {
  for (int x : v)
    if (x == s) return true;
  return false;
}

struct OracleEdge {
  std::string a, b;
  std::vector<std::string> shared;  // sorted
  bool operator==(const OracleEdge&) const = default;
};

inline std::vector<OracleEdge> oracle_edges(const std::vector<PlainItem>& items) {
  std::vector<OracleEdge> out;
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (!(items[i].id < items[j].id)) continue;
      std::vector<std::string> shared;
      for (const auto& v : items[i].vars)
        if (has(items[j].vars, v)) shared.push_back(v);
      std::sort(shared.begin(), shared.end());
      if (!shared.empty()) out.push_back({items[i].id, items[j].id, shared});
    }
  std::sort(out.begin(), out.end(),
            [](const OracleEdge& x, const OracleEdge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  return out;
}

struct OracleSide {
  std::size_t items = 0, total = 0, distinct = 0, max = 0, min = 0;
  double avg = 0;
};

// kind: 0 all, 1 requests, 2 jackets
inline OracleSide oracle_side(const std::vector<PlainItem>& items, int kind) {
  OracleSide s;
  std::vector<std::string> seen;
  bool first = true;
  for (const auto& it : items) {
    if (kind == 1 && !it.request) continue;
    if (kind == 2 && it.request) continue;
    s.items += 1;
    s.total += it.vars.size();
    if (first || it.vars.size() > s.max) s.max = it.vars.size();
    if (first || it.vars.size() < s.min) s.min = it.vars.size();
    first = false;
    for (const auto& v : it.vars)
      if (!has(seen, v)) seen.push_back(v);
  }
  s.distinct = seen.size();
  if (s.items) s.avg = static_cast<double>(s.total) / static_cast<double>(s.items);
  return s;
}

// kind: 0 all, 1 requests, 2 jackets; category filter applies to requests.
inline std::vector<std::pair<std::string, std::size_t>> oracle_frequency(
    const std::vector<PlainItem>& items, int kind, std::optional<int> category = std::nullopt) {
  std::vector<std::pair<std::string, std::size_t>> rows;
  for (const auto& it : items) {
    if (kind == 1 && !it.request) continue;
    if (kind == 2 && it.request) continue;
    if (category && it.category != category) continue;
    for (const auto& v : it.vars) {
      bool found = false;
      for (auto& row : rows)
        if (row.first == v) {
          ++row.second;
          found = true;
        }
      if (!found) rows.emplace_back(v, 1);
    }
  }
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second > y.second;
    return x.first < y.first;
  });
  return rows;
}

inline std::vector<std::string> oracle_common(const std::vector<PlainItem>& items) {
  std::vector<std::string> out;
  for (const auto& r : items) {
    if (!r.request) continue;
    for (const auto& v : r.vars) {
      bool in_jacket = false;
      for (const auto& j : items)
        if (!j.request && has(j.vars, v)) in_jacket = true;
      if (in_jacket && !has(out, v)) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::pair<std::size_t, std::size_t> oracle_singletons(const std::vector<PlainItem>& items,
                                                             bool requests) {
  const auto rows = oracle_frequency(items, requests ? 1 : 2);
  std::size_t once = 0;
  for (const auto& r : rows) once += r.second == 1 ? 1 : 0;
  return {once, rows.size()};
}

struct OracleUnmet {
  std::string id;
  std::size_t covered = 0, total = 1;
  std::vector<std::string> missing;  // sorted
};

inline std::vector<OracleUnmet> oracle_unmet(const std::vector<PlainItem>& items) {
  std::vector<OracleUnmet> out;
  for (const auto& r : items) {
    if (!r.request) continue;
    std::size_t best = 0;
    const PlainItem* best_j = nullptr;
    for (const auto& j : items) {
      if (j.request) continue;
      std::size_t c = 0;
      for (const auto& v : r.vars) c += has(j.vars, v) ? 1 : 0;
      if (c == 0) continue;
      const bool better = !best_j || c > best ||
                          (c == best && (j.vars.size() < best_j->vars.size() ||
                                         (j.vars.size() == best_j->vars.size() && j.id < best_j->id)));
      if (better) {
        best = c;
        best_j = &j;
      }
    }
    if (best == r.vars.size()) continue;
    OracleUnmet u{r.id, best, r.vars.size(), {}};
    for (const auto& v : r.vars)
      if (!best_j || !has(best_j->vars, v)) u.missing.push_back(v);
    std::sort(u.missing.begin(), u.missing.end());
    out.push_back(std::move(u));
  }
  // covered/total ascending by cross multiplication, then id.
  std::sort(out.begin(), out.end(), [](const OracleUnmet& x, const OracleUnmet& y) {
    const auto lhs = x.covered * y.total, rhs = y.covered * x.total;
    if (lhs != rhs) return lhs < rhs;
    return x.id < y.id;
  });
  return out;
}

/// Jackets carrying each token index (sharing: single value; types/formats:
/// membership), and the denominator used for proportions.
inline std::pair<std::vector<std::size_t>, std::size_t> oracle_breakdown(
    const std::vector<PlainItem>& items, Dimension dim) {
  const std::size_t n_tokens = dim == Dimension::Sharing ? 7 : 9;
  std::vector<std::size_t> counts(n_tokens, 0);
  std::size_t denom = 0;
  for (const auto& j : items) {
    if (j.request) continue;
    if (dim == Dimension::Sharing) {
      if (!j.sharing) continue;
      ++denom;
      ++counts[static_cast<std::size_t>(*j.sharing)];
    } else {
      ++denom;
      const auto& set = dim == Dimension::Types ? j.types : j.formats;
      for (std::size_t t = 0; t < n_tokens; ++t) counts[t] += has(set, static_cast<int>(t)) ? 1 : 0;
    }
  }
  return {counts, denom};
}

inline std::vector<std::string> texts(const VariableSet& s) {
  std::vector<std::string> out;
  for (const auto& l : s) out.push_back(l.text());
  return out;
}

}  // namespace teeda::testing
