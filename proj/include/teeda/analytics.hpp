#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "teeda/corpus.hpp"
#include "teeda/network.hpp"
#include "teeda/ratio.hpp"

namespace teeda {

/// Variable statistics over one population of items. Average, max and min are
/// absent for an empty population.
struct SideStats {
  std::size_t items = 0;
  std::size_t total_variables = 0;
  std::size_t distinct_variables = 0;
  std::optional<Ratio> avg_variables;
  std::optional<std::size_t> max_variables;
  std::optional<std::size_t> min_variables;

  friend bool operator==(const SideStats&, const SideStats&) = default;
};

struct CorpusStats {
  SideStats all;
  SideStats requests;
  SideStats jackets;

  std::size_t n_items() const { return all.items; }
  std::size_t n_requests() const { return requests.items; }
  std::size_t n_jackets() const { return jackets.items; }

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

namespace detail {

template <typename Pred>
SideStats side_stats(const Corpus& corpus, Pred include) {
  SideStats s;
  VariableSet distinct;
  for (const auto& item : corpus) {
    if (!include(item)) continue;
    const auto n = item_variables(item).size();
    ++s.items;
    s.total_variables += n;
    s.max_variables = std::max(s.max_variables.value_or(0), n);
    s.min_variables = s.min_variables ? std::min(*s.min_variables, n) : n;
    distinct.insert(item_variables(item).begin(), item_variables(item).end());
  }
  s.distinct_variables = distinct.size();
  if (s.items > 0) s.avg_variables = Ratio(s.total_variables, s.items);
  return s;
}

inline bool kind_matches(const Item& item, std::optional<DataKind> kind) {
  return !kind || item_kind(item) == *kind;
}

}  // namespace detail

inline CorpusStats corpus_stats(const Corpus& corpus) {
  return {
      detail::side_stats(corpus, [](const Item&) { return true; }),
      detail::side_stats(corpus, [](const Item& i) { return item_kind(i) == DataKind::Request; }),
      detail::side_stats(corpus,
                         [](const Item& i) { return item_kind(i) == DataKind::Providable; }),
  };
}

struct FrequencyRow {
  VariableLabel label;
  std::size_t count;

  friend bool operator==(const FrequencyRow&, const FrequencyRow&) = default;
};

/// Rows sorted by count desc, then label asc.
struct FrequencyTable {
  std::vector<FrequencyRow> rows;

  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& r : rows) t += r.count;
    return t;
  }

  friend bool operator==(const FrequencyTable&, const FrequencyTable&) = default;
};

namespace detail {

template <typename Range>
FrequencyTable tally(const Range& variable_sets, std::optional<std::size_t> top_k) {
  std::map<VariableLabel, std::size_t> counts;
  for (const VariableSet* vars : variable_sets)
    for (const auto& label : *vars) ++counts[label];
  FrequencyTable table;
  table.rows.reserve(counts.size());
  for (auto& [label, n] : counts) table.rows.push_back({label, n});
  // std::map already yields label order; a stable sort keeps it for ties.
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const FrequencyRow& x, const FrequencyRow& y) { return x.count > y.count; });
  if (top_k && table.rows.size() > *top_k)
    table.rows.erase(table.rows.begin() + static_cast<std::ptrdiff_t>(*top_k), table.rows.end());
  return table;
}

}  // namespace detail

/// How many items carry each label. Items hold variable sets, so each item
/// contributes at most one to a label.
inline FrequencyTable variable_frequency(const Corpus& corpus,
                                         std::optional<DataKind> kind_filter = std::nullopt,
                                         std::optional<std::size_t> top_k = std::nullopt) {
  std::vector<const VariableSet*> sets;
  for (const auto& item : corpus)
    if (detail::kind_matches(item, kind_filter)) sets.push_back(&item_variables(item));
  return detail::tally(sets, top_k);
}

inline VariableSet distinct_labels(const Corpus& corpus, DataKind kind) {
  VariableSet out;
  for (const auto& item : corpus)
    if (item_kind(item) == kind) out.insert(item_variables(item).begin(), item_variables(item).end());
  return out;
}

struct CommonVariables {
  VariableSet labels;
  std::size_t count = 0;

  friend bool operator==(const CommonVariables&, const CommonVariables&) = default;
};

/// Labels used on both the request side and the providable side.
inline CommonVariables common_variable_types(const Corpus& corpus) {
  CommonVariables out;
  out.labels = intersect(distinct_labels(corpus, DataKind::Request),
                         distinct_labels(corpus, DataKind::Providable));
  out.count = out.labels.size();
  return out;
}

struct SingletonRatio {
  std::size_t singletons = 0;
  std::size_t distinct = 0;

  friend bool operator==(const SingletonRatio&, const SingletonRatio&) = default;
};

inline SingletonRatio singleton_ratio(const Corpus& corpus, DataKind kind) {
  const auto table = variable_frequency(corpus, kind);
  SingletonRatio out;
  out.distinct = table.rows.size();
  for (const auto& row : table.rows) out.singletons += row.count == 1 ? 1 : 0;
  return out;
}

enum class Dimension { Sharing, Types, Formats };

inline constexpr std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::Sharing: return "sharing";
    case Dimension::Types: return "types";
    case Dimension::Formats: return "formats";
  }
  return "";
}

inline std::optional<Dimension> parse_dimension(std::string_view s) {
  for (auto d : {Dimension::Sharing, Dimension::Types, Dimension::Formats})
    if (to_string(d) == s) return d;
  return std::nullopt;
}

struct BreakdownRow {
  std::string token;
  std::size_t count = 0;
  std::optional<Ratio> proportion;

  friend bool operator==(const BreakdownRow&, const BreakdownRow&) = default;
};

/// Jacket counts per canonical token, one row per token in declaration order
/// (zero rows included). For sharing the denominator is the jackets that
/// declare a condition; for types and formats it is all jackets, so those
/// proportions are per-jacket incidence and may sum past 1.
struct BreakdownReport {
  Dimension dimension = Dimension::Sharing;
  std::size_t denominator = 0;
  std::vector<BreakdownRow> rows;

  friend bool operator==(const BreakdownReport&, const BreakdownReport&) = default;
};

namespace detail {

template <typename E, typename Has>
BreakdownReport make_breakdown(Dimension dim, const std::vector<const DataJacket*>& jackets,
                               std::size_t denominator, Has has) {
  BreakdownReport rep;
  rep.dimension = dim;
  rep.denominator = denominator;
  for (E value : all_values<E>()) {
    BreakdownRow row{std::string(token(value)), 0, std::nullopt};
    for (const DataJacket* j : jackets) row.count += has(*j, value) ? 1 : 0;
    if (denominator > 0) row.proportion = Ratio(row.count, denominator);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace detail

inline BreakdownReport breakdown(const Corpus& corpus, Dimension dim) {
  const auto jackets = corpus.jackets();
  switch (dim) {
    case Dimension::Sharing: {
      const auto declared = static_cast<std::size_t>(std::count_if(
          jackets.begin(), jackets.end(), [](const DataJacket* j) { return j->sharing.has_value(); }));
      return detail::make_breakdown<SharingCondition>(
          dim, jackets, declared,
          [](const DataJacket& j, SharingCondition c) { return j.sharing == c; });
    }
    case Dimension::Types:
      return detail::make_breakdown<DataType>(
          dim, jackets, jackets.size(),
          [](const DataJacket& j, DataType t) { return j.types.contains(t); });
    case Dimension::Formats:
      return detail::make_breakdown<DataFormat>(
          dim, jackets, jackets.size(),
          [](const DataJacket& j, DataFormat f) { return j.formats.contains(f); });
  }
  return {};
}

struct PairedBreakdown {
  BreakdownReport a;
  BreakdownReport b;

  friend bool operator==(const PairedBreakdown&, const PairedBreakdown&) = default;
};

/// Both sides share the canonical token row order.
inline PairedBreakdown compare_breakdowns(const Corpus& a, const Corpus& b, Dimension dim) {
  return {breakdown(a, dim), breakdown(b, dim)};
}

struct UnmetRequest {
  std::string request_id;
  Ratio best_coverage;
  /// Missing labels against the top-ranked jacket (all request labels when
  /// no jacket overlaps).
  VariableSet missing;
  /// Top-ranked jacket, absent when nothing overlaps.
  std::optional<std::string> best_jacket;

  friend bool operator==(const UnmetRequest&, const UnmetRequest&) = default;
};

/// Requests no single jacket fully satisfies, worst first (coverage asc,
/// then id asc).
inline std::vector<UnmetRequest> unmet_requests(const Corpus& corpus) {
  std::vector<UnmetRequest> out;
  for (const DataRequest* req : corpus.requests()) {
    auto ranked = rank_candidates(*req, corpus, 1);
    if (ranked.empty()) {
      out.push_back({req->id, Ratio(0, 1), req->variables, std::nullopt});
    } else if (!ranked.front().satisfied) {
      out.push_back({req->id, ranked.front().coverage, ranked.front().missing,
                     ranked.front().jacket_id});
    }
  }
  std::sort(out.begin(), out.end(), [](const UnmetRequest& x, const UnmetRequest& y) {
    if (x.best_coverage != y.best_coverage) return x.best_coverage < y.best_coverage;
    return x.request_id < y.request_id;
  });
  return out;
}

}  // namespace teeda
