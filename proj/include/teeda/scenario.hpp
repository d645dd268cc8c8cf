#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "teeda/analytics.hpp"
#include "teeda/corpus.hpp"

namespace teeda {

/// Sets (or overwrites) the category of a request in place.
inline void assign_category_in_place(Corpus& corpus, std::string_view id,
                                     std::optional<Category> category) {
  const Item* item = corpus.find(id);
  if (!item)
    throw Error(ErrorCode::UnknownRequest, "no request with id '" + std::string(id) + "'");
  const auto* req = std::get_if<DataRequest>(item);
  if (!req) throw Error(ErrorCode::NotARequest, "'" + std::string(id) + "' is providable data");
  DataRequest updated = *req;
  updated.category = category;
  corpus.replace(std::move(updated));
}

inline Corpus assign_category(Corpus corpus, std::string_view id, Category category) {
  assign_category_in_place(corpus, id, category);
  return corpus;
}

inline FrequencyTable category_profile(const Corpus& corpus, Category category,
                                       std::optional<std::size_t> top_k = std::nullopt) {
  std::vector<const VariableSet*> sets;
  for (const DataRequest* req : corpus.requests())
    if (req->category == category) sets.push_back(&req->variables);
  return detail::tally(sets, top_k);
}

/// Variable that ties requests together across every category; always
/// surfaced first in suggestions when a category uses it.
inline const VariableLabel& central_variable() {
  static const VariableLabel date = normalize_label("date");
  return date;
}

struct CategorySection {
  Category category;
  std::size_t count = 0;
  FrequencyTable profile;
  /// Labels used by this category's requests that no jacket provides, in
  /// profile order.
  std::vector<VariableLabel> missing;
  /// Suggested variable set for newly designed data: top profile labels
  /// followed by the remaining missing labels.
  std::vector<VariableLabel> suggestions;

  friend bool operator==(const CategorySection&, const CategorySection&) = default;
};

struct ScenarioReport {
  std::array<CategorySection, 3> sections;
  std::vector<std::string> uncategorized;

  std::size_t categorized() const {
    std::size_t n = 0;
    for (const auto& s : sections) n += s.count;
    return n;
  }

  friend bool operator==(const ScenarioReport&, const ScenarioReport&) = default;
};

inline constexpr std::size_t kDefaultSuggestionTop = 5;

inline ScenarioReport scenario_report(const Corpus& corpus,
                                      std::size_t top_k = kDefaultSuggestionTop) {
  const VariableSet provided = distinct_labels(corpus, DataKind::Providable);
  ScenarioReport report;
  for (Category cat : all_values<Category>()) {
    auto& sec = report.sections[enum_index(cat)];
    sec.category = cat;
    for (const DataRequest* req : corpus.requests()) sec.count += req->category == cat ? 1 : 0;
    sec.profile = category_profile(corpus, cat);
    for (const auto& row : sec.profile.rows)
      if (!provided.count(row.label)) sec.missing.push_back(row.label);

    auto push_unique = [&sec](const VariableLabel& l) {
      if (std::find(sec.suggestions.begin(), sec.suggestions.end(), l) == sec.suggestions.end())
        sec.suggestions.push_back(l);
    };
    const bool has_central =
        std::any_of(sec.profile.rows.begin(), sec.profile.rows.end(),
                    [](const FrequencyRow& r) { return r.label == central_variable(); });
    if (has_central) push_unique(central_variable());
    for (std::size_t i = 0; i < sec.profile.rows.size() && i < top_k; ++i)
      push_unique(sec.profile.rows[i].label);
    for (const auto& l : sec.missing) push_unique(l);
  }
  for (const DataRequest* req : corpus.requests())
    if (!req->category) report.uncategorized.push_back(req->id);
  return report;
}

/// Keyword hints for pre-filling a category. Advisory only: the caller
/// decides whether to assign.
struct CategoryKeywords {
  Category category;
  std::vector<std::string_view> keywords;
};

inline const std::vector<CategoryKeywords>& category_keywords() {
  static const std::vector<CategoryKeywords> table{
      {Category::PhenomenonUnderstanding, {"verify", "understand", "compare countries"}},
      {Category::IndividualDecisionMaking, {"going out", "staying home"}},
      {Category::OrganizationalDecisionMaking, {"business", "guidelines", "policy"}},
  };
  return table;
}

/// Counts keyword hits in name and purpose; the category with the most hits
/// wins. No hits or a tie yields no suggestion.
inline std::optional<Category> suggest_category(const DataRequest& request) {
  std::string text = detail::collapse_lower(request.name);
  if (request.purpose) text += " " + detail::collapse_lower(*request.purpose);

  std::array<std::size_t, 3> hits{};
  for (const auto& entry : category_keywords())
    for (auto kw : entry.keywords)
      if (text.find(kw) != std::string::npos) ++hits[enum_index(entry.category)];

  const auto best = std::max_element(hits.begin(), hits.end());
  if (*best == 0 || std::count(hits.begin(), hits.end(), *best) > 1) return std::nullopt;
  return all_values<Category>()[static_cast<std::size_t>(best - hits.begin())];
}

}  // namespace teeda
