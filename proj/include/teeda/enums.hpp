#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "teeda/label.hpp"

namespace teeda {

enum class DataKind { Request, Providable };

enum class DataType {
  TimeSeries,
  NumericalValue,
  Text,
  Table,
  Image,
  Graph,
  Movie,
  Sound,
  Other,
};

enum class DataFormat { CSV, Txt, RDB, Markup, RDF, Weka, Shape, PDF, Other };

enum class SharingCondition {
  GenerallyShareable,
  ConditionsNegotiationsRequired,
  ShareableWithinLimitedRange,
  NonShareable,
  ShareableByPurchase,
  NotYetDecided,
  OtherConditions,
};

/// Purpose category of a data request.
enum class Category {
  PhenomenonUnderstanding,
  IndividualDecisionMaking,
  OrganizationalDecisionMaking,
};

/// Canonical wire tokens plus accepted input aliases for a closed enumeration.
/// Values are listed in declaration order, which is also the report row order.
template <typename E>
struct EnumTokens;

template <>
struct EnumTokens<DataKind> {
  static constexpr std::array<std::pair<DataKind, std::string_view>, 2> canonical{{
      {DataKind::Request, "request"},
      {DataKind::Providable, "providable"},
  }};
  static constexpr std::array<std::pair<std::string_view, DataKind>, 0> aliases{};
};

template <>
struct EnumTokens<DataType> {
  static constexpr std::array<std::pair<DataType, std::string_view>, 9> canonical{{
      {DataType::TimeSeries, "time series"},
      {DataType::NumericalValue, "numerical value"},
      {DataType::Text, "text"},
      {DataType::Table, "table"},
      {DataType::Image, "image"},
      {DataType::Graph, "graph"},
      {DataType::Movie, "movie"},
      {DataType::Sound, "sound"},
      {DataType::Other, "other"},
  }};
  static constexpr std::array<std::pair<std::string_view, DataType>, 2> aliases{{
      {"number", DataType::NumericalValue},
      {"others", DataType::Other},
  }};
};

template <>
struct EnumTokens<DataFormat> {
  static constexpr std::array<std::pair<DataFormat, std::string_view>, 9> canonical{{
      {DataFormat::CSV, "CSV"},
      {DataFormat::Txt, "txt"},
      {DataFormat::RDB, "RDB"},
      {DataFormat::Markup, "markup"},
      {DataFormat::RDF, "RDF"},
      {DataFormat::Weka, "weka"},
      {DataFormat::Shape, "shape"},
      {DataFormat::PDF, "PDF"},
      {DataFormat::Other, "other"},
  }};
  static constexpr std::array<std::pair<std::string_view, DataFormat>, 1> aliases{{
      {"others", DataFormat::Other},
  }};
};

template <>
struct EnumTokens<SharingCondition> {
  static constexpr std::array<std::pair<SharingCondition, std::string_view>, 7> canonical{{
      {SharingCondition::GenerallyShareable, "generally shareable"},
      {SharingCondition::ConditionsNegotiationsRequired,
       "conditions/negotiations are required"},
      {SharingCondition::ShareableWithinLimitedRange,
       "shareable within a limited range"},
      {SharingCondition::NonShareable, "non-shareable"},
      {SharingCondition::ShareableByPurchase, "shareable by purchase"},
      {SharingCondition::NotYetDecided, "not yet decided"},
      {SharingCondition::OtherConditions, "other conditions"},
  }};
  static constexpr std::array<std::pair<std::string_view, SharingCondition>, 1> aliases{{
      {"shareable by purchased", SharingCondition::ShareableByPurchase},
  }};
};

template <>
struct EnumTokens<Category> {
  static constexpr std::array<std::pair<Category, std::string_view>, 3> canonical{{
      {Category::PhenomenonUnderstanding, "phenomenon understanding"},
      {Category::IndividualDecisionMaking, "individual decision-making"},
      {Category::OrganizationalDecisionMaking, "organizational decision-making"},
  }};
  static constexpr std::array<std::pair<std::string_view, Category>, 0> aliases{};
};

template <typename E>
constexpr std::size_t enum_count = EnumTokens<E>::canonical.size();

template <typename E>
constexpr auto all_values() {
  std::array<E, enum_count<E>> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = EnumTokens<E>::canonical[i].first;
  return out;
}

template <typename E>
constexpr std::size_t enum_index(E value) {
  return static_cast<std::size_t>(value);
}

template <typename E>
constexpr std::string_view token(E value) {
  return EnumTokens<E>::canonical[enum_index(value)].second;
}

/// Case- and whitespace-insensitive lookup against canonical tokens, then
/// the alias table. Anything else is rejected.
template <typename E>
std::optional<E> parse_token(std::string_view raw) {
  const auto key = detail::collapse_lower(raw);
  for (const auto& [value, tok] : EnumTokens<E>::canonical) {
    if (detail::collapse_lower(tok) == key) return value;
  }
  for (const auto& [alias, value] : EnumTokens<E>::aliases) {
    if (alias == key) return value;
  }
  return std::nullopt;
}

/// Small bitset over an enumeration; iteration follows declaration order.
template <typename E>
class EnumSet {
 public:
  EnumSet() = default;
  EnumSet(std::initializer_list<E> values) {
    for (auto v : values) insert(v);
  }

  void insert(E v) { bits_ |= bit(v); }
  void erase(E v) { bits_ &= ~bit(v); }
  bool contains(E v) const { return (bits_ & bit(v)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const {
    std::size_t n = 0;
    for (auto v : all_values<E>()) n += contains(v) ? 1 : 0;
    return n;
  }
  std::vector<E> values() const {
    std::vector<E> out;
    for (auto v : all_values<E>())
      if (contains(v)) out.push_back(v);
    return out;
  }

  friend bool operator==(const EnumSet&, const EnumSet&) = default;

 private:
  static unsigned bit(E v) { return 1u << enum_index(v); }
  unsigned bits_ = 0;
};

}  // namespace teeda
