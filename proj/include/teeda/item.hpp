#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "teeda/enums.hpp"
#include "teeda/error.hpp"
#include "teeda/label.hpp"

namespace teeda {

using VariableSet = std::set<VariableLabel>;

/// A call for data: what a user wants and, optionally, why.
struct DataRequest {
  std::string id;
  std::string name;
  VariableSet variables;
  std::optional<std::string> purpose;
  std::optional<Category> category;
  /// Unrecognized document fields kept verbatim (serialized JSON object)
  /// when loading in lenient mode. Empty otherwise.
  std::string extensions;

  friend bool operator==(const DataRequest&, const DataRequest&) = default;
};

/// Summary metadata of data a holder can provide. The data itself is never
/// part of the jacket.
struct DataJacket {
  std::string id;
  std::string name;
  VariableSet variables;
  std::optional<std::string> outline;
  EnumSet<DataType> types;
  EnumSet<DataFormat> formats;
  std::optional<SharingCondition> sharing;
  std::string extensions;

  friend bool operator==(const DataJacket&, const DataJacket&) = default;
};

using Item = std::variant<DataRequest, DataJacket>;

inline const std::string& item_id(const Item& item) {
  return std::visit([](const auto& i) -> const std::string& { return i.id; }, item);
}
inline const std::string& item_name(const Item& item) {
  return std::visit([](const auto& i) -> const std::string& { return i.name; }, item);
}
inline const VariableSet& item_variables(const Item& item) {
  return std::visit([](const auto& i) -> const VariableSet& { return i.variables; },
                    item);
}
inline DataKind item_kind(const Item& item) {
  return std::holds_alternative<DataRequest>(item) ? DataKind::Request
                                                   : DataKind::Providable;
}
inline void set_item_id(Item& item, std::string id) {
  std::visit([&](auto& i) { i.id = std::move(id); }, item);
}

/// Items at or above this many variables raise no warning. Fewer is legal.
inline constexpr std::size_t kTypicalMinVariables = 2;

namespace detail {

inline bool blank(std::string_view s) { return trim(s).empty(); }

inline std::optional<std::string> optional_text(const std::optional<std::string>& s) {
  if (!s || blank(*s)) return std::nullopt;
  return s;
}

inline void check_common(std::string_view name, std::span<const std::string> raw_vars,
                         VariableSet& vars, std::vector<FieldError>& errors) {
  if (blank(name)) errors.push_back({"name", ErrorCode::MissingName, {}});
  for (const auto& raw : raw_vars) {
    if (auto label = VariableLabel::try_normalize(raw)) vars.insert(std::move(*label));
  }
  if (vars.empty()) errors.push_back({"variables", ErrorCode::MissingVariables, {}});
}

inline std::vector<std::string> size_warnings(const VariableSet& vars) {
  if (vars.size() >= kTypicalMinVariables) return {};
  return {"variables: only " + std::to_string(vars.size()) +
          " variable(s); items usually list at least " +
          std::to_string(kTypicalMinVariables)};
}

}  // namespace detail

/// Blank variable entries are dropped; duplicates collapse after
/// normalization. The id is left empty for the caller to assign.
inline Validated<DataRequest> validate_request(
    std::string_view name, std::span<const std::string> variables,
    const std::optional<std::string>& purpose = std::nullopt) {
  std::vector<FieldError> errors;
  DataRequest req;
  detail::check_common(name, variables, req.variables, errors);
  if (!errors.empty()) return errors;
  req.name = std::string(name);
  req.purpose = detail::optional_text(purpose);
  auto warnings = detail::size_warnings(req.variables);
  return {std::move(req), std::move(warnings)};
}

inline Validated<DataRequest> validate_request(
    std::string_view name, std::initializer_list<std::string> variables,
    const std::optional<std::string>& purpose = std::nullopt) {
  return validate_request(name, std::span<const std::string>(variables.begin(), variables.size()),
                          purpose);
}

/// Type and format tokens are matched case-insensitively, with the alias
/// table in enums.hpp. Every unknown token is reported.
inline Validated<DataJacket> validate_jacket(
    std::string_view name, std::span<const std::string> variables,
    const std::optional<std::string>& outline,
    std::span<const std::string> types, std::span<const std::string> formats,
    const std::optional<std::string>& sharing) {
  std::vector<FieldError> errors;
  DataJacket dj;
  detail::check_common(name, variables, dj.variables, errors);
  for (const auto& t : types) {
    if (auto v = parse_token<DataType>(t))
      dj.types.insert(*v);
    else
      errors.push_back({"types", ErrorCode::UnknownType, t});
  }
  for (const auto& f : formats) {
    if (auto v = parse_token<DataFormat>(f))
      dj.formats.insert(*v);
    else
      errors.push_back({"formats", ErrorCode::UnknownFormat, f});
  }
  if (sharing && !detail::blank(*sharing)) {
    if (auto v = parse_token<SharingCondition>(*sharing))
      dj.sharing = *v;
    else
      errors.push_back({"sharing", ErrorCode::UnknownSharingCondition, *sharing});
  }
  if (!errors.empty()) return errors;
  dj.name = std::string(name);
  dj.outline = detail::optional_text(outline);
  auto warnings = detail::size_warnings(dj.variables);
  return {std::move(dj), std::move(warnings)};
}

struct JacketInput {
  std::string name;
  std::vector<std::string> variables;
  std::optional<std::string> outline;
  std::vector<std::string> types;
  std::vector<std::string> formats;
  std::optional<std::string> sharing;
};

inline Validated<DataJacket> validate_jacket(const JacketInput& in) {
  return validate_jacket(in.name, in.variables, in.outline, in.types, in.formats,
                         in.sharing);
}

/// Re-checks the type invariants of an already constructed item.
inline std::vector<FieldError> check_invariants(const Item& item) {
  std::vector<FieldError> errors;
  if (detail::blank(item_name(item))) errors.push_back({"name", ErrorCode::MissingName, {}});
  if (item_variables(item).empty())
    errors.push_back({"variables", ErrorCode::MissingVariables, {}});
  for (const auto& v : item_variables(item)) {
    if (detail::collapse_lower(v.text()) != v.text() || v.text().empty())
      errors.push_back({"variables", ErrorCode::EmptyLabel, v.text()});
  }
  return errors;
}

}  // namespace teeda
