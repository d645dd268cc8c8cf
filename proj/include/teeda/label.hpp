#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "teeda/error.hpp"

namespace teeda {

namespace detail {

constexpr bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

constexpr char ascii_lower(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

/// Trim, collapse whitespace runs to one space and lowercase ASCII letters.
/// Bytes outside ASCII pass through untouched, so UTF-8 text survives.
inline std::string collapse_lower(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(ascii_lower(c));
  }
  return out;
}

inline std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// A normalized variable name. Two labels match iff their text is equal;
/// synonyms ("address" / "location") stay distinct.
class VariableLabel {
 public:
  /// Throws Error(EmptyLabel) for blank input.
  static VariableLabel normalize(std::string_view raw) {
    auto text = detail::collapse_lower(raw);
    if (text.empty()) throw Error(ErrorCode::EmptyLabel, "variable label is blank");
    return VariableLabel(std::move(text));
  }

  static std::optional<VariableLabel> try_normalize(std::string_view raw) {
    auto text = detail::collapse_lower(raw);
    if (text.empty()) return std::nullopt;
    return VariableLabel(std::move(text));
  }

  const std::string& text() const noexcept { return text_; }

  friend bool operator==(const VariableLabel&, const VariableLabel&) = default;
  friend auto operator<=>(const VariableLabel&, const VariableLabel&) = default;

 private:
  explicit VariableLabel(std::string text) : text_(std::move(text)) {}
  std::string text_;
};

inline VariableLabel normalize_label(std::string_view raw) {
  return VariableLabel::normalize(raw);
}

}  // namespace teeda

template <>
struct std::hash<teeda::VariableLabel> {
  std::size_t operator()(const teeda::VariableLabel& l) const noexcept {
    return std::hash<std::string>{}(l.text());
  }
};
