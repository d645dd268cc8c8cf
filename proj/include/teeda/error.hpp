#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace teeda {

enum class ErrorCode {
  EmptyLabel,
  MissingName,
  MissingVariables,
  UnknownType,
  UnknownFormat,
  UnknownSharingCondition,
  UnknownCategory,
  UnknownKind,
  UnknownField,
  FieldNotAllowed,
  UnknownNode,
  UnknownRequest,
  UnknownItem,
  NotARequest,
  DuplicateId,
  IdMismatch,
  KindMismatch,
  ReplayGap,
  IoError,
  ParseError,
  ValidationError,
  HeaderMismatch,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyLabel: return "EmptyLabel";
    case ErrorCode::MissingName: return "MissingName";
    case ErrorCode::MissingVariables: return "MissingVariables";
    case ErrorCode::UnknownType: return "UnknownType";
    case ErrorCode::UnknownFormat: return "UnknownFormat";
    case ErrorCode::UnknownSharingCondition: return "UnknownSharingCondition";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::UnknownField: return "UnknownField";
    case ErrorCode::FieldNotAllowed: return "FieldNotAllowed";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::UnknownRequest: return "UnknownRequest";
    case ErrorCode::UnknownItem: return "UnknownItem";
    case ErrorCode::NotARequest: return "NotARequest";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::IdMismatch: return "IdMismatch";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::ReplayGap: return "ReplayGap";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
  }
  return "Unknown";
}

/// One rejected field of a submitted item. `detail` carries the offending
/// token for the Unknown* codes.
struct FieldError {
  std::string field;
  ErrorCode code;
  std::string detail;

  friend bool operator==(const FieldError&, const FieldError&) = default;

  std::string message() const {
    std::string out = field + ": " + std::string(to_string(code));
    if (!detail.empty()) out += " (" + detail + ")";
    return out;
  }
};

/// Thrown by operations with a single failure mode (lookups, I/O, parsing).
/// Validation of user input does not throw; it returns `Validated<T>`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message,
        std::vector<FieldError> fields = {}, std::size_t line = 0)
      : std::runtime_error(std::move(message)),
        code_(code),
        fields_(std::move(fields)),
        line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<FieldError>& fields() const noexcept { return fields_; }
  /// 1-based record/line position in the source file; 0 when not file-bound.
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::vector<FieldError> fields_;
  std::size_t line_ = 0;
};

/// Either a valid value (possibly with non-fatal warnings) or the full list
/// of field errors.
template <typename T>
class Validated {
 public:
  Validated(T value, std::vector<std::string> warnings = {})
      : state_(std::move(value)), warnings_(std::move(warnings)) {}
  Validated(std::vector<FieldError> errors) : state_(std::move(errors)) {}

  bool ok() const noexcept { return std::holds_alternative<T>(state_); }
  explicit operator bool() const noexcept { return ok(); }

  const T& value() const& {
    if (!ok()) throw Error(ErrorCode::ValidationError, summary(), errors());
    return std::get<T>(state_);
  }
  T&& value() && {
    if (!ok()) throw Error(ErrorCode::ValidationError, summary(), errors());
    return std::get<T>(std::move(state_));
  }

  const std::vector<FieldError>& errors() const {
    static const std::vector<FieldError> none;
    if (ok()) return none;
    return std::get<std::vector<FieldError>>(state_);
  }

  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  std::string summary() const {
    std::string out;
    for (const auto& e : errors()) {
      if (!out.empty()) out += "; ";
      out += e.message();
    }
    return out;
  }

 private:
  std::variant<T, std::vector<FieldError>> state_;
  std::vector<std::string> warnings_;
};

}  // namespace teeda
