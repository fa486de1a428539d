#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qsanov {

/// Input failed a type invariant (non-Hermitian, bad trace, mismatched sizes, ...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what)
      : std::invalid_argument(what), errors_{what} {}
  explicit ValidationError(std::vector<std::string> errors);

  /// Every problem found, in discovery order. Single-message errors hold one entry.
  const std::vector<std::string>& errors() const noexcept { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Argument outside the mathematical domain of an operation (orders, rates).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A function or limit is undefined because of how two supports interact.
class SupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical procedure could not certify its result.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested operator-level work exceeds the configured size budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline ValidationError::ValidationError(std::vector<std::string> errors)
    : std::invalid_argument([&] {
        std::string joined;
        for (const auto& e : errors) {
          if (!joined.empty()) joined += "; ";
          joined += e;
        }
        return joined;
      }()),
      errors_(std::move(errors)) {}

}  // namespace qsanov
