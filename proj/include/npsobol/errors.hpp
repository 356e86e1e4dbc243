#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace npsobol {

/// Precondition violated by an argument (non-finite input, h <= 0, size mismatch, ...).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The response has zero empirical variance, so no index is defined.
class DegenerateResponse : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The pilot smoother could not produce a single usable fitted value.
class ConditioningError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input; row and column are 1-based, 0 when not applicable.
class InputError : public std::runtime_error {
public:
  InputError(const std::string& what, std::size_t row = 0, std::size_t column = 0);

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t row_;
  std::size_t column_;
};

} // namespace npsobol
