#pragma once

#include <stdexcept>
#include <string>

namespace killform {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: group specs, selectors, files, parameters out of range.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap (group order, class size, pair budget) would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A precondition on mathematical input failed (wrong family, rank > 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace killform
