#pragma once

#include <stdexcept>
#include <string>

namespace qcaps {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed cap file (bad header, bad digit, zero/duplicate column, ...).
struct ParseError : Error {
  using Error::Error;
};

// Thrown by code_params when the input is not a quantum cap; `predicate`
// names the first failing check.
struct NotQuantumError : Error {
  std::string predicate;
  explicit NotQuantumError(std::string pred)
      : Error("not a quantum cap: fails " + pred), predicate(std::move(pred)) {}
};

}  // namespace qcaps
