#pragma once

#include <stdexcept>
#include <string>

namespace mixsent {

// Bad input: unreadable/malformed files, invalid values in user data.
// The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated API precondition, i.e. a caller bug. CLI exit code 3.
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace mixsent
