#pragma once

#include <stdexcept>
#include <string>

namespace toricmmp {

/// Broad failure classes. The command line tool maps them onto exit codes.
enum class ErrorKind {
  Input,         // malformed or invalid input data (exit 2)
  Precondition,  // a mathematical precondition of an operation fails (exit 3)
  Cap,           // a search/step cap was hit, or a semi-decision gave up (exit 4)
  Invariant,     // an internal invariant was violated (exit 5)
};

/// Every library failure carries a short machine-readable code such as
/// "OverlappingCones" or "NotNefAtT0" next to a human message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, ErrorKind kind, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)), kind_(kind) {}

  const std::string& code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return kind_; }

 private:
  std::string code_;
  ErrorKind kind_;
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return 2;
    case ErrorKind::Precondition: return 3;
    case ErrorKind::Cap: return 4;
    case ErrorKind::Invariant: return 5;
  }
  return 1;
}

[[noreturn]] inline void fail(const std::string& code, ErrorKind kind, const std::string& message) {
  throw Error(code, kind, message);
}

}  // namespace toricmmp
