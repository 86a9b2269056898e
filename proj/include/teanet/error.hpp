#pragma once

#include <stdexcept>
#include <string>

namespace teanet {

// Failure taxonomy; the numeric value doubles as the CLI exit code.
enum class ErrorKind {
  usage = 2,    // bad arguments / misuse of an API
  data = 3,     // malformed file contents, shape or configuration violations
  numeric = 4,  // NaN/Inf abort
  io = 5,       // missing or unreadable/unwritable files
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

  static Error usage(const std::string& msg) { return {ErrorKind::usage, msg}; }
  static Error data(const std::string& msg) { return {ErrorKind::data, msg}; }
  static Error numeric(const std::string& msg) { return {ErrorKind::numeric, msg}; }
  static Error io(const std::string& msg) { return {ErrorKind::io, msg}; }

 private:
  ErrorKind kind_;
};

}  // namespace teanet
