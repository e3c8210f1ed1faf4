#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gthom {

// Domain errors carry a stable machine-readable code (surfaced by the CLI's
// --json error objects) in addition to the human message.
class domain_error : public std::runtime_error {
public:
  domain_error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& what, std::size_t column)
      : std::runtime_error(what + " (column " + std::to_string(column + 1) + ")"),
        column_(column) {}

  // 0-based offset of the offending character in the input.
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t column_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw domain_error(code, what);
}

inline void require(bool cond, const std::string& code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace gthom
