#ifndef EXOLIM_ERROR_HPP
#define EXOLIM_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace exolim {

/// Failure classes. The CLI maps each one to its own exit code.
enum class ErrorKind { Io, Parse, Validation, Domain, Config, Numerical };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

/// Malformed input text. `line` is 1-based, 0 when not tied to a line.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line)
      : Error(ErrorKind::Parse, line ? "line " + std::to_string(line) + ": " + what : what),
        line(line) {}
  std::size_t line;
};

/// Structurally valid input that violates an invariant.
struct ValidationError : Error {
  ValidationError(const std::string& what, std::size_t line = 0)
      : Error(ErrorKind::Validation, line ? "line " + std::to_string(line) + ": " + what : what),
        line(line) {}
  std::size_t line;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

/// Fit or solver failure (degenerate weights etc).
struct NumericalError : Error {
  explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

const char* to_string(ErrorKind kind) noexcept;

} // namespace exolim

#endif
