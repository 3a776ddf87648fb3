#pragma once

#include <stdexcept>
#include <string>

namespace clone_lattice {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::string file, int line, int col, const std::string& message)
      : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(col) +
                           ": " + message),
        file_(std::move(file)),
        line_(line),
        col_(col) {}

  const std::string& file() const { return file_; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  std::string file_;
  int line_;
  int col_;
};

class PointerNotInFunction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The pointer is declared but never dereferenced, so there is nothing to
/// isolate. Callers skip the pointer.
class EmptySlice : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-linear index arithmetic, deep pointer nesting or path explosion.
class UnsupportedConstruct : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoMatching : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonSeparable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyCorpus : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace clone_lattice
