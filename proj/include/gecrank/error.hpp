#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gecrank {

// Base for every data/validation failure raised by the library. The CLI maps
// these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& path)
      : Error("file not found: " + path), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(const std::string& file, std::size_t expected, std::size_t actual)
      : Error("length mismatch in " + file + ": expected " + std::to_string(expected) +
              " lines, got " + std::to_string(actual)),
        file_(file),
        expected_(expected),
        actual_(actual) {}
  const std::string& file() const { return file_; }
  std::size_t expected() const { return expected_; }
  std::size_t actual() const { return actual_; }

 private:
  std::string file_;
  std::size_t expected_;
  std::size_t actual_;
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("corpus has no sentences") {}
};

class DuplicateSystemName : public Error {
 public:
  explicit DuplicateSystemName(const std::string& name)
      : Error("duplicate or empty system name: '" + name + "'") {}
};

class MissingReference : public Error {
 public:
  explicit MissingReference(std::size_t sentence)
      : Error("sentence " + std::to_string(sentence) + " has no reference"),
        sentence_(sentence) {}
  std::size_t sentence() const { return sentence_; }

 private:
  std::size_t sentence_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& content)
      : Error("cannot parse " + file + ":" + std::to_string(line) + ": '" + content + "'"),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class NonFiniteScore : public Error {
 public:
  NonFiniteScore(const std::string& system, std::size_t line)
      : Error("non-finite score for system '" + system + "' at line " + std::to_string(line)),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class UnknownSystem : public Error {
 public:
  explicit UnknownSystem(const std::string& name) : Error("unknown system: " + name) {}
};

class NumericalInstability : public Error {
 public:
  using Error::Error;
};

class ZeroVariance : public Error {
 public:
  ZeroVariance() : Error("correlation undefined: input has zero variance") {}
};

class WindowTooLarge : public Error {
 public:
  WindowTooLarge(std::size_t window, std::size_t systems)
      : Error("window " + std::to_string(window) + " invalid for " + std::to_string(systems) +
              " systems") {}
};

class InsufficientOverlap : public Error {
 public:
  explicit InsufficientOverlap(std::size_t shared)
      : Error("need at least 2 shared systems, found " + std::to_string(shared)) {}
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace gecrank
