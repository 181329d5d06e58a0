#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dspace {

// Unresolved cross-reference between components (credential, social
// attribute, mechanism, mapping target, ...). Carries the offending symbol.
class DanglingReference : public std::runtime_error {
 public:
  explicit DanglingReference(std::string symbol)
      : std::runtime_error("dangling reference: " + symbol),
        symbol_(std::move(symbol)) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

// Decomposition children fail to reconstruct their parent.
class UnionViolation : public std::runtime_error {
 public:
  explicit UnionViolation(const std::string& what)
      : std::runtime_error("union violation: " + what) {}
};

// A refinement mapping is incomplete for an operation target.
class TranslationFailure : public std::runtime_error {
 public:
  explicit TranslationFailure(const std::string& what)
      : std::runtime_error("translation failure: " + what) {}
};

// Interoperability check invoked on a data unit nobody can use natively.
class PremiseViolation : public std::runtime_error {
 public:
  explicit PremiseViolation(const std::string& what)
      : std::runtime_error("premise violation: " + what) {}
};

class CorruptSnapshot : public std::runtime_error {
 public:
  explicit CorruptSnapshot(const std::string& what)
      : std::runtime_error("corrupt snapshot: " + what) {}
};

class MalformedTrace : public std::runtime_error {
 public:
  MalformedTrace(std::size_t line, const std::string& what)
      : std::runtime_error("trace line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Scenario text rejected by the parser.
class ScenarioSyntaxError : public std::runtime_error {
 public:
  ScenarioSyntaxError(std::size_t line, std::size_t col, const std::string& expected)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + expected),
        line_(line),
        col_(col),
        expected_(expected) {}
  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t col_;
  std::string expected_;
};

}  // namespace dspace
