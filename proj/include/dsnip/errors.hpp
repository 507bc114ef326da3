#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dsnip {

// Malformed N-Triples input (thrown in strict parse mode only).
class SyntaxError : public std::runtime_error {
public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(column) + ": " + reason),
        line_(line), column_(column), reason_(reason) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& reason() const { return reason_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string reason_;
};

// Operation called outside its mathematical domain (empty dataset, no rdf:type
// triples, ...).
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid benchmark manifest entry.
class ManifestError : public std::runtime_error {
public:
  ManifestError(const std::string& entry, const std::string& reason)
      : std::runtime_error("manifest entry '" + entry + "': " + reason),
        entry_(entry), reason_(reason) {}

  const std::string& entry() const { return entry_; }
  const std::string& reason() const { return reason_; }

private:
  std::string entry_;
  std::string reason_;
};

// Aggregation requested over an empty (or fully excluded) record set.
class AggregationError : public std::runtime_error {
public:
  explicit AggregationError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace dsnip
