#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dsnip/rdf/text.hpp"

namespace dsnip {

/// A keyword query: non-empty ordered set of lowercase keywords.
/// Construction lowercases and deduplicates, keeping first-occurrence order.
class Query {
public:
  explicit Query(const std::vector<std::string>& raw) {
    for (const std::string& k : raw) {
      if (k.empty())
        throw std::invalid_argument("query keyword must not be empty");
      std::string low = to_lower_ascii(k);
      bool seen = false;
      for (const std::string& existing : keywords_)
        if (existing == low) { seen = true; break; }
      if (!seen) keywords_.push_back(std::move(low));
    }
    if (keywords_.empty())
      throw std::invalid_argument("query must contain at least one keyword");
  }

  const std::vector<std::string>& keywords() const { return keywords_; }
  std::size_t size() const { return keywords_.size(); }
  const std::string& operator[](std::size_t i) const { return keywords_[i]; }

private:
  std::vector<std::string> keywords_;
};

}  // namespace dsnip
