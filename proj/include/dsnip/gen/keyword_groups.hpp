#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dsnip/graph/subdivision.hpp"
#include "dsnip/rdf/dataset.hpp"
#include "dsnip/rdf/query.hpp"

namespace dsnip {

/// For each keyword (query order), the sorted node ids of `g` whose term
/// covers it: shared endpoints plus literal and predicate occurrence nodes.
inline std::vector<std::vector<std::uint32_t>> keyword_groups(
    const Dataset& d, const SubdivisionGraph& g, const Query& q,
    MatchMode mode = MatchMode::Token) {
  std::vector<std::vector<std::uint32_t>> groups(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    std::vector<std::uint32_t>& grp = groups[i];
    if (mode == MatchMode::Token) {
      for (TermId r : d.terms_with_token(q[i]))
        for (std::uint32_t v : g.nodes_of_term(r)) grp.push_back(v);
    } else {
      for (TermId r = 0; r < d.term_count(); ++r)
        if (d.term_covers(r, q[i], mode))
          for (std::uint32_t v : g.nodes_of_term(r)) grp.push_back(v);
    }
    std::sort(grp.begin(), grp.end());
    grp.erase(std::unique(grp.begin(), grp.end()), grp.end());
  }
  return groups;
}

/// Convenience overload over the whole dataset's subdivision graph.
inline std::vector<std::vector<std::uint32_t>> keyword_groups(
    const Dataset& d, const Query& q, MatchMode mode = MatchMode::Token,
    const SubdivisionOptions& opts = {}) {
  SubdivisionGraph g = SubdivisionGraph::of_dataset(d, opts);
  return keyword_groups(d, g, q, mode);
}

/// Per-triple bitmask of covered keywords (bit i = keyword i). Queries are
/// capped at 64 keywords, far beyond any realistic input.
inline std::vector<std::uint64_t> keyword_triple_masks(
    const Dataset& d, const Query& q, MatchMode mode = MatchMode::Token) {
  if (q.size() > 64)
    throw std::invalid_argument("queries above 64 keywords are not supported");
  std::vector<std::uint64_t> masks(d.size(), 0);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const std::uint64_t bit = 1ull << i;
    if (mode == MatchMode::Token) {
      for (TermId r : d.terms_with_token(q[i]))
        for (std::uint32_t t : d.occurrences(r)) masks[t] |= bit;
    } else {
      for (TermId r = 0; r < d.term_count(); ++r)
        if (d.term_covers(r, q[i], mode))
          for (std::uint32_t t : d.occurrences(r)) masks[t] |= bit;
    }
  }
  return masks;
}

}  // namespace dsnip
