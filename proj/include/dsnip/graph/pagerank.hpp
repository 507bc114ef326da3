#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dsnip/errors.hpp"
#include "dsnip/rdf/dataset.hpp"

namespace dsnip {

/// Power-iteration PageRank over the directed term graph (nodes: all
/// subject/object terms, one edge per triple). Dangling mass is spread
/// uniformly, so scores sum to 1 after every iteration. Returns a vector
/// indexed by TermId; terms that occur only in predicate position get 0.
inline std::vector<double> pagerank(const Dataset& d, double damping = 0.85,
                                    int iterations = 50) {
  if (d.empty()) throw DomainError("pagerank: empty dataset");
  if (!(damping > 0.0 && damping < 1.0))
    throw std::invalid_argument("pagerank: damping must be in (0,1)");
  if (iterations < 1)
    throw std::invalid_argument("pagerank: iterations must be >= 1");

  // Dense node indexing over terms that occur as subject or object.
  std::vector<std::uint32_t> node_of(d.term_count(), kNoTerm);
  std::vector<TermId> term_of;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const TripleIds& t = d.triple(i);
    for (TermId r : {t.s, t.o}) {
      if (node_of[r] == kNoTerm) {
        node_of[r] = static_cast<std::uint32_t>(term_of.size());
        term_of.push_back(r);
      }
    }
  }
  const std::size_t n = term_of.size();

  std::vector<std::uint32_t> out_count(n, 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  arcs.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const TripleIds& t = d.triple(i);
    std::uint32_t u = node_of[t.s], v = node_of[t.o];
    arcs.emplace_back(u, v);
    ++out_count[u];
  }

  std::vector<double> rank(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);
  for (int it = 0; it < iterations; ++it) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v)
      if (out_count[v] == 0) dangling += rank[v];
    const double base =
        (1.0 - damping) / static_cast<double>(n) +
        damping * dangling / static_cast<double>(n);
    std::fill(next.begin(), next.end(), base);
    for (const auto& [u, v] : arcs)
      next[v] += damping * rank[u] / static_cast<double>(out_count[u]);
    rank.swap(next);
  }

  std::vector<double> by_term(d.term_count(), 0.0);
  for (std::size_t v = 0; v < n; ++v) by_term[term_of[v]] = rank[v];
  return by_term;
}

}  // namespace dsnip
