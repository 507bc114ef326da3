#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dsnip/rdf/dataset.hpp"

namespace dsnip {

/// A snippet: a subset of a dataset's triples (by index, ascending) plus
/// isolated matched nodes that came without any triple. Terms already present
/// in the selected triples are never listed as isolated.
struct Snippet {
  std::vector<std::uint32_t> triples;  // sorted unique indices into the source
  std::vector<TermId> isolated;        // sorted unique term ids
  std::string dataset_id;
  std::string generator;

  bool empty() const { return triples.empty() && isolated.empty(); }

  static Snippet of(const Dataset& d, std::vector<std::uint32_t> triple_idx,
                    std::vector<TermId> isolated_terms = {},
                    std::string generator_tag = "") {
    std::sort(triple_idx.begin(), triple_idx.end());
    triple_idx.erase(std::unique(triple_idx.begin(), triple_idx.end()),
                     triple_idx.end());
    if (!triple_idx.empty() && triple_idx.back() >= d.size())
      throw std::out_of_range("snippet triple index outside dataset");

    std::sort(isolated_terms.begin(), isolated_terms.end());
    isolated_terms.erase(
        std::unique(isolated_terms.begin(), isolated_terms.end()),
        isolated_terms.end());
    if (!isolated_terms.empty() && isolated_terms.back() >= d.term_count())
      throw std::out_of_range("isolated term id outside dataset");

    // Drop isolated terms that already appear in a selected triple.
    if (!isolated_terms.empty() && !triple_idx.empty()) {
      std::vector<TermId> kept;
      kept.reserve(isolated_terms.size());
      for (TermId r : isolated_terms) {
        bool in_triples = false;
        for (std::uint32_t i : triple_idx) {
          const TripleIds& t = d.triple(i);
          if (t.s == r || t.p == r || t.o == r) { in_triples = true; break; }
        }
        if (!in_triples) kept.push_back(r);
      }
      isolated_terms = std::move(kept);
    }

    Snippet s;
    s.triples = std::move(triple_idx);
    s.isolated = std::move(isolated_terms);
    s.dataset_id = d.id();
    s.generator = std::move(generator_tag);
    return s;
  }

  /// Whole dataset viewed as its own snippet.
  static Snippet whole(const Dataset& d, std::string generator_tag = "") {
    std::vector<std::uint32_t> all(d.size());
    for (std::uint32_t i = 0; i < d.size(); ++i) all[i] = i;
    return of(d, std::move(all), {}, std::move(generator_tag));
  }
};

/// Ent(S): non-literal, non-class subject/object terms of the snippet's
/// triples plus qualifying isolated nodes. Sorted ascending.
inline std::vector<TermId> entities(const Dataset& d, const Snippet& s) {
  std::vector<TermId> out;
  for (std::uint32_t i : s.triples) {
    const TripleIds& t = d.triple(i);
    for (TermId r : {t.s, t.o})
      if (!d.term(r).is_literal() && !d.is_class(r)) out.push_back(r);
  }
  for (TermId r : s.isolated)
    if (!d.term(r).is_literal() && !d.is_class(r)) out.push_back(r);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace dsnip
