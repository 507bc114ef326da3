#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "dsnip/errors.hpp"
#include "dsnip/gen/config.hpp"
#include "dsnip/gen/keyword_groups.hpp"
#include "dsnip/graph/subdivision.hpp"
#include "dsnip/rdf/dataset.hpp"
#include "dsnip/rdf/query.hpp"

namespace dsnip {

namespace tac_detail {

struct Star {
  TermId center;
  std::uint32_t center_node;
  std::uint64_t kw_mask;   // keywords covered by the star's triples
  int kw_count;
  std::uint32_t node_count;  // subdivision nodes of the standalone star
};

}  // namespace tac_detail

/// Query-biased snippet built from maximal 1-radius subgraphs (stars): every
/// non-literal endpoint spawns a star of its incident triples; stars are
/// ranked by (keywords covered desc, node count asc, center term) and merged
/// greedily until the subdivision-node budget is filled. A star that fits
/// only partially is trimmed leaf by leaf with keyword-covering leaves first;
/// a star whose triples all miss the budget leaves its matched center behind
/// as an isolated node.
inline GeneratorResult generate_tac(const Dataset& d, const Query& q,
                                    const GeneratorConfig& cfg) {
  cfg.validate();
  if (d.empty()) throw DomainError("tac: empty dataset");
  Deadline deadline(cfg.deadlineMillis);

  const SubdivisionOptions sub_opts{cfg.sharedPredicateNodes};
  SubdivisionGraph g = SubdivisionGraph::of_dataset(d, sub_opts);
  std::vector<std::uint64_t> masks = keyword_triple_masks(d, q, cfg.match);

  std::int64_t processed = 0;
  auto fail_if_expired = [&](GeneratorResult& out) {
    out.snippet = Snippet::of(d, {}, {}, "tac");
    out.status = GenStatus::TimedOutFailure;
    out.iterations = processed;
    out.runtimeMillis = deadline.elapsed_millis();
    return out;
  };

  // Materialize all maximal 1-radius subgraphs.
  std::vector<tac_detail::Star> stars;
  std::vector<std::uint32_t> scratch;
  for (TermId r = 0; r < d.term_count(); ++r) {
    if (d.term(r).is_literal()) continue;
    const std::vector<std::uint32_t>& inc = d.incident(r);
    if (inc.empty()) continue;
    if (deadline.poll()) {
      GeneratorResult out;
      return fail_if_expired(out);
    }
    tac_detail::Star star;
    star.center = r;
    star.center_node = g.endpoint_node(r);
    star.kw_mask = 0;
    scratch.clear();
    for (std::uint32_t t : inc) {
      star.kw_mask |= masks[t];
      const auto& nodes = g.triple_nodes(t);
      scratch.insert(scratch.end(), nodes.begin(), nodes.end());
    }
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    star.node_count = static_cast<std::uint32_t>(scratch.size());
    star.kw_count = std::popcount(star.kw_mask);
    stars.push_back(star);
  }

  GeneratorResult res;
  if (stars.empty()) {
    res.snippet = Snippet::of(d, {}, {}, "tac");
    res.status = GenStatus::NoSolution;
    res.runtimeMillis = deadline.elapsed_millis();
    return res;
  }

  std::stable_sort(stars.begin(), stars.end(),
                   [&](const tac_detail::Star& a, const tac_detail::Star& b) {
                     if (a.kw_count != b.kw_count) return a.kw_count > b.kw_count;
                     if (a.node_count != b.node_count)
                       return a.node_count < b.node_count;
                     return d.term(a.center) < d.term(b.center);
                   });

  const std::uint32_t budget = static_cast<std::uint32_t>(cfg.nodeBudget);
  std::vector<char> node_in(g.node_count(), 0);
  std::vector<char> chosen(d.size(), 0);
  std::uint32_t used = 0;
  std::vector<std::uint32_t> picked;
  std::vector<TermId> isolated;
  std::uint64_t covered_mask = 0;

  auto triple_new_nodes = [&](std::uint32_t t) {
    const auto& nodes = g.triple_nodes(t);
    std::uint32_t fresh = 0;
    for (std::uint32_t v : nodes)
      if (!node_in[v]) ++fresh;
    // subject == object counts one node, not two
    if (nodes[0] == nodes[2] && !node_in[nodes[0]]) --fresh;
    return fresh;
  };
  auto add_triple = [&](std::uint32_t t) {
    for (std::uint32_t v : g.triple_nodes(t)) {
      if (!node_in[v]) {
        node_in[v] = 1;
        ++used;
      }
    }
    chosen[t] = 1;
    picked.push_back(t);
    covered_mask |= masks[t];
  };

  for (const tac_detail::Star& star : stars) {
    if (used >= budget) break;
    if (deadline.poll()) return fail_if_expired(res);
    ++processed;

    std::vector<std::uint32_t> pending;
    for (std::uint32_t t : d.incident(star.center))
      if (!chosen[t]) pending.push_back(t);
    if (pending.empty()) continue;

    std::uint32_t fresh_total = 0;
    {
      scratch.clear();
      for (std::uint32_t t : pending) {
        const auto& nodes = g.triple_nodes(t);
        scratch.insert(scratch.end(), nodes.begin(), nodes.end());
      }
      std::sort(scratch.begin(), scratch.end());
      scratch.erase(std::unique(scratch.begin(), scratch.end()),
                    scratch.end());
      for (std::uint32_t v : scratch)
        if (!node_in[v]) ++fresh_total;
    }

    if (used + fresh_total <= budget) {
      for (std::uint32_t t : pending) add_triple(t);
      continue;
    }

    // Partial fit: keyword-covering leaves first, then by triple index.
    std::stable_sort(pending.begin(), pending.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                       const bool ca = masks[a] != 0, cb = masks[b] != 0;
                       if (ca != cb) return ca;
                       return a < b;
                     });
    bool added_any = false;
    for (std::uint32_t t : pending) {
      std::uint32_t cost = triple_new_nodes(t);
      if (used + cost <= budget) {
        add_triple(t);
        added_any = true;
      }
    }
    if (!added_any && !node_in[star.center_node] && used + 1 <= budget) {
      bool center_matches = false;
      for (std::size_t i = 0; i < q.size() && !center_matches; ++i)
        center_matches = d.term_covers(star.center, q[i], cfg.match);
      if (center_matches) {
        node_in[star.center_node] = 1;
        ++used;
        isolated.push_back(star.center);
        for (std::size_t i = 0; i < q.size(); ++i)
          if (d.term_covers(star.center, q[i], cfg.match))
            covered_mask |= 1ull << i;
      }
    }
  }

  res.snippet = Snippet::of(d, std::move(picked), std::move(isolated), "tac");
  res.status = GenStatus::Completed;
  res.iterations = processed;
  res.objective = static_cast<double>(std::popcount(covered_mask)) /
                  static_cast<double>(q.size());
  res.runtimeMillis = deadline.elapsed_millis();
  return res;
}

}  // namespace dsnip
