#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <unordered_map>
#include <vector>

#include "dsnip/errors.hpp"
#include "dsnip/gen/config.hpp"
#include "dsnip/gen/keyword_groups.hpp"
#include "dsnip/graph/subdivision.hpp"
#include "dsnip/rdf/dataset.hpp"
#include "dsnip/rdf/query.hpp"

namespace dsnip {

namespace gst_detail {

/// How a state's optimal tree was formed; enough to reconstruct its edges.
struct Via {
  enum Kind : std::uint8_t { Init, Grow, Merge } kind = Init;
  std::uint32_t edge = 0;       // Grow
  std::uint64_t parent_a = 0;   // Grow / Merge
  std::uint64_t parent_b = 0;   // Merge
};

struct State {
  double cost = 0.0;
  Via via;
  bool seen = false;
  bool closed = false;
};

struct QueueEntry {
  double cost;
  std::uint32_t node;
  std::uint32_t mask;
};

struct EntryGreater {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.cost != b.cost) return a.cost > b.cost;
    if (a.node != b.node) return a.node > b.node;
    return a.mask > b.mask;
  }
};

}  // namespace gst_detail

/// Exact minimum-weight group Steiner tree over the dataset's subdivision
/// graph, one group of matching nodes per keyword. DPBF-style dynamic
/// programming over (node, terminal-subset) states driven by a priority
/// queue: grow along a half-edge, or merge two trees rooted at the same
/// node. Each half-edge weighs half its triple's weight (default 1 per
/// triple), so the first full-subset pop is the optimum. Equal-weight
/// optima are drained and the lexicographically smallest sorted
/// triple-index sequence wins.
inline GeneratorResult generate_gst(const Dataset& d, const Query& q,
                                    const GeneratorConfig& cfg) {
  cfg.validate();
  if (static_cast<int>(q.size()) > cfg.gstMaxTerminals)
    throw std::invalid_argument("gst: query exceeds gstMaxTerminals keywords");
  Deadline deadline(cfg.deadlineMillis);

  const SubdivisionOptions sub_opts{cfg.sharedPredicateNodes};
  SubdivisionGraph g = SubdivisionGraph::of_dataset(d, sub_opts);
  const auto groups = keyword_groups(d, g, q, cfg.match);

  GeneratorResult res;
  auto finish = [&](GenStatus status) {
    res.snippet = Snippet::of(d, {}, {}, "gst");
    res.status = status;
    res.runtimeMillis = deadline.elapsed_millis();
    return res;
  };
  for (const auto& grp : groups)
    if (grp.empty()) return finish(GenStatus::NoSolution);

  const std::size_t m = q.size();
  const std::uint32_t full = (1u << m) - 1;

  std::vector<std::uint32_t> node_groups(g.node_count(), 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::uint32_t v : groups[i]) node_groups[v] |= 1u << i;

  // Half-edge weights and adjacency: edge 2i is s--p of triple i, 2i+1 is p--o.
  std::vector<double> edge_w(2 * d.size(), 0.0);
  for (std::uint32_t i = 0; i < d.size(); ++i) {
    const double tw = cfg.tripleWeight ? cfg.tripleWeight(d, i) : 1.0;
    if (!(tw > 0.0))
      throw std::invalid_argument("gst: triple weights must be positive");
    edge_w[2 * i] = edge_w[2 * i + 1] = 0.5 * tw;
  }
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(
      g.node_count());
  for (std::uint32_t i = 0; i < d.size(); ++i) {
    const auto& nodes = g.triple_nodes(i);
    adj[nodes[0]].emplace_back(2 * i, nodes[1]);
    adj[nodes[1]].emplace_back(2 * i, nodes[0]);
    adj[nodes[1]].emplace_back(2 * i + 1, nodes[2]);
    adj[nodes[2]].emplace_back(2 * i + 1, nodes[1]);
  }

  auto key_of = [m](std::uint32_t node, std::uint32_t mask) {
    return (static_cast<std::uint64_t>(node) << m) | mask;
  };
  auto node_of = [m](std::uint64_t key) {
    return static_cast<std::uint32_t>(key >> m);
  };

  std::unordered_map<std::uint64_t, gst_detail::State> states;
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> closed_masks;
  std::priority_queue<gst_detail::QueueEntry,
                      std::vector<gst_detail::QueueEntry>,
                      gst_detail::EntryGreater>
      pq;

  auto relax = [&](std::uint32_t node, std::uint32_t mask, double cost,
                   gst_detail::Via via) {
    gst_detail::State& st = states[key_of(node, mask)];
    if (st.closed || (st.seen && cost >= st.cost)) return;
    st.seen = true;
    st.cost = cost;
    st.via = via;
    pq.push({cost, node, mask});
  };

  for (std::uint32_t v = 0; v < g.node_count(); ++v)
    if (node_groups[v] != 0)
      relax(v, node_groups[v], 0.0, {gst_detail::Via::Init, 0, 0, 0});

  // Reconstructs the sorted unique triple indices of a state's tree.
  auto rebuild_triples = [&](std::uint64_t key) {
    std::vector<std::uint32_t> triples;
    std::vector<std::uint64_t> stack{key};
    while (!stack.empty()) {
      std::uint64_t k = stack.back();
      stack.pop_back();
      const gst_detail::State& st = states.at(k);
      switch (st.via.kind) {
        case gst_detail::Via::Init:
          break;
        case gst_detail::Via::Grow:
          triples.push_back(st.via.edge / 2);
          stack.push_back(st.via.parent_a);
          break;
        case gst_detail::Via::Merge:
          stack.push_back(st.via.parent_a);
          stack.push_back(st.via.parent_b);
          break;
      }
    }
    std::sort(triples.begin(), triples.end());
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
    return triples;
  };

  std::int64_t pops = 0;
  bool found = false;
  double best_cost = 0.0;
  std::uint32_t best_node = kNoNode;
  std::vector<std::uint32_t> best_triples;

  while (!pq.empty()) {
    if (deadline.poll()) {
      res.iterations = pops;
      return finish(GenStatus::TimedOutFailure);
    }
    const gst_detail::QueueEntry top = pq.top();
    pq.pop();
    // Past the optimal-cost band: the lexicographic winner is final.
    if (found && top.cost > best_cost) break;

    const std::uint64_t key = key_of(top.node, top.mask);
    gst_detail::State& st = states[key];
    if (st.closed || top.cost != st.cost) continue;
    st.closed = true;
    ++pops;

    if (top.mask == full) {
      std::vector<std::uint32_t> triples = rebuild_triples(key);
      if (!found || triples < best_triples) {
        found = true;
        best_cost = top.cost;
        best_node = top.node;
        best_triples = std::move(triples);
      }
      continue;  // keep draining equal-cost optima
    }
    closed_masks[top.node].push_back(top.mask);

    for (const auto& [eid, other] : adj[top.node])
      relax(other, top.mask | node_groups[other], top.cost + edge_w[eid],
            {gst_detail::Via::Grow, eid, key, 0});

    for (std::uint32_t y : closed_masks[top.node]) {
      const std::uint32_t merged = top.mask | y;
      if (merged == top.mask || merged == y) continue;
      const gst_detail::State& other = states.at(key_of(top.node, y));
      relax(top.node, merged, top.cost + other.cost,
            {gst_detail::Via::Merge, 0, key, key_of(top.node, y)});
    }
  }

  res.iterations = pops;
  if (!found) return finish(GenStatus::NoSolution);

  std::vector<TermId> isolated;
  if (best_triples.empty()) isolated.push_back(g.node(best_node).term);

  res.objective = best_cost;
  res.snippet =
      Snippet::of(d, std::move(best_triples), std::move(isolated), "gst");
  res.status = GenStatus::Completed;
  res.runtimeMillis = deadline.elapsed_millis();
  return res;
}

}  // namespace dsnip
