#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dsnip/rdf/dataset.hpp"
#include "dsnip/rdf/snippet.hpp"

namespace dsnip {

inline constexpr std::uint32_t kNoNode = 0xffffffffu;

enum class NodeKind : std::uint8_t {
  Endpoint,           // shared node for a non-literal term (or isolated term)
  LiteralOccurrence,  // one node per literal object occurrence
  Predicate,          // one node per triple, or per predicate term when shared
};

struct SubdivisionNode {
  NodeKind kind;
  TermId term;
  std::uint32_t triple;  // occurrence index; kNoNode for shared/isolated nodes
};

struct SubdivisionOptions {
  bool shared_predicate_nodes = false;  // one node per predicate IRI instead
                                        // of one per triple occurrence
};

/// Undirected subdivision of a snippet's RDF graph: every triple becomes two
/// edges s -- p-node -- o. Non-literal endpoints are shared across triples;
/// literal objects and predicate positions get one node per occurrence (the
/// latter configurable). Isolated snippet nodes appear with degree 0.
class SubdivisionGraph {
public:
  static SubdivisionGraph of_snippet(const Dataset& d, const Snippet& s,
                                     const SubdivisionOptions& opts = {}) {
    SubdivisionGraph g;
    g.shared_predicates_ = opts.shared_predicate_nodes;
    g.triple_nodes_.assign(d.size(), {kNoNode, kNoNode, kNoNode});
    for (std::uint32_t i : s.triples) g.add_triple(d, i);
    for (TermId r : s.isolated) g.endpoint(r);
    g.build_adjacency();
    return g;
  }

  /// Subdivision of the whole dataset (substrate for keyword groups, GST,
  /// and TA+C star materialization).
  static SubdivisionGraph of_dataset(const Dataset& d,
                                     const SubdivisionOptions& opts = {}) {
    SubdivisionGraph g;
    g.shared_predicates_ = opts.shared_predicate_nodes;
    g.triple_nodes_.assign(d.size(), {kNoNode, kNoNode, kNoNode});
    for (std::uint32_t i = 0; i < d.size(); ++i) g.add_triple(d, i);
    g.build_adjacency();
    return g;
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const SubdivisionNode& node(std::uint32_t id) const { return nodes_[id]; }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const {
    return edges_;
  }
  const std::vector<std::uint32_t>& neighbors(std::uint32_t id) const {
    return adj_[id];
  }
  std::size_t degree(std::uint32_t id) const { return adj_[id].size(); }

  /// Node ids for a dataset triple: {subject, predicate, object}.
  /// All kNoNode when the triple is not part of this graph.
  const std::array<std::uint32_t, 3>& triple_nodes(std::uint32_t i) const {
    return triple_nodes_[i];
  }

  /// All node ids carrying term r (shared endpoint plus any occurrences).
  const std::vector<std::uint32_t>& nodes_of_term(TermId r) const {
    static const std::vector<std::uint32_t> kEmpty;
    auto it = nodes_of_term_.find(r);
    return it == nodes_of_term_.end() ? kEmpty : it->second;
  }

  /// The shared endpoint node of term r, or kNoNode if r never appears as a
  /// subject, object, or isolated node.
  std::uint32_t endpoint_node(TermId r) const {
    auto it = endpoint_of_.find(r);
    return it == endpoint_of_.end() ? kNoNode : it->second;
  }

  bool node_covers(const Dataset& d, std::uint32_t id, std::string_view q,
                   MatchMode mode = MatchMode::Token) const {
    return d.term_covers(nodes_[id].term, q, mode);
  }

  const std::vector<std::string>& node_text(const Dataset& d,
                                            std::uint32_t id) const {
    return d.text_forms(nodes_[id].term);
  }

private:
  std::uint32_t new_node(NodeKind kind, TermId term, std::uint32_t triple) {
    std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({kind, term, triple});
    nodes_of_term_[term].push_back(id);
    return id;
  }

  std::uint32_t endpoint(TermId r) {
    auto it = endpoint_of_.find(r);
    if (it != endpoint_of_.end()) return it->second;
    std::uint32_t id = new_node(NodeKind::Endpoint, r, kNoNode);
    endpoint_of_.emplace(r, id);
    return id;
  }

  void add_triple(const Dataset& d, std::uint32_t i) {
    const TripleIds& t = d.triple(i);
    std::uint32_t sn = endpoint(t.s);
    std::uint32_t pn;
    if (shared_predicates_) {
      auto it = shared_pred_of_.find(t.p);
      if (it != shared_pred_of_.end()) {
        pn = it->second;
      } else {
        pn = new_node(NodeKind::Predicate, t.p, kNoNode);
        shared_pred_of_.emplace(t.p, pn);
      }
    } else {
      pn = new_node(NodeKind::Predicate, t.p, i);
    }
    std::uint32_t on = d.term(t.o).is_literal()
                           ? new_node(NodeKind::LiteralOccurrence, t.o, i)
                           : endpoint(t.o);
    edges_.emplace_back(sn, pn);
    edges_.emplace_back(pn, on);
    triple_nodes_[i] = {sn, pn, on};
  }

  void build_adjacency() {
    adj_.assign(nodes_.size(), {});
    for (const auto& [a, b] : edges_) {
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
  }

  bool shared_predicates_ = false;
  std::vector<SubdivisionNode> nodes_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<std::array<std::uint32_t, 3>> triple_nodes_;
  std::unordered_map<TermId, std::uint32_t> endpoint_of_;
  std::unordered_map<TermId, std::uint32_t> shared_pred_of_;
  std::unordered_map<TermId, std::vector<std::uint32_t>> nodes_of_term_;
};

inline SubdivisionGraph subdivide(const Dataset& d, const Snippet& s,
                                  const SubdivisionOptions& opts = {}) {
  return SubdivisionGraph::of_snippet(d, s, opts);
}

}  // namespace dsnip
