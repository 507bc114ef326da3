#pragma once

// Independent naive reimplementations used as test oracles. Everything here
// recomputes from raw triples (or explicit edge lists) without touching the
// Dataset indexes or the algorithms under test.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dsnip/graph/subdivision.hpp"
#include "dsnip/rdf/dataset.hpp"
#include "dsnip/rdf/term.hpp"
#include "dsnip/rdf/text.hpp"

namespace naive {

using dsnip::Term;
using dsnip::Triple;

inline std::vector<Triple> triples_of(const dsnip::Dataset& d) {
  std::vector<Triple> out;
  for (std::size_t i = 0; i < d.size(); ++i) out.push_back(d.materialize(i));
  return out;
}

inline std::vector<std::string> text_forms(const std::vector<Triple>& T,
                                           const Term& r) {
  std::vector<std::string> forms;
  if (r.is_literal()) {
    forms.push_back(r.value);
    return forms;
  }
  const Term label = Term::iri(std::string(dsnip::vocab::kRdfsLabel));
  for (const Triple& t : T)
    if (t.s == r && t.p == label && t.o.is_literal())
      forms.push_back(t.o.value);
  if (r.is_iri()) {
    std::string ln = dsnip::local_name(r.value);
    if (!ln.empty()) forms.push_back(ln);
  }
  std::sort(forms.begin(), forms.end());
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
  return forms;
}

inline bool term_covers(const std::vector<Triple>& T, const Term& r,
                        const std::string& q) {
  for (const std::string& form : text_forms(T, r))
    for (const std::string& tok : dsnip::tokenize(form))
      if (tok == q) return true;
  return false;
}

inline bool triple_covers(const std::vector<Triple>& T, const Triple& t,
                          const std::string& q) {
  return term_covers(T, t.s, q) || term_covers(T, t.p, q) ||
         term_covers(T, t.o, q);
}

inline double co_kyw(const std::vector<Triple>& T,
                     const std::vector<Triple>& S,
                     const std::vector<Term>& isolated,
                     const std::vector<std::string>& Q) {
  std::size_t covered = 0;
  for (const std::string& q : Q) {
    bool hit = false;
    for (const Triple& t : S)
      if (triple_covers(T, t, q)) { hit = true; break; }
    if (!hit)
      for (const Term& r : isolated)
        if (term_covers(T, r, q)) { hit = true; break; }
    covered += hit ? 1 : 0;
  }
  return static_cast<double>(covered) / static_cast<double>(Q.size());
}

// --- naive subdivision + path existence -------------------------------------

struct OracleGraph {
  // node key: endpoint term, or (occurrence index, role) for literal objects
  // and predicate positions
  std::vector<Term> node_term;
  std::vector<std::vector<std::uint32_t>> adj;
};

inline OracleGraph build_subdivision(const std::vector<Triple>& S,
                                     const std::vector<Term>& isolated) {
  OracleGraph g;
  std::map<Term, std::uint32_t> endpoint;
  auto endpoint_node = [&](const Term& r) {
    auto it = endpoint.find(r);
    if (it != endpoint.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(g.node_term.size());
    g.node_term.push_back(r);
    g.adj.emplace_back();
    endpoint.emplace(r, id);
    return id;
  };
  auto occurrence_node = [&](const Term& r) {
    std::uint32_t id = static_cast<std::uint32_t>(g.node_term.size());
    g.node_term.push_back(r);
    g.adj.emplace_back();
    return id;
  };
  auto connect = [&](std::uint32_t a, std::uint32_t b) {
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  };
  for (const Triple& t : S) {
    std::uint32_t sn = endpoint_node(t.s);
    std::uint32_t pn = occurrence_node(t.p);
    std::uint32_t on =
        t.o.is_literal() ? occurrence_node(t.o) : endpoint_node(t.o);
    connect(sn, pn);
    connect(pn, on);
  }
  for (const Term& r : isolated) endpoint_node(r);
  return g;
}

/// Reachability closure via BFS from every node.
inline std::vector<std::vector<bool>> reachability(const OracleGraph& g) {
  const std::size_t n = g.node_term.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::uint32_t s = 0; s < n; ++s) {
    std::deque<std::uint32_t> queue{s};
    reach[s][s] = true;
    while (!queue.empty()) {
      std::uint32_t v = queue.front();
      queue.pop_front();
      for (std::uint32_t w : g.adj[v])
        if (!reach[s][w]) {
          reach[s][w] = true;
          queue.push_back(w);
        }
    }
  }
  return reach;
}

inline double co_cnx(const std::vector<Triple>& T,
                     const std::vector<Triple>& S,
                     const std::vector<Term>& isolated,
                     const std::vector<std::string>& Q) {
  if (Q.size() == 1) return co_kyw(T, S, isolated, Q);
  OracleGraph g = build_subdivision(S, isolated);
  auto reach = reachability(g);

  std::vector<std::vector<std::uint32_t>> covering(Q.size());
  for (std::size_t qi = 0; qi < Q.size(); ++qi)
    for (std::uint32_t v = 0; v < g.node_term.size(); ++v)
      if (term_covers(T, g.node_term[v], Q[qi])) covering[qi].push_back(v);

  std::size_t connected = 0;
  for (std::size_t i = 0; i < Q.size(); ++i) {
    for (std::size_t j = i + 1; j < Q.size(); ++j) {
      bool found = false;
      for (std::uint32_t a : covering[i]) {
        for (std::uint32_t b : covering[j])
          if (reach[a][b]) { found = true; break; }
        if (found) break;
      }
      connected += found ? 1 : 0;
    }
  }
  const double pairs =
      static_cast<double>(Q.size()) * static_cast<double>(Q.size() - 1) / 2.0;
  return static_cast<double>(connected) / pairs;
}

// --- schema and data coverage ------------------------------------------------

inline double co_skm(const std::vector<Triple>& T,
                     const std::vector<Triple>& S) {
  if (S.empty()) return 0.0;
  const Term type = Term::iri(std::string(dsnip::vocab::kRdfType));
  std::size_t type_total = 0;
  for (const Triple& t : T)
    if (t.p == type) ++type_total;

  std::set<Term> cls, prp;
  for (const Triple& t : S) {
    prp.insert(t.p);
    if (t.p == type) cls.insert(t.o);
  }
  double class_sum = 1.0;
  if (type_total > 0) {
    class_sum = 0.0;
    for (const Term& c : cls) {
      std::size_t cnt = 0;
      for (const Triple& t : T)
        if (t.p == type && t.o == c) ++cnt;
      class_sum += static_cast<double>(cnt) / static_cast<double>(type_total);
    }
  }
  double prop_sum = 0.0;
  for (const Term& p : prp) {
    std::size_t cnt = 0;
    for (const Triple& t : T)
      if (t.p == p) ++cnt;
    prop_sum += static_cast<double>(cnt) / static_cast<double>(T.size());
  }
  if (class_sum + prop_sum == 0.0) return 0.0;
  return 2.0 * class_sum * prop_sum / (class_sum + prop_sum);
}

inline double co_dat(const std::vector<Triple>& T,
                     const std::vector<Triple>& S,
                     const std::vector<Term>& isolated) {
  const Term type = Term::iri(std::string(dsnip::vocab::kRdfType));
  std::set<Term> cls_T;
  for (const Triple& t : T)
    if (t.p == type) cls_T.insert(t.o);

  auto is_entity = [&](const Term& r) {
    return !r.is_literal() && !cls_T.count(r);
  };
  std::set<Term> ent_S, ent_T;
  for (const Triple& t : S)
    for (const Term* r : {&t.s, &t.o})
      if (is_entity(*r)) ent_S.insert(*r);
  for (const Term& r : isolated)
    if (is_entity(r)) ent_S.insert(r);
  for (const Triple& t : T)
    for (const Term* r : {&t.s, &t.o})
      if (is_entity(*r)) ent_T.insert(*r);
  if (ent_S.empty()) return 0.0;

  auto out_deg = [&](const Term& r) {
    std::size_t n = 0;
    for (const Triple& t : T)
      if (t.s == r) ++n;
    return n;
  };
  auto in_deg = [&](const Term& r) {
    std::size_t n = 0;
    for (const Triple& t : T)
      if (t.o == r) ++n;
    return n;
  };

  double max_out = 0.0, max_in = 0.0;
  for (const Term& e : ent_T) {
    max_out = std::max(max_out, std::log(static_cast<double>(out_deg(e)) + 1.0));
    max_in = std::max(max_in, std::log(static_cast<double>(in_deg(e)) + 1.0));
  }
  double out_sum = 0.0, in_sum = 0.0;
  for (const Term& e : ent_S) {
    out_sum += std::log(static_cast<double>(out_deg(e)) + 1.0);
    in_sum += std::log(static_cast<double>(in_deg(e)) + 1.0);
  }
  const double n = static_cast<double>(ent_S.size());
  const double x = max_out > 0.0 ? out_sum / (n * max_out) : 0.0;
  const double y = max_in > 0.0 ? in_sum / (n * max_in) : 0.0;
  if (x + y == 0.0) return 0.0;
  return 2.0 * x * y / (x + y);
}

// --- dense pagerank -----------------------------------------------------------

inline std::map<Term, double> pagerank(const std::vector<Triple>& T,
                                       double damping, int iterations) {
  std::vector<Term> nodes;
  std::map<Term, std::size_t> idx;
  for (const Triple& t : T)
    for (const Term* r : {&t.s, &t.o})
      if (!idx.count(*r)) {
        idx[*r] = nodes.size();
        nodes.push_back(*r);
      }
  const std::size_t n = nodes.size();
  std::vector<std::size_t> outc(n, 0);
  for (const Triple& t : T) ++outc[idx[t.s]];

  std::vector<double> rank(n, 1.0 / static_cast<double>(n)), next(n);
  for (int it = 0; it < iterations; ++it) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v)
      if (outc[v] == 0) dangling += rank[v];
    const double base = (1.0 - damping) / static_cast<double>(n) +
                        damping * dangling / static_cast<double>(n);
    std::fill(next.begin(), next.end(), base);
    for (const Triple& t : T)
      next[idx[t.o]] += damping * rank[idx[t.s]] /
                        static_cast<double>(outc[idx[t.s]]);
    rank.swap(next);
  }
  std::map<Term, double> out;
  for (std::size_t v = 0; v < n; ++v) out[nodes[v]] = rank[v];
  return out;
}

// --- brute-force group Steiner tree -------------------------------------------

/// Minimum weight over all connected subgraphs of `g` hitting every group,
/// including single-node solutions. Half-edges weigh 0.5 unless an explicit
/// per-edge weight vector is given. nullopt if no hitting subgraph exists.
inline std::optional<double> min_steiner_weight(
    const dsnip::SubdivisionGraph& g,
    const std::vector<std::vector<std::uint32_t>>& groups,
    const std::vector<double>& edge_weights = {}) {
  const std::size_t m = groups.size();
  for (const auto& grp : groups)
    if (grp.empty()) return std::nullopt;

  std::vector<std::uint32_t> node_mask(g.node_count(), 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::uint32_t v : groups[i]) node_mask[v] |= 1u << i;
  const std::uint32_t full = (1u << m) - 1;

  for (std::uint32_t v = 0; v < g.node_count(); ++v)
    if (node_mask[v] == full) return 0.0;

  const auto& edges = g.edges();
  const std::size_t E = edges.size();
  if (E > 22) throw std::runtime_error("steiner oracle: graph too large");
  auto weight_of = [&](std::size_t e) {
    return edge_weights.empty() ? 0.5 : edge_weights[e];
  };

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> parent(g.node_count());
  for (std::uint32_t sub = 1; sub < (1u << E); ++sub) {
    double weight = 0.0;
    for (std::size_t e = 0; e < E; ++e)
      if (sub & (1u << e)) weight += weight_of(e);
    if (weight >= best) continue;

    for (std::uint32_t v = 0; v < g.node_count(); ++v) parent[v] = v;
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };

    std::uint32_t mask = 0;
    std::vector<std::uint32_t> spanned;
    for (std::size_t e = 0; e < E; ++e) {
      if (!(sub & (1u << e))) continue;
      auto [a, b] = edges[e];
      parent[find(a)] = find(b);
      spanned.push_back(a);
      spanned.push_back(b);
    }
    std::sort(spanned.begin(), spanned.end());
    spanned.erase(std::unique(spanned.begin(), spanned.end()), spanned.end());

    const std::uint32_t root = find(spanned.front());
    bool connected = true;
    for (std::uint32_t v : spanned) {
      mask |= node_mask[v];
      if (find(v) != root) connected = false;
    }
    if (connected && mask == full) best = weight;
  }
  if (best == std::numeric_limits<double>::infinity()) return std::nullopt;
  return best;
}

}  // namespace naive
