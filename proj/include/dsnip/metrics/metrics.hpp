#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dsnip/graph/components.hpp"
#include "dsnip/graph/subdivision.hpp"
#include "dsnip/rdf/dataset.hpp"
#include "dsnip/rdf/query.hpp"
#include "dsnip/rdf/snippet.hpp"

namespace dsnip {

struct MetricOptions {
  MatchMode match = MatchMode::Token;
  bool shared_predicate_nodes = false;

  SubdivisionOptions subdivision() const {
    return {shared_predicate_nodes};
  }
};

/// The four snippet-quality scores plus bookkeeping.
struct MetricReport {
  double coKyw = 0.0;
  double coCnx = 0.0;
  double coSkm = 0.0;
  double coDat = 0.0;
  std::size_t snippetTripleCount = 0;
  std::size_t isolatedNodeCount = 0;
  std::string generatorTag;
  std::int64_t runtimeMillis = 0;
  bool classSideVacuous = false;  // coSkm class side defaulted to 1 because
                                  // the dataset has no rdf:type triple
};

/// hm(x, y) = 2xy / (x + y), with hm(0, 0) := 0.
inline double harmonic_mean(double x, double y) {
  if (x + y == 0.0) return 0.0;
  return 2.0 * x * y / (x + y);
}

namespace metrics_detail {
// Frequency sums can drift a few ulps above 1; scores are clamped back into
// their mathematical range.
inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }
}  // namespace metrics_detail

/// Per-keyword coverage: a keyword counts when some snippet triple or some
/// isolated node covers it.
inline std::vector<bool> covered_keywords(const Dataset& d, const Snippet& s,
                                          const Query& q,
                                          const MetricOptions& opts = {}) {
  std::vector<bool> covered(q.size(), false);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const std::string& kw = q[i];
    for (std::uint32_t t : s.triples) {
      if (d.triple_covers(t, kw, opts.match)) {
        covered[i] = true;
        break;
      }
    }
    if (covered[i]) continue;
    for (TermId r : s.isolated) {
      if (d.term_covers(r, kw, opts.match)) {
        covered[i] = true;
        break;
      }
    }
  }
  return covered;
}

inline double co_kyw(const Dataset& d, const Snippet& s, const Query& q,
                     const MetricOptions& opts = {}) {
  std::vector<bool> covered = covered_keywords(d, s, q, opts);
  std::size_t n = 0;
  for (bool c : covered) n += c ? 1 : 0;
  return static_cast<double>(n) / static_cast<double>(q.size());
}

namespace metrics_detail {

/// For each keyword, the sorted set of subdivision components containing at
/// least one node that covers it.
inline std::vector<std::vector<std::uint32_t>> keyword_components(
    const Dataset& d, const SubdivisionGraph& g, const ComponentLabeling& comp,
    const Query& q, MatchMode mode) {
  std::vector<std::vector<std::uint32_t>> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::uint32_t v = 0; v < g.node_count(); ++v) {
      if (g.node_covers(d, v, q[i], mode))
        out[i].push_back(comp.component_of[v]);
    }
    std::sort(out[i].begin(), out[i].end());
    out[i].erase(std::unique(out[i].begin(), out[i].end()), out[i].end());
  }
  return out;
}

inline bool intersects(const std::vector<std::uint32_t>& a,
                       const std::vector<std::uint32_t>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) ++ia;
    else ++ib;
  }
  return false;
}

}  // namespace metrics_detail

/// Proportion of unordered keyword pairs connected by a path in SD(G(S)).
/// A single node covering both keywords counts. |Q| = 1 falls back to coKyw.
inline double co_cnx(const Dataset& d, const Snippet& s, const Query& q,
                     const MetricOptions& opts = {}) {
  if (q.size() == 1) return co_kyw(d, s, q, opts);
  SubdivisionGraph g = SubdivisionGraph::of_snippet(d, s, opts.subdivision());
  ComponentLabeling comp = components(g);
  auto kw_comps =
      metrics_detail::keyword_components(d, g, comp, q, opts.match);

  std::size_t connected = 0;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j)
      if (metrics_detail::intersects(kw_comps[i], kw_comps[j])) ++connected;

  const double total =
      static_cast<double>(q.size()) * static_cast<double>(q.size() - 1) / 2.0;
  return static_cast<double>(connected) / total;
}

namespace metrics_detail {

struct SchemaSums {
  double class_sum = 0.0;
  double prop_sum = 0.0;
  bool class_side_vacuous = false;
};

inline SchemaSums schema_sums(const Dataset& d, const Snippet& s) {
  SchemaSums out;
  const Term rdf_type = Term::iri(std::string(vocab::kRdfType));
  const TermId type_id = d.find_term(rdf_type).value_or(kNoTerm);

  std::vector<TermId> classes, props;
  for (std::uint32_t i : s.triples) {
    const TripleIds& t = d.triple(i);
    props.push_back(t.p);
    if (t.p == type_id) classes.push_back(t.o);
  }
  auto dedup = [](std::vector<TermId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(classes);
  dedup(props);

  if (d.type_triple_count() == 0) {
    // No class is instantiated anywhere, so class coverage is vacuously
    // complete; flagged so reports can show the convention fired.
    out.class_sum = 1.0;
    out.class_side_vacuous = true;
  } else {
    for (TermId c : classes)
      out.class_sum += static_cast<double>(d.class_instance_count(c)) /
                       static_cast<double>(d.type_triple_count());
  }
  for (TermId p : props)
    out.prop_sum += static_cast<double>(d.property_use_count(p)) /
                    static_cast<double>(d.size());
  return out;
}

}  // namespace metrics_detail

/// Schema coverage: harmonic mean of covered class and property frequency
/// mass. Isolated nodes instantiate nothing and contribute nothing.
inline double co_skm(const Dataset& d, const Snippet& s,
                     bool* class_side_vacuous = nullptr) {
  auto sums = metrics_detail::schema_sums(d, s);
  if (class_side_vacuous) *class_side_vacuous = sums.class_side_vacuous;
  if (s.triples.empty()) return 0.0;
  return metrics_detail::clamp01(harmonic_mean(sums.class_sum, sums.prop_sum));
}

/// Data coverage: harmonic mean of the mean log-normalized out- and in-degree
/// of Ent(S), degrees measured in the full dataset.
inline double co_dat(const Dataset& d, const Snippet& s) {
  std::vector<TermId> ent = entities(d, s);
  if (ent.empty()) return 0.0;

  double out_sum = 0.0, in_sum = 0.0;
  for (TermId e : ent) {
    out_sum += std::log(d.out_degree(e) + 1.0);
    in_sum += std::log(d.in_degree(e) + 1.0);
  }
  const double n = static_cast<double>(ent.size());
  const double out_term =
      d.max_out_log() > 0.0 ? out_sum / (n * d.max_out_log()) : 0.0;
  const double in_term =
      d.max_in_log() > 0.0 ? in_sum / (n * d.max_in_log()) : 0.0;
  return metrics_detail::clamp01(harmonic_mean(out_term, in_term));
}

inline MetricReport evaluate(const Dataset& d, const Snippet& s,
                             const Query& q, std::int64_t runtime_millis = 0,
                             const MetricOptions& opts = {}) {
  MetricReport r;
  r.coKyw = co_kyw(d, s, q, opts);
  r.coCnx = co_cnx(d, s, q, opts);
  r.coSkm = co_skm(d, s, &r.classSideVacuous);
  r.coDat = co_dat(d, s);
  r.snippetTripleCount = s.triples.size();
  r.isolatedNodeCount = s.isolated.size();
  r.generatorTag = s.generator;
  r.runtimeMillis = runtime_millis;
  return r;
}

}  // namespace dsnip
