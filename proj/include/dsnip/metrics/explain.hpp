#pragma once

#include <string>

#include <json.hpp>

#include "dsnip/metrics/metrics.hpp"
#include "dsnip/rdf/ntriples.hpp"

namespace dsnip {

/// Per-metric audit breakdown: covered keywords, connected pairs, schema
/// sums, and per-entity degree ratios.
inline nlohmann::ordered_json explain(const Dataset& d, const Snippet& s,
                                      const Query& q,
                                      const MetricOptions& opts = {}) {
  nlohmann::ordered_json out;

  // coKyw
  {
    std::vector<bool> covered = covered_keywords(d, s, q, opts);
    nlohmann::ordered_json cov = nlohmann::ordered_json::array();
    nlohmann::ordered_json uncov = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < q.size(); ++i)
      (covered[i] ? cov : uncov).push_back(q[i]);
    out["coKyw"] = {{"score", co_kyw(d, s, q, opts)},
                    {"covered", cov},
                    {"uncovered", uncov}};
  }

  // coCnx
  {
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    if (q.size() > 1) {
      SubdivisionGraph g =
          SubdivisionGraph::of_snippet(d, s, opts.subdivision());
      ComponentLabeling comp = components(g);
      auto kw_comps =
          metrics_detail::keyword_components(d, g, comp, q, opts.match);
      for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j)
          pairs.push_back(
              {{"a", q[i]},
               {"b", q[j]},
               {"connected",
                metrics_detail::intersects(kw_comps[i], kw_comps[j])}});
    }
    out["coCnx"] = {{"score", co_cnx(d, s, q, opts)},
                    {"singleKeyword", q.size() == 1},
                    {"pairs", pairs}};
  }

  // coSkm
  {
    auto sums = metrics_detail::schema_sums(d, s);
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

    nlohmann::ordered_json cls = nlohmann::ordered_json::array();
    for (TermId c : classes)
      cls.push_back({{"term", to_ntriples(d.term(c))},
                     {"frequency", d.type_triple_count() == 0
                                       ? 0.0
                                       : d.class_frequency(c)}});
    nlohmann::ordered_json prp = nlohmann::ordered_json::array();
    for (TermId p : props)
      prp.push_back({{"term", to_ntriples(d.term(p))},
                     {"frequency", d.property_frequency(p)}});
    out["coSkm"] = {{"score", co_skm(d, s)},
                    {"classSum", sums.class_sum},
                    {"propSum", sums.prop_sum},
                    {"classSideVacuous", sums.class_side_vacuous},
                    {"classes", cls},
                    {"properties", prp}};
  }

  // coDat
  {
    std::vector<TermId> ent = entities(d, s);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (TermId e : ent) {
      const double out_ratio =
          d.max_out_log() > 0.0
              ? std::log(d.out_degree(e) + 1.0) / d.max_out_log()
              : 0.0;
      const double in_ratio =
          d.max_in_log() > 0.0
              ? std::log(d.in_degree(e) + 1.0) / d.max_in_log()
              : 0.0;
      rows.push_back({{"term", to_ntriples(d.term(e))},
                      {"outDegree", d.out_degree(e)},
                      {"inDegree", d.in_degree(e)},
                      {"outRatio", out_ratio},
                      {"inRatio", in_ratio}});
    }
    out["coDat"] = {{"score", co_dat(d, s)}, {"entities", rows}};
  }

  return out;
}

}  // namespace dsnip
