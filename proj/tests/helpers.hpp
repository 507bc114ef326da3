#pragma once

#include <random>
#include <string>
#include <vector>

#include "dsnip/graph/components.hpp"
#include "dsnip/graph/subdivision.hpp"
#include "dsnip/rdf/dataset.hpp"
#include "dsnip/rdf/ntriples.hpp"
#include "dsnip/rdf/query.hpp"

namespace helpers {

inline dsnip::Term iri(const std::string& v) { return dsnip::Term::iri(v); }
inline dsnip::Term lit(const std::string& v, const std::string& dt = "",
                       const std::string& lang = "") {
  return dsnip::Term::literal(v, dt, lang);
}
inline dsnip::Term blank(const std::string& v) {
  return dsnip::Term::blank(v);
}
inline dsnip::Term rdf_type() {
  return iri(std::string(dsnip::vocab::kRdfType));
}
inline dsnip::Term rdfs_label() {
  return iri(std::string(dsnip::vocab::kRdfsLabel));
}

inline dsnip::Dataset make_dataset(const std::vector<dsnip::Triple>& triples,
                                   std::string id = "test") {
  dsnip::DatasetBuilder b(std::move(id));
  for (const auto& t : triples) b.add(t);
  return std::move(b).build();
}

inline std::string fixture_path(const std::string& name) {
  return std::string(DSNIP_FIXTURE_DIR) + "/" + name;
}

inline dsnip::Dataset fixture_a() {
  return dsnip::parse_ntriples_file(fixture_path("fixture-a.nt"));
}

/// Triple index lookup by materialized terms; fails loudly when absent.
inline std::uint32_t idx_of(const dsnip::Dataset& d, const dsnip::Term& s,
                            const dsnip::Term& p, const dsnip::Term& o) {
  auto si = d.find_term(s), pi = d.find_term(p), oi = d.find_term(o);
  if (!si || !pi || !oi) throw std::runtime_error("term not in dataset");
  auto idx = d.find_triple(*si, *pi, *oi);
  if (!idx) throw std::runtime_error("triple not in dataset");
  return *idx;
}

// --- deterministic random data ----------------------------------------------

inline std::uint64_t rnd(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

inline const std::vector<std::string>& word_pool() {
  static const std::vector<std::string> words = {
      "alpha", "beta",  "gamma", "delta", "kappa", "sigma", "omega",
      "munich", "berlin", "paris", "tokyo", "river", "city",  "data",
      "graph", "node",  "atlas", "solar", "lunar", "quartz"};
  return words;
}

struct RandomDatasetOptions {
  std::size_t min_triples = 10;
  std::size_t max_triples = 60;
  std::size_t entities = 12;
  std::size_t classes = 3;
  std::size_t properties = 5;
  int type_pct = 25;     // percent of triples that are rdf:type
  int literal_pct = 25;  // percent of non-type triples with literal objects
  int label_pct = 30;    // percent of entities that get an rdfs:label
  bool blanks = true;
};

inline dsnip::Dataset random_dataset(std::mt19937_64& rng,
                                     const RandomDatasetOptions& o = {},
                                     std::string id = "random") {
  const auto& words = word_pool();
  auto word = [&] { return words[rnd(rng, words.size())]; };
  auto camel = [&] {
    std::string w2 = word();
    w2[0] = static_cast<char>(w2[0] - 'a' + 'A');
    return word() + w2;
  };

  std::vector<dsnip::Term> ents, classes, props;
  for (std::size_t i = 0; i < o.entities; ++i) {
    if (o.blanks && rnd(rng, 10) == 0) {
      ents.push_back(blank("b" + std::to_string(i)));
    } else {
      ents.push_back(
          iri("http://ex.org/" + camel() + std::to_string(i)));
    }
  }
  for (std::size_t i = 0; i < o.classes; ++i) {
    std::string w = word();
    w[0] = static_cast<char>(w[0] - 'a' + 'A');
    classes.push_back(iri("http://ex.org/cls/" + w + std::to_string(i)));
  }
  for (std::size_t i = 0; i < o.properties; ++i)
    props.push_back(iri("http://ex.org/p/" + camel() + std::to_string(i)));

  const std::size_t n =
      o.min_triples + rnd(rng, o.max_triples - o.min_triples + 1);
  dsnip::DatasetBuilder b(std::move(id));
  // labels first so the total stays bounded by max(#labels, n)
  for (const dsnip::Term& e : ents) {
    if (b.triple_count() + 1 >= n) break;
    if (static_cast<int>(rnd(rng, 100)) < o.label_pct)
      b.add(dsnip::Triple(e, rdfs_label(), lit(word() + " " + word())));
  }
  std::size_t guard = 0;
  while (b.triple_count() < n && guard++ < n * 20) {
    const dsnip::Term& s = ents[rnd(rng, ents.size())];
    if (!classes.empty() && static_cast<int>(rnd(rng, 100)) < o.type_pct) {
      b.add(dsnip::Triple(s, rdf_type(), classes[rnd(rng, classes.size())]));
    } else if (static_cast<int>(rnd(rng, 100)) < o.literal_pct) {
      std::string text = word();
      if (rnd(rng, 2) == 0) text += " " + word();
      b.add(dsnip::Triple(s, props[rnd(rng, props.size())], lit(text)));
    } else {
      b.add(dsnip::Triple(s, props[rnd(rng, props.size())],
                          ents[rnd(rng, ents.size())]));
    }
  }
  if (b.triple_count() == 0)
    b.add(dsnip::Triple(ents[0], props[0], ents[ents.size() - 1]));
  return std::move(b).build();
}

/// A query guaranteed to have a group Steiner tree: keywords are tokens of
/// terms inside one connected component of the dataset's subdivision graph.
inline dsnip::Query solvable_query(const dsnip::Dataset& d,
                                   std::mt19937_64& rng, std::size_t min_kw,
                                   std::size_t max_kw) {
  dsnip::SubdivisionGraph g = dsnip::SubdivisionGraph::of_dataset(d);
  dsnip::ComponentLabeling comp = dsnip::components(g);

  // most populous component
  std::vector<std::uint32_t> count(g.node_count(), 0);
  std::uint32_t best_comp = 0, best_n = 0;
  for (std::uint32_t v = 0; v < g.node_count(); ++v) {
    std::uint32_t c = comp.component_of[v];
    if (++count[c] > best_n) {
      best_n = count[c];
      best_comp = c;
    }
  }

  std::vector<std::string> tokens;
  for (std::uint32_t v = 0; v < g.node_count(); ++v) {
    if (comp.component_of[v] != best_comp) continue;
    for (const std::string& t : d.term_tokens(g.node(v).term))
      tokens.push_back(t);
  }
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());

  std::size_t want = min_kw + rnd(rng, max_kw - min_kw + 1);
  if (want > tokens.size()) want = tokens.size();
  std::vector<std::string> kws;
  std::size_t attempts = 0;
  while (kws.size() < want && attempts++ < 200) {
    const std::string& cand = tokens[rnd(rng, tokens.size())];
    bool dup = false;
    for (const auto& k : kws)
      if (k == cand) { dup = true; break; }
    if (!dup) kws.push_back(cand);
  }
  if (kws.empty()) kws.push_back(tokens.empty() ? "alpha" : tokens[0]);
  return dsnip::Query(kws);
}

}  // namespace helpers
