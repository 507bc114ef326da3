#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dsnip/errors.hpp"
#include "dsnip/gen/config.hpp"
#include "dsnip/graph/pagerank.hpp"
#include "dsnip/metrics/metrics.hpp"
#include "dsnip/rdf/dataset.hpp"

namespace dsnip {

namespace illusnip_detail {

/// Incremental bookkeeping for F(S) = hm(schema coverage, mean normalized
/// PageRank of Ent(S)).
class Objective {
public:
  Objective(const Dataset& d, const std::vector<double>& pr)
      : d_(d),
        pr_(pr),
        type_id_(d.find_term(Term::iri(std::string(vocab::kRdfType)))
                     .value_or(kNoTerm)),
        class_counted_(d.term_count(), 0),
        prop_counted_(d.term_count(), 0),
        ent_counted_(d.term_count(), 0) {
    for (TermId e : d.entity_ids()) max_pr_ = std::max(max_pr_, pr[e]);
  }

  double current() const { return value(cls_, prp_, pr_sum_, ent_n_); }

  /// F(S + t) without mutating.
  double with(std::uint32_t i) const {
    const TripleIds& t = d_.triple(i);
    double cls = cls_, prp = prp_, prs = pr_sum_;
    std::size_t n = ent_n_;
    if (!prop_counted_[t.p])
      prp += static_cast<double>(d_.property_use_count(t.p)) /
             static_cast<double>(d_.size());
    if (t.p == type_id_ && !class_counted_[t.o])
      cls += static_cast<double>(d_.class_instance_count(t.o)) /
             static_cast<double>(d_.type_triple_count());
    if (d_.is_entity(t.s) && !ent_counted_[t.s]) {
      prs += pr_[t.s];
      ++n;
    }
    if (t.o != t.s && d_.is_entity(t.o) && !ent_counted_[t.o]) {
      prs += pr_[t.o];
      ++n;
    }
    return value(cls, prp, prs, n);
  }

  void apply(std::uint32_t i) {
    const TripleIds& t = d_.triple(i);
    if (!prop_counted_[t.p]) {
      prop_counted_[t.p] = 1;
      prp_ += static_cast<double>(d_.property_use_count(t.p)) /
              static_cast<double>(d_.size());
    }
    if (t.p == type_id_ && !class_counted_[t.o]) {
      class_counted_[t.o] = 1;
      cls_ += static_cast<double>(d_.class_instance_count(t.o)) /
              static_cast<double>(d_.type_triple_count());
    }
    for (TermId r : {t.s, t.o}) {
      if (d_.is_entity(r) && !ent_counted_[r]) {
        ent_counted_[r] = 1;
        pr_sum_ += pr_[r];
        ++ent_n_;
      }
    }
  }

private:
  double value(double cls, double prp, double pr_sum, std::size_t ent_n) const {
    const double class_side = d_.type_triple_count() == 0 ? 1.0 : cls;
    const double schema = harmonic_mean(class_side, prp);
    const double centrality =
        (ent_n > 0 && max_pr_ > 0.0)
            ? (pr_sum / static_cast<double>(ent_n)) / max_pr_
            : 0.0;
    return harmonic_mean(schema, centrality);
  }

  const Dataset& d_;
  const std::vector<double>& pr_;
  TermId type_id_;
  std::vector<char> class_counted_, prop_counted_, ent_counted_;
  double cls_ = 0.0, prp_ = 0.0, pr_sum_ = 0.0, max_pr_ = 0.0;
  std::size_t ent_n_ = 0;
};

}  // namespace illusnip_detail

/// Query-independent illustrative snippet: greedily grows a weakly connected
/// subgraph of at most k triples, maximizing the harmonic mean of schema
/// coverage and mean normalized entity PageRank. Anytime; deterministic
/// (ties break toward the lowest triple index).
inline GeneratorResult generate_illusnip(const Dataset& d,
                                         const GeneratorConfig& cfg,
                                         std::vector<double>* objective_trace =
                                             nullptr) {
  cfg.validate();
  if (d.empty()) throw DomainError("illusnip: empty dataset");
  Deadline deadline(cfg.deadlineMillis);

  std::vector<double> pr = pagerank(d);
  illusnip_detail::Objective obj(d, pr);

  const std::size_t k = static_cast<std::size_t>(cfg.tripleBudget);
  std::vector<char> chosen(d.size(), 0), candidate(d.size(), 0);
  std::vector<char> term_in(d.term_count(), 0);
  std::vector<std::uint32_t> picked;
  bool timed_out = false;

  // Seed: every triple is a candidate; afterwards only triples touching the
  // current subgraph's non-literal terms keep G(S) weakly connected.
  for (std::uint32_t i = 0; i < d.size(); ++i) candidate[i] = 1;

  auto absorb_terms = [&](std::uint32_t i) {
    const TripleIds& t = d.triple(i);
    for (TermId r : {t.s, t.o}) {
      if (d.term(r).is_literal() || term_in[r]) continue;
      term_in[r] = 1;
      for (std::uint32_t j : d.incident(r))
        if (!chosen[j]) candidate[j] = 1;
    }
  };

  double current = -1.0;
  while (picked.size() < k && !timed_out) {
    double best = -1.0;
    std::uint32_t best_idx = kNoNode;
    for (std::uint32_t i = 0; i < d.size(); ++i) {
      if (!candidate[i] || chosen[i]) continue;
      if (deadline.poll()) {
        timed_out = true;
        break;
      }
      double f = obj.with(i);
      if (f > best) {
        best = f;
        best_idx = i;
      }
    }
    if (timed_out || best_idx == kNoNode) break;
    if (!picked.empty() && best < current) break;  // keep F non-decreasing

    obj.apply(best_idx);
    chosen[best_idx] = 1;
    picked.push_back(best_idx);
    if (picked.size() == 1)
      std::fill(candidate.begin(), candidate.end(), 0);
    absorb_terms(best_idx);
    current = obj.current();
    if (objective_trace) objective_trace->push_back(current);
  }

  GeneratorResult res;
  res.snippet = Snippet::of(d, picked, {}, "illusnip");
  res.status = timed_out ? GenStatus::TimedOutAnytime : GenStatus::Completed;
  res.iterations = static_cast<std::int64_t>(picked.size());
  res.objective = picked.empty() ? 0.0 : current;
  res.runtimeMillis = deadline.elapsed_millis();
  return res;
}

}  // namespace dsnip
