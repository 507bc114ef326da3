#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "dsnip/errors.hpp"
#include "dsnip/gen/config.hpp"
#include "dsnip/rdf/dataset.hpp"
#include "dsnip/rdf/query.hpp"
#include "dsnip/rdf/text.hpp"

namespace dsnip {

namespace ces_detail {

/// Platform-independent uniform double in [0, 1).
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Fenwick tree over inclusion weights; supports proportional sampling
/// without replacement in O(log n) per draw.
class Fenwick {
public:
  explicit Fenwick(const std::vector<double>& vals)
      : n_(vals.size()), tree_(vals.size() + 1, 0.0) {
    for (std::size_t i = 1; i <= n_; ++i) {
      tree_[i] += vals[i - 1];
      std::size_t j = i + (i & (~i + 1));
      if (j <= n_) tree_[j] += tree_[i];
    }
  }

  void add(std::size_t i, double delta) {
    for (std::size_t j = i + 1; j <= n_; j += j & (~j + 1)) tree_[j] += delta;
  }

  /// Largest prefix with cumulative weight <= target; returns the 0-based
  /// index of the item the target falls into.
  std::size_t search(double target) const {
    std::size_t pos = 0;
    std::size_t pw = std::bit_floor(n_);
    for (; pw > 0; pw >>= 1) {
      std::size_t next = pos + pw;
      if (next <= n_ && tree_[next] <= target) {
        target -= tree_[next];
        pos = next;
      }
    }
    return pos;  // may equal n_ when target >= total; caller clamps
  }

private:
  std::size_t n_;
  std::vector<double> tree_;
};

/// Pseudo-sentence model: each triple becomes the tokenized concatenation of
/// one textual form per position (first rdfs:label preferred, IRI local name
/// otherwise, literal lexical form as-is).
struct SentenceModel {
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> tf;
  std::vector<std::vector<std::uint32_t>> toks;  // sorted unique token ids
  std::vector<std::uint32_t> token_count;
  std::vector<double> idf;
  std::vector<double> dataset_weight;  // tf*idf of the whole dataset
  double dataset_norm = 0.0;
  double p95_token_count = 0.0;
  std::vector<std::uint64_t> kw_masks;  // per triple
  std::size_t vocab = 0;

  static std::string representative_form(const Dataset& d, TermId r) {
    const Term& t = d.term(r);
    if (t.is_literal()) return t.value;
    const auto& labels = d.labels(r);
    if (!labels.empty()) return labels.front();
    if (t.is_iri()) return local_name(t.value);
    return {};
  }

  static SentenceModel build(const Dataset& d, const Query& q) {
    if (q.size() > 64)
      throw std::invalid_argument(
          "queries above 64 keywords are not supported");
    SentenceModel m;
    const std::size_t n = d.size();
    std::unordered_map<std::string, std::uint32_t> vocab_ids;
    m.tf.resize(n);
    m.toks.resize(n);
    m.token_count.resize(n);

    std::vector<std::uint32_t> seq;
    for (std::size_t i = 0; i < n; ++i) {
      const TripleIds& t = d.triple(i);
      seq.clear();
      for (TermId r : {t.s, t.p, t.o}) {
        for (std::string& tok : tokenize(representative_form(d, r))) {
          auto [it, _] = vocab_ids.try_emplace(
              std::move(tok), static_cast<std::uint32_t>(vocab_ids.size()));
          seq.push_back(it->second);
        }
      }
      m.token_count[i] = static_cast<std::uint32_t>(seq.size());
      std::sort(seq.begin(), seq.end());
      for (std::size_t j = 0; j < seq.size();) {
        std::size_t e = j;
        while (e < seq.size() && seq[e] == seq[j]) ++e;
        m.tf[i].emplace_back(seq[j], static_cast<std::uint32_t>(e - j));
        m.toks[i].push_back(seq[j]);
        j = e;
      }
    }
    m.vocab = vocab_ids.size();

    std::vector<std::uint32_t> df(m.vocab, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::uint32_t tok : m.toks[i]) ++df[tok];
    m.idf.resize(m.vocab);
    for (std::size_t t = 0; t < m.vocab; ++t)
      m.idf[t] = std::log((1.0 + static_cast<double>(n)) /
                          (1.0 + static_cast<double>(df[t]))) +
                 1.0;

    std::vector<double> dataset_tf(m.vocab, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [tok, c] : m.tf[i]) dataset_tf[tok] += c;
    m.dataset_weight.resize(m.vocab);
    double norm2 = 0.0;
    for (std::size_t t = 0; t < m.vocab; ++t) {
      m.dataset_weight[t] = dataset_tf[t] * m.idf[t];
      norm2 += m.dataset_weight[t] * m.dataset_weight[t];
    }
    m.dataset_norm = std::sqrt(norm2);

    std::vector<std::uint32_t> counts = m.token_count;
    std::sort(counts.begin(), counts.end());
    if (!counts.empty()) {
      std::size_t rank = static_cast<std::size_t>(
          std::ceil(0.95 * static_cast<double>(counts.size())));
      if (rank == 0) rank = 1;
      m.p95_token_count = counts[rank - 1];
    }

    m.kw_masks.assign(n, 0);
    for (std::size_t ki = 0; ki < q.size(); ++ki) {
      auto it = vocab_ids.find(q[ki]);
      if (it == vocab_ids.end()) continue;
      const std::uint32_t tok = it->second;
      for (std::size_t i = 0; i < n; ++i)
        if (std::binary_search(m.toks[i].begin(), m.toks[i].end(), tok))
          m.kw_masks[i] |= 1ull << ki;
    }
    return m;
  }
};

inline double jaccard(const std::vector<std::uint32_t>& a,
                      const std::vector<std::uint32_t>& b) {
  if (a.empty() && b.empty()) return 1.0;  // identical (empty) sentences
  std::size_t inter = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

/// G(S): product of query relevance (floored at 0.01), TF-IDF cosine to the
/// dataset, diversity (1 - mean pairwise Jaccard), and capped mean length.
class SampleScorer {
public:
  SampleScorer(const SentenceModel& m, std::size_t query_size)
      : m_(m), query_size_(query_size), scratch_(m.vocab, 0.0) {}

  double operator()(const std::vector<std::uint32_t>& sample) {
    std::uint64_t mask = 0;
    touched_.clear();
    double count_sum = 0.0;
    for (std::uint32_t i : sample) {
      mask |= m_.kw_masks[i];
      count_sum += m_.token_count[i];
      for (const auto& [tok, c] : m_.tf[i]) {
        if (scratch_[tok] == 0.0) touched_.push_back(tok);
        scratch_[tok] += c;
      }
    }
    const double relevance = std::max(
        static_cast<double>(std::popcount(mask)) /
            static_cast<double>(query_size_),
        0.01);

    std::sort(touched_.begin(), touched_.end());
    double dot = 0.0, norm2 = 0.0;
    for (std::uint32_t tok : touched_) {
      const double w = scratch_[tok] * m_.idf[tok];
      dot += w * m_.dataset_weight[tok];
      norm2 += w * w;
      scratch_[tok] = 0.0;
    }
    const double cosine = (norm2 > 0.0 && m_.dataset_norm > 0.0)
                              ? dot / (std::sqrt(norm2) * m_.dataset_norm)
                              : 0.0;

    double diversity = 1.0;
    if (sample.size() > 1) {
      double jac_sum = 0.0;
      for (std::size_t i = 0; i < sample.size(); ++i)
        for (std::size_t j = i + 1; j < sample.size(); ++j)
          jac_sum += jaccard(m_.toks[sample[i]], m_.toks[sample[j]]);
      const double pairs = static_cast<double>(sample.size()) *
                           static_cast<double>(sample.size() - 1) / 2.0;
      diversity = 1.0 - jac_sum / pairs;
    }

    const double mean_count = count_sum / static_cast<double>(sample.size());
    const double length = m_.p95_token_count > 0.0
                              ? std::min(1.0, mean_count / m_.p95_token_count)
                              : 1.0;

    return relevance * cosine * diversity * length;
  }

private:
  const SentenceModel& m_;
  std::size_t query_size_;
  std::vector<double> scratch_;
  std::vector<std::uint32_t> touched_;
};

}  // namespace ces_detail

/// Cross-entropy snippet selection over triples-as-pseudo-sentences: per
/// iteration draws `ceSamples` subsets of size min(k, |T|) proportionally to
/// inclusion probabilities, scores them, and moves the probabilities toward
/// the elite fraction. Anytime and bit-deterministic for a fixed seed.
inline GeneratorResult generate_ces(const Dataset& d, const Query& q,
                                    const GeneratorConfig& cfg,
                                    std::uint64_t seed,
                                    std::vector<double>* elite_trace =
                                        nullptr) {
  cfg.validate();
  if (d.empty()) throw DomainError("ces: empty dataset");
  Deadline deadline(cfg.deadlineMillis);

  const std::size_t n = d.size();
  const std::size_t kk =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.tripleBudget), n);

  ces_detail::SentenceModel model = ces_detail::SentenceModel::build(d, q);
  ces_detail::SampleScorer score(model, q.size());

  GeneratorResult res;
  if (kk == n) {  // no selection freedom
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    res.objective = score(all);
    if (elite_trace) elite_trace->push_back(res.objective);
    res.snippet = Snippet::of(d, std::move(all), {}, "ces");
    res.status = GenStatus::Completed;
    res.iterations = 1;
    res.runtimeMillis = deadline.elapsed_millis();
    return res;
  }

  std::mt19937_64 rng(seed);
  std::vector<double> p(n, static_cast<double>(kk) / static_cast<double>(n));

  bool have_best = false;
  double best_g = 0.0;
  std::vector<std::uint32_t> best_sample;
  auto consider = [&](double g, const std::vector<std::uint32_t>& sample) {
    if (!have_best || g > best_g ||
        (g == best_g && sample < best_sample)) {
      have_best = true;
      best_g = g;
      best_sample = sample;
    }
  };

  const std::size_t elite_n = std::max<std::size_t>(
      1, static_cast<std::size_t>(static_cast<double>(cfg.ceSamples) *
                                  cfg.ceElitePct));
  std::vector<std::vector<std::uint32_t>> samples(
      static_cast<std::size_t>(cfg.ceSamples));
  std::vector<double> scores(static_cast<std::size_t>(cfg.ceSamples));
  std::vector<std::size_t> order(static_cast<std::size_t>(cfg.ceSamples));

  bool timed_out = false;
  std::int64_t iterations = 0;
  for (int iter = 0; iter < cfg.ceMaxIters && !timed_out; ++iter) {
    ces_detail::Fenwick fen(p);
    double total = std::accumulate(p.begin(), p.end(), 0.0);

    for (std::size_t s = 0; s < samples.size(); ++s) {
      if (deadline.poll()) {
        timed_out = true;
        samples.resize(s);
        break;
      }
      std::vector<std::uint32_t>& sample = samples[s];
      sample.clear();
      double remaining = total;
      for (std::size_t j = 0; j < kk; ++j) {
        const double target = ces_detail::uniform01(rng) * remaining;
        std::size_t idx = fen.search(target);
        if (idx >= n) idx = n - 1;
        // Guard against landing on an exhausted slot at a cumulative
        // boundary; scan forward deterministically.
        while (std::find(sample.begin(), sample.end(),
                         static_cast<std::uint32_t>(idx)) != sample.end())
          idx = (idx + 1) % n;
        sample.push_back(static_cast<std::uint32_t>(idx));
        fen.add(idx, -p[idx]);
        remaining -= p[idx];
      }
      for (std::uint32_t idx : sample) fen.add(idx, p[idx]);
      std::sort(sample.begin(), sample.end());
      scores[s] = score(sample);
      consider(scores[s], sample);
    }
    if (timed_out) break;
    ++iterations;
    if (elite_trace) elite_trace->push_back(best_g);

    order.resize(samples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return scores[a] > scores[b];
                     });

    std::vector<double> freq(n, 0.0);
    const std::size_t take = std::min(elite_n, order.size());
    for (std::size_t e = 0; e < take; ++e)
      for (std::uint32_t i : samples[order[e]]) freq[i] += 1.0;
    const double inv = 1.0 / static_cast<double>(take);
    double max_delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double np =
          (1.0 - cfg.ceSmoothing) * p[i] + cfg.ceSmoothing * freq[i] * inv;
      max_delta = std::max(max_delta, std::abs(np - p[i]));
      p[i] = np;
    }
    if (max_delta < 1e-4) break;  // probabilities converged
  }

  res.snippet = Snippet::of(d, std::move(best_sample), {}, "ces");
  res.status = timed_out ? GenStatus::TimedOutAnytime : GenStatus::Completed;
  res.iterations = iterations;
  res.objective = best_g;
  res.runtimeMillis = deadline.elapsed_millis();
  return res;
}

}  // namespace dsnip
