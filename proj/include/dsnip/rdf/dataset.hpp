#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dsnip/errors.hpp"
#include "dsnip/rdf/term.hpp"
#include "dsnip/rdf/text.hpp"

namespace dsnip {

using TermId = std::uint32_t;
inline constexpr TermId kNoTerm = 0xffffffffu;

enum class MatchMode { Token, Substring };

struct TripleIds {
  TermId s, p, o;
  friend bool operator==(const TripleIds&, const TripleIds&) = default;
};

namespace detail {
struct TripleKeyHash {
  std::size_t operator()(const std::array<TermId, 3>& k) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (TermId v : k) {
      h ^= v;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};
}  // namespace detail

/// Immutable triple store with every derived index the metrics and generators
/// read: term table, per-term degrees, class/property counts, rdfs:label
/// lists, textual forms, token inverted index, and per-term triple incidence.
/// Construction happens once through DatasetBuilder; afterwards the object is
/// safe to share across threads.
class Dataset {
public:
  Dataset() = default;

  const std::string& id() const { return id_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  const Term& term(TermId id) const { return terms_[id]; }
  const TripleIds& triple(std::size_t i) const { return triples_[i]; }
  Triple materialize(std::size_t i) const {
    const TripleIds& t = triples_[i];
    return Triple(terms_[t.s], terms_[t.p], terms_[t.o]);
  }

  std::optional<TermId> find_term(const Term& t) const {
    auto it = term_ids_.find(t);
    if (it == term_ids_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::uint32_t> find_triple(TermId s, TermId p, TermId o) const {
    auto it = triple_index_.find({s, p, o});
    if (it == triple_index_.end()) return std::nullopt;
    return it->second;
  }

  // --- schema statistics -----------------------------------------------

  std::size_t type_triple_count() const { return type_total_; }

  /// Relative frequency of class c among all rdf:type triples. Unknown or
  /// uninstantiated classes score 0.
  double class_frequency(TermId c) const {
    if (type_total_ == 0)
      throw DomainError("class_frequency: dataset has no rdf:type triple");
    auto it = class_count_.find(c);
    return it == class_count_.end()
               ? 0.0
               : static_cast<double>(it->second) / static_cast<double>(type_total_);
  }
  double class_frequency(const Term& c) const {
    auto id = find_term(c);
    if (!id) {
      if (type_total_ == 0)
        throw DomainError("class_frequency: dataset has no rdf:type triple");
      return 0.0;
    }
    return class_frequency(*id);
  }

  /// Relative frequency of property p among all triples. Unknown or unused
  /// properties score 0.
  double property_frequency(TermId p) const {
    if (triples_.empty())
      throw DomainError("property_frequency: dataset is empty");
    auto it = prop_count_.find(p);
    return it == prop_count_.end()
               ? 0.0
               : static_cast<double>(it->second) / static_cast<double>(triples_.size());
  }
  double property_frequency(const Term& p) const {
    auto id = find_term(p);
    if (!id) {
      if (triples_.empty())
        throw DomainError("property_frequency: dataset is empty");
      return 0.0;
    }
    return property_frequency(*id);
  }

  std::uint32_t class_instance_count(TermId c) const {
    auto it = class_count_.find(c);
    return it == class_count_.end() ? 0u : it->second;
  }
  std::uint32_t property_use_count(TermId p) const {
    auto it = prop_count_.find(p);
    return it == prop_count_.end() ? 0u : it->second;
  }

  // --- degrees and entities ---------------------------------------------

  std::uint32_t out_degree(TermId r) const { return out_deg_[r]; }
  std::uint32_t in_degree(TermId r) const { return in_deg_[r]; }
  std::pair<std::uint32_t, std::uint32_t> degrees(const Term& r) const {
    auto id = find_term(r);
    if (!id) return {0u, 0u};
    return {out_deg_[*id], in_deg_[*id]};
  }

  bool is_class(TermId r) const { return is_class_[r]; }
  bool is_entity(TermId r) const { return is_entity_[r]; }

  /// Ent(T): non-literal subject/object terms outside Cls(T), ascending id.
  const std::vector<TermId>& entity_ids() const { return entity_ids_; }
  /// Cls(T): rdf:type objects, ascending id.
  const std::vector<TermId>& class_ids() const { return class_ids_; }
  /// Distinct predicate ids, ascending.
  const std::vector<TermId>& property_ids() const { return property_ids_; }

  double max_out_log() const { return max_out_log_; }
  double max_in_log() const { return max_in_log_; }

  // --- textual forms and matching ----------------------------------------

  const std::vector<std::string>& labels(TermId r) const {
    static const std::vector<std::string> kEmpty;
    auto it = labels_.find(r);
    return it == labels_.end() ? kEmpty : it->second;
  }

  /// Text(r): sorted unique textual forms.
  const std::vector<std::string>& text_forms(TermId r) const {
    return text_forms_[r];
  }

  /// Sorted unique lowercase tokens over all forms of r.
  const std::vector<std::string>& term_tokens(TermId r) const {
    return term_tokens_[r];
  }

  bool term_covers(TermId r, std::string_view q,
                   MatchMode mode = MatchMode::Token) const {
    if (mode == MatchMode::Token) {
      const auto& toks = term_tokens_[r];
      return std::binary_search(toks.begin(), toks.end(), q);
    }
    for (const auto& form : lower_forms_[r])
      if (form.find(q) != std::string::npos) return true;
    return false;
  }

  bool triple_covers(std::size_t i, std::string_view q,
                     MatchMode mode = MatchMode::Token) const {
    const TripleIds& t = triples_[i];
    return term_covers(t.s, q, mode) || term_covers(t.p, q, mode) ||
           term_covers(t.o, q, mode);
  }

  /// Term ids whose token set contains `token` (token match only).
  const std::vector<TermId>& terms_with_token(std::string_view token) const {
    static const std::vector<TermId> kEmpty;
    auto it = inverted_.find(std::string(token));
    return it == inverted_.end() ? kEmpty : it->second;
  }

  const std::unordered_map<std::string, std::vector<TermId>>& inverted_index()
      const {
    return inverted_;
  }

  // --- incidence ----------------------------------------------------------

  /// Triple indices where r appears as subject, predicate, or object.
  const std::vector<std::uint32_t>& occurrences(TermId r) const {
    return occurrences_[r];
  }
  /// Triple indices where r appears as subject or object (graph incidence).
  const std::vector<std::uint32_t>& incident(TermId r) const {
    return incident_[r];
  }

private:
  friend class DatasetBuilder;

  std::string id_;
  std::vector<Term> terms_;
  std::unordered_map<Term, TermId, TermHash> term_ids_;
  std::vector<TripleIds> triples_;
  std::unordered_map<std::array<TermId, 3>, std::uint32_t,
                     detail::TripleKeyHash>
      triple_index_;

  std::size_t type_total_ = 0;
  std::unordered_map<TermId, std::uint32_t> class_count_;
  std::unordered_map<TermId, std::uint32_t> prop_count_;
  std::vector<std::uint32_t> out_deg_, in_deg_;
  std::unordered_map<TermId, std::vector<std::string>> labels_;
  std::vector<char> is_class_, is_entity_;
  std::vector<TermId> entity_ids_, class_ids_, property_ids_;
  std::vector<std::vector<std::string>> text_forms_, lower_forms_, term_tokens_;
  std::unordered_map<std::string, std::vector<TermId>> inverted_;
  std::vector<std::vector<std::uint32_t>> occurrences_, incident_;
  double max_out_log_ = 0.0, max_in_log_ = 0.0;
};

/// Interns terms, deduplicates triples in first-occurrence order, then builds
/// every Dataset index in one pass over the frozen triple list.
class DatasetBuilder {
public:
  explicit DatasetBuilder(std::string dataset_id = "")
      : id_(std::move(dataset_id)) {}

  TermId intern(const Term& t) {
    auto it = term_ids_.find(t);
    if (it != term_ids_.end()) return it->second;
    TermId id = static_cast<TermId>(terms_.size());
    terms_.push_back(t);
    term_ids_.emplace(t, id);
    return id;
  }

  /// Returns false when the triple is a duplicate.
  bool add(const Triple& t) {
    TermId s = intern(t.s), p = intern(t.p), o = intern(t.o);
    std::array<TermId, 3> key{s, p, o};
    if (triple_index_.contains(key)) return false;
    triple_index_.emplace(key, static_cast<std::uint32_t>(triples_.size()));
    triples_.push_back({s, p, o});
    return true;
  }

  std::size_t triple_count() const { return triples_.size(); }

  Dataset build() && {
    Dataset d;
    d.id_ = std::move(id_);
    d.terms_ = std::move(terms_);
    d.term_ids_ = std::move(term_ids_);
    d.triples_ = std::move(triples_);
    d.triple_index_ = std::move(triple_index_);

    const std::size_t nterms = d.terms_.size();
    const std::size_t ntriples = d.triples_.size();
    d.out_deg_.assign(nterms, 0);
    d.in_deg_.assign(nterms, 0);
    d.is_class_.assign(nterms, 0);
    d.is_entity_.assign(nterms, 0);
    d.occurrences_.assign(nterms, {});
    d.incident_.assign(nterms, {});

    const Term rdf_type = Term::iri(std::string(vocab::kRdfType));
    const Term rdfs_label = Term::iri(std::string(vocab::kRdfsLabel));
    const TermId type_id = d.find_term(rdf_type).value_or(kNoTerm);
    const TermId label_id = d.find_term(rdfs_label).value_or(kNoTerm);

    for (std::uint32_t i = 0; i < ntriples; ++i) {
      const TripleIds& t = d.triples_[i];
      d.out_deg_[t.s]++;
      d.in_deg_[t.o]++;
      d.prop_count_[t.p]++;
      if (t.p == type_id) {
        d.type_total_++;
        d.class_count_[t.o]++;
        d.is_class_[t.o] = 1;
      }
      if (t.p == label_id && d.terms_[t.o].is_literal())
        d.labels_[t.s].push_back(d.terms_[t.o].value);

      auto push_unique = [i](std::vector<std::uint32_t>& v) {
        if (v.empty() || v.back() != i) v.push_back(i);
      };
      push_unique(d.occurrences_[t.s]);
      push_unique(d.occurrences_[t.p]);
      push_unique(d.occurrences_[t.o]);
      push_unique(d.incident_[t.s]);
      if (t.o != t.s) push_unique(d.incident_[t.o]);
    }

    for (TermId r = 0; r < nterms; ++r) {
      if (d.is_class_[r]) d.class_ids_.push_back(r);
    }
    for (const auto& [p, _] : d.prop_count_) d.property_ids_.push_back(p);
    std::sort(d.property_ids_.begin(), d.property_ids_.end());

    // Ent(T): subject/object terms that are neither classes nor literals.
    for (std::uint32_t i = 0; i < ntriples; ++i) {
      const TripleIds& t = d.triples_[i];
      for (TermId r : {t.s, t.o}) {
        if (!d.terms_[r].is_literal() && !d.is_class_[r]) d.is_entity_[r] = 1;
      }
    }
    for (TermId r = 0; r < nterms; ++r)
      if (d.is_entity_[r]) d.entity_ids_.push_back(r);

    for (TermId e : d.entity_ids_) {
      d.max_out_log_ = std::max(d.max_out_log_, std::log(d.out_deg_[e] + 1.0));
      d.max_in_log_ = std::max(d.max_in_log_, std::log(d.in_deg_[e] + 1.0));
    }

    // Textual forms, lowercase forms, token sets, inverted index.
    d.text_forms_.assign(nterms, {});
    d.lower_forms_.assign(nterms, {});
    d.term_tokens_.assign(nterms, {});
    for (TermId r = 0; r < nterms; ++r) {
      const Term& t = d.terms_[r];
      std::vector<std::string>& forms = d.text_forms_[r];
      if (t.is_literal()) {
        forms.push_back(t.value);
      } else {
        if (auto it = d.labels_.find(r); it != d.labels_.end())
          forms = it->second;
        if (t.is_iri()) {
          std::string ln = local_name(t.value);
          if (!ln.empty()) forms.push_back(std::move(ln));
        }
      }
      std::sort(forms.begin(), forms.end());
      forms.erase(std::unique(forms.begin(), forms.end()), forms.end());

      std::vector<std::string>& toks = d.term_tokens_[r];
      for (const std::string& f : forms) {
        d.lower_forms_[r].push_back(to_lower_ascii(f));
        for (std::string& tok : tokenize(f)) toks.push_back(std::move(tok));
      }
      std::sort(toks.begin(), toks.end());
      toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
      for (const std::string& tok : toks) d.inverted_[tok].push_back(r);
    }

    return d;
  }

private:
  std::string id_;
  std::vector<Term> terms_;
  std::unordered_map<Term, TermId, TermHash> term_ids_;
  std::vector<TripleIds> triples_;
  std::unordered_map<std::array<TermId, 3>, std::uint32_t,
                     detail::TripleKeyHash>
      triple_index_;
};

// --- spec-level free functions ---------------------------------------------

/// Text(r) for a term that may or may not occur in d.
inline std::vector<std::string> text_forms(const Dataset& d, const Term& r) {
  if (auto id = d.find_term(r)) return d.text_forms(*id);
  if (r.is_literal()) return {r.value};
  if (r.is_iri()) {
    std::string ln = local_name(r.value);
    if (!ln.empty()) return {std::move(ln)};
  }
  return {};
}

inline bool covers(const Dataset& d, const Term& r, std::string_view q,
                   MatchMode mode = MatchMode::Token) {
  if (auto id = d.find_term(r)) return d.term_covers(*id, q, mode);
  for (const std::string& form : text_forms(d, r)) {
    if (mode == MatchMode::Token) {
      for (const std::string& tok : tokenize(form))
        if (tok == q) return true;
    } else if (to_lower_ascii(form).find(q) != std::string::npos) {
      return true;
    }
  }
  return false;
}

inline bool covers(const Dataset& d, const Triple& t, std::string_view q,
                   MatchMode mode = MatchMode::Token) {
  return covers(d, t.s, q, mode) || covers(d, t.p, q, mode) ||
         covers(d, t.o, q, mode);
}

}  // namespace dsnip
