#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dsnip {

enum class TermKind : std::uint8_t { Iri, Blank, Literal };

namespace vocab {
inline constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfsLabel =
    "http://www.w3.org/2000/01/rdf-schema#label";
}  // namespace vocab

/// An RDF term: IRI, blank node, or literal. `value` holds the IRI string,
/// the blank node id (without the `_:` prefix), or the literal lexical form.
/// Literals carry at most one of `datatype` / `lang`.
struct Term {
  TermKind kind = TermKind::Iri;
  std::string value;
  std::string datatype;  // literals only; empty = plain
  std::string lang;      // literals only; empty = none

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

  bool is_iri() const { return kind == TermKind::Iri; }
  bool is_blank() const { return kind == TermKind::Blank; }
  bool is_literal() const { return kind == TermKind::Literal; }

  static Term iri(std::string v) {
    if (v.empty()) throw std::invalid_argument("IRI must be non-empty");
    for (char c : v) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
        throw std::invalid_argument("IRI must not contain whitespace: " + v);
    }
    Term t;
    t.kind = TermKind::Iri;
    t.value = std::move(v);
    return t;
  }

  static Term blank(std::string id) {
    Term t;
    t.kind = TermKind::Blank;
    t.value = std::move(id);
    return t;
  }

  static Term literal(std::string lex, std::string datatype = "",
                      std::string lang = "") {
    if (!datatype.empty() && !lang.empty())
      throw std::invalid_argument(
          "literal datatype and language tag are mutually exclusive");
    Term t;
    t.kind = TermKind::Literal;
    t.value = std::move(lex);
    t.datatype = std::move(datatype);
    t.lang = std::move(lang);
    return t;
  }
};

struct TermHash {
  std::size_t operator()(const Term& t) const {
    std::size_t h = std::hash<std::string>{}(t.value);
    auto mix = [&h](std::size_t v) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    mix(static_cast<std::size_t>(t.kind));
    if (!t.datatype.empty()) mix(std::hash<std::string>{}(t.datatype));
    if (!t.lang.empty()) mix(std::hash<std::string>{}(t.lang));
    return h;
  }
};

/// A subject-predicate-object triple over materialized terms. Storage inside
/// Dataset is id-based; this form is the parser/serializer currency.
struct Triple {
  Term s, p, o;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;

  Triple() = default;
  Triple(Term s_, Term p_, Term o_)
      : s(std::move(s_)), p(std::move(p_)), o(std::move(o_)) {
    if (s.is_literal())
      throw std::invalid_argument("triple subject must not be a literal");
    if (!p.is_iri())
      throw std::invalid_argument("triple predicate must be an IRI");
  }
};

}  // namespace dsnip
