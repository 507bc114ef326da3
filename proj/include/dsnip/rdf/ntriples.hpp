#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dsnip/errors.hpp"
#include "dsnip/rdf/dataset.hpp"
#include "dsnip/rdf/term.hpp"

namespace dsnip {

struct ParseOptions {
  bool strict = false;  // lenient skips malformed lines and records them
};

struct ParseIssue {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string reason;
};

struct ParseReport {
  std::size_t lines = 0;       // physical lines seen
  std::size_t parsed = 0;      // triples stored (after dedup)
  std::size_t duplicates = 0;  // well-formed repeats of an earlier triple
  std::size_t skipped = 0;     // malformed lines (lenient mode)
  std::vector<ParseIssue> errors;
};

namespace ntriples_detail {

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp <= 0x7f) {
    out.push_back(static_cast<char>(cp));
  } else if (cp <= 0x7ff) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp <= 0xffff) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

// Single-line cursor; columns are 1-based byte offsets for error reporting.
class Cursor {
public:
  Cursor(std::string_view text, std::size_t line_no)
      : text_(text), line_(line_no) {}

  [[noreturn]] void fail(const std::string& reason) const {
    throw SyntaxError(line_, pos_ + 1, reason);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char take() { return text_[pos_++]; }

  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  bool skip_comment_or_end() {
    skip_ws();
    return at_end() || peek() == '#';
  }

  std::uint32_t parse_hex(int digits) {
    std::uint32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      if (at_end()) fail("truncated \\u escape");
      char c = take();
      cp <<= 4;
      if (c >= '0' && c <= '9') cp |= static_cast<std::uint32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
      else fail("invalid hex digit in escape");
    }
    return cp;
  }

  Term parse_iri() {
    if (peek() != '<') fail("expected '<'");
    take();
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      char c = take();
      if (c == '>') break;
      if (c == '\\') {
        if (at_end()) fail("truncated escape in IRI");
        char e = take();
        if (e == 'u') append_utf8(value, parse_hex(4));
        else if (e == 'U') append_utf8(value, parse_hex(8));
        else fail("invalid escape in IRI");
        continue;
      }
      unsigned char uc = static_cast<unsigned char>(c);
      if (uc <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' ||
          c == '|' || c == '^' || c == '`')
        fail("character not allowed in IRI");
      value.push_back(c);
    }
    if (value.empty()) fail("empty IRI");
    return Term::iri(std::move(value));
  }

  Term parse_blank() {
    // called at '_'
    take();
    if (at_end() || take() != ':') fail("expected ':' after '_'");
    std::string label;
    while (!at_end()) {
      char c = peek();
      unsigned char uc = static_cast<unsigned char>(c);
      if (ascii_lower(c) || ascii_upper(c) || ascii_digit(c) || c == '_' ||
          c == '-' || c == '.' || uc >= 0x80) {
        label.push_back(take());
      } else {
        break;
      }
    }
    if (label.empty()) fail("empty blank node label");
    if (label.back() == '.') {  // trailing '.' belongs to the statement
      label.pop_back();
      --pos_;
      if (label.empty()) fail("empty blank node label");
    }
    return Term::blank(std::move(label));
  }

  Term parse_literal() {
    if (take() != '"') fail("expected '\"'");
    std::string lex;
    while (true) {
      if (at_end()) fail("unterminated string literal");
      char c = take();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail("truncated escape in literal");
        char e = take();
        switch (e) {
          case 't': lex.push_back('\t'); break;
          case 'b': lex.push_back('\b'); break;
          case 'n': lex.push_back('\n'); break;
          case 'r': lex.push_back('\r'); break;
          case 'f': lex.push_back('\f'); break;
          case '"': lex.push_back('"'); break;
          case '\'': lex.push_back('\''); break;
          case '\\': lex.push_back('\\'); break;
          case 'u': append_utf8(lex, parse_hex(4)); break;
          case 'U': append_utf8(lex, parse_hex(8)); break;
          default: fail("invalid escape in literal");
        }
        continue;
      }
      lex.push_back(c);
    }
    std::string datatype, lang;
    if (!at_end() && peek() == '^') {
      take();
      if (at_end() || take() != '^') fail("expected '^^' before datatype");
      Term dt = parse_iri();
      datatype = std::move(dt.value);
    } else if (!at_end() && peek() == '@') {
      take();
      while (!at_end()) {
        char c = peek();
        if (ascii_lower(c) || ascii_upper(c) || ascii_digit(c) || c == '-')
          lang.push_back(take());
        else
          break;
      }
      if (lang.empty()) fail("empty language tag");
    }
    return Term::literal(std::move(lex), std::move(datatype), std::move(lang));
  }

  Term parse_subject() {
    skip_ws();
    if (at_end()) fail("expected subject");
    char c = peek();
    if (c == '<') return parse_iri();
    if (c == '_') return parse_blank();
    fail("subject must be an IRI or blank node");
  }

  Term parse_predicate() {
    skip_ws();
    if (at_end()) fail("expected predicate");
    if (peek() != '<') fail("predicate must be an IRI");
    return parse_iri();
  }

  Term parse_object() {
    skip_ws();
    if (at_end()) fail("expected object");
    char c = peek();
    if (c == '<') return parse_iri();
    if (c == '_') return parse_blank();
    if (c == '"') return parse_literal();
    fail("object must be an IRI, blank node, or literal");
  }

  void parse_terminator() {
    skip_ws();
    if (at_end() || take() != '.') fail("expected '.' terminator");
    if (!skip_comment_or_end()) fail("unexpected trailing content");
  }

private:
  std::string_view text_;
  std::size_t line_ = 0;
  std::size_t pos_ = 0;
};

}  // namespace ntriples_detail

/// Parses N-Triples text into an indexed Dataset. In strict mode the first
/// malformed line throws SyntaxError; in lenient mode malformed lines are
/// skipped and recorded in the report.
inline Dataset parse_ntriples(std::istream& in, const ParseOptions& opts = {},
                              ParseReport* report = nullptr,
                              std::string dataset_id = "") {
  DatasetBuilder builder(std::move(dataset_id));
  ParseReport local;
  ParseReport& rep = report ? *report : local;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    ++rep.lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    ntriples_detail::Cursor cur(line, line_no);
    if (cur.skip_comment_or_end()) continue;
    try {
      Term s = cur.parse_subject();
      Term p = cur.parse_predicate();
      Term o = cur.parse_object();
      cur.parse_terminator();
      if (builder.add(Triple(std::move(s), std::move(p), std::move(o))))
        ++rep.parsed;
      else
        ++rep.duplicates;
    } catch (const SyntaxError& e) {
      if (opts.strict) throw;
      ++rep.skipped;
      rep.errors.push_back({e.line(), e.column(), e.reason()});
    }
  }
  return std::move(builder).build();
}

inline Dataset parse_ntriples(std::string_view text,
                              const ParseOptions& opts = {},
                              ParseReport* report = nullptr,
                              std::string dataset_id = "") {
  std::istringstream in{std::string(text)};
  return parse_ntriples(in, opts, report, std::move(dataset_id));
}

inline Dataset parse_ntriples_file(const std::string& path,
                                   const ParseOptions& opts = {},
                                   ParseReport* report = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  return parse_ntriples(in, opts, report, path);
}

// --- serialization --------------------------------------------------------

inline std::string to_ntriples(const Term& t) {
  auto escape_iri = [](const std::string& v) {
    std::string out;
    out.reserve(v.size());
    for (char c : v) {
      unsigned char uc = static_cast<unsigned char>(c);
      if (uc <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' ||
          c == '}' || c == '|' || c == '^' || c == '`' || c == '\\') {
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\u%04X", uc);
        out += buf;
      } else {
        out.push_back(c);
      }
    }
    return out;
  };
  switch (t.kind) {
    case TermKind::Iri:
      return "<" + escape_iri(t.value) + ">";
    case TermKind::Blank:
      return "_:" + t.value;
    case TermKind::Literal: {
      std::string out = "\"";
      for (char c : t.value) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\r': out += "\\r"; break;
          case '\t': out += "\\t"; break;
          case '\b': out += "\\b"; break;
          case '\f': out += "\\f"; break;
          default:
            if (static_cast<unsigned char>(c) < 0x20) {
              char buf[8];
              std::snprintf(buf, sizeof buf, "\\u%04X",
                            static_cast<unsigned char>(c));
              out += buf;
            } else {
              out.push_back(c);
            }
        }
      }
      out += '"';
      if (!t.datatype.empty()) out += "^^<" + escape_iri(t.datatype) + ">";
      if (!t.lang.empty()) out += "@" + t.lang;
      return out;
    }
  }
  return {};
}

inline std::string to_ntriples(const Triple& t) {
  return to_ntriples(t.s) + " " + to_ntriples(t.p) + " " + to_ntriples(t.o) +
         " .";
}

inline std::string to_ntriples(const Dataset& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    out += to_ntriples(d.materialize(i));
    out += '\n';
  }
  return out;
}

/// Parses a single N-Triples term (used by the isolated-node sidecar files).
inline Term parse_term(std::string_view text) {
  ntriples_detail::Cursor cur(text, 1);
  cur.skip_ws();
  Term t = [&] {
    char c = cur.peek();
    if (c == '<') return cur.parse_iri();
    if (c == '_') return cur.parse_blank();
    if (c == '"') return cur.parse_literal();
    cur.fail("expected an IRI, blank node, or literal");
  }();
  if (!cur.skip_comment_or_end()) cur.fail("unexpected trailing content");
  return t;
}

}  // namespace dsnip
