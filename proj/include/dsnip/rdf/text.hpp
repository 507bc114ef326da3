#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dsnip {

inline bool ascii_lower(char c) { return c >= 'a' && c <= 'z'; }
inline bool ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool ascii_digit(char c) { return c >= '0' && c <= '9'; }

// Token characters: ASCII alphanumerics plus any non-ASCII byte, so UTF-8
// sequences stay intact. Everything else is a separator.
inline bool token_char(char c) {
  return ascii_lower(c) || ascii_upper(c) || ascii_digit(c) ||
         static_cast<unsigned char>(c) >= 0x80;
}

inline std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (ascii_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  return out;
}

/// Splits on non-alphanumeric characters and lower->upper camelCase
/// boundaries, lowercases (ASCII), drops empty tokens.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  };
  char prev = '\0';
  for (char c : text) {
    if (!token_char(c)) {
      flush();
      prev = '\0';
      continue;
    }
    if (ascii_upper(c) && ascii_lower(prev)) flush();  // camelCase boundary
    prev = c;
    if (ascii_upper(c)) c = static_cast<char>(c - 'A' + 'a');
    cur.push_back(c);
  }
  flush();
  return tokens;
}

/// Local name of an IRI: the fragment after `#` if non-empty, else the last
/// `/`-delimited segment of the path; query strings never contribute.
/// Returns "" when neither exists.
inline std::string local_name(std::string_view iri) {
  std::string_view base = iri;
  if (auto hash = base.find('#'); hash != std::string_view::npos) {
    std::string_view frag = base.substr(hash + 1);
    if (!frag.empty()) return std::string(frag);
    base = base.substr(0, hash);
  }
  if (auto q = base.find('?'); q != std::string_view::npos)
    base = base.substr(0, q);
  if (auto scheme = base.find("://"); scheme != std::string_view::npos) {
    std::string_view rest = base.substr(scheme + 3);
    auto slash = rest.find('/');
    if (slash == std::string_view::npos) return "";  // authority only, no path
    return std::string(rest.substr(rest.rfind('/') + 1));
  }
  // Opaque IRIs (urn:...): last '/' segment if any, else after the last ':'.
  if (auto slash = base.rfind('/'); slash != std::string_view::npos)
    return std::string(base.substr(slash + 1));
  if (auto colon = base.rfind(':'); colon != std::string_view::npos)
    return std::string(base.substr(colon + 1));
  return std::string(base);
}

}  // namespace dsnip
