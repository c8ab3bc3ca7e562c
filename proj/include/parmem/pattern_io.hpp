#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "parmem/errors.hpp"
#include "parmem/model.hpp"

namespace parmem {

// Line-oriented pattern-set format, exact round-trip:
//
//   q=<q> n=<n> p=<p>
//   +1 -3 +2
//   ...
//
// one pattern per line, one <sign><freq> token per neuron.

struct PatternSet {
  int q = 1;
  std::vector<Pattern> patterns;

  friend bool operator==(const PatternSet&, const PatternSet&) = default;
};

inline void save_patterns(std::ostream& os, int q, const std::vector<Pattern>& patterns) {
  detail::require(q >= 1, "save_patterns: q must be >= 1");
  detail::require(!patterns.empty(), "save_patterns: empty pattern set");
  const std::size_t n = patterns.front().size();
  for (const Pattern& x : patterns) detail::validate_pattern(x, n, q, "save_patterns");

  os << "q=" << q << " n=" << n << " p=" << patterns.size() << "\n";
  for (const Pattern& x : patterns) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j) os << ' ';
      os << (x[j].sign > 0 ? '+' : '-') << x[j].freq;
    }
    os << "\n";
  }
}

namespace detail {
inline int parse_header_field(std::istringstream& in, const std::string& key) {
  std::string token;
  if (!(in >> token) || token.size() < key.size() + 1 || token.compare(0, key.size(), key) != 0 ||
      token[key.size()] != '=')
    throw ParseError("pattern set: malformed header, expected " + key + "=<value>");
  const std::string value = token.substr(key.size() + 1);
  try {
    std::size_t pos = 0;
    const int parsed = std::stoi(value, &pos);
    if (pos != value.size()) throw ParseError("");
    return parsed;
  } catch (const std::exception&) {
    throw ParseError("pattern set: bad integer in header field " + key);
  }
}

inline SpinState parse_spin_token(const std::string& token, int q) {
  if (token.size() < 2 || (token[0] != '+' && token[0] != '-'))
    throw ParseError("pattern set: bad token '" + token + "', expected <sign><freq>");
  int freq = 0;
  for (std::size_t i = 1; i < token.size(); ++i) {
    if (token[i] < '0' || token[i] > '9')
      throw ParseError("pattern set: bad token '" + token + "', expected <sign><freq>");
    freq = freq * 10 + (token[i] - '0');
    if (freq > 1 << 14) throw ParseError("pattern set: frequency in '" + token + "' is too large");
  }
  if (freq < 1 || freq > q)
    throw ParseError("pattern set: frequency in '" + token + "' outside 1..q");
  return {static_cast<std::int16_t>(token[0] == '+' ? 1 : -1), static_cast<std::int16_t>(freq)};
}
}  // namespace detail

inline PatternSet load_patterns(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("pattern set: missing header line");
  std::istringstream header(line);
  PatternSet set;
  set.q = detail::parse_header_field(header, "q");
  const int n = detail::parse_header_field(header, "n");
  const int p = detail::parse_header_field(header, "p");
  std::string extra;
  if (header >> extra) throw ParseError("pattern set: trailing content in header");
  if (set.q < 1 || n < 1 || p < 1) throw ParseError("pattern set: header values must be >= 1");

  set.patterns.reserve(static_cast<std::size_t>(p));
  for (int row = 0; row < p; ++row) {
    if (!std::getline(is, line))
      throw ParseError("pattern set: expected " + std::to_string(p) + " pattern lines");
    std::istringstream tokens(line);
    Pattern x;
    x.reserve(static_cast<std::size_t>(n));
    std::string token;
    while (tokens >> token) x.push_back(detail::parse_spin_token(token, set.q));
    if (static_cast<int>(x.size()) != n)
      throw ParseError("pattern set: line " + std::to_string(row + 2) + " has " +
                       std::to_string(x.size()) + " tokens, expected " + std::to_string(n));
    set.patterns.push_back(std::move(x));
  }
  while (std::getline(is, line))
    if (!line.empty()) throw ParseError("pattern set: trailing content after patterns");
  return set;
}

inline void save_patterns(const std::string& path, int q, const std::vector<Pattern>& patterns) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  save_patterns(out, q, patterns);
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

inline PatternSet load_patterns(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  return load_patterns(in);
}

}  // namespace parmem
