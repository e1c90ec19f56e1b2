#ifndef MULTIPERM_NOTATION_HPP
#define MULTIPERM_NOTATION_HPP

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "multiperm/errors.hpp"
#include "multiperm/relation.hpp"

// Text forms of relations:
//   pipe form    "12|2|13"   image sets of 1, 2, 3 separated by '|';
//                            for n > 9 (or when written so) entries are
//                            comma separated: "1,12|3|...".
//   matrix form  "110\n010\n101"

namespace multiperm {

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

inline std::string to_string(const BinaryRelation& r) {
  const std::size_t n = r.size();
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += '|';
    bool first = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (!r.test(i, j)) continue;
      if (n > 9 && !first) s += ',';
      s += std::to_string(j + 1);
      first = false;
    }
  }
  return s;
}

inline std::string to_string(const Multipermutation& f) {
  return to_string(f.relation());
}

inline std::ostream& operator<<(std::ostream& os, const BinaryRelation& r) {
  return os << to_string(r);
}

inline std::ostream& operator<<(std::ostream& os, const Multipermutation& f) {
  return os << to_string(f.relation());
}

/// Parses pipe form; the number of blocks is the domain size.  Empty blocks
/// (or "∅") denote empty image sets.
inline BinaryRelation parse_relation(const std::string& text) {
  std::string body = detail::trim(text);
  if (!body.empty() && body.front() == '[' && body.back() == ']') {
    body = body.substr(1, body.size() - 2);
  }
  auto blocks = detail::split(body, '|');
  const std::size_t n = blocks.size();
  if (n == 0 || n > kMaxN) {
    throw ParseError("bad relation '" + text + "': domain size out of range");
  }
  if (n == 1 && detail::trim(blocks[0]).empty()) {
    throw ParseError("empty relation text");
  }
  BinaryRelation r(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string blk = detail::trim(blocks[i]);
    if (blk.empty() || blk == "\xE2\x88\x85") continue;
    std::vector<std::string> items;
    if (blk.find(',') != std::string::npos || n > 9) {
      for (auto& it : detail::split(blk, ',')) items.push_back(detail::trim(it));
    } else {
      for (char c : blk) {
        if (c != ' ') items.emplace_back(1, c);
      }
    }
    for (const auto& it : items) {
      if (it.empty() ||
          !std::all_of(it.begin(), it.end(),
                       [](unsigned char c) { return std::isdigit(c); })) {
        throw ParseError("bad entry '" + it + "' in '" + text + "'");
      }
      unsigned long v = std::stoul(it);
      if (v < 1 || v > n) {
        throw ParseError("entry " + it + " out of range in '" + text + "'");
      }
      r.set(i, v - 1);
    }
  }
  return r;
}

inline Multipermutation parse_multipermutation(const std::string& text) {
  auto r = parse_relation(text);
  auto f = Multipermutation::from(r);
  if (!f) {
    throw ParseError("'" + text + "' is not a multipermutation");
  }
  return *f;
}

/// "110\n010\n101"
inline std::string to_matrix_string(const BinaryRelation& r,
                                    const std::string& sep = "\n") {
  std::string s;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += sep;
    s += r.row(i).to_string();
  }
  return s;
}

/// Rows separated by whitespace, newlines or ';'.
inline BinaryRelation parse_matrix(const std::string& text) {
  std::string norm = text;
  for (char& c : norm) {
    if (c == ';') c = ' ';
  }
  std::istringstream in(norm);
  std::vector<std::string> rows;
  std::string tok;
  while (in >> tok) rows.push_back(tok);
  if (rows.empty()) throw ParseError("empty matrix");
  const std::size_t n = rows.size();
  if (n > kMaxN) throw ParseError("matrix too large");
  BinaryRelation r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw ParseError("matrix row '" + rows[i] + "' has wrong length");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j] == '1') {
        r.set(i, j);
      } else if (rows[i][j] != '0') {
        throw ParseError("matrix entries must be 0 or 1");
      }
    }
  }
  return r;
}

/// Pipe form if the text contains '|', otherwise matrix form.
inline BinaryRelation parse_any(const std::string& text) {
  if (text.find('|') != std::string::npos) return parse_relation(text);
  return parse_matrix(text);
}

/// The digraph of f: an edge x -> y iff y is in f(x).
inline std::string to_dot(const BinaryRelation& f,
                          const std::string& name = "G") {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << "  " << i + 1 << ";\n";
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (f.test(i, j)) out << "  " << i + 1 << " -> " << j + 1 << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace multiperm

#endif  // MULTIPERM_NOTATION_HPP
