#ifndef MULTIPERM_PERMUTATION_HPP
#define MULTIPERM_PERMUTATION_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "multiperm/errors.hpp"
#include "multiperm/relation.hpp"

namespace multiperm {

/// A bijection of [n], stored 0-based.
class Permutation {
 public:
  Permutation() = default;

  /// `images[i]` is the image of i (0-based).
  explicit Permutation(std::vector<std::uint8_t> images)
      : image_(std::move(images)) {
    if (image_.empty() || image_.size() > kMaxN) {
      throw InvalidArgument("permutation degree out of range");
    }
    std::vector<bool> hit(image_.size(), false);
    for (auto v : image_) {
      if (v >= image_.size() || hit[v]) {
        throw InvalidArgument("images do not form a bijection");
      }
      hit[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::uint8_t> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<std::uint8_t>(i);
    return Permutation(std::move(img));
  }

  /// From 1-based images, e.g. {2, 1, 3}.
  static Permutation from_images(const std::vector<int>& one_based) {
    std::vector<std::uint8_t> img;
    for (int v : one_based) {
      if (v < 1) throw InvalidArgument("permutation images are 1-based");
      img.push_back(static_cast<std::uint8_t>(v - 1));
    }
    return Permutation(std::move(img));
  }

  /// Cycle notation "(1 2)(3 4)" or a 1-based image list "2 1 3" /
  /// "2,1,3".  `n` fixes the degree for cycle notation.
  static Permutation parse(const std::string& text, std::size_t n) {
    auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '(') {
      std::vector<std::uint8_t> img(n);
      for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<std::uint8_t>(i);
      std::vector<bool> used(n, false);
      std::size_t pos = first;
      while (pos < text.size()) {
        if (text[pos] == ' ' || text[pos] == '\t') {
          ++pos;
          continue;
        }
        if (text[pos] != '(') throw ParseError("bad cycle notation: " + text);
        auto close = text.find(')', pos);
        if (close == std::string::npos) {
          throw ParseError("unterminated cycle: " + text);
        }
        std::string body = text.substr(pos + 1, close - pos - 1);
        std::replace(body.begin(), body.end(), ',', ' ');
        std::istringstream in(body);
        std::vector<std::size_t> cyc;
        long v;
        while (in >> v) {
          if (v < 1 || static_cast<std::size_t>(v) > n) {
            throw ParseError("cycle entry out of range: " + text);
          }
          auto x = static_cast<std::size_t>(v - 1);
          if (used[x]) throw ParseError("repeated cycle entry: " + text);
          used[x] = true;
          cyc.push_back(x);
        }
        if (!in.eof()) throw ParseError("bad cycle entry: " + text);
        for (std::size_t k = 0; k < cyc.size(); ++k) {
          img[cyc[k]] = static_cast<std::uint8_t>(cyc[(k + 1) % cyc.size()]);
        }
        pos = close + 1;
      }
      return Permutation(std::move(img));
    }
    std::string body = text;
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream in(body);
    std::vector<int> vals;
    int v;
    while (in >> v) vals.push_back(v);
    if (!in.eof() || vals.empty()) throw ParseError("bad permutation: " + text);
    if (n != 0 && vals.size() != n) {
      throw ParseError("permutation '" + text + "' has degree " +
                       std::to_string(vals.size()) + ", expected " +
                       std::to_string(n));
    }
    try {
      return from_images(vals);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
  }

  std::size_t size() const noexcept { return image_.size(); }
  std::size_t operator()(std::size_t i) const { return image_.at(i); }
  const std::vector<std::uint8_t>& images() const noexcept { return image_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < image_.size(); ++i) {
      if (image_[i] != i) return false;
    }
    return true;
  }

  Multipermutation to_multipermutation() const {
    BinaryRelation r(size());
    for (std::size_t i = 0; i < size(); ++i) r.set(i, image_[i]);
    return Multipermutation::trusted(r);
  }

  /// Reads a permutation matrix back; nullopt if `rel` is not one.
  static std::optional<Permutation> from_relation(const BinaryRelation& rel) {
    if (!rel.is_permutation()) return std::nullopt;
    std::vector<std::uint8_t> img(rel.size());
    for (std::size_t i = 0; i < rel.size(); ++i) {
      img[i] = static_cast<std::uint8_t>(std::countr_zero(rel.row_bits(i)));
    }
    return Permutation(std::move(img));
  }

  /// "[2,1,3]"
  std::string to_image_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < size(); ++i) {
      if (i) s += ",";
      s += std::to_string(image_[i] + 1);
    }
    return s + "]";
  }

  /// "(1 2)(3 4)"; the identity prints as "()".
  std::string to_cycle_string() const {
    std::string s;
    std::vector<bool> seen(size(), false);
    for (std::size_t i = 0; i < size(); ++i) {
      if (seen[i] || image_[i] == i) continue;
      s += "(";
      std::size_t j = i;
      bool first = true;
      while (!seen[j]) {
        seen[j] = true;
        if (!first) s += " ";
        s += std::to_string(j + 1);
        first = false;
        j = image_[j];
      }
      s += ")";
    }
    return s.empty() ? "()" : s;
  }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint8_t> image_;
};

/// Apply g first, then h.
inline Permutation then(const Permutation& g, const Permutation& h) {
  require_same_dim(g.size(), h.size());
  std::vector<std::uint8_t> img(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    img[i] = static_cast<std::uint8_t>(h(g(i)));
  }
  return Permutation(std::move(img));
}

inline Permutation inverse(const Permutation& g) {
  std::vector<std::uint8_t> img(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    img[g(i)] = static_cast<std::uint8_t>(i);
  }
  return Permutation(std::move(img));
}

/// Every permutation of [n] in lexicographic image order.
inline std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<std::uint8_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<std::uint8_t>(i);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

/// Subgroup generated by `gens` (plus the identity), sorted.
inline std::vector<Permutation> group_closure(
    std::size_t n, const std::vector<Permutation>& gens) {
  for (const auto& g : gens) require_same_dim(n, g.size());
  std::vector<Permutation> group{Permutation::identity(n)};
  std::vector<Permutation> frontier = group;
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        Permutation y = then(x, g);
        if (std::find(group.begin(), group.end(), y) == group.end()) {
          group.push_back(y);
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(group.begin(), group.end());
  return group;
}

}  // namespace multiperm

#endif  // MULTIPERM_PERMUTATION_HPP
