#ifndef MULTIPERM_RELATION_HPP
#define MULTIPERM_RELATION_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "multiperm/boolvec.hpp"
#include "multiperm/errors.hpp"

namespace multiperm {

/// An n x n boolean matrix, read as a binary relation on [n]: entry (i, j)
/// is set iff (i + 1, j + 1) is in the relation.  Row i is the image set of
/// i + 1.  No totality or surjectivity is implied.
class BinaryRelation {
 public:
  BinaryRelation() = default;

  explicit BinaryRelation(std::size_t n) : n_(static_cast<std::uint8_t>(n)) {
    if (n == 0 || n > kMaxN) {
      throw InvalidArgument("domain size " + std::to_string(n) +
                            " out of range 1.." + std::to_string(kMaxN));
    }
  }

  BinaryRelation(std::size_t n, std::span<const Word> rows)
      : BinaryRelation(n) {
    if (rows.size() != n) throw DimensionMismatch(n, rows.size());
    for (std::size_t i = 0; i < n; ++i) rows_[i] = rows[i] & low_mask(n);
  }

  BinaryRelation(std::size_t n, std::initializer_list<Word> rows)
      : BinaryRelation(n, std::span<const Word>(rows.begin(), rows.size())) {}

  static BinaryRelation identity(std::size_t n) {
    BinaryRelation r(n);
    for (std::size_t i = 0; i < n; ++i) r.rows_[i] = Word{1} << i;
    return r;
  }

  static BinaryRelation full(std::size_t n) {
    BinaryRelation r(n);
    for (std::size_t i = 0; i < n; ++i) r.rows_[i] = low_mask(n);
    return r;
  }

  /// Inverse of pack().
  static BinaryRelation unpack(std::size_t n, std::uint64_t code) {
    BinaryRelation r(n);
    for (std::size_t i = 0; i < n; ++i) {
      r.rows_[i] =
          static_cast<Word>((code >> (n * (n - 1 - i))) & low_mask(n));
    }
    return r;
  }

  std::size_t size() const noexcept { return n_; }
  Word row_bits(std::size_t i) const noexcept { return rows_[i]; }
  BoolVec row(std::size_t i) const { return BoolVec(n_, rows_[i]); }
  std::span<const Word> rows() const noexcept { return {rows_.data(), n_}; }

  Word column_bits(std::size_t j) const noexcept {
    Word c = 0;
    for (std::size_t i = 0; i < n_; ++i) c |= ((rows_[i] >> j) & 1U) << i;
    return c;
  }
  BoolVec column(std::size_t j) const { return BoolVec(n_, column_bits(j)); }

  bool test(std::size_t i, std::size_t j) const noexcept {
    return (rows_[i] >> j) & 1U;
  }

  void set(std::size_t i, std::size_t j, bool value = true) noexcept {
    if (value) {
      rows_[i] |= Word{1} << j;
    } else {
      rows_[i] &= ~(Word{1} << j);
    }
  }

  void set_row(std::size_t i, Word bits) noexcept {
    rows_[i] = bits & low_mask(n_);
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n_; ++i) c += std::popcount(rows_[i]);
    return c;
  }

  /// OR of all rows: the set of elements with a preimage.
  Word range_bits() const noexcept {
    Word c = 0;
    for (std::size_t i = 0; i < n_; ++i) c |= rows_[i];
    return c;
  }

  bool is_total() const noexcept {
    for (std::size_t i = 0; i < n_; ++i) {
      if (rows_[i] == 0) return false;
    }
    return true;
  }

  bool is_surjective() const noexcept { return range_bits() == low_mask(n_); }

  bool is_multipermutation() const noexcept {
    return is_total() && is_surjective();
  }

  bool is_permutation() const noexcept {
    if (!is_surjective()) return false;
    for (std::size_t i = 0; i < n_; ++i) {
      if (std::popcount(rows_[i]) != 1) return false;
    }
    return true;
  }

  /// Rows concatenated into one integer, first row most significant.  The
  /// numeric order of codes is the canonical element order.  n <= 8.
  std::uint64_t pack() const {
    if (n_ > 8) throw InvalidArgument("pack() requires n <= 8");
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      code = (code << n_) | rows_[i];
    }
    return code;
  }

  friend bool operator==(const BinaryRelation& a, const BinaryRelation& b) {
    return a.n_ == b.n_ &&
           std::equal(a.rows_.begin(), a.rows_.begin() + a.n_,
                      b.rows_.begin());
  }

  /// Canonical order: dimension, then rows lexicographically as integers.
  friend std::strong_ordering operator<=>(const BinaryRelation& a,
                                          const BinaryRelation& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return std::lexicographical_compare_three_way(
        a.rows_.begin(), a.rows_.begin() + a.n_, b.rows_.begin(),
        b.rows_.begin() + b.n_);
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
    for (std::size_t i = 0; i < n_; ++i) {
      h ^= rows_[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  std::uint8_t n_ = 0;
  std::array<Word, kMaxN> rows_{};
};

/// A binary relation with no zero row and no zero column.
class Multipermutation {
 public:
  Multipermutation() = default;

  explicit Multipermutation(const BinaryRelation& rel) : rel_(rel) {
    if (!rel.is_multipermutation()) {
      throw InvalidArgument("relation has a zero row or a zero column");
    }
  }

  static std::optional<Multipermutation> from(const BinaryRelation& rel) {
    if (!rel.is_multipermutation()) return std::nullopt;
    return Multipermutation(rel, Unchecked{});
  }

  static Multipermutation identity(std::size_t n) {
    return Multipermutation(BinaryRelation::identity(n), Unchecked{});
  }

  static Multipermutation full(std::size_t n) {
    return Multipermutation(BinaryRelation::full(n), Unchecked{});
  }

  /// Skips the invariant check; for results that satisfy it by construction.
  static Multipermutation trusted(const BinaryRelation& rel) {
    return Multipermutation(rel, Unchecked{});
  }

  const BinaryRelation& relation() const noexcept { return rel_; }
  operator const BinaryRelation&() const noexcept { return rel_; }

  std::size_t size() const noexcept { return rel_.size(); }
  Word row_bits(std::size_t i) const noexcept { return rel_.row_bits(i); }
  BoolVec row(std::size_t i) const { return rel_.row(i); }
  bool test(std::size_t i, std::size_t j) const noexcept {
    return rel_.test(i, j);
  }
  bool is_permutation() const noexcept { return rel_.is_permutation(); }
  std::uint64_t pack() const { return rel_.pack(); }

  friend bool operator==(const Multipermutation&,
                         const Multipermutation&) = default;
  friend std::strong_ordering operator<=>(const Multipermutation& a,
                                          const Multipermutation& b) {
    return a.rel_ <=> b.rel_;
  }

 private:
  struct Unchecked {};
  Multipermutation(const BinaryRelation& rel, Unchecked) : rel_(rel) {}

  BinaryRelation rel_;
};

// ---------------------------------------------------------------------------
// Elementwise algebra.  Composition is written left to right: then(a, b)
// applies a first, then b, and equals the boolean matrix product a * b.  The
// hyper-operation notation g o f ("apply f, then g") is then(f, g).
// ---------------------------------------------------------------------------

/// OR of the rows of `rel` selected by `mask`.
inline Word combine_rows(const BinaryRelation& rel, Word mask) noexcept {
  Word out = 0;
  for (; mask != 0; mask &= mask - 1) {
    out |= rel.row_bits(static_cast<std::size_t>(std::countr_zero(mask)));
  }
  return out;
}

inline BinaryRelation then(const BinaryRelation& a, const BinaryRelation& b) {
  require_same_dim(a.size(), b.size());
  BinaryRelation out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.set_row(i, combine_rows(b, a.row_bits(i)));
  }
  return out;
}

inline Multipermutation then(const Multipermutation& a,
                             const Multipermutation& b) {
  return Multipermutation::trusted(then(a.relation(), b.relation()));
}

/// Relational inverse (matrix transpose).
inline BinaryRelation inverse(const BinaryRelation& f) {
  BinaryRelation out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out.set_row(j, f.column_bits(j));
  return out;
}

inline Multipermutation inverse(const Multipermutation& f) {
  return Multipermutation::trusted(inverse(f.relation()));
}

inline BinaryRelation complement(const BinaryRelation& f) {
  BinaryRelation out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out.set_row(i, ~f.row_bits(i));
  return out;
}

/// f <= g entrywise.
inline bool is_sub(const BinaryRelation& f, const BinaryRelation& g) {
  require_same_dim(f.size(), g.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!leq(f.row_bits(i), g.row_bits(i))) return false;
  }
  return true;
}

inline BinaryRelation union_of(const BinaryRelation& f,
                               const BinaryRelation& g) {
  require_same_dim(f.size(), g.size());
  BinaryRelation out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out.set_row(i, f.row_bits(i) | g.row_bits(i));
  }
  return out;
}

inline Multipermutation union_of(const Multipermutation& f,
                                 const Multipermutation& g) {
  return Multipermutation::trusted(union_of(f.relation(), g.relation()));
}

inline BinaryRelation intersection_of(const BinaryRelation& f,
                                      const BinaryRelation& g) {
  require_same_dim(f.size(), g.size());
  BinaryRelation out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out.set_row(i, f.row_bits(i) & g.row_bits(i));
  }
  return out;
}

/// k-fold product; power(f, 0) is the identity.
inline BinaryRelation power(const BinaryRelation& f, std::size_t k) {
  BinaryRelation result = BinaryRelation::identity(f.size());
  BinaryRelation base = f;
  while (k > 0) {
    if (k & 1U) result = then(result, base);
    k >>= 1U;
    if (k > 0) base = then(base, base);
  }
  return result;
}

inline Multipermutation power(const Multipermutation& f, std::size_t k) {
  return Multipermutation::trusted(power(f.relation(), k));
}

inline bool is_symmetric(const BinaryRelation& f) { return f == inverse(f); }

inline bool is_reflexive(const BinaryRelation& f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f.test(i, i)) return false;
  }
  return true;
}

inline bool is_transitive(const BinaryRelation& f) {
  return is_sub(then(f, f), f);
}

/// f f^-1 f <= f.
inline bool is_difunctional(const BinaryRelation& f) {
  return is_sub(then(then(f, inverse(f)), f), f);
}

/// Least symmetric multipermutation containing both arguments, for
/// symmetric reflexive inputs: the n-th power of their union.
inline Multipermutation join(const Multipermutation& f,
                             const Multipermutation& g) {
  require_same_dim(f.size(), g.size());
  for (const auto* x : {&f, &g}) {
    if (!is_symmetric(*x) || !is_reflexive(*x)) {
      throw InvalidArgument("join requires symmetric reflexive arguments");
    }
  }
  Multipermutation h = power(union_of(f, g), f.size());
  if (!is_symmetric(h) || !is_transitive(h)) {
    throw InvariantFalsified("join: n-th power of the union is not an "
                             "equivalence relation");
  }
  return h;
}

/// Perfect matching in the bipartite graph of f (Kuhn's augmenting paths):
/// true iff some permutation is contained in f.
inline bool is_hall(const BinaryRelation& f) {
  const std::size_t n = f.size();
  std::array<int, kMaxN> match_of_col;
  match_of_col.fill(-1);
  std::function<bool(std::size_t, Word&)> augment = [&](std::size_t row,
                                                        Word& seen) {
    for (Word cand = f.row_bits(row) & ~seen; cand != 0; cand &= cand - 1) {
      auto col = static_cast<std::size_t>(std::countr_zero(cand));
      seen |= Word{1} << col;
      if (match_of_col[col] < 0 ||
          augment(static_cast<std::size_t>(match_of_col[col]), seen)) {
        match_of_col[col] = static_cast<int>(row);
        return true;
      }
    }
    return false;
  };
  for (std::size_t row = 0; row < n; ++row) {
    Word seen = 0;
    if (!augment(row, seen)) return false;
  }
  return true;
}

namespace detail {

inline void for_each_submask(Word mask, const std::function<void(Word)>& fn) {
  for (Word sub = mask;; sub = (sub - 1) & mask) {
    fn(sub);
    if (sub == 0) break;
  }
}

}  // namespace detail

/// Every multipermutation f <= g, in canonical order.  g itself is included.
inline std::vector<Multipermutation> sub_multipermutations(
    const Multipermutation& g) {
  const std::size_t n = g.size();
  std::vector<Multipermutation> out;
  BinaryRelation cur(n);
  const Word all = low_mask(n);
  // Rows are chosen first to last; `covered` tracks the union so far.
  std::function<void(std::size_t, Word)> rec = [&](std::size_t i,
                                                   Word covered) {
    if (i == n) {
      if (covered == all) out.push_back(Multipermutation::trusted(cur));
      return;
    }
    // Columns only reachable from rows i.. must still be coverable.
    Word reachable = covered;
    for (std::size_t k = i; k < n; ++k) reachable |= g.row_bits(k);
    if (reachable != all) return;
    detail::for_each_submask(g.row_bits(i), [&](Word sub) {
      if (sub == 0) return;
      cur.set_row(i, sub);
      rec(i + 1, covered | sub);
    });
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace multiperm

template <>
struct std::hash<multiperm::BinaryRelation> {
  std::size_t operator()(const multiperm::BinaryRelation& r) const noexcept {
    return r.hash();
  }
};

template <>
struct std::hash<multiperm::Multipermutation> {
  std::size_t operator()(const multiperm::Multipermutation& r) const noexcept {
    return r.relation().hash();
  }
};

#endif  // MULTIPERM_RELATION_HPP
