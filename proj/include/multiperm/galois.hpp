#ifndef MULTIPERM_GALOIS_HPP
#define MULTIPERM_GALOIS_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "multiperm/dsm.hpp"
#include "multiperm/errors.hpp"
#include "multiperm/monoid.hpp"
#include "multiperm/parallel.hpp"
#include "multiperm/permutation.hpp"
#include "multiperm/relation.hpp"

// Surjective hyper-endomorphisms (shes) of finite structures and the
// relations they preserve.

namespace multiperm {

/// Tuples of length `arity` over {0..n-1}, stored as a bit array indexed by
/// the base-n number whose most significant digit is the first coordinate.
class TupleSet {
 public:
  using Tuple = std::vector<std::uint8_t>;

  static constexpr std::uint64_t kMaxTuples = std::uint64_t{1} << 24;

  TupleSet() = default;

  TupleSet(std::size_t n, std::size_t arity) : n_(n), arity_(arity) {
    if (n == 0 || n > kMaxN) throw InvalidArgument("domain size out of range");
    if (arity == 0) throw InvalidArgument("relation arity must be positive");
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < arity; ++k) {
      total *= n;
      if (total > kMaxTuples) {
        throw CapExceeded("tuple space " + std::to_string(n) + "^" +
                              std::to_string(arity) + " is too large",
                          "--n-cap");
      }
    }
    size_ = total;
    bits_.assign((total + 63) / 64, 0);
  }

  static TupleSet full(std::size_t n, std::size_t arity) {
    TupleSet t(n, arity);
    for (std::uint64_t i = 0; i < t.size_; ++i) t.set_index(i);
    return t;
  }

  /// The relation whose characteristic bits are those of `code`.
  static TupleSet from_code(std::size_t n, std::size_t arity,
                            std::uint64_t code) {
    TupleSet t(n, arity);
    if (t.size_ > 64) throw InvalidArgument("tuple space exceeds 64 entries");
    for (std::uint64_t i = 0; i < t.size_; ++i) {
      if ((code >> i) & 1U) t.set_index(i);
    }
    return t;
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t arity() const noexcept { return arity_; }
  std::uint64_t space() const noexcept { return size_; }

  bool test_index(std::uint64_t i) const {
    return (bits_[i / 64] >> (i % 64)) & 1U;
  }
  void set_index(std::uint64_t i) { bits_[i / 64] |= 1ULL << (i % 64); }

  std::uint64_t index_of(const Tuple& t) const {
    if (t.size() != arity_) throw DimensionMismatch(t.size(), arity_);
    std::uint64_t idx = 0;
    for (auto x : t) {
      if (x >= n_) throw InvalidArgument("tuple entry out of range");
      idx = idx * n_ + x;
    }
    return idx;
  }

  Tuple tuple_at(std::uint64_t idx) const {
    Tuple t(arity_);
    for (std::size_t k = arity_; k-- > 0;) {
      t[k] = static_cast<std::uint8_t>(idx % n_);
      idx /= n_;
    }
    return t;
  }

  bool contains(const Tuple& t) const { return test_index(index_of(t)); }
  void insert(const Tuple& t) { set_index(index_of(t)); }

  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (auto w : bits_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }

  bool empty() const { return count() == 0; }

  /// Tuples in increasing index order.
  std::vector<Tuple> tuples() const {
    std::vector<Tuple> out;
    for (std::uint64_t i = 0; i < size_; ++i) {
      if (test_index(i)) out.push_back(tuple_at(i));
    }
    return out;
  }

  bool is_subset_of(const TupleSet& o) const {
    check(o);
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      if (bits_[w] & ~o.bits_[w]) return false;
    }
    return true;
  }

  TupleSet complement() const {
    TupleSet out(n_, arity_);
    for (std::uint64_t i = 0; i < size_; ++i) {
      if (!test_index(i)) out.set_index(i);
    }
    return out;
  }

  TupleSet& operator|=(const TupleSet& o) {
    check(o);
    for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] |= o.bits_[w];
    return *this;
  }

  friend bool operator==(const TupleSet&, const TupleSet&) = default;
  friend auto operator<=>(const TupleSet&, const TupleSet&) = default;

 private:
  void check(const TupleSet& o) const {
    require_same_dim(n_, o.n_);
    if (arity_ != o.arity_) throw DimensionMismatch(arity_, o.arity_);
  }

  std::size_t n_ = 0;
  std::size_t arity_ = 0;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct NamedRelation {
  std::string name;
  TupleSet tuples;

  friend bool operator==(const NamedRelation&, const NamedRelation&) = default;
};

/// A domain [n] with named relations over it.
class FiniteStructure {
 public:
  FiniteStructure() = default;

  FiniteStructure(std::size_t n, std::vector<NamedRelation> relations)
      : n_(n), relations_(std::move(relations)) {
    if (n == 0 || n > kMaxN) throw InvalidArgument("domain size out of range");
    std::set<std::string> names;
    for (const auto& r : relations_) {
      require_same_dim(n, r.tuples.n());
      if (!names.insert(r.name).second) {
        throw InvalidArgument("duplicate relation name '" + r.name + "'");
      }
    }
  }

  std::size_t n() const noexcept { return n_; }
  const std::vector<NamedRelation>& relations() const noexcept {
    return relations_;
  }

  /// Each relation of *this is contained in the like-named relation of o.
  bool is_substructure_of(const FiniteStructure& o) const {
    if (n_ != o.n_ || relations_.size() != o.relations_.size()) return false;
    for (std::size_t i = 0; i < relations_.size(); ++i) {
      if (relations_[i].name != o.relations_[i].name ||
          !relations_[i].tuples.is_subset_of(o.relations_[i].tuples)) {
        return false;
      }
    }
    return true;
  }

  friend bool operator==(const FiniteStructure&,
                         const FiniteStructure&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<NamedRelation> relations_;
};

/// Union of the boxes f(x_1) x ... x f(x_r) over tuples x of R, computed one
/// coordinate at a time.
inline TupleSet image(const BinaryRelation& f, const TupleSet& r) {
  require_same_dim(f.size(), r.n());
  const std::size_t n = r.n();
  TupleSet cur = r;
  std::uint64_t stride = r.space();
  for (std::size_t k = 0; k < r.arity(); ++k) {
    stride /= n;
    TupleSet next(n, r.arity());
    for (std::uint64_t i = 0; i < cur.space(); ++i) {
      if (!cur.test_index(i)) continue;
      auto d = static_cast<std::size_t>((i / stride) % n);
      std::uint64_t base = i - d * stride;
      for (Word row = f.row_bits(d); row != 0; row &= row - 1) {
        next.set_index(base +
                       static_cast<std::uint64_t>(std::countr_zero(row)) *
                           stride);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

/// Every box f(x_1) x ... x f(x_r), x in R, lies in R.
inline bool preserves(const BinaryRelation& f, const TupleSet& r) {
  return image(f, r).is_subset_of(r);
}

inline bool is_she(const BinaryRelation& f, const FiniteStructure& b) {
  require_same_dim(f.size(), b.n());
  return f.is_multipermutation() &&
         std::all_of(b.relations().begin(), b.relations().end(),
                     [&](const auto& r) { return preserves(f, r.tuples); });
}

inline constexpr std::size_t kSheCap = 4;

/// shE(B), filtered from `table`.  Throws InvariantFalsified if the result
/// is not a DSM.
inline Dsm she_set(const FiniteStructure& b, const MonoidTable& table,
                   std::size_t threads = 0) {
  require_same_dim(b.n(), table.n());
  std::vector<char> keep(table.size(), 0);
  parallel_for(table.size(), threads, [&](std::size_t i) {
    keep[i] = is_she(table[i], b) ? 1 : 0;
  });
  std::vector<Multipermutation> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (keep[i]) out.push_back(table[i]);
  }
  if (auto why = dsm_violation(b.n(), out)) {
    throw InvariantFalsified("she set is not a DSM: " + *why);
  }
  return Dsm(b.n(), std::move(out));
}

inline Dsm she_set(const FiniteStructure& b, std::size_t cap = kSheCap) {
  return she_set(b, enumerate_multipermutations(b.n(), cap));
}

/// Each relation replaced by its complement in [n]^r.
inline FiniteStructure complement_structure(const FiniteStructure& b) {
  std::vector<NamedRelation> rels;
  for (const auto& r : b.relations()) {
    rels.push_back({r.name, r.tuples.complement()});
  }
  return FiniteStructure(b.n(), std::move(rels));
}

/// First f in shE(B) whose inverse is not in shE(B).
inline std::optional<Multipermutation> she_inverse_violation(const Dsm& she) {
  for (const auto& f : she) {
    if (!she.contains(inverse(f))) return f;
  }
  return std::nullopt;
}

inline bool is_she_complementative(const FiniteStructure& b,
                                   std::size_t cap = kSheCap) {
  return !she_inverse_violation(she_set(b, cap)).has_value();
}

// --- witness relations -----------------------------------------------------

inline constexpr std::size_t kWitnessCap = 3;

/// The n^2-ary relation of all codings of members of N: position (i, j),
/// at index i n + j, carries an element of f(i).  `full` marks tuples where
/// each row block (i, 1..n) covers all of f(i) for some f.
struct WitnessRelation {
  TupleSet relation;
  TupleSet full;
};

/// The codings of a single multipermutation.
inline WitnessRelation witness_box(const BinaryRelation& f) {
  const std::size_t n = f.size();
  require_cap(n, kWitnessCap, "witness relation dimension", "--n-cap");
  const std::size_t arity = n * n;
  WitnessRelation w{TupleSet(n, arity), TupleSet(n, arity)};
  TupleSet::Tuple t(arity, 0);
  // Odometer over positions, each ranging over f(i).
  std::vector<std::vector<std::uint8_t>> choices(arity);
  for (std::size_t p = 0; p < arity; ++p) {
    for (std::size_t y : f.row(p / n).support()) {
      choices[p].push_back(static_cast<std::uint8_t>(y));
    }
  }
  std::vector<std::size_t> at(arity, 0);
  for (;;) {
    bool is_full = true;
    for (std::size_t i = 0; i < n; ++i) {
      Word cover = 0;
      for (std::size_t j = 0; j < n; ++j) {
        t[i * n + j] = choices[i * n + j][at[i * n + j]];
        cover |= Word{1} << t[i * n + j];
      }
      is_full = is_full && cover == f.row_bits(i);
    }
    auto idx = w.relation.index_of(t);
    w.relation.set_index(idx);
    if (is_full) w.full.set_index(idx);
    std::size_t p = arity;
    for (;;) {
      if (p == 0) return w;
      --p;
      if (++at[p] < choices[p].size()) break;
      at[p] = 0;
    }
  }
}

inline WitnessRelation witness_relation(const Dsm& m) {
  require_cap(m.n(), kWitnessCap, "witness relation dimension", "--n-cap");
  const std::size_t arity = m.n() * m.n();
  WitnessRelation w{TupleSet(m.n(), arity), TupleSet(m.n(), arity)};
  for (const auto& f : m) {
    auto b = witness_box(f);
    w.relation |= b.relation;
    w.full |= b.full;
  }
  return w;
}

inline FiniteStructure witness_structure(const Dsm& m) {
  return FiniteStructure(m.n(), {{"W", witness_relation(m).relation}});
}

// --- invariant relations ---------------------------------------------------

inline constexpr std::uint64_t kInvariantSpaceCap = 16;

/// Inv(F) restricted to arity r: every R in [n]^r preserved by all of F.
inline std::vector<TupleSet> invariant_relations(
    std::size_t n, const std::vector<Multipermutation>& fs, std::size_t r) {
  for (const auto& f : fs) require_same_dim(n, f.size());
  std::uint64_t space = 1;
  for (std::size_t k = 0; k < r; ++k) {
    space *= n;
    require_cap(space, kInvariantSpaceCap, "tuple space n^r", "--n-cap");
  }
  std::vector<TupleSet> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << space); ++code) {
    auto rel = TupleSet::from_code(n, r, code);
    if (std::all_of(fs.begin(), fs.end(),
                    [&](const auto& f) { return preserves(f, rel); })) {
      out.push_back(std::move(rel));
    }
  }
  return out;
}

// --- permutation groups ----------------------------------------------------

/// The group generated by multipermutations that must all be permutations.
inline std::vector<Permutation> group_closure(
    std::size_t n, const std::vector<Multipermutation>& gens) {
  std::vector<Permutation> ps;
  for (const auto& g : gens) {
    require_same_dim(n, g.size());
    auto p = Permutation::from_relation(g);
    if (!p) throw InvalidArgument(to_string(g) + " is not a permutation");
    ps.push_back(*p);
  }
  return group_closure(n, ps);
}

/// The n-ary relation listing each group element as (g(1), ..., g(n)).
inline TupleSet group_witness(std::size_t n,
                              const std::vector<Permutation>& group) {
  TupleSet t(n, n);
  for (const auto& g : group) {
    require_same_dim(n, g.size());
    TupleSet::Tuple tup(g.images().begin(), g.images().end());
    t.insert(tup);
  }
  return t;
}

/// Permutations of [n] preserving R, sorted.
inline std::vector<Permutation> automorphisms(const TupleSet& r) {
  std::vector<Permutation> out;
  for (const auto& p : all_permutations(r.n())) {
    if (preserves(p.to_multipermutation(), r)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- classifier ------------------------------------------------------------

enum class Complexity { Logspace, PspaceComplete, NotSheComplementative };

inline std::string to_string(Complexity c) {
  switch (c) {
    case Complexity::Logspace:
      return "Logspace";
    case Complexity::PspaceComplete:
      return "PspaceComplete";
    case Complexity::NotSheComplementative:
      return "NotSheComplementative";
  }
  return "?";
}

struct ComplexityVerdict {
  Complexity verdict = Complexity::Logspace;
  std::optional<BpsStructure> bps;        ///< she-complementative case
  std::optional<Multipermutation> offending;  ///< f with f^-1 not a she
  /// Whether the recovered group is all of S_m.
  bool full_symmetric_group = false;
  Dsm she;
};

inline ComplexityVerdict classify(const FiniteStructure& b,
                                  std::size_t cap = kSheCap) {
  ComplexityVerdict v;
  v.she = she_set(b, cap);
  if (auto f = she_inverse_violation(v.she)) {
    v.verdict = Complexity::NotSheComplementative;
    v.offending = *f;
    return v;
  }
  auto bps = is_bps(v.she);
  if (!bps) {
    throw InvariantFalsified("self-inverse she set is not a BPS");
  }
  v.full_symmetric_group = bps->is_full_symmetric_group();
  v.verdict = bps->partition.block_count() == 1 ? Complexity::Logspace
                                                : Complexity::PspaceComplete;
  v.bps = std::move(*bps);
  return v;
}

}  // namespace multiperm

#endif  // MULTIPERM_GALOIS_HPP
