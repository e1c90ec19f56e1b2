#ifndef MULTIPERM_DSM_HPP
#define MULTIPERM_DSM_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "multiperm/blurred.hpp"
#include "multiperm/errors.hpp"
#include "multiperm/monoid.hpp"
#include "multiperm/notation.hpp"
#include "multiperm/permutation.hpp"
#include "multiperm/relation.hpp"

// Down-shop-monoids: sets of multipermutations that contain the identity
// and are closed under composition and under sub-multipermutations.

namespace multiperm {

/// A finite set of multipermutations on [n], kept sorted and duplicate free.
/// The DSM laws are established by the functions that build one; use
/// is_dsm to check an arbitrary set.
class Dsm {
 public:
  Dsm() = default;

  Dsm(std::size_t n, std::vector<Multipermutation> elements) : n_(n) {
    for (const auto& f : elements) require_same_dim(n, f.size());
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()),
                   elements.end());
    elements_ = std::move(elements);
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Multipermutation>& elements() const noexcept {
    return elements_;
  }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  bool contains(const BinaryRelation& f) const {
    return f.is_multipermutation() &&
           std::binary_search(elements_.begin(), elements_.end(),
                              Multipermutation::trusted(f));
  }

  bool is_subset_of(const Dsm& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(),
                         elements_.begin(), elements_.end());
  }

  bool all_permutations() const {
    return std::all_of(elements_.begin(), elements_.end(),
                       [](const auto& f) { return f.is_permutation(); });
  }

  friend bool operator==(const Dsm&, const Dsm&) = default;

  /// Size first, then element lists lexicographically.
  friend bool operator<(const Dsm& a, const Dsm& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements_ < b.elements_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Multipermutation> elements_;
};

/// Which DSM law, if any, a set of multipermutations violates.
inline std::optional<std::string> dsm_violation(
    std::size_t n, const std::vector<Multipermutation>& elements) {
  std::unordered_set<BinaryRelation> set;
  for (const auto& f : elements) {
    require_same_dim(n, f.size());
    set.insert(f.relation());
  }
  if (!set.contains(BinaryRelation::identity(n))) return "missing identity";
  for (const auto& f : elements) {
    for (const auto& g : elements) {
      if (!set.contains(then(f.relation(), g.relation()))) {
        return "not closed under composition: " + to_string(f) + " then " +
               to_string(g);
      }
    }
  }
  for (const auto& f : elements) {
    for (const auto& s : sub_multipermutations(f)) {
      if (!set.contains(s.relation())) {
        return "not down-closed: " + to_string(s) + " <= " + to_string(f);
      }
    }
  }
  return std::nullopt;
}

inline bool is_dsm(std::size_t n,
                   const std::vector<Multipermutation>& elements) {
  return !dsm_violation(n, elements).has_value();
}

/// Least DSM containing `gens`: a worklist alternating sub-multipermutation
/// and two-sided product closure until nothing new appears.
inline Dsm dsm_closure(std::size_t n,
                       const std::vector<Multipermutation>& gens) {
  for (const auto& g : gens) require_same_dim(n, g.size());
  std::unordered_set<BinaryRelation> seen;
  std::vector<Multipermutation> members;
  std::vector<Multipermutation> work;
  auto add = [&](const Multipermutation& f) {
    if (seen.insert(f.relation()).second) {
      members.push_back(f);
      work.push_back(f);
    }
  };
  add(Multipermutation::identity(n));
  for (const auto& g : gens) add(g);
  while (!work.empty()) {
    Multipermutation x = work.back();
    work.pop_back();
    for (const auto& s : sub_multipermutations(x)) add(s);
    // members may grow while we iterate; index rather than iterate.
    for (std::size_t k = 0; k < members.size(); ++k) {
      Multipermutation y = members[k];
      add(then(x, y));
      add(then(y, x));
    }
  }
  return Dsm(n, std::move(members));
}

/// {f^-1 : f in M}.
inline Dsm dsm_inverse(const Dsm& m) {
  std::vector<Multipermutation> out;
  out.reserve(m.size());
  for (const auto& f : m) out.push_back(inverse(f));
  return Dsm(m.n(), std::move(out));
}

/// Renames every domain element x to p(x).
inline BinaryRelation relabel(const BinaryRelation& f, const Permutation& p) {
  require_same_dim(f.size(), p.size());
  BinaryRelation out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (f.test(i, j)) out.set(p(i), p(j));
    }
  }
  return out;
}

inline Dsm relabel(const Dsm& m, const Permutation& p) {
  require_same_dim(m.n(), p.size());
  std::vector<Multipermutation> out;
  for (const auto& f : m) {
    out.push_back(Multipermutation::trusted(relabel(f.relation(), p)));
  }
  return Dsm(m.n(), std::move(out));
}

/// The unique maximal reflexive symmetric member.  Throws
/// InvariantFalsified if it is not unique or not blurred.
inline Multipermutation maximal_reflexive_symmetric(const Dsm& m) {
  std::vector<Multipermutation> cands;
  for (const auto& f : m) {
    if (is_reflexive(f) && is_symmetric(f)) cands.push_back(f);
  }
  std::vector<Multipermutation> maximal;
  for (const auto& f : cands) {
    bool dominated = std::any_of(cands.begin(), cands.end(), [&](const auto& g) {
      return g != f && is_sub(f, g);
    });
    if (!dominated) maximal.push_back(f);
  }
  if (maximal.size() != 1) {
    throw InvariantFalsified(
        "DSM has " + std::to_string(maximal.size()) +
        " maximal reflexive symmetric elements");
  }
  if (!is_blurred(maximal.front())) {
    throw InvariantFalsified("maximal reflexive symmetric element " +
                             to_string(maximal.front()) + " is not blurred");
  }
  return maximal.front();
}

// --- blurred permutation subgroups -----------------------------------------

/// A partition of [n] and a permutation group acting on its blocks.
struct BpsStructure {
  Partition partition;
  std::vector<Permutation> group;  ///< sorted

  bool is_full_symmetric_group() const {
    std::size_t fact = 1;
    for (std::size_t k = 2; k <= partition.block_count(); ++k) fact *= k;
    return group.size() == fact;
  }

  friend bool operator==(const BpsStructure&, const BpsStructure&) = default;
};

inline bool is_closed_group(std::size_t m,
                            const std::vector<Permutation>& group) {
  if (std::find(group.begin(), group.end(), Permutation::identity(m)) ==
      group.end()) {
    return false;
  }
  for (const auto& g : group) {
    if (g.size() != m) return false;
    for (const auto& h : group) {
      if (std::find(group.begin(), group.end(), then(g, h)) == group.end()) {
        return false;
      }
    }
  }
  return true;
}

/// Down-closure of the blurrings of every group element.
inline Dsm bps_construct(const BpsStructure& b) {
  const std::size_t m = b.partition.block_count();
  if (b.group.empty() || !is_closed_group(m, b.group)) {
    throw InvalidArgument("BPS group is not a permutation group on the "
                          "blocks");
  }
  std::set<Multipermutation> out;
  for (const auto& g : b.group) {
    for (const auto& s : sub_multipermutations(blur(g, b.partition))) {
      out.insert(s);
    }
  }
  Dsm d(b.partition.n(), {out.begin(), out.end()});
  if (auto why = dsm_violation(d.n(), d.elements())) {
    throw InvariantFalsified("BPS construction is not a DSM: " + *why);
  }
  return d;
}

/// For a self-inverse DSM, the partition of its maximal reflexive symmetric
/// element and the block permutations of its blurred members.  nullopt
/// when M differs from its inverse.  Throws InvariantFalsified when the
/// recovered structure does not rebuild M.
inline std::optional<BpsStructure> is_bps(const Dsm& m) {
  if (dsm_inverse(m) != m) return std::nullopt;
  auto g = maximal_reflexive_symmetric(m);
  BpsStructure b;
  b.partition = recognize_blur(g)->partition;
  std::set<Permutation> group;
  for (const auto& f : m) {
    auto s = recognize_blur(f);
    if (s && s->partition == b.partition) group.insert(s->perm);
  }
  b.group.assign(group.begin(), group.end());
  if (!is_closed_group(b.partition.block_count(), b.group)) {
    throw InvariantFalsified("block permutations of a self-inverse DSM do "
                             "not form a group");
  }
  if (bps_construct(b) != m) {
    throw InvariantFalsified("self-inverse DSM is not the BPS of its "
                             "recovered structure");
  }
  return b;
}

// --- the lattice F_n -------------------------------------------------------

struct DsmLattice {
  std::size_t n = 0;
  std::vector<Dsm> dsms;  ///< sorted: size, then element lists
  std::vector<std::pair<std::size_t, std::size_t>> hasse;  ///< (lower, upper)
};

inline constexpr std::size_t kLatticeCap = 3;

namespace detail {

/// M_n with a product table, for closure over index bitsets.
class IndexedMonoid {
 public:
  explicit IndexedMonoid(const MonoidTable& table) : table_(table) {
    const std::size_t sz = table.size();
    words_ = (sz + 63) / 64;
    prod_.resize(sz * sz);
    for (std::size_t i = 0; i < sz; ++i) {
      for (std::size_t j = 0; j < sz; ++j) {
        prod_[i * sz + j] = static_cast<std::uint32_t>(
            *table.find(then(table[i].relation(), table[j].relation())));
      }
    }
    subs_.resize(sz);
    for (std::size_t i = 0; i < sz; ++i) {
      for (const auto& s : sub_multipermutations(table[i])) {
        subs_[i].push_back(static_cast<std::uint32_t>(*table.find(s)));
      }
    }
    identity_ = *table.find(BinaryRelation::identity(table.n()));
  }

  using Bits = std::vector<std::uint64_t>;

  std::size_t size() const { return table_.size(); }
  Bits empty() const { return Bits(words_, 0); }
  std::size_t identity() const { return identity_; }

  static bool test(const Bits& b, std::size_t i) {
    return (b[i / 64] >> (i % 64)) & 1U;
  }
  static void set(Bits& b, std::size_t i) { b[i / 64] |= 1ULL << (i % 64); }

  /// Closes `base` (already a DSM, or empty) after adding `extra`.
  Bits close(Bits base, const std::vector<std::size_t>& extra) const {
    Bits more = empty();
    set(more, identity_);
    for (auto e : extra) set(more, e);
    return close_union(std::move(base), more);
  }

  /// Closure of the union of a DSM (or empty) with another index set.
  Bits close_union(Bits base, const Bits& more) const {
    const std::size_t sz = size();
    std::vector<std::uint32_t> members;
    for (std::size_t i = 0; i < sz; ++i) {
      if (test(base, i)) members.push_back(static_cast<std::uint32_t>(i));
    }
    std::vector<std::uint32_t> work;
    auto add = [&](std::uint32_t x) {
      if (!test(base, x)) {
        set(base, x);
        members.push_back(x);
        work.push_back(x);
      }
    };
    for (std::size_t i = 0; i < sz; ++i) {
      if (test(more, i)) add(static_cast<std::uint32_t>(i));
    }
    while (!work.empty()) {
      auto x = work.back();
      work.pop_back();
      for (auto s : subs_[x]) add(s);
      for (std::size_t k = 0; k < members.size(); ++k) {
        auto y = members[k];
        add(prod_[x * sz + y]);
        add(prod_[y * sz + x]);
      }
    }
    return base;
  }

  Dsm to_dsm(const Bits& b) const {
    std::vector<Multipermutation> el;
    for (std::size_t i = 0; i < size(); ++i) {
      if (test(b, i)) el.push_back(table_[i]);
    }
    return Dsm(table_.n(), std::move(el));
  }

 private:
  const MonoidTable& table_;
  std::size_t words_ = 0;
  std::vector<std::uint32_t> prod_;
  std::vector<std::vector<std::uint32_t>> subs_;
  std::size_t identity_ = 0;
};

inline std::vector<std::pair<std::size_t, std::size_t>> covering_pairs(
    const std::vector<Dsm>& dsms) {
  const std::size_t k = dsms.size();
  std::vector<std::vector<bool>> below(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      below[i][j] = i != j && dsms[i].size() < dsms[j].size() &&
                    dsms[i].is_subset_of(dsms[j]);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!below[i][j]) continue;
      bool covered = true;
      for (std::size_t m = 0; m < k && covered; ++m) {
        if (below[i][m] && below[m][j]) covered = false;
      }
      if (covered) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace detail

/// Every DSM over [n]: starting from {id}, close each known DSM together
/// with one more multipermutation until no new DSM appears.
inline DsmLattice enumerate_lattice(std::size_t n, bool force = false) {
  if (!force) require_cap(n, kLatticeCap, "lattice dimension", "--force");
  auto table = enumerate_multipermutations(n, force ? n : kDefaultMonoidCap);
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<std::vector<std::uint64_t>> found;
  if (n <= 3) {
    detail::IndexedMonoid im(table);
    // Adding x is the same as adding its principal DSM, so only distinct
    // principal DSMs are tried.
    std::set<std::vector<std::uint64_t>> principal;
    for (std::size_t x = 0; x < im.size(); ++x) {
      principal.insert(im.close(im.empty(), {x}));
    }
    auto contains_all = [](const auto& big, const auto& small) {
      for (std::size_t w = 0; w < big.size(); ++w) {
        if (small[w] & ~big[w]) return false;
      }
      return true;
    };
    auto bottom = im.close(im.empty(), {});
    std::vector<std::vector<std::uint64_t>> work{bottom};
    seen.insert(bottom);
    while (!work.empty()) {
      auto c = work.back();
      work.pop_back();
      found.push_back(c);
      for (const auto& p : principal) {
        if (contains_all(c, p)) continue;
        auto d = im.close_union(c, p);
        if (seen.insert(d).second) work.push_back(std::move(d));
      }
    }
    DsmLattice lat;
    lat.n = n;
    for (const auto& b : found) lat.dsms.push_back(im.to_dsm(b));
    std::sort(lat.dsms.begin(), lat.dsms.end());
    lat.hasse = detail::covering_pairs(lat.dsms);
    return lat;
  }
  // Larger n: product table would be too big; close on values directly.
  std::set<Dsm> all;
  std::vector<Dsm> work{dsm_closure(n, {})};
  all.insert(work.front());
  while (!work.empty()) {
    Dsm c = work.back();
    work.pop_back();
    for (const auto& x : table) {
      if (c.contains(x)) continue;
      std::vector<Multipermutation> gens = c.elements();
      gens.push_back(x);
      Dsm d = dsm_closure(n, gens);
      if (all.insert(d).second) work.push_back(std::move(d));
    }
  }
  DsmLattice lat;
  lat.n = n;
  lat.dsms.assign(all.begin(), all.end());
  lat.hasse = detail::covering_pairs(lat.dsms);
  return lat;
}

/// A short generating list for a DSM: its maximal elements, with any that
/// the others already generate removed.
inline std::vector<Multipermutation> dsm_generators(const Dsm& m) {
  std::vector<Multipermutation> gens;
  for (const auto& f : m) {
    bool dominated = std::any_of(m.begin(), m.end(), [&](const auto& g) {
      return g != f && is_sub(f, g);
    });
    if (!dominated) gens.push_back(f);
  }
  for (std::size_t i = gens.size(); i-- > 0;) {
    std::vector<Multipermutation> rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (!rest.empty() && dsm_closure(m.n(), rest) == m) gens = std::move(rest);
  }
  return gens;
}

/// Hasse diagram in DOT; nodes are labelled with generators ("<f, g>") or,
/// with `counts`, with element counts.
inline std::string lattice_to_dot(const DsmLattice& lat, bool counts = false) {
  std::ostringstream out;
  out << "digraph F" << lat.n << " {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < lat.dsms.size(); ++i) {
    std::string label;
    if (counts) {
      label = std::to_string(lat.dsms[i].size());
    } else {
      label = "<";
      auto gens = dsm_generators(lat.dsms[i]);
      for (std::size_t k = 0; k < gens.size(); ++k) {
        if (k) label += ", ";
        label += to_string(gens[k]);
      }
      label += ">";
    }
    out << "  d" << i << " [label=\"" << label << "\"];\n";
  }
  for (auto [lo, hi] : lat.hasse) {
    out << "  d" << lo << " -> d" << hi << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace multiperm

#endif  // MULTIPERM_DSM_HPP
