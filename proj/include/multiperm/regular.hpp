#ifndef MULTIPERM_REGULAR_HPP
#define MULTIPERM_REGULAR_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "multiperm/errors.hpp"
#include "multiperm/green.hpp"
#include "multiperm/monoid.hpp"
#include "multiperm/relation.hpp"

// Regular elements: a is regular when a x a = a for some x (an inverse).

namespace multiperm {

// --- B_n: Schein's test ----------------------------------------------------

/// (rho^-1 rho^c rho^-1)^c, the largest x with rho x rho <= rho.
inline BinaryRelation schein_residual(const BinaryRelation& rho) {
  BinaryRelation inv = inverse(rho);
  return complement(then(then(inv, complement(rho)), inv));
}

/// rho <= rho K rho, with K the Schein residual.
inline bool schein_regular(const BinaryRelation& rho) {
  return is_sub(rho, then(then(rho, schein_residual(rho)), rho));
}

/// K rho K.  For regular rho this is an inverse and contains every x with
/// rho x rho = rho and x rho x = x.
inline BinaryRelation greatest_inverse(const BinaryRelation& rho) {
  BinaryRelation k = schein_residual(rho);
  return then(then(k, rho), k);
}

/// Every x <= bound with rho x rho = rho, in canonical order.
inline std::vector<BinaryRelation> inverses_below(const BinaryRelation& rho,
                                                  const BinaryRelation& bound) {
  const std::size_t n = rho.size();
  std::vector<BinaryRelation> out;
  BinaryRelation x(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      if (then(then(rho, x), rho) == rho) out.push_back(x);
      return;
    }
    for (Word sub = bound.row_bits(i);; sub = (sub - 1) & bound.row_bits(i)) {
      x.set_row(i, sub);
      rec(i + 1);
      if (sub == 0) break;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

/// All B_n inverses of rho: each lies below the Schein residual.
inline std::vector<BinaryRelation> bn_inverses(const BinaryRelation& rho) {
  return inverses_below(rho, schein_residual(rho));
}

// --- row basis -------------------------------------------------------------

struct RowBasis {
  std::size_t n = 0;
  std::vector<Word> basis;    ///< join-irreducible rows, sorted
  std::vector<Word> row_set;  ///< distinct rows, sorted

  bool equals_row_set() const { return basis == row_set; }
  bool contains(Word v) const {
    return std::binary_search(basis.begin(), basis.end(), v);
  }
};

/// The unique basis b(alpha) of the row space: rows that are not the sum of
/// the rows strictly below them.
inline RowBasis row_basis(const BinaryRelation& alpha) {
  RowBasis rb;
  rb.n = alpha.size();
  std::set<Word> rows(alpha.rows().begin(), alpha.rows().end());
  rb.row_set.assign(rows.begin(), rows.end());
  for (Word r : rows) {
    if (r == 0) continue;
    Word below = 0;
    for (Word s : rows) {
      if (s != r && leq(s, r)) below |= s;
    }
    if (below != r) rb.basis.push_back(r);
  }
  return rb;
}

/// Unit vectors u with: u <= w iff v <= w, for every basis vector w.
inline std::vector<Word> identification_vectors(const BinaryRelation& alpha,
                                                Word v) {
  auto rb = row_basis(alpha);
  if (!rb.contains(v)) {
    throw InvalidArgument("identification_vectors: vector is not in the "
                          "row basis");
  }
  std::vector<Word> out;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    Word u = Word{1} << k;
    bool ok = std::all_of(rb.basis.begin(), rb.basis.end(), [&](Word w) {
      return leq(u, w) == leq(v, w);
    });
    if (ok) out.push_back(u);
  }
  return out;
}

/// Meet, inside the lattice V(alpha), of the row-space vectors above the
/// unit vector t.  Zero when nothing lies above t.
inline Word p_value(const BinaryRelation& alpha, Word t) {
  if (std::popcount(t) != 1 || (t & ~low_mask(alpha.size())) != 0) {
    throw InvalidArgument("p_value: t must have exactly one 1");
  }
  auto space = span_of(row_words(alpha));
  std::vector<Word> above;
  for (Word w : space) {
    if (leq(t, w)) above.push_back(w);
  }
  if (above.empty()) return 0;
  Word meet = 0;
  for (Word z : space) {
    if (std::all_of(above.begin(), above.end(),
                    [z](Word w) { return leq(z, w); })) {
      meet |= z;
    }
  }
  return meet;
}

// --- Kim-Roush style construction -------------------------------------------

struct KimRoushTrace {
  struct BasisEntry {
    Word v = 0;
    std::vector<Word> identification;  ///< I(v)
    std::vector<Word> s_candidates;    ///< row selections summing to v
  };
  struct UnitEntry {
    Word t = 0;
    Word p = 0;      ///< p(t)
    Word b_max = 0;  ///< rows below p(t)
  };
  std::size_t n = 0;
  RowBasis basis;
  std::vector<BasisEntry> entries;
  std::vector<UnitEntry> units;  ///< p(t) for every unit vector t
  std::vector<std::vector<Word>> u_choices;
  std::size_t assembled = 0;
  std::vector<BinaryRelation> emitted;
};

enum class InverseTarget { Multipermutations, BooleanMatrices };

namespace detail {

/// Row selections s (bit i selects row i) with every selected row <= v and
/// the selected rows summing to v.
inline std::vector<Word> s_candidates(const BinaryRelation& alpha, Word v) {
  Word allowed = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (leq(alpha.row_bits(i), v)) allowed |= Word{1} << i;
  }
  std::vector<Word> out;
  for (Word s = allowed;; s = (s - 1) & allowed) {
    if (s != 0 && combine_rows(alpha, s) == v) out.push_back(s);
    if (s == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Word rows_below(const BinaryRelation& alpha, Word p) {
  Word b = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha.row_bits(i) != 0 && leq(alpha.row_bits(i), p)) {
      b |= Word{1} << i;
    }
  }
  return b;
}

inline std::vector<Word> submasks(Word mask, bool with_zero) {
  std::vector<Word> out;
  for (Word s = mask;; s = (s - 1) & mask) {
    if (s != 0 || with_zero) out.push_back(s);
    if (s == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Calls fn on every element of the cartesian product of `choices`.
inline void for_each_choice(const std::vector<std::vector<Word>>& choices,
                            const std::function<void(const std::vector<Word>&)>& fn) {
  std::vector<Word> pick(choices.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == choices.size()) {
      fn(pick);
      return;
    }
    for (Word c : choices[k]) {
      pick[k] = c;
      rec(k + 1);
    }
  };
  rec(0);
}

}  // namespace detail

/// Runs the inverse construction over every admissible choice:
///  1. the row basis b(alpha);
///  2. identification sets I(v);
///  3. one u in I(v) per basis vector v;
///  4. s with selected rows <= v summing to v, placed at the position of u;
///  5. for every remaining unit t, a nonzero b selecting rows <= p(t),
///     placed at the position of t;
/// and keeps the assembled x with alpha x alpha = alpha that lie in the
/// target (multipermutations by default; b may then not be zero).
inline std::vector<BinaryRelation> kim_roush_inverses(
    const BinaryRelation& alpha, KimRoushTrace* trace = nullptr,
    InverseTarget target = InverseTarget::Multipermutations) {
  const std::size_t n = alpha.size();
  const bool bn = target == InverseTarget::BooleanMatrices;
  KimRoushTrace local;
  KimRoushTrace& tr = trace ? *trace : local;
  tr = KimRoushTrace{};
  tr.n = n;
  tr.basis = row_basis(alpha);
  std::vector<std::vector<Word>> u_sets, s_sets;
  for (Word v : tr.basis.basis) {
    KimRoushTrace::BasisEntry e;
    e.v = v;
    e.identification = identification_vectors(alpha, v);
    e.s_candidates = detail::s_candidates(alpha, v);
    u_sets.push_back(e.identification);
    s_sets.push_back(e.s_candidates);
    tr.entries.push_back(std::move(e));
  }
  std::vector<std::vector<Word>> b_sets(n);
  for (std::size_t k = 0; k < n; ++k) {
    Word t = Word{1} << k;
    KimRoushTrace::UnitEntry ue;
    ue.t = t;
    ue.p = p_value(alpha, t);
    ue.b_max = ue.p == 0 ? 0 : detail::rows_below(alpha, ue.p);
    b_sets[k] = detail::submasks(ue.b_max, bn);
    tr.units.push_back(ue);
  }
  std::set<BinaryRelation> found;
  detail::for_each_choice(u_sets, [&](const std::vector<Word>& us) {
    tr.u_choices.push_back(us);
    Word chosen = 0;
    for (Word u : us) chosen |= u;
    std::vector<std::vector<Word>> row_options(n);
    for (std::size_t idx = 0; idx < us.size(); ++idx) {
      row_options[static_cast<std::size_t>(std::countr_zero(us[idx]))] =
          s_sets[idx];
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (!((chosen >> k) & 1U)) row_options[k] = b_sets[k];
    }
    detail::for_each_choice(row_options, [&](const std::vector<Word>& rows) {
      ++tr.assembled;
      BinaryRelation x(n, std::span<const Word>(rows.data(), rows.size()));
      if (!bn && !x.is_multipermutation()) return;
      if (then(then(alpha, x), alpha) == alpha) found.insert(x);
    });
  });
  tr.emitted.assign(found.begin(), found.end());
  return tr.emitted;
}

/// The canonically least multipermutation inverse, if any.
inline std::optional<Multipermutation> kim_roush_inverse(
    const BinaryRelation& alpha) {
  auto all = kim_roush_inverses(alpha);
  if (all.empty()) return std::nullopt;
  return Multipermutation(all.front());
}

enum class RegularityFailure {
  None,
  BasisDiffersFromRowSet,
  EmptyIdentificationSet,
  ZeroPValue,
};

inline std::string to_string(RegularityFailure f) {
  switch (f) {
    case RegularityFailure::None:
      return "none";
    case RegularityFailure::BasisDiffersFromRowSet:
      return "row basis differs from the row set";
    case RegularityFailure::EmptyIdentificationSet:
      return "a basis vector has no identification vector";
    case RegularityFailure::ZeroPValue:
      return "p(t) is zero for an unavoidable unit vector t";
  }
  return "unknown";
}

struct RegularityVerdict {
  bool has_inverse = false;
  RegularityFailure reason = RegularityFailure::None;
  Word witness = 0;  ///< the offending basis vector or unit vector
};

/// Inverse existence in M_n by the row-basis criterion: the basis equals the
/// row set, every basis vector has an identification vector, and some choice
/// of identification vectors leaves only unit vectors t with p(t) != 0.
inline RegularityVerdict has_inverse_in_Mn(const BinaryRelation& alpha) {
  RegularityVerdict verdict;
  auto rb = row_basis(alpha);
  if (!rb.equals_row_set()) {
    verdict.reason = RegularityFailure::BasisDiffersFromRowSet;
    for (Word r : rb.row_set) {
      if (!rb.contains(r)) {
        verdict.witness = r;
        break;
      }
    }
    return verdict;
  }
  std::vector<std::vector<Word>> u_sets;
  for (Word v : rb.basis) {
    auto ids = identification_vectors(alpha, v);
    if (ids.empty()) {
      verdict.reason = RegularityFailure::EmptyIdentificationSet;
      verdict.witness = v;
      return verdict;
    }
    u_sets.push_back(std::move(ids));
  }
  Word zero_p = 0;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (p_value(alpha, Word{1} << k) == 0) zero_p |= Word{1} << k;
  }
  bool found = false;
  detail::for_each_choice(u_sets, [&](const std::vector<Word>& us) {
    Word chosen = 0;
    for (Word u : us) chosen |= u;
    if ((zero_p & ~chosen) == 0) found = true;
  });
  if (!found) {
    verdict.reason = RegularityFailure::ZeroPValue;
    verdict.witness = zero_p & (~zero_p + 1);
    return verdict;
  }
  verdict.has_inverse = true;
  return verdict;
}

/// Every x in `table` with alpha x alpha = alpha.
inline std::vector<Multipermutation> brute_inverses(const BinaryRelation& alpha,
                                                    const MonoidTable& table) {
  require_same_dim(alpha.size(), table.n());
  std::vector<Multipermutation> out;
  for (const auto& x : table) {
    if (then(then(alpha, x.relation()), alpha) == alpha) out.push_back(x);
  }
  return out;
}

}  // namespace multiperm

#endif  // MULTIPERM_REGULAR_HPP
