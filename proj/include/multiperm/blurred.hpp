#ifndef MULTIPERM_BLURRED_HPP
#define MULTIPERM_BLURRED_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "multiperm/errors.hpp"
#include "multiperm/monoid.hpp"
#include "multiperm/notation.hpp"
#include "multiperm/permutation.hpp"
#include "multiperm/relation.hpp"

namespace multiperm {

/// A set partition of [n].  Blocks are kept sorted by least element, so
/// equal partitions compare equal.
class Partition {
 public:
  Partition() = default;

  Partition(std::size_t n, std::vector<Word> blocks) : n_(n) {
    if (n == 0 || n > kMaxN) throw InvalidArgument("partition size out of range");
    Word seen = 0;
    for (Word b : blocks) {
      if (b == 0) throw InvalidArgument("partition has an empty block");
      if ((b & seen) != 0) throw InvalidArgument("partition blocks overlap");
      if ((b & ~low_mask(n)) != 0) {
        throw InvalidArgument("partition block out of range");
      }
      seen |= b;
    }
    if (seen != low_mask(n)) {
      throw InvalidArgument("partition blocks do not cover the domain");
    }
    std::sort(blocks.begin(), blocks.end(), [](Word a, Word b) {
      return std::countr_zero(a) < std::countr_zero(b);
    });
    blocks_ = std::move(blocks);
  }

  static Partition discrete(std::size_t n) {
    std::vector<Word> b;
    for (std::size_t i = 0; i < n; ++i) b.push_back(Word{1} << i);
    return Partition(n, std::move(b));
  }

  static Partition single_block(std::size_t n) {
    return Partition(n, {low_mask(n)});
  }

  /// "{1,3|2,4}" or "{1|234}"; braces optional, digits may run together
  /// when n <= 9.  The domain size is the largest element.
  static Partition parse(const std::string& text) {
    std::string body = detail::trim(text);
    if (!body.empty() && body.front() == '{' && body.back() == '}') {
      body = body.substr(1, body.size() - 2);
    }
    auto parts = detail::split(body, '|');
    std::vector<std::vector<std::size_t>> raw;
    std::size_t n = 0;
    for (const auto& p : parts) {
      std::string blk = detail::trim(p);
      std::vector<std::size_t> items;
      if (blk.find(',') != std::string::npos) {
        for (const auto& it : detail::split(blk, ',')) {
          auto t = detail::trim(it);
          if (t.empty() || !std::all_of(t.begin(), t.end(), ::isdigit)) {
            throw ParseError("bad partition '" + text + "'");
          }
          items.push_back(std::stoul(t));
        }
      } else {
        for (char c : blk) {
          if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw ParseError("bad partition '" + text + "'");
          }
          items.push_back(static_cast<std::size_t>(c - '0'));
        }
      }
      for (auto v : items) {
        if (v == 0 || v > kMaxN) throw ParseError("bad partition '" + text + "'");
        n = std::max(n, v);
      }
      raw.push_back(std::move(items));
    }
    std::vector<Word> blocks;
    for (const auto& items : raw) {
      Word b = 0;
      for (auto v : items) b |= Word{1} << (v - 1);
      blocks.push_back(b);
    }
    try {
      return Partition(n, std::move(blocks));
    } catch (const InvalidArgument& e) {
      throw ParseError(std::string("bad partition: ") + e.what());
    }
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  Word block(std::size_t i) const { return blocks_.at(i); }
  const std::vector<Word>& blocks() const noexcept { return blocks_; }

  std::size_t block_of(std::size_t x) const {
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if ((blocks_[i] >> x) & 1U) return i;
    }
    throw InvalidArgument("element outside partition domain");
  }

  /// Whether every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const {
    for (Word b : blocks_) {
      bool inside = false;
      for (Word c : coarser.blocks_) inside = inside || leq(b, c);
      if (!inside) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (i) s += "|";
      bool first = true;
      for (std::size_t x = 0; x < n_; ++x) {
        if (!((blocks_[i] >> x) & 1U)) continue;
        if (!first) s += ",";
        s += std::to_string(x + 1);
        first = false;
      }
    }
    return s + "}";
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Word> blocks_;
};

/// A permutation of the blocks of a partition.
struct BlurredStructure {
  Partition partition;
  Permutation perm;

  friend bool operator==(const BlurredStructure&,
                         const BlurredStructure&) = default;
};

/// Every x in block i is sent to the whole of block g(i).
inline Multipermutation blur(const Permutation& g, const Partition& p) {
  if (g.size() != p.block_count()) {
    throw InvalidArgument("permutation degree " + std::to_string(g.size()) +
                          " differs from block count " +
                          std::to_string(p.block_count()));
  }
  BinaryRelation out(p.n());
  for (std::size_t i = 0; i < p.block_count(); ++i) {
    Word image = p.block(g(i));
    for (std::size_t x = 0; x < p.n(); ++x) {
      if ((p.block(i) >> x) & 1U) out.set_row(x, image);
    }
  }
  return Multipermutation::trusted(out);
}

inline Multipermutation blur(const BlurredStructure& s) {
  return blur(s.perm, s.partition);
}

/// Reads back the partition and block permutation of a blurred
/// permutation.  Blocks are the classes of elements with equal rows; f is
/// blurred iff every row is one of those classes and distinct classes map to
/// distinct classes.
inline std::optional<BlurredStructure> recognize_blur(
    const BinaryRelation& f) {
  const std::size_t n = f.size();
  std::vector<Word> classes;
  std::vector<Word> class_row;
  for (std::size_t x = 0; x < n; ++x) {
    Word row = f.row_bits(x);
    auto it = std::find(class_row.begin(), class_row.end(), row);
    if (it == class_row.end()) {
      class_row.push_back(row);
      classes.push_back(Word{1} << x);
    } else {
      classes[static_cast<std::size_t>(it - class_row.begin())] |= Word{1} << x;
    }
  }
  // Classes are discovered in order of least element, already canonical.
  std::vector<std::uint8_t> img(classes.size());
  std::vector<bool> hit(classes.size(), false);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto it = std::find(classes.begin(), classes.end(), class_row[i]);
    if (it == classes.end()) return std::nullopt;
    auto j = static_cast<std::size_t>(it - classes.begin());
    if (hit[j]) return std::nullopt;
    hit[j] = true;
    img[i] = static_cast<std::uint8_t>(j);
  }
  return BlurredStructure{Partition(n, classes), Permutation(std::move(img))};
}

inline bool is_blurred(const BinaryRelation& f) {
  return recognize_blur(f).has_value();
}

/// f respects the blurred permutation g when f sends each block of g's
/// partition into a single block, and distinct blocks into distinct blocks.
inline bool respects(const BinaryRelation& f, const BinaryRelation& g) {
  require_same_dim(f.size(), g.size());
  auto gs = recognize_blur(g);
  if (!gs) throw InvalidArgument("respects: second argument is not blurred");
  const Partition& p = gs->partition;
  // Clause (i): a, b in one block with images meeting two blocks.
  for (Word blk : p.blocks()) {
    Word img = combine_rows(f, blk);
    std::size_t touched = 0;
    for (Word c : p.blocks()) touched += (img & c) != 0;
    if (touched > 1) return false;
  }
  // Clause (ii): a, b in distinct blocks with images meeting one block.
  for (std::size_t i = 0; i < p.block_count(); ++i) {
    for (std::size_t j = i + 1; j < p.block_count(); ++j) {
      Word ii = combine_rows(f, p.block(i));
      Word jj = combine_rows(f, p.block(j));
      for (Word c : p.blocks()) {
        if ((ii & c) != 0 && (jj & c) != 0) return false;
      }
    }
  }
  return true;
}

inline constexpr std::size_t kCompletelyRegularCap = 4;

/// Whether some x in `universe` satisfies f x f = f, x f x = x and
/// f x = x f.  `universe` is normally M_n.
inline bool is_completely_regular(const BinaryRelation& f,
                                  std::span<const Multipermutation> universe) {
  const std::size_t n = f.size();
  // Row combinations of f, so that x f is n table lookups.
  std::vector<Word> comb_f(std::size_t{1} << n, 0);
  for (Word m = 1; m < comb_f.size(); ++m) {
    Word low = m & (~m + 1);
    comb_f[m] = comb_f[m ^ low] |
                f.row_bits(static_cast<std::size_t>(std::countr_zero(low)));
  }
  std::array<Word, kMaxN> fx{}, xf{}, fxf{}, xfx{};
  for (const auto& xm : universe) {
    const BinaryRelation& x = xm.relation();
    require_same_dim(n, x.size());
    bool commute = true;
    for (std::size_t i = 0; i < n && commute; ++i) {
      fx[i] = combine_rows(x, f.row_bits(i));
      xf[i] = comb_f[x.row_bits(i)];
      commute = fx[i] == xf[i];
    }
    if (!commute) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      fxf[i] = comb_f[fx[i]];
      ok = fxf[i] == f.row_bits(i);
    }
    if (!ok) continue;
    for (std::size_t i = 0; i < n && ok; ++i) {
      // x f x, row i: rows of x selected by (x f)_i.
      xfx[i] = combine_rows(x, xf[i]);
      ok = xfx[i] == x.row_bits(i);
    }
    if (ok) return true;
  }
  return false;
}

inline bool is_completely_regular(const BinaryRelation& f,
                                  std::size_t cap = kCompletelyRegularCap) {
  require_cap(f.size(), cap, "completely-regular search dimension",
              "--n-cap");
  auto table = enumerate_multipermutations(f.size(), cap);
  return is_completely_regular(f, table.elements());
}

/// A_1 x B_1 u ... u A_k x B_k.
using RiguetForm = std::vector<std::pair<Word, Word>>;

/// Decomposition of a difunctional relation into rectangles: A_i are the
/// classes of equal nonzero rows, B_i the shared row.  nullopt when f is not
/// difunctional.
inline std::optional<RiguetForm> riguet_form(const BinaryRelation& f) {
  if (!is_difunctional(f)) return std::nullopt;
  RiguetForm out;
  for (std::size_t x = 0; x < f.size(); ++x) {
    Word row = f.row_bits(x);
    if (row == 0) continue;
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const auto& ab) { return ab.second == row; });
    if (it == out.end()) {
      out.emplace_back(Word{1} << x, row);
    } else {
      it->first |= Word{1} << x;
    }
  }
  return out;
}

}  // namespace multiperm

#endif  // MULTIPERM_BLURRED_HPP
