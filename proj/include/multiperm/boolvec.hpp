#ifndef MULTIPERM_BOOLVEC_HPP
#define MULTIPERM_BOOLVEC_HPP

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "multiperm/errors.hpp"

#ifndef MULTIPERM_MAX_N
#define MULTIPERM_MAX_N 16
#endif

namespace multiperm {

/// Largest supported domain size.  Rows and columns are stored as single
/// machine words, so this may not exceed 32.
inline constexpr std::size_t kMaxN = MULTIPERM_MAX_N;
static_assert(kMaxN >= 1 && kMaxN <= 32);

/// One row (or column) of a boolean matrix: bit j is coordinate j + 1.
using Word = std::uint32_t;

inline constexpr Word low_mask(std::size_t n) {
  return n >= 32 ? ~Word{0} : ((Word{1} << n) - 1);
}

/// A 0/1 vector of length n, ordered coordinatewise and added with OR.
class BoolVec {
 public:
  BoolVec() = default;

  explicit BoolVec(std::size_t n, Word bits = 0)
      : n_(static_cast<std::uint8_t>(n)), bits_(bits & low_mask(n)) {
    if (n == 0 || n > kMaxN) {
      throw InvalidArgument("vector dimension " + std::to_string(n) +
                            " out of range");
    }
  }

  static BoolVec unit(std::size_t n, std::size_t i) {
    return BoolVec(n, Word{1} << i);
  }

  std::size_t size() const noexcept { return n_; }
  Word bits() const noexcept { return bits_; }
  bool test(std::size_t i) const noexcept { return (bits_ >> i) & 1U; }
  bool is_zero() const noexcept { return bits_ == 0; }
  std::size_t count() const noexcept { return std::popcount(bits_); }

  /// Positions (0-based) holding a 1.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (Word b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
  }

  BoolVec operator+(const BoolVec& other) const {
    require_same_dim(n_, other.n_);
    return BoolVec(n_, bits_ | other.bits_);
  }

  /// Total order by (dimension, bits); used for sorting only.
  friend auto operator<=>(const BoolVec&, const BoolVec&) = default;

  /// "110" for the vector with ones in coordinates 1 and 2.
  std::string to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) {
      if (test(i)) s[i] = '1';
    }
    return s;
  }

  static BoolVec parse(const std::string& text) {
    if (text.empty() || text.size() > kMaxN) {
      throw ParseError("bad vector '" + text + "'");
    }
    Word bits = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') {
        bits |= Word{1} << i;
      } else if (text[i] != '0') {
        throw ParseError("bad vector '" + text + "'");
      }
    }
    return BoolVec(text.size(), bits);
  }

 private:
  std::uint8_t n_ = 0;
  Word bits_ = 0;
};

/// Coordinatewise order: every 1 of u is a 1 of v.
inline bool leq(const BoolVec& u, const BoolVec& v) {
  require_same_dim(u.size(), v.size());
  return (u.bits() & ~v.bits()) == 0;
}

inline bool leq(Word u, Word v) noexcept { return (u & ~v) == 0; }

}  // namespace multiperm

#endif  // MULTIPERM_BOOLVEC_HPP
