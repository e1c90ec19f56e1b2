#ifndef MULTIPERM_TESTS_SUPPORT_HPP
#define MULTIPERM_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "multiperm.hpp"

namespace testing_support {

using namespace multiperm;

/// Parses pipe notation; shorthand for tests.
inline BinaryRelation R(const char* text) { return parse_relation(text); }
inline Multipermutation M(const char* text) {
  return parse_multipermutation(text);
}

/// Entry-by-entry boolean matrix product with no bit tricks.
inline BinaryRelation naive_product(const BinaryRelation& a,
                                    const BinaryRelation& b) {
  const std::size_t n = a.size();
  BinaryRelation out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      bool v = false;
      for (std::size_t j = 0; j < n; ++j) v = v || (a.test(i, j) && b.test(j, k));
      if (v) out.set(i, k);
    }
  }
  return out;
}

/// Every n x n boolean matrix (n <= 4).
inline std::vector<BinaryRelation> all_relations(std::size_t n) {
  std::vector<BinaryRelation> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * n)); ++code) {
    BinaryRelation r(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if ((code >> (i * n + j)) & 1U) r.set(i, j);
      }
    }
    out.push_back(r);
  }
  return out;
}

/// Matrices filtered by the row and column conditions, checked entrywise.
inline std::vector<BinaryRelation> filtered_multipermutations(std::size_t n) {
  std::vector<BinaryRelation> out;
  for (const auto& r : all_relations(n)) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      bool row = false, col = false;
      for (std::size_t j = 0; j < n; ++j) {
        row = row || r.test(i, j);
        col = col || r.test(j, i);
      }
      ok = row && col;
    }
    if (ok) out.push_back(r);
  }
  return out;
}

inline Multipermutation random_multipermutation(std::size_t n,
                                                std::mt19937_64& rng,
                                                double density = 0.35) {
  std::bernoulli_distribution bit(density);
  for (;;) {
    BinaryRelation r(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (bit(rng)) r.set(i, j);
      }
    }
    if (r.is_multipermutation()) return Multipermutation(r);
  }
}

inline BinaryRelation random_relation(std::size_t n, std::mt19937_64& rng,
                                      double density = 0.4) {
  std::bernoulli_distribution bit(density);
  BinaryRelation r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (bit(rng)) r.set(i, j);
    }
  }
  return r;
}

/// Random symmetric reflexive multipermutation.
inline Multipermutation random_symref(std::size_t n, std::mt19937_64& rng,
                                      double density = 0.3) {
  std::bernoulli_distribution bit(density);
  BinaryRelation r = BinaryRelation::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (bit(rng)) {
        r.set(i, j);
        r.set(j, i);
      }
    }
  }
  return Multipermutation(r);
}

inline Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint8_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<std::uint8_t>(i);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

/// Random set partition of [n].
inline Partition random_partition(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<Word> blocks(n, 0);
  for (std::size_t x = 0; x < n; ++x) blocks[pick(rng)] |= Word{1} << x;
  std::vector<Word> nonempty;
  for (Word b : blocks) {
    if (b) nonempty.push_back(b);
  }
  return Partition(n, nonempty);
}

/// Every set partition of [n], by restricted growth strings.
inline std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<Partition> out;
  std::vector<std::size_t> a(n, 0);
  for (;;) {
    std::size_t m = *std::max_element(a.begin(), a.end()) + 1;
    std::vector<Word> blocks(m, 0);
    for (std::size_t x = 0; x < n; ++x) blocks[a[x]] |= Word{1} << x;
    out.emplace_back(n, blocks);
    std::size_t i = n;
    for (;;) {
      if (i <= 1) return out;
      --i;
      std::size_t mx = 0;
      for (std::size_t k = 0; k < i; ++k) mx = std::max(mx, a[k]);
      if (a[i] <= mx) {
        ++a[i];
        for (std::size_t k = i + 1; k < n; ++k) a[k] = 0;
        break;
      }
    }
  }
}

}  // namespace testing_support

#endif  // MULTIPERM_TESTS_SUPPORT_HPP
