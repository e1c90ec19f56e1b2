#include <catch_amalgamated.hpp>

#include <set>

#include "support.hpp"

using namespace multiperm;
using testing_support::M;
using testing_support::R;

TEST_CASE("monoid sizes two ways", "[monoid]") {
  CHECK(multipermutation_count(1) == 1);
  CHECK(multipermutation_count(2) == 7);
  CHECK(multipermutation_count(3) == 265);
  CHECK(multipermutation_count(4) == 41503);
  for (std::size_t n = 1; n <= 4; ++n) {
    auto table = enumerate_multipermutations(n);
    auto filtered = testing_support::filtered_multipermutations(n);
    CHECK(table.size() == filtered.size());
    CHECK(table.size() == multipermutation_count(n));
    std::set<BinaryRelation> a(filtered.begin(), filtered.end());
    std::set<BinaryRelation> b;
    for (const auto& f : table) b.insert(f.relation());
    CHECK(a == b);
    CHECK(std::is_sorted(table.begin(), table.end()));
  }
  CHECK_THROWS_AS(enumerate_multipermutations(6), CapExceeded);
  try {
    enumerate_multipermutations(6);
  } catch (const CapExceeded& e) {
    CHECK(e.flag() == "--n-cap");
  }
}

TEST_CASE("monoid table lookup", "[monoid]") {
  auto t = enumerate_multipermutations(3);
  auto i = t.find(R("2|23|1"));
  REQUIRE(i);
  CHECK(t[*i] == M("2|23|1"));
  CHECK_FALSE(t.find(R("2|2|1")));
  CHECK(t.contains(R("123|123|123")));
}

TEST_CASE("closure", "[monoid]") {
  CHECK(closure(3, {}) ==
        std::vector<Multipermutation>{Multipermutation::identity(3)});
  auto s3 = closure(3, {M("2|1|3"), M("2|3|1")});
  CHECK(s3.size() == 6);
  for (const auto& f : s3) CHECK(f.is_permutation());

  std::vector<Multipermutation> m3gens{M("2|1|3"), M("2|3|1"), M("12|23|13"),
                                       M("1|12|3"), M("1|1|23")};
  auto table = enumerate_multipermutations(3);
  auto rep = is_generating_set(table, m3gens);
  CHECK(rep.generates);
  CHECK(rep.closure_size == 265);
  CHECK_FALSE(rep.missing);

  auto s3rep = is_generating_set(table, {M("2|1|3"), M("2|3|1")});
  CHECK_FALSE(s3rep.generates);
  REQUIRE(s3rep.missing);
  CHECK_FALSE(s3rep.missing->is_permutation());

  // Idempotent and extensive; matches a pairwise fixpoint oracle.
  std::mt19937_64 rng(29);
  for (int k = 0; k < 30; ++k) {
    std::vector<Multipermutation> gens;
    for (int g = 0; g < 2; ++g) {
      gens.push_back(testing_support::random_multipermutation(3, rng, 0.4));
    }
    auto cl = closure(3, gens);
    CHECK(closure(3, cl) == cl);
    for (const auto& g : gens) {
      CHECK(std::binary_search(cl.begin(), cl.end(), g));
    }
    std::set<Multipermutation> fix(gens.begin(), gens.end());
    fix.insert(Multipermutation::identity(3));
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<Multipermutation> cur(fix.begin(), fix.end());
      for (const auto& a : cur) {
        for (const auto& b : cur) grew |= fix.insert(then(a, b)).second;
      }
    }
    CHECK(std::vector<Multipermutation>(fix.begin(), fix.end()) == cl);
  }
}

TEST_CASE("M_4 generating set", "[monoid][slow]") {
  std::vector<Multipermutation> gens{
      M("2|1|3|4"),  M("2|3|4|1"),  M("234|12|13|14"), M("14|12|23|34"),
      M("1|12|3|4"), M("1|2|2|34"), M("12|13|23|4")};
  auto rep = is_generating_set(enumerate_multipermutations(4), gens);
  CHECK(rep.generates);
  CHECK(rep.closure_size == 41503);
}

TEST_CASE("left residual", "[monoid]") {
  // Validated against every factorisation at n = 3: whenever some gamma has
  // beta gamma = alpha, the residual also works and lies above gamma.
  auto all = testing_support::all_relations(3);
  std::mt19937_64 rng(31);
  for (int k = 0; k < 40; ++k) {
    auto alpha = testing_support::random_multipermutation(3, rng, 0.5);
    for (const auto& beta : all) {
      auto res = left_residual(beta, alpha);
      CHECK(is_sub(then(beta, res), alpha));
      for (const auto& gamma : all) {
        if (then(beta, gamma) == alpha) {
          CHECK(is_sub(gamma, res));
          CHECK(then(beta, res) == alpha);
        }
      }
    }
  }
}

TEST_CASE("primes at n <= 3", "[monoid]") {
  CHECK(is_prime(M("12|23|13")));
  CHECK_FALSE(is_prime(Multipermutation::identity(3)));
  CHECK_FALSE(is_prime(M("1|12|3")));
  CHECK_THROWS_AS(is_prime(Multipermutation::identity(5)), CapExceeded);

  CHECK(prime_elements(enumerate_multipermutations(2)).empty());

  // Residual method against the naive double loop over all of B_3.
  std::size_t primes_in_bn = 0;
  for (const auto& a : testing_support::all_relations(3)) {
    bool naive = is_prime_naive(a);
    CHECK(is_prime(a) == naive);
    if (naive) {
      ++primes_in_bn;
      CHECK(a.is_multipermutation());
    }
  }
  CHECK(primes_in_bn == 6);

  auto classes = prime_elements(enumerate_multipermutations(3), 1);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].members.size() == 6);
  CHECK(two_sided_canonical(M("12|23|13")) == classes[0].representative);
}

namespace {

bool no_row_or_column_contains_another(const BinaryRelation& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (i == k) continue;
      if (leq(a.row_bits(i), a.row_bits(k))) return false;
      if (leq(a.column_bits(i), a.column_bits(k))) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("primes at n = 4", "[monoid][slow]") {
  auto table = enumerate_multipermutations(4);
  CHECK(is_prime(M("234|12|13|14")));
  CHECK(is_prime(M("14|12|23|34")));
  auto classes = prime_elements(table);
  std::vector<std::string> reps;
  std::size_t total = 0;
  for (const auto& c : classes) {
    reps.push_back(to_string(c.representative));
    total += c.members.size();
    for (const auto& a : c.members) {
      CHECK(no_row_or_column_contains_another(a));
      CHECK_FALSE(has_inverse_in_Mn(a).has_inverse);
      CHECK(two_sided_canonical(a) == c.representative);
    }
  }
  // Three orbits: the two listed matrices and the direct sum of [1] with
  // the M_3 prime.  Frozen from the exact search.
  CHECK(reps == std::vector<std::string>{"1|23|24|34", "12|13|14|234",
                                         "12|13|24|34"});
  CHECK(total == 96 + 96 + 72);
  CHECK(two_sided_canonical(M("234|12|13|14")) == R("12|13|14|234"));
  CHECK(two_sided_canonical(M("14|12|23|34")) == R("12|13|24|34"));
  CHECK(two_sided_canonical(M("12|13|23|4")) == R("1|23|24|34"));
}
