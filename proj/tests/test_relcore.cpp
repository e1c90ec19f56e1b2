#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "support.hpp"

using namespace multiperm;
using testing_support::M;
using testing_support::R;

TEST_CASE("boolvec order and sum", "[relcore]") {
  auto u = BoolVec::parse("100");
  auto v = BoolVec::parse("110");
  CHECK(leq(u, v));
  CHECK_FALSE(leq(v, u));
  CHECK((u + BoolVec::parse("011")).to_string() == "111");
  CHECK(BoolVec::unit(3, 2).to_string() == "001");
  CHECK_THROWS_AS(BoolVec(0, 0), InvalidArgument);
  CHECK_THROWS_AS(leq(u, BoolVec::parse("10")), DimensionMismatch);
}

TEST_CASE("notation round trip", "[relcore]") {
  for (const char* s : {"12|2|13", "1|12", "234|1|1|1", "1"}) {
    CHECK(to_string(R(s)) == s);
  }
  CHECK(R("[12|2|13]") == R("12|2|13"));
  CHECK(to_matrix_string(R("12|2|13")) == "110\n010\n101");
  CHECK(parse_matrix("110\n010\n101") == R("12|2|13"));
  CHECK(parse_matrix("110;010;101") == R("12|2|13"));
  CHECK(to_string(R("3|2|")) == "3|2|");
  CHECK_THROWS_AS(parse_relation("12|4|1"), ParseError);
  CHECK_THROWS_AS(parse_relation("1a|2"), ParseError);
  CHECK_THROWS_AS(parse_multipermutation("1|1"), ParseError);
  CHECK_THROWS_AS(parse_matrix("11\n1"), ParseError);

  // Ten elements switch to commas.
  BinaryRelation big = BinaryRelation::identity(10);
  big.set(0, 9);
  auto text = to_string(big);
  CHECK(text.substr(0, 5) == "1,10|");
  CHECK(parse_relation(text) == big);

  std::mt19937_64 rng(7);
  for (int k = 0; k < 500; ++k) {
    auto f = testing_support::random_multipermutation(1 + k % 12, rng);
    CHECK(parse_multipermutation(to_string(f)) == f);
    CHECK(parse_matrix(to_matrix_string(f)) == f.relation());
  }
}

TEST_CASE("dot export", "[relcore]") {
  CHECK(to_dot(R("12|2")) ==
        "digraph G {\n  1;\n  2;\n  1 -> 1;\n  1 -> 2;\n  2 -> 2;\n}\n");
}

TEST_CASE("composition", "[relcore]") {
  CHECK(then(M("1|12"), M("1|12")) == M("1|12"));
  auto a = R("2|23|1");
  CHECK(then(then(a, R("3|1|12")), a) == a);
  CHECK(then(then(a, R("3|1|2")), a) == a);
  for (const auto& f : enumerate_multipermutations(3)) {
    CHECK(then(Multipermutation::identity(3), f) == f);
    CHECK(then(f, Multipermutation::identity(3)) == f);
  }
  CHECK_THROWS_AS(then(R("1|2"), R("1|2|3")), DimensionMismatch);

  std::mt19937_64 rng(11);
  for (int k = 0; k < 2000; ++k) {
    std::size_t n = 1 + k % 6;
    auto x = testing_support::random_relation(n, rng);
    auto y = testing_support::random_relation(n, rng);
    auto z = testing_support::random_relation(n, rng);
    REQUIRE(then(x, y) == testing_support::naive_product(x, y));
    CHECK(then(then(x, y), z) == then(x, then(y, z)));
    CHECK(inverse(then(x, y)) == then(inverse(y), inverse(x)));
    // Monotone in both arguments.
    auto x2 = union_of(x, testing_support::random_relation(n, rng));
    auto y2 = union_of(y, testing_support::random_relation(n, rng));
    CHECK(is_sub(then(x, y), then(x2, y2)));
    // rho <= rho rho^-1 rho.
    CHECK(is_sub(x, then(then(x, inverse(x)), x)));
    CHECK(is_difunctional(x) == (x == then(then(x, inverse(x)), x)));
  }
  for (int k = 0; k < 2000; ++k) {
    std::size_t n = 1 + k % 6;
    auto f = testing_support::random_multipermutation(n, rng);
    auto g = testing_support::random_multipermutation(n, rng);
    CHECK(then(f, g).relation().is_multipermutation());
    CHECK(inverse(f).relation().is_multipermutation());
  }
}

TEST_CASE("inverse, complement, order, union, power", "[relcore]") {
  CHECK(inverse(M("12|2|3")) == M("1|12|3"));
  CHECK(inverse(inverse(M("12|2|3"))) == M("12|2|3"));
  CHECK(complement(BinaryRelation::full(2)) == BinaryRelation(2));
  CHECK(complement(BinaryRelation::identity(2)) == R("2|1"));
  CHECK(complement(R("12|2|3")) == R("3|13|12"));

  CHECK(is_sub(R("1|2"), R("12|12")));
  CHECK_FALSE(is_sub(R("2|1"), R("1|12")));
  CHECK(is_sub(R("1|2"), R("1|12")));
  CHECK_THROWS_AS(is_sub(R("1|2"), R("1|2|3")), DimensionMismatch);

  CHECK(union_of(M("12|2|3"), M("12|2|3")) == M("12|2|3"));
  CHECK(union_of(M("1|2"), M("2|1")) == M("12|12"));
  CHECK(union_of(M("12|2|3"), M("1|12|3")) == M("12|12|3"));

  CHECK(power(M("2|1"), 2) == Multipermutation::identity(2));
  CHECK(power(M("2|1"), 0) == Multipermutation::identity(2));
  CHECK(power(M("12|2|3"), 1) == M("12|2|3"));
  std::mt19937_64 rng(3);
  for (int k = 0; k < 300; ++k) {
    auto f = testing_support::random_relation(4, rng);
    BinaryRelation acc = BinaryRelation::identity(4);
    for (std::size_t e = 0; e < 9; ++e) {
      CHECK(power(f, e) == acc);
      acc = then(acc, f);
    }
  }
}

TEST_CASE("sub-multipermutations", "[relcore]") {
  CHECK(sub_multipermutations(Multipermutation::identity(3)) ==
        std::vector<Multipermutation>{Multipermutation::identity(3)});
  CHECK(sub_multipermutations(M("12|12")).size() == 7);
  auto s = sub_multipermutations(M("12|2"));
  CHECK(std::find(s.begin(), s.end(), M("1|2")) != s.end());

  // Oracle: every submatrix filtered by the invariants.
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    std::size_t n = 2 + k % 3;
    auto g = testing_support::random_multipermutation(n, rng, 0.5);
    std::vector<Multipermutation> expect;
    for (const auto& r : testing_support::filtered_multipermutations(n)) {
      if (is_sub(r, g)) expect.push_back(Multipermutation(r));
    }
    std::sort(expect.begin(), expect.end());
    CHECK(sub_multipermutations(g) == expect);
  }
}

TEST_CASE("symmetric, reflexive, difunctional, Hall", "[relcore]") {
  CHECK(is_symmetric(M("12|12|3")));
  CHECK(is_symmetric(Multipermutation::identity(4)));
  CHECK(is_symmetric(M("12|1|3")));
  CHECK(is_reflexive(M("12|12|3")));
  CHECK_FALSE(is_reflexive(M("12|1|3")));
  CHECK_FALSE(is_difunctional(M("12|1|3")));
  CHECK(is_difunctional(M("24|13|24|13")));

  CHECK(is_hall(Multipermutation::identity(5)));
  CHECK_FALSE(is_hall(M("123|1|1")));
  CHECK_FALSE(is_hall(R("12|1|1")));

  // Oracle: Hall iff some permutation lies below.
  auto perms = all_permutations(4);
  for (const auto& f : enumerate_multipermutations(4)) {
    bool expect = std::any_of(perms.begin(), perms.end(), [&](const auto& p) {
      return is_sub(p.to_multipermutation(), f);
    });
    REQUIRE(is_hall(f) == expect);
  }
}

TEST_CASE("degenerate n = 1", "[relcore]") {
  auto one = M("1");
  CHECK(one.is_permutation());
  CHECK(is_symmetric(one));
  CHECK(is_difunctional(one));
  CHECK(is_hall(one));
  CHECK(is_blurred(one));
  CHECK(enumerate_multipermutations(1).size() == 1);
}

namespace {

bool symref(const BinaryRelation& f) { return is_symmetric(f) && is_reflexive(f); }

}  // namespace

TEST_CASE("f f^-1 and f^-1 f are symmetric and reflexive", "[relcore][lemma]") {
  for (const auto& f : enumerate_multipermutations(3)) {
    CHECK(symref(then(f, inverse(f))));
    CHECK(symref(then(inverse(f), f)));
  }
  std::mt19937_64 rng(17);
  for (int k = 0; k < 10000; ++k) {
    auto f = testing_support::random_multipermutation(1 + k % 6, rng);
    REQUIRE(symref(then(f, inverse(f))));
    REQUIRE(symref(then(inverse(f), f)));
  }
}

TEST_CASE("join of symmetric reflexive multipermutations", "[relcore][lemma]") {
  CHECK(join(Multipermutation::identity(3), Multipermutation::identity(3)) ==
        Multipermutation::identity(3));
  CHECK(join(M("12|12|3"), M("1|23|23")) == M("123|123|123"));
  CHECK_THROWS_AS(join(M("2|1"), M("1|2")), InvalidArgument);
  CHECK_THROWS_AS(join(M("12|2"), M("1|2")), InvalidArgument);
  CHECK(union_of(M("12|12|3"), M("1|23|23")) != join(M("12|12|3"), M("1|23|23")));

  std::vector<Multipermutation> sr;
  for (const auto& f : enumerate_multipermutations(3)) {
    if (symref(f)) sr.push_back(f);
  }
  for (const auto& f : sr) {
    for (const auto& g : sr) {
      auto u = union_of(f, g);
      auto j = join(f, g);
      CHECK(j == power(u, 3));
      CHECK(power(u, 3) == power(u, 4));
      CHECK(j == power(then(f, g), 3));
      CHECK(j == power(then(g, f), 3));
      // Least equivalence relation above both, by search.  The union is
      // already the least symmetric one, so transitivity is required.
      std::vector<Multipermutation> above;
      for (const auto& h : enumerate_multipermutations(3)) {
        if (is_symmetric(h) && is_transitive(h) && is_sub(f, h) && is_sub(g, h)) {
          above.push_back(h);
        }
      }
      for (const auto& h : above) CHECK(is_sub(j, h));
      CHECK(std::find(above.begin(), above.end(), j) != above.end());
    }
  }
  std::mt19937_64 rng(19);
  for (int k = 0; k < 10000; ++k) {
    std::size_t n = 2 + k % 5;
    auto f = testing_support::random_symref(n, rng);
    auto g = testing_support::random_symref(n, rng);
    auto j = join(f, g);
    REQUIRE(j == power(then(f, g), n));
    REQUIRE(symref(j));
    REQUIRE(is_transitive(j));
    REQUIRE(is_sub(f, j));
    REQUIRE(is_sub(g, j));
  }
}

TEST_CASE("permutations", "[relcore]") {
  auto p = Permutation::parse("(1 2)(3 4)", 4);
  CHECK(p.to_image_string() == "[2,1,4,3]");
  CHECK(Permutation::parse("2 1 3", 3) == Permutation::from_images({2, 1, 3}));
  CHECK(Permutation::parse("2,1,3", 3).to_cycle_string() == "(1 2)");
  CHECK(Permutation::identity(3).to_cycle_string() == "()");
  CHECK_THROWS_AS(Permutation::parse("(1 1)", 3), ParseError);
  CHECK_THROWS_AS(Permutation::from_images({1, 1}), InvalidArgument);
  CHECK(group_closure(3, {Permutation::parse("(1 2)", 3)}).size() == 2);
  CHECK(group_closure(3, {Permutation::parse("(1 2)", 3),
                          Permutation::parse("(1 2 3)", 3)})
            .size() == 6);
  for (const auto& g : all_permutations(4)) {
    for (const auto& h : all_permutations(4)) {
      CHECK(then(g, h).to_multipermutation() ==
            then(g.to_multipermutation(), h.to_multipermutation()));
    }
    CHECK(inverse(g).to_multipermutation() == inverse(g.to_multipermutation()));
  }
}
