#include <catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace multiperm;
using testing_support::M;
using testing_support::R;

namespace {

std::vector<Word> words(std::initializer_list<const char*> vs) {
  std::vector<Word> out;
  for (const char* v : vs) out.push_back(BoolVec::parse(v).bits());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("row and column spaces", "[green]") {
  CHECK(row_space(BinaryRelation::identity(2)).vectors ==
        words({"00", "10", "01", "11"}));
  CHECK(row_space(R("2|23|1")).vectors ==
        words({"000", "010", "011", "100", "110", "111"}));
  CHECK(row_space(R("1|23|123")) == row_space(R("1|23|23")));
  CHECK(col_space(R("2|23|1")) == row_space(inverse(R("2|23|1"))));
  auto rs = row_space(R("2|23|1"));
  for (Word a : rs.vectors) {
    for (Word b : rs.vectors) CHECK(rs.contains(a | b));
  }
}

TEST_CASE("bounded spans", "[green]") {
  CHECK(bounded_span(R("1|1|123")) == words({"100", "111"}));
  CHECK(bounded_span(R("1|123|123")) == words({"100", "111"}));
  CHECK(bounded_span(R("1|23|123")) == words({"100", "011", "111"}));
  CHECK(bounded_span(R("1|23|23")) == words({"100", "011"}));
  CHECK(bounded_span(R("13|1|3|24|135")) == bounded_span(R("1|3|24|24|135")));
}

TEST_CASE("worked examples", "[green]") {
  CHECK(green_L(M("1|1|123"), M("1|123|123")));
  CHECK(green_R(M("1|123|123"), M("12|123|123")));
  CHECK_FALSE(green_L(M("1|23|123"), M("1|23|23")));
  CHECK(green_L(M("13|1|3|24|135"), M("1|3|24|24|135")));
  CHECK(green_H(M("12|2|3"), M("12|2|3")));
  CHECK_THROWS_AS(green_L(M("1|2"), M("1|2|3")), DimensionMismatch);

  // Checked against the oracles as well.
  auto t3 = enumerate_multipermutations(3);
  CHECK(green_L_oracle(M("1|1|123"), M("1|123|123"), t3));
  CHECK(green_R_oracle(M("1|123|123"), M("12|123|123"), t3));
  CHECK_FALSE(green_L_oracle(M("1|23|123"), M("1|23|23"), t3));
  // Equal row spaces: L-related in B_n.
  CHECK(row_space(R("1|23|123")) == row_space(R("1|23|23")));
}

TEST_CASE("characterisation agrees with the search oracles on M_3",
          "[green][slow]") {
  auto t = enumerate_multipermutations(3);
  const std::size_t sz = t.size();
  // Oracle tables: left[a][b] iff some rho has rho a = b.
  std::vector<std::vector<char>> left(sz, std::vector<char>(sz, 0));
  std::vector<std::vector<char>> right(sz, std::vector<char>(sz, 0));
  for (std::size_t a = 0; a < sz; ++a) {
    for (const auto& rho : t) {
      left[a][*t.find(then(rho.relation(), t[a].relation()))] = 1;
      right[a][*t.find(then(t[a].relation(), rho.relation()))] = 1;
    }
  }
  std::size_t mismatches = 0;
  for (std::size_t a = 0; a < sz; ++a) {
    for (std::size_t b = 0; b < sz; ++b) {
      bool lo = left[a][b] && left[b][a];
      bool ro = right[a][b] && right[b][a];
      mismatches += green_L(t[a], t[b]) != lo;
      mismatches += green_R(t[a], t[b]) != ro;
      mismatches += green_H(t[a], t[b]) != (lo && ro);
    }
  }
  CHECK(mismatches == 0);
  // Spot check the literal oracle functions on a sample.
  for (std::size_t a = 0; a < sz; a += 37) {
    for (std::size_t b = 0; b < sz; b += 11) {
      CHECK(green_L_oracle(t[a], t[b], t) == (left[a][b] && left[b][a]));
      CHECK(green_R_oracle(t[a], t[b], t) == (right[a][b] && right[b][a]));
    }
  }
  // M_n-L implies equal row spaces.
  for (std::size_t a = 0; a < sz; ++a) {
    for (std::size_t b = 0; b < sz; ++b) {
      if (green_L(t[a], t[b])) CHECK(row_space(t[a]) == row_space(t[b]));
    }
  }
}

TEST_CASE("classification of M_3", "[green]") {
  auto t = enumerate_multipermutations(3);
  auto g = classify(t);
  CHECK(g.l_count == 45);
  CHECK(g.r_count == 45);
  CHECK(g.h_count == 201);
  CHECK(g.d_count == 13);

  // D = L o R = R o L, computed from the oracle tables.
  const std::size_t sz = t.size();
  for (std::size_t a = 0; a < sz; a += 3) {
    for (std::size_t b = 0; b < sz; ++b) {
      bool lr = false, rl = false;
      for (std::size_t c = 0; c < sz && !(lr && rl); ++c) {
        lr = lr || (g.L[a] == g.L[c] && g.R[c] == g.R[b]);
        rl = rl || (g.R[a] == g.R[c] && g.L[c] == g.L[b]);
      }
      CHECK(lr == rl);
      CHECK((g.D[a] == g.D[b]) == lr);
    }
  }
  CHECK(green_D(M("12|23|13"), M("13|12|23"), t));
  CHECK(green_D_oracle(M("12|23|13"), M("13|12|23"), t));
  CHECK_FALSE(green_D(M("12|23|13"), M("1|2|3"), t));

  // H refines L and R.
  for (std::size_t a = 0; a < sz; ++a) {
    for (std::size_t b = 0; b < sz; ++b) {
      if (g.H[a] == g.H[b]) {
        CHECK(g.L[a] == g.L[b]);
        CHECK(g.R[a] == g.R[b]);
      }
    }
  }

  // The D-class of the prime holds only primes.
  auto p = *t.find(R("12|23|13"));
  for (std::size_t a = 0; a < sz; ++a) {
    if (g.D[a] == g.D[p]) CHECK(is_prime(t[a]));
  }

  // Units form one H-class at n = 2.
  auto t2 = enumerate_multipermutations(2);
  auto g2 = classify(t2);
  CHECK(g2.H[*t2.find(R("1|2"))] == g2.H[*t2.find(R("2|1"))]);
  auto eggs = eggbox(g2);
  std::size_t total = 0;
  for (const auto& e : eggs) total += e.size;
  CHECK(total == 7);
}

TEST_CASE("L right congruence, R left congruence", "[green]") {
  auto t = enumerate_multipermutations(3);
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<std::size_t> pick(0, t.size() - 1);
  int checked = 0;
  for (int k = 0; k < 20000 && checked < 500; ++k) {
    const auto& a = t[pick(rng)];
    const auto& b = t[pick(rng)];
    const auto& c = t[pick(rng)];
    if (green_L(a, b)) {
      ++checked;
      CHECK(green_L(then(a, c), then(b, c)));
    }
    if (green_R(a, b)) CHECK(green_R(then(c, a), then(c, b)));
  }
  CHECK(checked > 0);
}

TEST_CASE("primes of M_4 lie in distinct D-classes", "[green][slow]") {
  auto t = enumerate_multipermutations(4);
  CHECK_FALSE(green_D(M("234|12|13|14"), M("14|12|23|34"), t));
}
