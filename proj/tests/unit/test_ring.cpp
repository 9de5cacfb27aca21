#include <doctest.h>

#include <random>

#include "gen.hpp"
#include "lgmf/ring.hpp"

using namespace lgmf;
using lgmf::testing::random_poly;
using lgmf::testing::range;

TEST_CASE("ring: add and mul examples") {
  auto R = RingContext::make({"x", "y"});
  Poly x = Poly::var(R, "x"), y = Poly::var(R, "y");
  CHECK((x + (-x)).is_zero());
  CHECK((x + 1) + x * x == parse_poly("x^2+x+1", R));
  CHECK(Poly(0) + x == x);
  CHECK((x - y) * (x + y) == x * x - y * y);
  CHECK(x * Poly(1) == x);
  CHECK((x * Poly(0)).is_zero());
  CHECK(mul(add(x, y), y) == x * y + y * y);
}

TEST_CASE("ring: partial derivatives") {
  auto R = RingContext::make({"x", "y"});
  Poly x = Poly::var(R, "x"), y = Poly::var(R, "y");
  CHECK(partial_derivative(x.pow(3), R->variable("x")) == 3 * x * x);
  CHECK(partial_derivative(x.pow(3), R->variable("y")).is_zero());
  CHECK(partial_derivative(x * x * y, 0) == 2 * x * y);
}

TEST_CASE("ring: rename and variable-changing maps") {
  auto R = RingContext::doubled({"x1", "x2"});
  Poly x1 = Poly::var(R, "x1"), x2 = Poly::var(R, "x2");
  Poly p1 = Poly::var(R, "x1'"), p2 = Poly::var(R, "x2'");
  PairBlock block = R->primed_pairs();
  CHECK(prime_vars(x1 * x1 * x2, block, {0}) == p1 * p1 * x2);
  CHECK(rename(x1 * x2, {}) == x1 * x2);
  CHECK(prime_vars(x1 + x2, block, {0, 1}) == p1 + p2);
  CHECK(rename(x1 + x2, {{"x1", "x1'"}, {"x2", "x2'"}}) == p1 + p2);
  CHECK_THROWS(rename(x1 + x2, {{"x1", "x2"}}));
  CHECK_THROWS(R->index("q"));

  std::mt19937 rng(11);
  auto S = RingContext::make({"a", "b", "c"});
  for (int t = 0; t < 30; ++t) {
    Poly p = random_poly(rng, S, range(3), 4);
    Poly once = rename(rename(p, {{"a", "b"}, {"b", "c"}, {"c", "a"}}), {{"a", "c"}, {"b", "a"}, {"c", "b"}});
    CHECK(once == p);
  }
}

TEST_CASE("ring: divided differences examples") {
  auto R = RingContext::doubled({"x1", "x2"});
  Poly x1 = Poly::var(R, "x1"), x2 = Poly::var(R, "x2"), p1 = Poly::var(R, "x1'");
  CHECK(divided_difference(x1 * x1, 0) == x1 + p1);
  CHECK(divided_difference(Poly(R, 7), 1).is_zero());
  CHECK(divided_difference(x1 * x2, 1) == p1);
  CHECK_THROWS(divided_difference(x1, 2));
  // sigma(1) = 2: prime x2 first, so the first quotient divides by x2 - x2'
  PairBlock block = R->primed_pairs();
  CHECK(divided_difference_ordered(x1 * x2, block, 0, {1, 0}) == x1);
  CHECK(divided_difference_ordered(Poly(R, 3), block, 1, {1, 0}).is_zero());
}

TEST_CASE("ring: Leibniz, telescoping and diagonal limit on random polynomials") {
  std::mt19937 rng(5);
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    auto R = RingContext::doubled(names);
    PairBlock block = R->primed_pairs();
    auto unprimed = range(n);
    auto all = range(2 * n);
    std::vector<Poly> diag(2 * n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = diag[n + i] = Poly::var(R, i);
    for (int t = 0; t < 40; ++t) {
      Poly f = random_poly(rng, R, all, 4), g = random_poly(rng, R, all, 4);
      Poly tele(R, 0);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> first, upto;
        for (std::size_t k = 0; k < i; ++k) first.push_back(k);
        upto = first;
        upto.push_back(i);
        Poly lhs = divided_difference(f * g, i);
        Poly rhs = divided_difference(f, i) * prime_vars(g, block, upto) +
                   prime_vars(f, block, first) * divided_difference(g, i);
        CHECK(lhs == rhs);
        tele += (Poly::var(R, i) - Poly::var(R, n + i)) * divided_difference(f, i);
      }
      CHECK(tele == f - prime_vars(f, block, unprimed));
      Poly h = random_poly(rng, R, unprimed, 4);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(substitute(divided_difference(h, i), diag, R) == partial_derivative(h, i));
      CHECK(divided_difference_ordered(f, block, n - 1, unprimed) == divided_difference(f, n - 1));
    }
  }
}

TEST_CASE("ring: axioms on random triples") {
  std::mt19937 rng(3);
  auto R = RingContext::make({"x", "y", "z"});
  for (int t = 0; t < 30; ++t) {
    Poly a = random_poly(rng, R, range(3), 3), b = random_poly(rng, R, range(3), 3), c = random_poly(rng, R, range(3), 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) + c == a + (b + c));
  }
}

TEST_CASE("ring: parser") {
  auto R = RingContext::make({"x", "y"});
  Poly x = Poly::var(R, "x"), y = Poly::var(R, "y");
  CHECK(parse_poly("3/2*x^2 - (x+y)*(x-y)", R) == Rational(1, 2) * x * x + y * y);
  CHECK(parse_poly(" - x ^ 3 + y", R) == -x.pow(3) + y);
  CHECK(parse_poly("x/2", R) == Rational(1, 2) * x);
  CHECK(parse_poly("x^2-3*x*y", R).to_string() == "x^2 - 3*x*y");
  try {
    parse_poly("x + q", R, 4, 10);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 14);
  }
  CHECK_THROWS_AS(parse_poly("x +", R), ParseError);
  CHECK_THROWS_AS(parse_poly("x^y", R), ParseError);
  CHECK(to_string(Rational(-3) / 6) == "-1/2");
  CHECK(to_string(Rational(4)) == "4");
}
