#include <doctest.h>

#include <random>

#include "gen.hpp"
#include "lgmf/ideal.hpp"

using namespace lgmf;
using lgmf::testing::random_poly;
using lgmf::testing::range;

namespace {

Poly reassemble(const Membership& m, const std::vector<Poly>& gens) {
  Poly s = m.remainder;
  for (std::size_t j = 0; j < gens.size(); ++j) s += m.cofactors[j] * gens[j];
  return s;
}

}  // namespace

TEST_CASE("ideal: groebner examples") {
  auto R = RingContext::make({"x", "y"});
  Poly x = Poly::var(R, "x"), y = Poly::var(R, "y");
  auto gb = groebner({x});
  REQUIRE(gb.generators.size() == 1);
  CHECK(gb.generators[0] == x);
  auto gb2 = groebner({3 * x * x, 3 * y * y});
  REQUIRE(gb2.generators.size() == 2);
  CHECK(gb2.generators[0] == y * y);
  CHECK(gb2.generators[1] == x * x);
  CHECK_THROWS(groebner({}));
  for (std::size_t k = 0; k < gb2.generators.size(); ++k) {
    Poly s(R, 0);
    for (std::size_t j = 0; j < 2; ++j) s += gb2.cofactors[k][j] * gb2.original_gens[j];
    CHECK(s == gb2.generators[k]);
  }
}

TEST_CASE("ideal: (y - x^2, x^3) against substitution oracle") {
  auto R = RingContext::make({"x", "y"});
  Poly x = Poly::var(R, "x"), y = Poly::var(R, "y");
  auto gb = groebner({y - x * x, x.pow(3)});
  auto qb = quotient_monomial_basis(gb);
  REQUIRE(qb.finite);
  CHECK(qb.dimension() == 3);
  // oracle: k[x,y]/(y - x^2, x^3) = k[x]/(x^3) via y -> x^2
  auto oracle = [&](const Poly& g) {
    Poly h = substitute(g, 1, x * x);
    Poly r(R, 0);
    for (const auto& [e, c] : h.terms())
      if (e[0] < 3) r.add_term(e, c);
    return r;
  };
  std::mt19937 rng(2);
  for (int t = 0; t < 60; ++t) {
    Poly g = random_poly(rng, R, range(2), 5);
    CHECK(normal_form(g, gb).is_zero() == oracle(g).is_zero());
    CHECK(oracle(normal_form(g, gb)) == oracle(g));
  }
}

TEST_CASE("ideal: normal forms and membership") {
  auto R = RingContext::make({"x", "y"});
  Poly x = Poly::var(R, "x"), y = Poly::var(R, "y");
  auto gx2 = groebner({x * x});
  CHECK(normal_form(x.pow(3), gx2).is_zero());
  CHECK(normal_form(x + 1, gx2) == x + 1);

  auto m = membership_with_cofactors(x * x, {3 * x * x});
  CHECK(m.cofactors[0] == Poly(Rational(1, 3)).with_context(R));
  CHECK(m.remainder.is_zero());
  auto m2 = membership_with_cofactors(x, {x * x});
  CHECK(m2.cofactors[0].is_zero());
  CHECK(m2.remainder == x);
  std::vector<Poly> gens = {2 * x, -2 * y};
  auto m3 = membership_with_cofactors(x * x + y * y, gens);
  CHECK(m3.remainder.is_zero());
  CHECK(m3.cofactors[0] == Rational(1, 2) * x);
  CHECK(m3.cofactors[1] == Rational(-1, 2) * y);

  std::mt19937 rng(9);
  std::vector<std::vector<Poly>> ideals = {
      {3 * x * x, -3 * y * y}, {y - x * x, x.pow(3)}, {x * y - 1, x + y}, {2 * x + y, x}, {x * x * y, y * y}};
  for (const auto& I : ideals) {
    auto gb = groebner(I);
    for (int t = 0; t < 30; ++t) {
      Poly g = random_poly(rng, R, range(2), 5);
      Poly nf = normal_form(g, gb);
      CHECK(normal_form(nf, gb) == nf);
      auto mem = membership_with_cofactors(g, gb);
      CHECK(reassemble(mem, I) == g);
      CHECK(mem.remainder == nf);
      CHECK(nf.is_zero() == membership_with_cofactors(g, I).remainder.is_zero());
      Poly h = random_poly(rng, R, range(2), 3);
      CHECK(normal_form(g + h, gb) == nf + normal_form(h, gb));
    }
  }
}

TEST_CASE("ideal: quotient bases and potentials") {
  auto R1 = RingContext::make({"x"});
  Poly x = Poly::var(R1, "x");
  auto c1 = check_potential(x.pow(3));
  CHECK(c1.is_potential);
  CHECK(c1.jacobi_dimension() == 2);

  auto R = RingContext::make({"x", "y"});
  Poly X = Poly::var(R, "x"), Y = Poly::var(R, "y");
  auto c2 = check_potential(X * Y);
  CHECK(c2.is_potential);
  CHECK(c2.jacobi_dimension() == 1);
  auto c3 = check_potential(X * X * Y);
  CHECK_FALSE(c3.is_potential);
  CHECK_FALSE(c3.witness.empty());
  REQUIRE(c3.basis.unbounded.has_value());
  CHECK(*c3.basis.unbounded == 1);
  auto c4 = check_potential(X.pow(3) - Y.pow(3));
  CHECK(c4.is_potential);
  REQUIRE(c4.jacobi_dimension() == 4);
  std::vector<Exponents> want = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  CHECK(c4.basis.monomials == want);

  std::vector<Poly> pots = {X.pow(3) - Y.pow(3), X * Y, X * X - Y * Y, X.pow(4) + Y.pow(3), X.pow(3) + X * Y * Y};
  for (const auto& W : pots) {
    std::vector<Poly> partials = {partial_derivative(W, 0), partial_derivative(W, 1)};
    auto a = quotient_monomial_basis(groebner(partials, {OrderKind::GradedLex}));
    auto b = quotient_monomial_basis(groebner(partials, {OrderKind::Lex}));
    CHECK(a.finite);
    CHECK(a.dimension() == b.dimension());
  }
}

TEST_CASE("ideal: power membership") {
  auto R1 = RingContext::make({"x"});
  Poly x = Poly::var(R1, "x");
  auto pm = power_membership(0, groebner({3 * x * x}));
  CHECK(pm.exponent == 2);
  CHECK(pm.cofactors[0] == Poly(R1, Rational(1, 3)));

  auto R = RingContext::make({"x", "y"});
  Poly X = Poly::var(R, "x"), Y = Poly::var(R, "y");
  auto pm2 = power_membership(0, groebner({Y, X}));
  CHECK(pm2.exponent == 1);
  CHECK(pm2.cofactors[0].is_zero());
  CHECK(pm2.cofactors[1] == Poly(R, 1));
  // W = x^2 + xy: partials (2x + y, x)
  auto gens = std::vector<Poly>{2 * X + Y, X};
  auto pm3 = power_membership(0, groebner(gens));
  CHECK(pm3.exponent == 1);
  CHECK(pm3.cofactors[0] * gens[0] + pm3.cofactors[1] * gens[1] == X);
  CHECK_THROWS_AS(power_membership(0, groebner({X * X - 1}), 5), CapExceeded);
  auto um = univariate_membership(0, groebner({X * X - 1, Y}));
  CHECK(um.poly == X * X - 1);
}
