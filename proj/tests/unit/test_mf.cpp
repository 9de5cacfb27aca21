#include <doctest.h>

#include <random>

#include "gen.hpp"
#include "lgmf/mf.hpp"

using namespace lgmf;
using lgmf::testing::random_poly;
using lgmf::testing::range;

namespace {

PolyMatrix one(const Poly& p) { return PolyMatrix::from_rows({{p}}); }

PolyMatrix random_graded(std::mt19937& rng, const MatrixFactorisation& X, const MatrixFactorisation& Y, int parity,
                         int degree) {
  PolyMatrix m(Y.rank(), X.rank(), X.ctx);
  for (std::size_t i = 0; i < Y.rank(); ++i)
    for (std::size_t j = 0; j < X.rank(); ++j)
      if ((Y.parity(i) + X.parity(j)) % 2 == parity) m(i, j) = random_poly(rng, X.ctx, range(X.ctx->size()), degree, 3);
  return m;
}

}  // namespace

TEST_CASE("mf: construction and validation") {
  auto R = RingContext::make({"x", "y"});
  Poly x = Poly::var(R, "x"), y = Poly::var(R, "y");
  auto X = new_mf(R, x.pow(3), one(x), one(x * x));
  CHECK(X.is_valid());
  CHECK(X.rank_even() == 1);
  CHECK(X.d0() == one(x));
  CHECK(X.d1() == one(x * x));
  CHECK(new_mf(R, x * y, one(x), one(y)).is_valid());
  try {
    new_mf(R, x.pow(3), one(x), one(x));
    FAIL("expected rejection");
  } catch (const InvalidFactorisation& e) {
    REQUIRE_FALSE(e.offending().empty());
    CHECK(e.offending().front().find("x^2") != std::string::npos);
  }
  CHECK_THROWS_AS(new_mf(R, x, PolyMatrix(2, 1, R), one(x)), InvalidFactorisation);
}

TEST_CASE("mf: dual and shift") {
  auto R = RingContext::make({"x", "y"});
  Poly x = Poly::var(R, "x"), y = Poly::var(R, "y");
  std::vector<MatrixFactorisation> corpus = {
      new_mf(R, x.pow(3), one(x), one(x * x)), new_mf(R, x * y, one(x), one(y)),
      new_mf(R, x * x - y * y, one(x - y), one(x + y)),
      new_mf(R, x.pow(3) - y.pow(3), one(x - y), one(x * x + x * y + y * y)),
      new_mf(R, x.pow(4), one(x * x), one(x * x))};
  for (const auto& X : corpus) {
    if (!X.is_valid()) continue;
    auto D = dual(X);
    CHECK(D.is_valid());
    CHECK(D.potential == -X.potential);
    auto DD = dual(D);
    PolyMatrix P(X.rank(), X.rank(), R);
    for (std::size_t i = 0; i < X.rank(); ++i) P(i, i) = Poly(R, X.parity(i) ? -1 : 1);
    CHECK(P * X.d == DD.d * P);
    CHECK(shift(shift(X, 1), 1).d == X.d);
    CHECK(shift(X, 0).d == X.d);
    CHECK(shift(X, 1).is_valid());
    PolyMatrix id = PolyMatrix::identity(X.rank(), R);
    CHECK(supertrace(shift(X, 1), id) == -supertrace(X, id));
  }
  auto X = corpus[0];
  auto D = dual(X);
  // odd -> even block is d0^T, even -> odd block is -d1^T
  CHECK(D.d1() == X.d0().transpose());
  CHECK(D.d0() == -X.d1().transpose());
}

TEST_CASE("mf: tensor products") {
  auto R = RingContext::make({"x", "y", "z"});
  Poly x = Poly::var(R, "x"), y = Poly::var(R, "y"), z = Poly::var(R, "z");
  auto X = new_mf(R, x.pow(3), one(x), one(x * x));
  auto Y = new_mf(R, y * y - x * x, one(y - x), one(y + x));
  auto T0 = tensor(X, trivial_mf(R));
  CHECK(T0.d == X.d);
  CHECK(T0.basis[0].label == "e0(x)1");
  auto Z = new_mf(R, z.pow(3) - y * y, PolyMatrix::from_rows({{z, y}, {y, z * z}}),
                  PolyMatrix::from_rows({{z * z, -y}, {-y, z}}));
  REQUIRE(Z.is_valid());
  std::vector<std::pair<MatrixFactorisation, MatrixFactorisation>> pairs = {{Y, X}, {Z, Y}, {Z, X}, {X, Z}};
  for (const auto& [A, B] : pairs) {
    auto T = tensor(A, B);
    CHECK(T.potential == A.potential + B.potential);
    CHECK(T.is_valid());
  }
  auto left = tensor(tensor(Z, Y), X), right = tensor(Z, tensor(Y, X));
  CHECK(left.d == right.d);
  CHECK(tensor(Y, X).rank() == 4);
}

TEST_CASE("mf: supertraces") {
  auto R = RingContext::make({"x", "y"});
  Poly x = Poly::var(R, "x"), y = Poly::var(R, "y");
  auto A = new_mf(R, x.pow(3) - y.pow(3), one(x - y), one(x * x + x * y + y * y));
  auto X = tensor(A, new_mf(R, y.pow(3), one(y), one(y * y)));
  REQUIRE(X.is_valid());
  Morphism id{X, X, 0, PolyMatrix::identity(X.rank(), R)};
  CHECK(supertrace(id) == Poly(R, static_cast<long>(X.rank_even()) - static_cast<long>(X.rank_odd())));
  std::mt19937 rng(21);
  for (int t = 0; t < 30; ++t) {
    PolyMatrix a = random_graded(rng, X, X, 1, 3);
    CHECK(supertrace(X, hom_differential(X, X, a, 1)).is_zero());
    int pa = t % 2, pb = t % 2;
    PolyMatrix A = random_graded(rng, X, X, pa, 2), B = random_graded(rng, X, X, pb, 2);
    CHECK(supertrace(X, A * B) == Rational(pa * pb ? -1 : 1) * supertrace(X, B * A));
  }
  CHECK_THROWS(supertrace(Morphism{X, X, 1, PolyMatrix::identity(X.rank(), R)}));
}

TEST_CASE("mf: null-homotopy search") {
  auto R = RingContext::make({"x"});
  Poly x = Poly::var(R, "x");
  auto X = new_mf(R, x.pow(3), one(x), one(x * x));
  auto z = null_homotopy_search(X, X, PolyMatrix(2, 2, R), 0, 3);
  REQUIRE(z.has_value());
  CHECK(z->h.is_zero());

  auto Q = new_mf(R, x * x, one(x), one(x));
  PolyMatrix w = (x * x) * PolyMatrix::identity(2, R);
  auto hq = null_homotopy_search(Q, Q, w, 0, default_degree_bound(Q, Q));
  REQUIRE(hq.has_value());
  CHECK(hom_differential(Q, Q, hq->h, 1) == w);

  PolyMatrix id = PolyMatrix::identity(2, R);
  for (int b = 0; b <= 6; ++b) CHECK_FALSE(null_homotopy_search(X, X, id, 0, b).has_value());
  auto hw = null_homotopy_search(X, X, x.pow(3) * id, 0, default_degree_bound(X, X));
  REQUIRE(hw.has_value());
  auto hx = null_homotopy_search(X, X, x * x * id, 0, 3);
  CHECK(hx.has_value());
  CHECK(homotopy_between(X, X, id + x * x * id, id, 3).has_value());
}

TEST_CASE("mf: default null-homotopies") {
  auto R = RingContext::make({"x", "z"});
  Poly x = Poly::var(R, "x"), z = Poly::var(R, "z");
  auto X = new_mf(R, x.pow(3), one(x), one(x * x));
  auto hs = default_null_homotopies(X, {0});
  REQUIRE(hs.size() == 1);
  CHECK(hs[0].matrix == PolyMatrix::from_rows({{Poly(R, 0), 2 * x}, {Poly(R, 1), Poly(R, 0)}}));
  CHECK(hs[0].commutator == 3 * x * x);
  // a defect z^2 - x^2 from the x^2 theory to the z^2 theory
  auto D = with_sides(new_mf(R, z * z - x * x, one(z - x), one(z + x)), {0}, x * x, {1}, z * z);
  auto hd = default_null_homotopies(D, {0, 1});
  CHECK(hd[0].matrix == -D.d.map([](const Poly& p) { return partial_derivative(p, 0); }));
  CHECK(hd[0].commutator == 2 * x);
  CHECK(hd[1].commutator == 2 * z);
  CHECK_THROWS(verify_null_homotopy(X, hs[0].matrix, x * x));
  auto C = new_mf(R, x.pow(3), one(Poly(R, 1)), one(x.pow(3)));
  CHECK(default_null_homotopies(C, {0})[0].commutator == 3 * x * x);
}

TEST_CASE("mf: finite-rank reduction") {
  auto R = RingContext::make({"x", "z"});
  Poly x = Poly::var(R, "x"), z = Poly::var(R, "z");
  auto X = new_mf(R, x.pow(3) + z * z, PolyMatrix::from_rows({{x, z}, {-z, x * x}}),
                  PolyMatrix::from_rows({{x * x, -z}, {z, x}}));
  REQUIRE(X.is_valid());
  auto red = finite_rank_reduction(X, {z}, {1});
  CHECK(red.mf.rank() == X.rank());
  CHECK(red.mf.d == X.d.map([&](const Poly& p) { return substitute(p, 1, Poly(R, 0)); }));
  CHECK(red.mf.is_valid());

  auto E = new_mf(R, x.pow(3) - z.pow(3), one(x - z), one(x * x + x * z + z * z));
  auto red2 = finite_rank_reduction(E, {3 * x * x, 3 * z * z}, {0, 1});
  CHECK(red2.mf.rank() == E.rank() * 4);
  CHECK(red2.mf.potential.is_zero());
  CHECK(red2.mf.is_valid());
  CHECK_THROWS_AS(finite_rank_reduction(E, {x * z}, {0, 1}), CapExceeded);
}
