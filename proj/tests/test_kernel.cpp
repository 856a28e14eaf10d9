#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace torhom;
using fixtures::pp;

TEST_SUITE("kernel") {

TEST_CASE("rational field elements stay canonical") {
  FieldDesc Q;
  auto a = FieldElem::of(Q, mpq_class(2, 4));
  CHECK(a.rational() == mpq_class(1, 2));
  auto b = -FieldElem::of(Q, mpq_class(3, 6));
  CHECK(b.rational() == mpq_class(-1, 2));
  CHECK((a + b).is_zero());
  CHECK((a - b).rational() == 1);
  CHECK_THROWS_AS(a / FieldElem::zero(Q), Error);
}

TEST_CASE("prime field arithmetic") {
  FieldDesc F{32003};
  auto a = FieldElem::of(F, -1);
  CHECK(a.residue() == 32002);
  auto inv = FieldElem::of(F, 7).inverse();
  CHECK((inv * FieldElem::of(F, 7)).is_one());
}

TEST_CASE("monomial order: weighted degree first, then reverse lex") {
  std::vector<long> w{4, 5, 6};
  Monomial xz{{1, 0, 1}}, y2{{0, 2, 0}};
  CHECK(wdeg(xz, w) == 10);
  CHECK(wdeg(y2, w) == 10);
  // same degree: smaller exponent in the last differing slot wins
  CHECK(mono_cmp(y2, xz, w) > 0);
  Monomial x{{1, 0, 0}}, y{{0, 1, 0}};
  CHECK(mono_cmp(y, x, w) > 0);
}

TEST_CASE("polynomial product expands exactly") {
  auto P = fixtures::P2();
  CHECK((pp(P, "x-y") * pp(P, "y")) == pp(P, "x*y - y^2"));
  CHECK((pp(P, "x") * Poly::zero(P)).is_zero());
}

TEST_CASE("weighted degrees") {
  auto P3 = make_poly_ring({"x", "y", "z"}, {4, 5, 6}, {});
  CHECK(pp(P3, "x*z - y^2").weighted_degree() == 10);
  CHECK(pp(fixtures::P2(), "x*y*(x-y)").weighted_degree() == 3);
  CHECK(!pp(fixtures::P2(), "x + y^2").weighted_degree().has_value());
  CHECK_THROWS_AS(Poly::zero(P3).weighted_degree(), Error);
}

TEST_CASE("matrix factorization pair multiplies to f times identity") {
  auto P3 = make_poly_ring({"x", "y", "z"}, {4, 5, 6}, {});
  PolyMatrix phi = PolyMatrix::from_rows(
      P3, {{pp(P3, "-z"), pp(P3, "x")}, {pp(P3, "x^2"), pp(P3, "-z")}});
  PolyMatrix psi = PolyMatrix::from_rows(
      P3, {{pp(P3, "z"), pp(P3, "x")}, {pp(P3, "x^2"), pp(P3, "z")}});
  PolyMatrix prod = phi.mul(psi);
  CHECK(prod.at(0, 0) == pp(P3, "x^3 - z^2"));
  CHECK(prod.at(0, 1).is_zero());
  CHECK(prod.at(1, 0).is_zero());
  CHECK(prod.at(1, 1) == pp(P3, "x^3 - z^2"));
}

TEST_CASE("transpose and direct sum") {
  auto P = fixtures::P2();
  PolyMatrix a = PolyMatrix::from_rows(P, {{pp(P, "x")}});
  CHECK(a.transpose().at(0, 0) == pp(P, "x"));
  PolyMatrix b = PolyMatrix::from_rows(P, {{pp(P, "y")}});
  PolyMatrix d = a.direct_sum(b);
  CHECK(d.rows() == 2);
  CHECK(d.at(0, 0) == pp(P, "x"));
  CHECK(d.at(1, 1) == pp(P, "y"));
  CHECK(d.at(0, 1).is_zero());
}

TEST_CASE("degree inference recovers a consistent grading") {
  auto P = make_poly_ring({"x", "y", "z"}, {3, 4, 5}, {});
  PolyMatrix n4 = PolyMatrix::from_rows(
      P, {{pp(P, "-y"), pp(P, "x"), pp(P, "z")},
          {pp(P, "x^2"), pp(P, "-z"), pp(P, "-x*y")},
          {pp(P, "-z"), pp(P, "y"), pp(P, "x^2")}});
  n4.infer_degrees();
  CHECK(n4.is_graded());
  long base = n4.row_degs()[0];
  CHECK(n4.row_degs()[1] - base == -2);
  CHECK(n4.row_degs()[2] - base == -1);
}

TEST_CASE("inference rejects an ungradable matrix") {
  auto P = fixtures::P2();
  PolyMatrix bad = PolyMatrix::from_rows(P, {{pp(P, "x + y^2")}});
  CHECK_THROWS_AS(bad.infer_degrees(), Error);
}

TEST_CASE("product degree is additive on random homogeneous polynomials") {
  auto P = make_poly_ring({"x", "y", "z"}, {2, 3, 4}, {});
  std::mt19937 rng(20240811);
  auto random_homog = [&](long deg) {
    std::vector<Monomial> ms;
    oracles::monomials_of_degree(P->weights, deg, ms);
    REQUIRE(!ms.empty());
    Poly p(P);
    for (const auto& m : ms) {
      long c = static_cast<long>(rng() % 7) - 3;
      p = p + Poly::monomial(P, m, FieldElem::of(P->field, c));
    }
    return p;
  };
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    long da = 2 + static_cast<long>(rng() % 8);
    long db = 2 + static_cast<long>(rng() % 8);
    Poly a = random_homog(da), b = random_homog(db);
    if (a.is_zero() || b.is_zero()) continue;
    Poly prod = a * b;
    if (prod.is_zero()) continue;  // cancellation cannot happen over a domain
    CHECK(prod.weighted_degree() == da + db);
    ++checked;
  }
  CHECK(checked > 40);
}

TEST_CASE("matrix multiplication is associative on random graded triples") {
  auto P = fixtures::P2();
  std::mt19937 rng(7);
  auto rnd_poly = [&](long deg) {
    std::vector<Monomial> ms;
    oracles::monomials_of_degree(P->weights, deg, ms);
    Poly p(P);
    for (const auto& m : ms)
      p = p + Poly::monomial(P, m, FieldElem::of(P->field, static_cast<long>(rng() % 5) - 2));
    return p;
  };
  for (int trial = 0; trial < 20; ++trial) {
    auto mk = [&](size_t r, size_t c) {
      PolyMatrix A(P, r, c);
      for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) A.at(i, j) = rnd_poly(1 + (rng() % 2));
      return A;
    };
    PolyMatrix A = mk(2, 2), B = mk(2, 3), C = mk(3, 2);
    CHECK(A.mul(B).mul(C) == A.mul(B.mul(C)));
  }
}

TEST_CASE("huge rational coefficients survive arithmetic") {
  auto P = fixtures::P2();
  mpz_class big(1);
  for (int i = 0; i < 16; ++i) big *= 65521;  // ~256 bits
  Poly a = Poly::monomial(P, Monomial{{1, 0}}, FieldElem::of(P->field, mpq_class(big, 3)));
  Poly b = Poly::monomial(P, Monomial{{0, 1}}, FieldElem::of(P->field, mpq_class(7, big)));
  Poly prod = a * b;
  mpq_class expect(big * 7, 3 * big);
  expect.canonicalize();
  CHECK(prod.lead().c.rational() == expect);
  Poly diff = prod - prod;
  CHECK(diff.is_zero());
  // distributivity with large mixed coefficients
  Poly c = a + b;
  CHECK((c * c) == (a * a + a * b + b * a + b * b));
}

TEST_CASE("poly printing round-trips through the parser") {
  auto P = make_poly_ring({"x", "y", "z"}, {4, 5, 6}, {});
  for (const char* s : {"x^3 - z^2", "x*z - y^2", "-x + 2*y^2*z", "1/2*x^3 + z^2"}) {
    Poly p = pp(P, s);
    CHECK(pp(P, p.str()) == p);
  }
}

}  // TEST_SUITE
