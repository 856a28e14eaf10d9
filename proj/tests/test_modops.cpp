#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace torhom;
using fixtures::pp;

namespace {

PresentedModule M1() { return fixtures::quotient_module(fixtures::R1(), "x"); }
PresentedModule Ny() { return fixtures::quotient_module(fixtures::R1(), "y"); }

}  // namespace

TEST_SUITE("modops") {

TEST_CASE("presentations reduce and infer degrees") {
  auto m = M1();
  CHECK(m.ngens() == 1);
  CHECK(m.pres().cols() == 1);
  // entries landing in the ideal disappear
  auto R = fixtures::R1();
  PolyMatrix A(R->ambient(), 1, 2);
  A.at(0, 0) = pp(R->ambient(), "x");
  A.at(0, 1) = pp(R->ambient(), "x*y*(x-y)");
  auto m2 = present(R, A);
  CHECK(m2.pres().cols() == 1);
}

TEST_CASE("free module and zero module conventions") {
  auto R = fixtures::R1();
  auto F = free_module(R, 2);
  CHECK(is_free(F));
  CHECK(!length_of(F).has_value());
  auto Z = present(R, PolyMatrix(R->ambient(), 0, 0), std::vector<long>{}, "zero");
  CHECK(is_zero_module(Z));
  CHECK(is_free(Z));
  CHECK(length_of(Z) == 0);
  CHECK(torsion_submodule(Z).is_torsion_free);
}

TEST_CASE("minimize prunes unit pivots") {
  auto R = fixtures::R1();
  auto P = R->ambient();
  PolyMatrix A(P, 2, 2);
  A.at(0, 0) = pp(P, "1");
  A.at(0, 1) = pp(P, "x");
  A.at(1, 1) = pp(P, "y");
  auto M = present(R, A);
  auto Mm = minimize(M);
  CHECK(Mm.ngens() == 1);
  REQUIRE(Mm.pres().cols() == 1);
  CHECK(Mm.pres().at(0, 0) == pp(P, "y"));
  // a presentation of a free module minimizes to no relations
  CHECK(is_free(present(R, PolyMatrix::from_rows(P, {{pp(P, "1")}}))));
}

TEST_CASE("direct sum with the zero module is the identity") {
  auto R = fixtures::R1();
  auto Z = present(R, PolyMatrix(R->ambient(), 0, 0), std::vector<long>{}, "zero");
  auto S = direct_sum({M1(), Z});
  CHECK(S.ngens() == 1);
  CHECK(S.pres() == M1().pres());
  CHECK(is_free(direct_sum({free_module(R, 1), free_module(R, 1)})));
}

TEST_CASE("direct sum stacks presentations diagonally") {
  auto N1 = direct_sum({M1(), Ny(), Ny()});
  CHECK(N1.ngens() == 3);
  CHECK(N1.pres().cols() == 3);
  CHECK(N1.pres().at(0, 0) == pp(fixtures::P2(), "x"));
  CHECK(N1.pres().at(1, 1) == pp(fixtures::P2(), "y"));
  CHECK(N1.pres().at(2, 2) == pp(fixtures::P2(), "y"));
  CHECK(N1.pres().at(0, 1).is_zero());
}

TEST_CASE("length computations") {
  auto R = fixtures::R1();
  CHECK(!length_of(free_module(R, 1)).has_value());
  CHECK(length_of(fixtures::residue_field(R)) == 1);
  // k[y]/(y^2) shape: R1/(x, y^2)
  auto P = R->ambient();
  PolyMatrix A(P, 1, 2);
  A.at(0, 0) = pp(P, "x");
  A.at(0, 1) = pp(P, "y^2");
  CHECK(length_of(present(R, A)) == 2);
  CHECK(length_of(direct_sum({fixtures::residue_field(R), present(R, A)})) == 3);
}

TEST_CASE("length is additive over direct sums") {
  auto R = fixtures::R2();
  auto P = R->ambient();
  std::vector<PresentedModule> finite;
  for (const char* s : {"x", "y", "x+y"}) {
    PolyMatrix A(P, 1, 2);
    A.at(0, 0) = pp(P, s);
    A.at(0, 1) = pp(P, "x^2 + y^2");  // cuts to finite length
    finite.push_back(present(R, A));
  }
  unsigned long total = 0;
  for (const auto& m : finite) total += *length_of(m);
  CHECK(length_of(direct_sum(finite)) == total);
}

TEST_CASE("tensor of the free module is the identity up to Betti data") {
  auto R = fixtures::R1();
  auto N1 = direct_sum({M1(), Ny(), Ny()});
  auto T = tensor(free_module(R, 1), N1);
  CHECK(betti(minimize(T), 2) == betti(minimize(N1), 2));
}

TEST_CASE("tensor symmetry at the Betti level") {
  auto A = M1();
  auto B = Ny();
  CHECK(betti(minimize(tensor(A, B)), 3) == betti(minimize(tensor(B, A)), 3));
}

TEST_CASE("torsion submodule of the line-arrangement quotients") {
  auto m = M1();
  auto t = torsion_submodule(m);
  CHECK(t.is_torsion_free);
  CHECK(is_zero_module(t.torsion));
  // the residue field is pure torsion
  auto k = fixtures::residue_field(fixtures::R1());
  auto tk = torsion_submodule(k);
  CHECK(!tk.is_torsion_free);
  CHECK(length_of(tk.torsion) == 1);
}

TEST_CASE("torsion output does not depend on the chosen non-zerodivisor") {
  auto R = fixtures::R1();
  auto nzds = R->find_nonzerodivisors(2);
  // a mixed module with genuine torsion: k (+) R/(x)
  auto X = direct_sum({fixtures::residue_field(R), M1()});
  auto a = torsion_submodule_with(X, nzds[0]);
  auto b = torsion_submodule_with(X, nzds[1]);
  CHECK(a.is_torsion_free == b.is_torsion_free);
  CHECK(length_of(a.torsion) == length_of(b.torsion));
  CHECK(!a.is_torsion_free);
  CHECK(length_of(a.torsion) == 1);
  // and a torsion-free instance: R/(x) (x) R/(x) = R/(x) again
  auto T = tensor(M1(), M1());
  CHECK(torsion_submodule_with(T, nzds[0]).is_torsion_free);
  CHECK(torsion_submodule_with(T, nzds[1]).is_torsion_free);
}

TEST_CASE("torsion requires the dim-1 declaration") {
  auto P = fixtures::P2();
  auto R = QuotientRing::make(P, {pp(P, "x*y")});
  auto m = fixtures::quotient_module(R, "x");
  CHECK_THROWS_AS(torsion_submodule(m), Error);
}

TEST_CASE("dual of R/(x) has the annihilator witness as generator lift") {
  auto D = dual(M1());
  REQUIRE(D.lifts.rows() == 1);
  REQUIRE(D.lifts.cols() == 1);
  // Hom(R/(x), R) = (0 : x) = (y(x-y)), up to a scalar on the lift
  auto P = fixtures::P2();
  Poly lift = D.lifts.at(0, 0);
  auto ann = fixtures::R1();
  CHECK(!lift.is_zero());
  Vec v(P, 1);
  v[0] = lift * pp(P, "x");
  CHECK(ann->nf(v[0]).is_zero());  // x * lift = 0 in R1
  // and the dual is again R/(x)-shaped: one generator, one relation of degree 1
  auto Dm = minimize(D.module);
  CHECK(Dm.ngens() == 1);
  CHECK(betti(Dm, 2).totals == std::vector<unsigned long>{1, 1, 1});
}

TEST_CASE("dual of a free module is free with identity lifts") {
  auto R = fixtures::R1();
  auto D = dual(free_module(R, 3));
  CHECK(is_free(D.module));
  CHECK(minimize(D.module).ngens() == 3);
  CHECK(D.lifts.rows() == 3);
  CHECK(D.lifts.cols() == 3);
}

TEST_CASE("dual of the residue field vanishes") {
  auto D = dual(fixtures::residue_field(fixtures::R1()));
  CHECK(is_zero_module(D.module));
}

TEST_CASE("transpose basics") {
  auto R = fixtures::R1();
  auto tr = transpose(M1());
  CHECK(tr.ngens() == 1);
  CHECK(tr.pres().at(0, 0) == pp(fixtures::P2(), "x"));
  CHECK(is_zero_module(transpose(free_module(R, 2))));
}

TEST_CASE("rank at declared primes") {
  auto m = M1();
  CHECK(rank_at_prime(m, 0) == 1);  // at (x)
  CHECK(rank_at_prime(m, 1) == 0);  // at (y)
  CHECK(rank_at_prime(m, 2) == 0);  // at (x-y)
  auto R = fixtures::R1();
  auto free1 = free_module(R, 1);
  for (size_t i = 0; i < 3; ++i) CHECK(rank_at_prime(free1, i) == 1);
  CHECK_THROWS_AS(rank_at_prime(m, 5), Error);

  // over the axes ring: (R/(x)) localized at (x) is the residue field of a
  // point, at (y) it dies
  auto R2 = fixtures::R2();
  auto mx = fixtures::quotient_module(R2, "x");
  CHECK(rank_at_prime(mx, 0) == 1);
  CHECK(rank_at_prime(mx, 1) == 0);

  // non-reduced guard ring: length of R at its unique prime is 2
  auto R5 = fixtures::R5();
  CHECK(rank_at_prime(free_module(R5, 1), 0) == 2);
  CHECK(rank_at_prime(fixtures::quotient_module(R5, "x"), 0) == 1);
}

TEST_CASE("reduced Grothendieck class reports") {
  auto m = M1();
  auto rep = reduced_class(m);
  CHECK(!rep.is_zero_class);
  CHECK(rep.has_rank == false);

  auto R = fixtures::R1();
  auto balanced = direct_sum({m, fixtures::quotient_module(R, "y"),
                              fixtures::quotient_module(R, "x-y")});
  auto rep2 = reduced_class(balanced);
  CHECK(rep2.is_zero_class);
  CHECK(rep2.ratio == mpq_class(1));
  CHECK(rep2.has_rank == true);

  auto repk = reduced_class(fixtures::residue_field(R));
  CHECK(repk.is_zero_class);
  CHECK(repk.ratio == mpq_class(0));

  // non-reduced ring: zero class but rank is not applicable
  auto R5 = fixtures::R5();
  auto rep5 = reduced_class(fixtures::quotient_module(R5, "x"));
  CHECK(rep5.is_zero_class);
  CHECK(!rep5.has_rank.has_value());
}

TEST_CASE("class is additive on the localized length vectors") {
  auto R = fixtures::R1();
  auto mods = std::vector<PresentedModule>{M1(), fixtures::quotient_module(R, "y"),
                                           fixtures::quotient_module(R, "x-y")};
  std::vector<unsigned long> sum(3, 0);
  for (const auto& m : mods)
    for (size_t i = 0; i < 3; ++i) sum[i] += rank_at_prime(m, i);
  auto whole = direct_sum(mods);
  for (size_t i = 0; i < 3; ++i) CHECK(rank_at_prime(whole, i) == sum[i]);
}

TEST_CASE("is_free on the corpus shapes") {
  auto R = fixtures::R1();
  CHECK(is_free(direct_sum({free_module(R, 1), free_module(R, 1)})));
  CHECK(!is_free(M1()));
  auto P = R->ambient();
  CHECK(is_free(present(R, PolyMatrix::from_rows(P, {{pp(P, "1")}}))));
}

TEST_CASE("ideal modules present with one syzygy computation") {
  auto R3 = fixtures::R3();
  auto P = R3->ambient();
  auto I = present_ideal(R3, {pp(P, "x"), pp(P, "z")});
  CHECK(I.ngens() == 2);
  CHECK(I.pres().cols() >= 1);
  // relations really annihilate the generators in R3
  for (size_t j = 0; j < I.pres().cols(); ++j) {
    Poly combo = pp(P, "x") * I.pres().at(0, j) + pp(P, "z") * I.pres().at(1, j);
    CHECK(R3->nf(combo).is_zero());
  }
  // the ideal (x, z) is not free (two generators, genuinely needed)
  CHECK(!is_free(I));
}

TEST_CASE("pushforward conventions") {
  auto R = fixtures::R1();
  CHECK(is_zero_module(pushforward(free_module(R, 1))));
  CHECK_THROWS_AS(pushforward(fixtures::residue_field(R)), Error);  // torsion input
}

TEST_CASE("pushforward fits the defining exact sequence by length bookkeeping") {
  // 0 -> M -> F* -> PF(M) -> 0 with F the free cover of M*; ranks over the
  // minimal primes must satisfy rank(F*) = rank(M) + rank(PF)
  auto R = fixtures::R1();
  auto P = R->ambient();
  auto maxideal = present_ideal(R, {pp(P, "x"), pp(P, "y")});
  auto D = dual(maxideal);
  auto PF = pushforward(maxideal);
  size_t s = D.lifts.rows();
  for (size_t i = 0; i < R->minimal_primes().size(); ++i) {
    unsigned long free_rank = static_cast<unsigned long>(s) * rank_at_prime(free_module(R, 1), i);
    CHECK(free_rank == rank_at_prime(maxideal, i) + rank_at_prime(PF, i));
  }
}

}  // TEST_SUITE
