#pragma once

#include <functional>
#include <string>
#include <vector>

#include "helpers.hpp"

// The large exact property suites shared by the unit tests and the acceptance
// runner. Each suite counts its assertions so callers can enforce the
// hundred-assertion floor.

namespace propsuite {

struct SuiteResult {
  std::string name;
  size_t checks = 0;
  size_t failures = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (first_failure.empty()) first_failure = what;
    }
  }
  bool ok() const { return failures == 0 && checks >= 100; }
};

inline std::vector<th::PresentedModule> r1_family() {
  static std::vector<th::PresentedModule> fam = [] {
    auto R = fixtures::R1();
    std::vector<th::PresentedModule> out;
    for (const char* g : {"x", "y", "x-y", "x+y", "x^2", "x*y"})
      out.push_back(fixtures::quotient_module(R, g));
    out.push_back(fixtures::residue_field(R));
    out.push_back(th::free_module(R, 1));
    out.push_back(th::direct_sum({out[0], out[1]}));
    out.push_back(th::direct_sum({out[0], out[1], out[1]}));
    out.push_back(th::syzygy_module(out[0], 1));
    out.push_back(th::dual(out[0]).module);
    out.push_back(th::transpose(out[1]));
    out.push_back(th::tensor(out[0], out[1]));
    return out;
  }();
  return fam;
}

inline std::vector<th::PresentedModule> r2_family() {
  static std::vector<th::PresentedModule> fam = [] {
    auto R = fixtures::R2();
    std::vector<th::PresentedModule> out;
    for (const char* g : {"x", "y", "x+y", "x^2", "y^2"})
      out.push_back(fixtures::quotient_module(R, g));
    out.push_back(fixtures::residue_field(R));
    out.push_back(th::free_module(R, 1));
    out.push_back(th::direct_sum({out[0], out[1]}));
    out.push_back(th::syzygy_module(out[0], 1));
    out.push_back(th::dual(out[1]).module);
    return out;
  }();
  return fam;
}

inline std::vector<th::PresentedModule> finite_length_family() {
  static std::vector<th::PresentedModule> fam = [] {
    auto R = fixtures::R1();
    auto P = R->ambient();
    std::vector<th::PresentedModule> out;
    for (const char* a : {"x", "x^2", "x^3", "x^4"})
      for (const char* b : {"y", "y^2", "y^3", "y^4"}) {
        th::PolyMatrix m(P, 1, 2);
        m.at(0, 0) = fixtures::pp(P, a);
        m.at(0, 1) = fixtures::pp(P, b);
        out.push_back(th::present(R, m));
      }
    out.push_back(fixtures::residue_field(R));
    return out;
  }();
  return fam;
}

inline SuiteResult suite_complex_zero() {
  SuiteResult r{"d_i * d_{i+1} = 0"};
  for (const auto& fam : {r1_family(), r2_family()})
    for (const auto& M : fam) {
      auto res = th::resolve(M, 8);
      const auto& R = M.ring();
      for (int i = 0; i + 1 < res.computed(); ++i) {
        th::PolyMatrix prod = res.diffs[i].mul(res.diffs[i + 1]);
        bool zero = true;
        for (size_t a = 0; a < prod.rows(); ++a)
          for (size_t b = 0; b < prod.cols(); ++b)
            if (!R->nf(prod.at(a, b)).is_zero()) zero = false;
        r.check(zero, "nonzero composite differential");
      }
    }
  return r;
}

inline SuiteResult suite_syzygy_annihilation() {
  SuiteResult r{"A * syz(A) = 0"};
  auto check_one = [&](const th::PolyMatrix& A) {
    th::PolyMatrix S = th::syzygy_matrix(A);
    r.check(A.mul(S).is_zero(), "A*syz(A) nonzero");
  };
  for (const auto& fam : {r1_family(), r2_family()})
    for (const auto& M : fam) {
      if (M.pres().cols() == 0) continue;
      check_one(M.pres());
      check_one(M.pres().transpose());
    }
  for (const auto& fam : {r1_family(), r2_family()})
    for (size_t a = 0; a < fam.size(); ++a)
      for (size_t b = a; b < fam.size(); ++b) {
        if (r.checks >= 120) return r;
        auto T = th::tensor(fam[a], fam[b]);
        if (T.pres().cols() > 0) check_one(T.pres());
      }
  return r;
}

inline SuiteResult suite_theta_symmetry() {
  SuiteResult r{"theta symmetry"};
  for (const auto& fam : {r1_family(), r2_family()})
    for (size_t a = 0; a < fam.size(); ++a)
      for (size_t b = a; b < fam.size(); ++b) {
        auto ab = th::theta(fam[a], fam[b], 12);
        auto ba = th::theta(fam[b], fam[a], 12);
        r.check(ab.defined() == ba.defined(), "definedness asymmetric");
        if (ab.defined() && ba.defined())
          r.check(*ab.value == *ba.value, "theta values asymmetric");
      }
  return r;
}

inline SuiteResult suite_theta_double_window() {
  SuiteResult r{"theta double window 12 vs 16"};
  for (const auto& fam : {r1_family(), r2_family()})
    for (size_t a = 0; a < fam.size(); ++a)
      for (size_t b = a; b < fam.size(); ++b) {
        auto w12 = th::theta(fam[a], fam[b], 12);
        auto w16 = th::theta(fam[a], fam[b], 16);
        r.check(w12.defined() == w16.defined(), "window changed definedness");
        if (w12.defined() && w16.defined())
          r.check(*w12.value == *w16.value, "window changed the value");
      }
  return r;
}

inline SuiteResult suite_theta_residue_field() {
  SuiteResult r{"theta(k, X) = 0 over the hypersurfaces"};
  for (auto R : {fixtures::R1(), fixtures::R2()}) {
    auto k = fixtures::residue_field(R);
    const auto& fam = R.get() == fixtures::R1().get() ? r1_family() : r2_family();
    for (const auto& X : fam) {
      auto a = th::theta(k, X, 12);
      r.check(a.defined() && *a.value == 0, "theta(k, X) != 0");
      auto b = th::theta(X, k, 12);
      r.check(b.defined() && *b.value == 0, "theta(X, k) != 0");
      auto c = th::theta(k, X, 16);
      r.check(c.defined() && *c.value == 0, "theta(k, X) != 0 at window 16");
    }
  }
  for (const auto& Y : finite_length_family()) {
    auto k = fixtures::residue_field(fixtures::R1());
    auto a = th::theta(k, Y, 12);
    r.check(a.defined() && *a.value == 0, "theta(k, Y) != 0");
    auto b = th::theta(Y, k, 12);
    r.check(b.defined() && *b.value == 0, "theta(Y, k) != 0");
  }
  return r;
}

inline SuiteResult suite_torsion_independence() {
  SuiteResult r{"torsion independent of the non-zerodivisor"};
  for (const auto& fam : {r1_family(), r2_family()})
    for (const auto& M : fam) {
      auto nzds = M.ring()->find_nonzerodivisors(2);
      auto a = th::torsion_submodule_with(M, nzds[0]);
      auto b = th::torsion_submodule_with(M, nzds[1]);
      r.check(a.is_torsion_free == b.is_torsion_free, "torsion-freeness differs");
      r.check(th::length_of(a.torsion) == th::length_of(b.torsion), "torsion length differs");
      r.check(th::betti(th::minimize(a.torsion), 1).totals ==
                  th::betti(th::minimize(b.torsion), 1).totals,
              "torsion Betti differs");
    }
  for (const auto& M : finite_length_family()) {
    auto nzds = M.ring()->find_nonzerodivisors(2);
    auto a = th::torsion_submodule_with(M, nzds[0]);
    auto b = th::torsion_submodule_with(M, nzds[1]);
    r.check(!a.is_torsion_free, "finite length module reported torsion-free");
    r.check(th::length_of(a.torsion) == th::length_of(b.torsion), "torsion length differs");
  }
  return r;
}

inline SuiteResult suite_length_additivity() {
  SuiteResult r{"length additivity over direct sums"};
  auto fam = finite_length_family();
  for (size_t a = 0; a < fam.size(); ++a)
    for (size_t b = a; b < fam.size(); ++b) {
      auto la = th::length_of(fam[a]);
      auto lb = th::length_of(fam[b]);
      if (!la || !lb) {
        r.check(false, "family member with infinite length");
        continue;
      }
      r.check(th::length_of(th::direct_sum({fam[a], fam[b]})) == *la + *lb,
              "length not additive on a pair");
    }
  for (size_t a = 0; a + 2 < fam.size(); ++a) {
    auto l = th::length_of(th::direct_sum({fam[a], fam[a + 1], fam[a + 2]}));
    r.check(l == *th::length_of(fam[a]) + *th::length_of(fam[a + 1]) +
                     *th::length_of(fam[a + 2]),
            "length not additive on a triple");
  }
  for (const auto& M : fam)
    r.check(!th::length_of(th::direct_sum({M, th::free_module(M.ring(), 1)})).has_value(),
            "free summand kept the length finite");
  return r;
}

inline SuiteResult suite_buchberger_recheck() {
  SuiteResult r{"Buchberger S-pair re-verification"};
  auto recheck = [&](const th::GroebnerBasis& G) {
    try {
      size_t pairs = th::verify_spairs(G);
      for (size_t k = 0; k < pairs; ++k) r.check(true, "");
    } catch (const th::Error& e) {
      r.check(false, e.what());
    }
  };
  for (auto R : {fixtures::R1(), fixtures::R2(), fixtures::R3(), fixtures::R4(), fixtures::R5()}) {
    recheck(R->ideal_gb());
    for (const auto& p : R->minimal_primes()) recheck(p.gb);
  }
  for (const auto& fam : {r1_family(), r2_family()})
    for (const auto& M : fam) recheck(th::relations_gb(M));
  for (const auto& M : finite_length_family()) recheck(th::relations_gb(M));
  {
    auto R3 = fixtures::R3();
    auto R4 = fixtures::R4();
    auto P3 = R3->ambient();
    auto P4 = R4->ambient();
    auto I = th::present_ideal(R3, {fixtures::pp(P3, "x"), fixtures::pp(P3, "z")});
    auto J = th::present_ideal(R3, {fixtures::pp(P3, "x"), fixtures::pp(P3, "y")});
    th::PolyMatrix A = th::PolyMatrix::from_rows(
        P4, {{fixtures::pp(P4, "-y"), fixtures::pp(P4, "x"), fixtures::pp(P4, "z")},
             {fixtures::pp(P4, "x^2"), fixtures::pp(P4, "-z"), fixtures::pp(P4, "-x*y")},
             {fixtures::pp(P4, "-z"), fixtures::pp(P4, "y"), fixtures::pp(P4, "x^2")}});
    auto N4 = th::present(R4, A, std::nullopt, "N4");
    auto omega = th::present_ideal(R4, {fixtures::pp(P4, "x"), fixtures::pp(P4, "y")});
    for (const auto& M : {I, J, th::tensor(I, J), th::tensor(I, I), N4, th::tensor(N4, N4),
                          omega, th::dual(N4).module})
      recheck(th::relations_gb(M));
  }
  return r;
}

inline SuiteResult suite_mf_determinants() {
  SuiteResult r{"det(phi) det(psi) = f^n"};
  std::vector<th::MatrixFactorization> mfs;
  for (const auto& fam : {r1_family(), r2_family()})
    for (const auto& M : fam) {
      auto mf = th::mf_from_resolution(M);
      if (mf) mfs.push_back(*mf);
    }
  {
    auto R3 = fixtures::R3();
    auto P = R3->ambient();
    th::PolyMatrix phi = th::PolyMatrix::from_rows(
        P, {{fixtures::pp(P, "-z"), fixtures::pp(P, "x")},
            {fixtures::pp(P, "x^2"), fixtures::pp(P, "-z")}});
    th::PolyMatrix psi = th::PolyMatrix::from_rows(
        P, {{fixtures::pp(P, "z"), fixtures::pp(P, "x")},
            {fixtures::pp(P, "x^2"), fixtures::pp(P, "z")}});
    mfs.push_back(th::verify_mf(R3, phi, psi));
  }
  size_t base = mfs.size();
  std::vector<th::MatrixFactorization> sums;
  for (size_t a = 0; a < base; ++a)
    for (size_t b = a; b < base && sums.size() + base < 130; ++b) {
      if (mfs[a].ring.get() != mfs[b].ring.get()) continue;
      if (mfs[a].size() + mfs[b].size() > 4) continue;
      sums.push_back(th::mf_direct_sum(mfs[a], mfs[b]));
      if (mfs[a].size() * 2 + mfs[b].size() <= 4)
        sums.push_back(th::mf_direct_sum(mfs[a], th::mf_direct_sum(mfs[a], mfs[b])));
    }
  for (auto& s : sums) mfs.push_back(std::move(s));
  for (const auto& mf : mfs) r.check(th::mf_det_identity(mf), "determinant identity failed");
  return r;
}

inline std::vector<SuiteResult> run_all() {
  return {suite_complex_zero(),       suite_syzygy_annihilation(),
          suite_theta_symmetry(),     suite_theta_double_window(),
          suite_theta_residue_field(), suite_torsion_independence(),
          suite_length_additivity(),  suite_buchberger_recheck(),
          suite_mf_determinants()};
}

}  // namespace propsuite
