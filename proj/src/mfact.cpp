#include "torhom/mfact.hpp"

namespace torhom {

namespace {

const HypersurfaceSplit& split_of(const RingPtr& R) {
  if (!R->split()) fail(Err::Unsupported, "ring has no hypersurface split");
  return *R->split();
}

Poly base_nf(const HypersurfaceSplit& S, const Poly& p) {
  Vec v(p.ring(), 1);
  v[0] = p;
  return normal_form(v, S.base_gb)[0];
}

bool entry_reduced(const Poly& p) {
  for (const auto& t : p.terms())
    if (t.m.is_one()) return false;  // constant term present
  return true;
}

}  // namespace

MatrixFactorization verify_mf(const RingPtr& R, PolyMatrix phi, PolyMatrix psi) {
  const HypersurfaceSplit& S = split_of(R);
  if (phi.rows() != phi.cols() || psi.rows() != psi.cols() || phi.rows() != psi.rows())
    fail(Err::SizeMismatch, "matrix factorization needs square matrices of equal size");
  size_t n = phi.rows();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      phi.at(i, j) = base_nf(S, phi.at(i, j));
      psi.at(i, j) = base_nf(S, psi.at(i, j));
    }
  phi.infer_degrees();
  psi.infer_degrees();
  auto check_product = [&](const PolyMatrix& A, const PolyMatrix& B, const char* which) {
    PolyMatrix prod = A.mul(B);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Poly want = (i == j) ? S.f : Poly::zero(phi.ring());
        if (!base_nf(S, prod.at(i, j) - want).is_zero())
          fail(Err::NotAFactorization, std::string(which) + " product entry (" +
                                           std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                           ") is not f*Id");
      }
  };
  check_product(phi, psi, "phi*psi");
  check_product(psi, phi, "psi*phi");
  MatrixFactorization mf;
  mf.ring = R;
  mf.reduced = true;
  for (size_t i = 0; i < n && mf.reduced; ++i)
    for (size_t j = 0; j < n && mf.reduced; ++j)
      if (!entry_reduced(phi.at(i, j)) || !entry_reduced(psi.at(i, j))) mf.reduced = false;
  mf.phi = std::move(phi);
  mf.psi = std::move(psi);
  return mf;
}

PresentedModule mf_cokernel(const MatrixFactorization& mf) {
  return present(mf.ring, mf.phi, std::nullopt, "mf_cokernel");
}

std::optional<MatrixFactorization> mf_from_resolution(const PresentedModule& M, int depth) {
  const RingPtr& R = M.ring();
  const HypersurfaceSplit& S = split_of(R);
  Resolution res = resolve(M, depth);
  auto per = detect_periodicity(res);
  if (!per || per->degenerate) return std::nullopt;
  int s = per->start;
  if (res.rank(s) == 0) return std::nullopt;
  const PolyMatrix& A = res.diffs[s - 1];
  const PolyMatrix& B = res.diffs[s];
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    fail(Err::LiftFailed, "periodic tail differentials are not square of equal size");
  size_t n = A.rows();
  // solve A * psi = f * Id over S column by column
  std::vector<Vec> base_block;
  for (const auto& g : S.base_gens)
    for (size_t i = 0; i < n; ++i) {
      Vec v(R->ambient(), n);
      v[i] = g;
      base_block.push_back(std::move(v));
    }
  PolyMatrix psi(R->ambient(), n, n);
  for (size_t j = 0; j < n; ++j) {
    Vec target(R->ambient(), n);
    target[j] = S.f;
    auto u = express(A, base_block, target);
    if (!u) fail(Err::LiftFailed, "f*e_j is not in the column span of the lifted tail");
    for (size_t i = 0; i < n; ++i) psi.at(i, j) = (*u)[i];
  }
  (void)B;  // the solved cofactor replaces the raw next differential
  try {
    return verify_mf(R, A, psi);
  } catch (const Error& e) {
    if (e.code() == Err::NotAFactorization)
      fail(Err::LiftFailed, std::string("lifted pair fails verification: ") + e.what());
    throw;
  }
}

MatrixFactorization mf_direct_sum(const MatrixFactorization& a, const MatrixFactorization& b) {
  if (a.ring.get() != b.ring.get()) fail(Err::RingMismatch, "factorizations over different rings");
  return verify_mf(a.ring, a.phi.direct_sum(b.phi), a.psi.direct_sum(b.psi));
}

bool mf_det_identity(const MatrixFactorization& mf) {
  const HypersurfaceSplit& S = split_of(mf.ring);
  Poly lhs = determinant(mf.phi) * determinant(mf.psi);
  Poly fn = Poly::constant(mf.phi.ring(), 1);
  for (size_t k = 0; k < mf.size(); ++k) fn = fn * S.f;
  return base_nf(S, lhs - fn).is_zero();
}

}  // namespace torhom
