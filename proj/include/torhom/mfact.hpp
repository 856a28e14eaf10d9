#pragma once

#include "torhom/homology.hpp"

namespace torhom {

/// Pair of square matrices over S = P/base with phi*psi = psi*phi = f*Id
/// modulo the base ideal; reduced when no entry has a constant term.
struct MatrixFactorization {
  RingPtr ring;  // R = S/(f); carries the split (base ideal, f)
  PolyMatrix phi, psi;
  bool reduced = false;

  size_t size() const { return phi.rows(); }
};

/// Validates the two product identities modulo the base ideal of the ring's
/// hypersurface split. Throws NotAFactorization naming the offending entry.
MatrixFactorization verify_mf(const RingPtr& R, PolyMatrix phi, PolyMatrix psi);

/// coker(phi) as a module over R = S/(f).
PresentedModule mf_cokernel(const MatrixFactorization& mf);

/// Extracts a factorization from a periodic resolution tail: lifts the pair of
/// consecutive differentials to S and solves for the cofactor columns so the
/// product is f*Id. Returns nullopt when the resolution has no usable periodic
/// tail; throws LiftFailed when a tail exists but the solve or the product
/// identities fail.
std::optional<MatrixFactorization> mf_from_resolution(const PresentedModule& M,
                                                      int depth = 10);

MatrixFactorization mf_direct_sum(const MatrixFactorization& a, const MatrixFactorization& b);

/// det(phi) * det(psi) == f^n modulo the base ideal; exact check.
bool mf_det_identity(const MatrixFactorization& mf);

}  // namespace torhom
