#pragma once

#include <optional>
#include <vector>

#include "torhom/matrix.hpp"

namespace torhom {

/// Graded free module over the ambient polynomial ring.
struct FreeModule {
  PolyRingPtr ring;
  std::vector<long> gen_degs;

  size_t rank() const { return gen_degs.size(); }
};

/// Element of a free module: one polynomial per generator slot.
class Vec {
 public:
  Vec() = default;
  Vec(PolyRingPtr ring, size_t rank);
  static Vec unit(const PolyRingPtr& ring, size_t rank, size_t pos);

  size_t rank() const { return c_.size(); }
  const Poly& operator[](size_t i) const { return c_[i]; }
  Poly& operator[](size_t i) { return c_[i]; }
  const PolyRingPtr& ring() const { return ring_; }

  bool is_zero() const;
  /// Index of the leading slot (first nonzero component), or rank() when zero.
  size_t lead_pos() const;

  Vec operator+(const Vec& o) const;
  Vec operator-(const Vec& o) const;
  Vec mul_term(const Term& t) const;
  Vec scale(const FieldElem& c) const;
  bool operator==(const Vec& o) const;

  /// Homogeneous degree relative to generator degrees; nullopt if inhomogeneous,
  /// and degenerately 0 for the zero vector.
  std::optional<long> degree(const std::vector<long>& gen_degs) const;

 private:
  PolyRingPtr ring_;
  std::vector<Poly> c_;
};

/// Auto-reduced monic Groebner basis for a submodule of a graded free module,
/// position-over-term order (earlier slots dominate) refined by the ring order.
/// Canonical for fixed input span, so equality is list equality.
struct GroebnerBasis {
  FreeModule ambient;
  std::vector<Vec> gens;

  bool operator==(const GroebnerBasis& o) const;
};

GroebnerBasis groebner(const FreeModule& F, std::vector<Vec> gens);

/// Warm-start completion: `base` is already S-complete, so only pairs that
/// involve the new generators are queued.
GroebnerBasis groebner_extend(const GroebnerBasis& base, std::vector<Vec> extra);

/// Completion where the leading `complete_prefix` generators are known to be
/// S-complete among themselves (e.g. a Groebner set of I spread over slots).
GroebnerBasis groebner_seeded(const FreeModule& F, std::vector<Vec> gens,
                              size_t complete_prefix);

/// Fully reduced normal form; canonical modulo the span of G.
Vec normal_form(const Vec& v, const GroebnerBasis& G);
bool member(const Vec& v, const GroebnerBasis& G);

/// Re-runs the Buchberger criterion on a computed basis: every S-pair must
/// reduce to zero. Returns the number of S-pairs checked.
size_t verify_spairs(const GroebnerBasis& G);

/// Columns generate { u : A*u lies in span(modulo) }. Exact and graded:
/// with empty `modulo` the result satisfies A * syz(A) = 0 identically.
/// A leading S-complete stretch of `modulo` may be declared via the prefix to
/// skip its internal pairs.
PolyMatrix syzygy_matrix(const PolyMatrix& A, const std::vector<Vec>& modulo = {},
                         size_t complete_prefix = 0);

/// Finds u with A*u = target modulo span(modulo), if the target is in reach.
std::optional<Vec> express(const PolyMatrix& A, const std::vector<Vec>& modulo,
                           const Vec& target, size_t complete_prefix = 0);

/// Basis of (span(U) : t) = { v in F : t*v in span(U) }.
GroebnerBasis module_quotient(const GroebnerBasis& U, const Poly& t);

/// Basis of (span(U) : t^inf): iterated quotient until stable; cap 64 steps.
GroebnerBasis saturate(const GroebnerBasis& U, const Poly& t);

/// Number of standard monomials of F modulo lead terms of U, nullopt = infinite.
std::optional<unsigned long> kdim_quotient(const FreeModule& F, const GroebnerBasis& U);

/// Columns of A as elements of the free module with A's row grading.
std::vector<Vec> matrix_cols(const PolyMatrix& A);
PolyMatrix vecs_to_matrix(const PolyRingPtr& ring, size_t rank,
                          const std::vector<long>& row_degs, const std::vector<Vec>& vs);

}  // namespace torhom
