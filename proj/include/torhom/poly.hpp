#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torhom/field.hpp"

namespace torhom {

/// Ambient weighted polynomial ring descriptor. Poly values carry a shared
/// pointer to one of these; pointer identity is the ring tag.
struct PolyRing {
  std::vector<std::string> vars;
  std::vector<long> weights;  // positive
  FieldDesc field;

  size_t nvars() const { return vars.size(); }
  long max_weight() const;
  int var_index(const std::string& name) const;  // -1 if absent
  bool same_structure(const PolyRing& o) const {
    return vars == o.vars && weights == o.weights && field == o.field;
  }
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

PolyRingPtr make_poly_ring(std::vector<std::string> vars, std::vector<long> weights,
                           FieldDesc field);

struct Monomial {
  std::vector<unsigned> e;

  bool is_one() const;
  bool operator==(const Monomial& o) const { return e == o.e; }
};

long wdeg(const Monomial& m, const std::vector<long>& weights);
Monomial mono_one(size_t nvars);
Monomial mono_mul(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& a, const Monomial& b);  // a | b
Monomial mono_div(const Monomial& b, const Monomial& a);  // b / a, requires a | b
Monomial mono_lcm(const Monomial& a, const Monomial& b);

/// Weighted-degree-reverse-lexicographic order: higher weighted degree first,
/// ties by grevlex (smaller exponent in the last differing slot wins).
/// Returns <0, 0, >0 as a < b, a == b, a > b.
int mono_cmp(const Monomial& a, const Monomial& b, const std::vector<long>& weights);

struct Term {
  Monomial m;
  FieldElem c;
  long deg = 0;  // cached weighted degree of m
};

/// Exact multivariate polynomial; terms sorted descending in the ring order,
/// no zero coefficients stored.
class Poly {
 public:
  Poly() = default;
  explicit Poly(PolyRingPtr ring) : ring_(std::move(ring)) {}

  static Poly zero(const PolyRingPtr& ring) { return Poly(ring); }
  static Poly constant(const PolyRingPtr& ring, const FieldElem& c);
  static Poly constant(const PolyRingPtr& ring, long c);
  static Poly variable(const PolyRingPtr& ring, size_t idx, unsigned exp = 1);
  static Poly monomial(const PolyRingPtr& ring, Monomial m, FieldElem c);
  /// Builds from an unsorted term list (combines duplicates, drops zeros).
  static Poly from_terms(const PolyRingPtr& ring, std::vector<Term> terms);

  const PolyRingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;  // zero or a single degree-0 term
  const Term& lead() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly mul_term(const Term& t) const;
  Poly scale(const FieldElem& c) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Common weighted degree of all terms, or nullopt when not homogeneous.
  /// Throws ZeroPolyDegree on the zero polynomial.
  std::optional<long> weighted_degree() const;
  bool is_homogeneous_of(long d) const;  // zero counts as any degree

  std::string str() const;

 private:
  PolyRingPtr ring_;
  std::vector<Term> terms_;

  void check_same(const Poly& o) const {
    if (ring_.get() != o.ring_.get()) fail(Err::RingMismatch, "polynomials over different rings");
  }
};

bool structurally_equal(const Poly& a, const Poly& b);  // ignores ring pointer identity

}  // namespace torhom
