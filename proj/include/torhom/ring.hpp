#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "torhom/gb.hpp"

namespace torhom {

class QuotientRing;
using RingPtr = std::shared_ptr<const QuotientRing>;

struct PrimeIdeal {
  std::string label;
  std::vector<Poly> gens;
  GroebnerBasis gb;
};

/// Hypersurface presentation R = S/(f) with S = P/base.
struct HypersurfaceSplit {
  std::vector<Poly> base_gens;
  GroebnerBasis base_gb;
  Poly f;
};

/// Graded quotient R = P/I with validated extras: declared minimal primes,
/// an optional hypersurface split, and the dim-1 / reduced declarations that
/// gate the torsion machinery.
class QuotientRing : public std::enable_shared_from_this<QuotientRing> {
 public:
  struct Options {
    std::vector<std::vector<Poly>> minimal_primes;
    std::optional<std::pair<std::vector<Poly>, Poly>> split;  // (base ideal gens, f)
    bool dim1 = false;
    bool reduced = false;
  };

  static RingPtr make(PolyRingPtr ambient, std::vector<Poly> ideal_gens,
                      const Options& opts);
  static RingPtr make(PolyRingPtr ambient, std::vector<Poly> ideal_gens);

  const PolyRingPtr& ambient() const { return ambient_; }
  const std::vector<Poly>& ideal_gens() const { return ideal_gens_; }
  const GroebnerBasis& ideal_gb() const { return ideal_gb_; }
  const std::vector<PrimeIdeal>& minimal_primes() const { return primes_; }
  const std::optional<HypersurfaceSplit>& split() const { return split_; }
  bool declared_dim1() const { return dim1_; }
  bool declared_reduced() const { return reduced_; }

  Poly nf(const Poly& p) const;
  Vec nf_vec(const Vec& v) const;
  bool is_zero_elem(const Poly& p) const { return nf(p).is_zero(); }

  /// (I : r) = I test; exact and decidable.
  bool is_nonzerodivisor(const Poly& r) const;

  /// Deterministic search: variables in order, then integer combinations
  /// x_i + b*x_j of same-weight pairs with b in -1,1,2,-2,...,5,-5, then
  /// quadratic products x_i*x_j. Throws SearchExhausted past that bound.
  Poly find_nonzerodivisor() const;
  std::vector<Poly> find_nonzerodivisors(size_t count) const;

  /// I*F as elements of the rank-`rank` free module, for adjoining relations.
  std::vector<Vec> ideal_block(size_t rank) const;

 private:
  QuotientRing() = default;

  PolyRingPtr ambient_;
  std::vector<Poly> ideal_gens_;
  GroebnerBasis ideal_gb_;
  std::vector<PrimeIdeal> primes_;
  std::optional<HypersurfaceSplit> split_;
  bool dim1_ = false;
  bool reduced_ = false;
};

struct RingElem {
  RingPtr ring;
  Poly rep;  // normal form modulo the defining ideal
};

RingElem make_elem(const RingPtr& R, const Poly& p);

}  // namespace torhom
