#include "torhom/ring.hpp"

#include <algorithm>

namespace torhom {

namespace {

GroebnerBasis ideal_groebner(const PolyRingPtr& ring, const std::vector<Poly>& gens) {
  FreeModule F{ring, {0}};
  std::vector<Vec> vs;
  for (const auto& g : gens) {
    Vec v(ring, 1);
    v[0] = g;
    vs.push_back(std::move(v));
  }
  return groebner(F, std::move(vs));
}

Poly ideal_nf(const Poly& p, const GroebnerBasis& G) {
  Vec v(p.ring(), 1);
  v[0] = p;
  return normal_form(v, G)[0];
}

bool ideal_quotient_is_self(const GroebnerBasis& I, const Poly& r) {
  return module_quotient(I, r) == I;
}

}  // namespace

RingPtr QuotientRing::make(PolyRingPtr ambient, std::vector<Poly> ideal_gens,
                           const Options& opts) {
  for (const auto& w : ambient->weights)
    if (w <= 0) fail(Err::NotGraded, "weights must be positive");
  for (const auto& g : ideal_gens) {
    if (g.ring().get() != ambient.get()) fail(Err::RingMismatch, "ideal generator ring mismatch");
    if (g.is_zero()) continue;
    if (!g.weighted_degree()) fail(Err::NotGraded, "ideal generator not homogeneous");
  }

  auto R = std::shared_ptr<QuotientRing>(new QuotientRing());
  R->ambient_ = ambient;
  R->ideal_gens_ = std::move(ideal_gens);
  R->ideal_gb_ = ideal_groebner(ambient, R->ideal_gens_);
  R->dim1_ = opts.dim1;
  R->reduced_ = opts.reduced;

  for (size_t pi = 0; pi < opts.minimal_primes.size(); ++pi) {
    const auto& pgens = opts.minimal_primes[pi];
    PrimeIdeal P;
    P.gens = pgens;
    for (const auto& g : pgens) {
      if (g.is_zero() || !g.weighted_degree())
        fail(Err::DeclaredPrimeInvalid, "prime generator not homogeneous");
    }
    P.gb = ideal_groebner(ambient, pgens);
    for (const auto& g : R->ideal_gens_)
      if (!ideal_nf(g, P.gb).is_zero())
        fail(Err::DeclaredPrimeInvalid, "declared prime does not contain the defining ideal");
    std::string label = "(";
    for (size_t k = 0; k < pgens.size(); ++k) {
      if (k) label += ", ";
      label += pgens[k].str();
    }
    label += ")";
    P.label = label;
    R->primes_.push_back(std::move(P));
  }
  // prime plausibility: (p : g) = p for generators g of the other declared primes
  for (size_t a = 0; a < R->primes_.size(); ++a)
    for (size_t b = 0; b < R->primes_.size(); ++b) {
      if (a == b) continue;
      for (const auto& g : R->primes_[b].gens) {
        if (ideal_nf(g, R->primes_[a].gb).is_zero()) continue;  // g in p, nothing to check
        if (!ideal_quotient_is_self(R->primes_[a].gb, g))
          fail(Err::DeclaredPrimeInvalid,
               "declared prime fails the (p : g) = p plausibility check");
      }
    }

  if (opts.split) {
    HypersurfaceSplit S;
    S.base_gens = opts.split->first;
    S.f = opts.split->second;
    if (S.f.is_zero() || !S.f.weighted_degree())
      fail(Err::NotGraded, "split element not homogeneous");
    for (const auto& g : S.base_gens)
      if (g.is_zero() || !g.weighted_degree()) fail(Err::NotGraded, "split base not homogeneous");
    S.base_gb = ideal_groebner(ambient, S.base_gens);
    if (!ideal_quotient_is_self(S.base_gb, S.f))
      fail(Err::NotNonZeroDivisor, "split element is a zero-divisor modulo the base ideal");
    // base + (f) must present the same ideal
    std::vector<Poly> sum = S.base_gens;
    sum.push_back(S.f);
    if (!(ideal_groebner(ambient, sum) == R->ideal_gb_))
      fail(Err::NotNonZeroDivisor, "split base plus f does not equal the defining ideal");
    R->split_ = std::move(S);
  }
  return R;
}

RingPtr QuotientRing::make(PolyRingPtr ambient, std::vector<Poly> ideal_gens) {
  return make(std::move(ambient), std::move(ideal_gens), Options());
}

Poly QuotientRing::nf(const Poly& p) const { return ideal_nf(p, ideal_gb_); }

Vec QuotientRing::nf_vec(const Vec& v) const {
  Vec r(ambient_, v.rank());
  for (size_t i = 0; i < v.rank(); ++i) r[i] = nf(v[i]);
  return r;
}

bool QuotientRing::is_nonzerodivisor(const Poly& r) const {
  if (nf(r).is_zero()) return false;
  return ideal_quotient_is_self(ideal_gb_, r);
}

std::vector<Poly> QuotientRing::find_nonzerodivisors(size_t count) const {
  std::vector<Poly> found;
  auto consider = [&](const Poly& cand) {
    if (found.size() >= count) return;
    if (is_nonzerodivisor(cand)) found.push_back(nf(cand));
  };
  size_t nv = ambient_->nvars();
  for (size_t i = 0; i < nv && found.size() < count; ++i)
    consider(Poly::variable(ambient_, i));
  static const long combo[] = {-1, 1, 2, -2, 3, -3, 4, -4, 5, -5};
  for (size_t i = 0; i < nv && found.size() < count; ++i)
    for (size_t j = i + 1; j < nv && found.size() < count; ++j) {
      if (ambient_->weights[i] != ambient_->weights[j]) continue;
      for (long b : combo) {
        Poly cand = Poly::variable(ambient_, i) +
                    Poly::variable(ambient_, j).scale(FieldElem::of(ambient_->field, b));
        consider(cand);
        if (found.size() >= count) break;
      }
    }
  long bound = 2 * ambient_->max_weight();
  for (size_t i = 0; i < nv && found.size() < count; ++i)
    for (size_t j = i; j < nv && found.size() < count; ++j) {
      Poly cand = Poly::variable(ambient_, i) * Poly::variable(ambient_, j);
      if (*cand.weighted_degree() > bound) continue;
      consider(cand);
    }
  if (found.size() < count)
    fail(Err::SearchExhausted, "no non-zerodivisor found within the documented search bound");
  return found;
}

Poly QuotientRing::find_nonzerodivisor() const { return find_nonzerodivisors(1)[0]; }

std::vector<Vec> QuotientRing::ideal_block(size_t rank) const {
  // spread the basis of I over the slots; the result is itself a basis of
  // I*F, so callers may treat it as an S-complete prefix
  std::vector<Vec> out;
  for (const auto& g : ideal_gb_.gens) {
    for (size_t i = 0; i < rank; ++i) {
      Vec v(ambient_, rank);
      v[i] = g[0];
      out.push_back(std::move(v));
    }
  }
  return out;
}

RingElem make_elem(const RingPtr& R, const Poly& p) { return RingElem{R, R->nf(p)}; }

}  // namespace torhom
