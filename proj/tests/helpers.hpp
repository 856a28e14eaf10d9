#pragma once

#include <string>
#include <vector>

#include "torhom/session.hpp"

namespace th = torhom;

/// Shared corpus fixtures: the rings every suite exercises, built once.
namespace fixtures {

inline th::PolyRingPtr P2() {
  static th::PolyRingPtr p = th::make_poly_ring({"x", "y"}, {1, 1}, {});
  return p;
}

inline th::Poly pp(const th::PolyRingPtr& ring, const std::string& s) {
  return th::parse_poly(s, ring);
}

/// Q[x,y]/(xy(x-y)), the three-line hypersurface; primes (x), (y), (x-y).
inline th::RingPtr R1() {
  static th::RingPtr r = [] {
    auto P = P2();
    th::QuotientRing::Options o;
    o.minimal_primes = {{pp(P, "x")}, {pp(P, "y")}, {pp(P, "x-y")}};
    o.split = {{std::vector<th::Poly>{}, pp(P, "x*y*(x-y)")}};
    o.dim1 = true;
    o.reduced = true;
    return th::QuotientRing::make(P, {pp(P, "x*y*(x-y)")}, o);
  }();
  return r;
}

/// Q[x,y]/(xy), the two coordinate axes.
inline th::RingPtr R2() {
  static th::RingPtr r = [] {
    auto P = P2();
    th::QuotientRing::Options o;
    o.minimal_primes = {{pp(P, "x")}, {pp(P, "y")}};
    o.split = {{std::vector<th::Poly>{}, pp(P, "x*y")}};
    o.dim1 = true;
    o.reduced = true;
    return th::QuotientRing::make(P, {pp(P, "x*y")}, o);
  }();
  return r;
}

/// Q[x,y,z]/(xz-y^2, x^3-z^2) with weights (4,5,6): the semigroup ring of
/// <4,5,6>. A complete intersection domain; its one minimal prime is the
/// defining ideal itself.
inline th::RingPtr R3() {
  static th::RingPtr r = [] {
    auto P = th::make_poly_ring({"x", "y", "z"}, {4, 5, 6}, {});
    th::QuotientRing::Options o;
    o.minimal_primes = {{pp(P, "x*z-y^2"), pp(P, "x^3-z^2")}};
    o.split = {{std::vector<th::Poly>{pp(P, "x*z-y^2")}, pp(P, "x^3-z^2")}};
    o.dim1 = true;
    o.reduced = true;
    return th::QuotientRing::make(P, {pp(P, "x*z-y^2"), pp(P, "x^3-z^2")}, o);
  }();
  return r;
}

/// Q[x,y,z]/(y^2-xz, x^3-yz, x^2y-z^2) with weights (3,4,5): the semigroup
/// ring of <3,4,5>, a non-Gorenstein domain.
inline th::RingPtr R4() {
  static th::RingPtr r = [] {
    auto P = th::make_poly_ring({"x", "y", "z"}, {3, 4, 5}, {});
    th::QuotientRing::Options o;
    o.minimal_primes = {
        {pp(P, "y^2-x*z"), pp(P, "x^3-y*z"), pp(P, "x^2*y-z^2")}};
    o.dim1 = true;
    o.reduced = true;
    return th::QuotientRing::make(
        P, {pp(P, "y^2-x*z"), pp(P, "x^3-y*z"), pp(P, "x^2*y-z^2")}, o);
  }();
  return r;
}

/// Q[x,y]/(x^2): the non-reduced guard ring.
inline th::RingPtr R5() {
  static th::RingPtr r = [] {
    auto P = P2();
    th::QuotientRing::Options o;
    o.minimal_primes = {{pp(P, "x")}};
    o.split = {{std::vector<th::Poly>{}, pp(P, "x^2")}};
    o.dim1 = true;
    return th::QuotientRing::make(P, {pp(P, "x^2")}, o);
  }();
  return r;
}

inline th::PresentedModule quotient_module(const th::RingPtr& R, const std::string& g) {
  th::PolyMatrix A(R->ambient(), 1, 1);
  A.at(0, 0) = pp(R->ambient(), g);
  return th::present(R, A, std::nullopt, "R/(" + g + ")");
}

inline th::PresentedModule residue_field(const th::RingPtr& R) {
  size_t n = R->ambient()->nvars();
  th::PolyMatrix A(R->ambient(), 1, n);
  for (size_t j = 0; j < n; ++j) A.at(0, j) = th::Poly::variable(R->ambient(), j);
  return th::present(R, A, std::nullopt, "k");
}

}  // namespace fixtures
