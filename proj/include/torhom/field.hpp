#pragma once

#include <gmpxx.h>

#include <string>

#include "torhom/errors.hpp"

namespace torhom {

/// Coefficient field of a session: the rationals (p == 0) or Z/p for a prime p > 3.
struct FieldDesc {
  unsigned long p = 0;

  bool is_rational() const { return p == 0; }
  bool operator==(const FieldDesc&) const = default;
  std::string name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }
};

/// An exact scalar. Rationals are kept canonical by GMP (lowest terms,
/// positive denominator); prime-field values are reduced representatives in [0, p).
class FieldElem {
 public:
  FieldElem() = default;  // zero of Q

  static FieldElem zero(const FieldDesc& f) { return FieldElem(f, 0); }
  static FieldElem one(const FieldDesc& f) { return FieldElem(f, 1); }
  static FieldElem of(const FieldDesc& f, long v) { return FieldElem(f, v); }
  static FieldElem of(const FieldDesc& f, const mpq_class& v);

  const FieldDesc& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;
  const mpq_class& rational() const { return q_; }
  unsigned long residue() const { return r_; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem inverse() const;

  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  std::string str() const;

 private:
  FieldElem(const FieldDesc& f, long v);

  FieldDesc field_;
  mpq_class q_ = 0;       // used when field_.p == 0
  unsigned long r_ = 0;   // used when field_.p > 0

  void check_same(const FieldElem& o) const {
    if (!(field_ == o.field_)) fail(Err::RingMismatch, "field mismatch");
  }
};

}  // namespace torhom
