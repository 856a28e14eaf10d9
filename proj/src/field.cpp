#include "torhom/field.hpp"

namespace torhom {

const char* err_name(Err e) {
  switch (e) {
    case Err::RingMismatch: return "RingMismatch";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::NotGraded: return "NotGraded";
    case Err::ZeroPolyDegree: return "ZeroPolyDegree";
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::NotNonZeroDivisor: return "NotNonZeroDivisor";
    case Err::DeclaredPrimeInvalid: return "DeclaredPrimeInvalid";
    case Err::SearchExhausted: return "SearchExhausted";
    case Err::SaturationCapExceeded: return "SaturationCapExceeded";
    case Err::PrimeNotDeclared: return "PrimeNotDeclared";
    case Err::StabilizationCapExceeded: return "StabilizationCapExceeded";
    case Err::TorsionInput: return "TorsionInput";
    case Err::ZeroDual: return "ZeroDual";
    case Err::NotAFactorization: return "NotAFactorization";
    case Err::SizeMismatch: return "SizeMismatch";
    case Err::NotPeriodic: return "NotPeriodic";
    case Err::LiftFailed: return "LiftFailed";
    case Err::ThetaUndefined: return "ThetaUndefined";
    case Err::SyntaxError: return "SyntaxError";
    case Err::UnknownSymbol: return "UnknownSymbol";
    case Err::Unsupported: return "Unsupported";
    case Err::Internal: return "Internal";
  }
  return "Error";
}

namespace {

unsigned long mod_reduce(long v, unsigned long p) {
  long m = v % static_cast<long>(p);
  if (m < 0) m += static_cast<long>(p);
  return static_cast<unsigned long>(m);
}

unsigned long mod_mul(unsigned long a, unsigned long b, unsigned long p) {
  return static_cast<unsigned long>((static_cast<__uint128_t>(a) * b) % p);
}

unsigned long mod_pow(unsigned long a, unsigned long e, unsigned long p) {
  unsigned long r = 1;
  while (e) {
    if (e & 1) r = mod_mul(r, a, p);
    a = mod_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

unsigned long mod_inv(unsigned long a, unsigned long p) {
  if (a == 0) fail(Err::DivisionByZero, "inverse of zero");
  return mod_pow(a, p - 2, p);
}

}  // namespace

FieldElem::FieldElem(const FieldDesc& f, long v) : field_(f) {
  if (f.is_rational())
    q_ = v;
  else
    r_ = mod_reduce(v, f.p);
}

FieldElem FieldElem::of(const FieldDesc& f, const mpq_class& v) {
  FieldElem e(f, 0);
  if (f.is_rational()) {
    e.q_ = v;
    e.q_.canonicalize();
  } else {
    mpz_class num = v.get_num() % static_cast<long>(f.p);
    mpz_class den = v.get_den() % static_cast<long>(f.p);
    unsigned long n = mod_reduce(num.get_si(), f.p);
    unsigned long d = mod_reduce(den.get_si(), f.p);
    e.r_ = mod_mul(n, mod_inv(d, f.p), f.p);
  }
  return e;
}

bool FieldElem::is_zero() const { return field_.is_rational() ? q_ == 0 : r_ == 0; }
bool FieldElem::is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same(o);
  FieldElem e(field_, 0);
  if (field_.is_rational())
    e.q_ = q_ + o.q_;
  else
    e.r_ = (r_ + o.r_) % field_.p;
  return e;
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  check_same(o);
  FieldElem e(field_, 0);
  if (field_.is_rational())
    e.q_ = q_ - o.q_;
  else
    e.r_ = (r_ + field_.p - o.r_) % field_.p;
  return e;
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same(o);
  FieldElem e(field_, 0);
  if (field_.is_rational())
    e.q_ = q_ * o.q_;
  else
    e.r_ = mod_mul(r_, o.r_, field_.p);
  return e;
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inverse(); }

FieldElem FieldElem::operator-() const {
  FieldElem e(field_, 0);
  if (field_.is_rational())
    e.q_ = -q_;
  else
    e.r_ = r_ == 0 ? 0 : field_.p - r_;
  return e;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) fail(Err::DivisionByZero, "inverse of zero");
  FieldElem e(field_, 0);
  if (field_.is_rational())
    e.q_ = 1 / q_;
  else
    e.r_ = mod_inv(r_, field_.p);
  return e;
}

bool FieldElem::operator==(const FieldElem& o) const {
  if (!(field_ == o.field_)) return false;
  return field_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

std::string FieldElem::str() const {
  if (field_.is_rational()) return q_.get_str();
  return std::to_string(r_);
}

}  // namespace torhom
