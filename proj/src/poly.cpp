#include "torhom/poly.hpp"

#include <algorithm>
#include <sstream>

namespace torhom {

long PolyRing::max_weight() const {
  long m = 1;
  for (long w : weights) m = std::max(m, w);
  return m;
}

int PolyRing::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

PolyRingPtr make_poly_ring(std::vector<std::string> vars, std::vector<long> weights,
                           FieldDesc field) {
  if (vars.size() != weights.size()) fail(Err::ShapeMismatch, "one weight per variable");
  for (long w : weights)
    if (w <= 0) fail(Err::NotGraded, "weights must be positive");
  auto r = std::make_shared<PolyRing>();
  r->vars = std::move(vars);
  r->weights = std::move(weights);
  r->field = field;
  return r;
}

bool Monomial::is_one() const {
  for (unsigned x : e)
    if (x) return false;
  return true;
}

long wdeg(const Monomial& m, const std::vector<long>& weights) {
  long d = 0;
  for (size_t i = 0; i < m.e.size(); ++i) d += static_cast<long>(m.e[i]) * weights[i];
  return d;
}

Monomial mono_one(size_t nvars) { return Monomial{std::vector<unsigned>(nvars, 0)}; }

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] += b.e[i];
  return r;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.e.size(); ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
  Monomial r = b;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] -= a.e[i];
  return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(r.e[i], b.e[i]);
  return r;
}

int mono_cmp(const Monomial& a, const Monomial& b, const std::vector<long>& weights) {
  long da = wdeg(a, weights), db = wdeg(b, weights);
  if (da != db) return da < db ? -1 : 1;
  for (size_t i = a.e.size(); i-- > 0;) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
  }
  return 0;
}

Poly Poly::constant(const PolyRingPtr& ring, const FieldElem& c) {
  Poly p(ring);
  if (!c.is_zero()) p.terms_.push_back(Term{mono_one(ring->nvars()), c, 0});
  return p;
}

Poly Poly::constant(const PolyRingPtr& ring, long c) {
  return constant(ring, FieldElem::of(ring->field, c));
}

Poly Poly::variable(const PolyRingPtr& ring, size_t idx, unsigned exp) {
  Monomial m = mono_one(ring->nvars());
  m.e[idx] = exp;
  return monomial(ring, m, FieldElem::one(ring->field));
}

Poly Poly::monomial(const PolyRingPtr& ring, Monomial m, FieldElem c) {
  Poly p(ring);
  if (!c.is_zero()) {
    long d = wdeg(m, ring->weights);
    p.terms_.push_back(Term{std::move(m), std::move(c), d});
  }
  return p;
}

Poly Poly::from_terms(const PolyRingPtr& ring, std::vector<Term> terms) {
  for (auto& t : terms) t.deg = wdeg(t.m, ring->weights);
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return mono_cmp(a.m, b.m, ring->weights) > 0;
  });
  Poly p(ring);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m)
      p.terms_.back().c = p.terms_.back().c + t.c;
    else
      p.terms_.push_back(std::move(t));
    if (!p.terms_.empty() && p.terms_.back().c.is_zero()) p.terms_.pop_back();
  }
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
}

const Term& Poly::lead() const {
  if (terms_.empty()) fail(Err::Internal, "lead term of zero polynomial");
  return terms_[0];
}

Poly Poly::operator+(const Poly& o) const {
  check_same(o);
  Poly r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  const auto& w = ring_->weights;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i == terms_.size())
      c = -1;
    else if (j == o.terms_.size())
      c = 1;
    else
      c = mono_cmp(terms_[i].m, o.terms_[j].m, w);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      FieldElem s = terms_[i].c + o.terms_[j].c;
      if (!s.is_zero()) r.terms_.push_back(Term{terms_[i].m, s, terms_[i].deg});
      ++i, ++j;
    }
  }
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

Poly Poly::mul_term(const Term& t) const {
  Poly r(ring_);
  if (t.c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& s : terms_) {
    FieldElem c = s.c * t.c;
    if (!c.is_zero()) r.terms_.push_back(Term{mono_mul(s.m, t.m), c, s.deg + t.deg});
  }
  return r;  // order preserved: multiplication by a monomial is order-compatible
}

Poly Poly::scale(const FieldElem& c) const {
  Poly r(ring_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& s : terms_) r.terms_.push_back(Term{s.m, s.c * c, s.deg});
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check_same(o);
  Poly acc(ring_);
  // multiply by the shorter operand termwise
  const Poly& a = terms_.size() <= o.terms_.size() ? *this : o;
  const Poly& b = terms_.size() <= o.terms_.size() ? o : *this;
  for (const auto& t : a.terms_) acc = acc + b.mul_term(t);
  return acc;
}

bool Poly::operator==(const Poly& o) const {
  if (ring_.get() != o.ring_.get()) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].m == o.terms_[i].m) || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

std::optional<long> Poly::weighted_degree() const {
  if (terms_.empty()) fail(Err::ZeroPolyDegree, "zero polynomial has no degree");
  long d = terms_[0].deg;
  for (const auto& t : terms_)
    if (t.deg != d) return std::nullopt;
  return d;
}

bool Poly::is_homogeneous_of(long d) const {
  for (const auto& t : terms_)
    if (t.deg != d) return false;
  return true;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    FieldElem c = t.c;
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) {
        os << "-";
        cs = cs.substr(1);
      }
    } else {
      os << (neg ? " - " : " + ");
      if (neg) cs = cs.substr(1);
    }
    first = false;
    bool unit_coeff = (cs == "1");
    bool any_var = !t.m.is_one();
    if (!unit_coeff || !any_var) os << cs;
    bool started = !unit_coeff || !any_var;
    for (size_t i = 0; i < t.m.e.size(); ++i) {
      if (!t.m.e[i]) continue;
      if (started) os << "*";
      os << ring_->vars[i];
      if (t.m.e[i] > 1) os << "^" << t.m.e[i];
      started = true;
    }
  }
  return os.str();
}

bool structurally_equal(const Poly& a, const Poly& b) {
  if (!a.ring() || !b.ring()) return !a.ring() && !b.ring();
  if (!a.ring()->same_structure(*b.ring())) return false;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  if (ta.size() != tb.size()) return false;
  for (size_t i = 0; i < ta.size(); ++i)
    if (!(ta[i].m == tb[i].m) || ta[i].c.str() != tb[i].c.str()) return false;
  return true;
}

}  // namespace torhom
