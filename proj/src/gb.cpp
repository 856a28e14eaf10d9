#include "torhom/gb.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace torhom {

Vec::Vec(PolyRingPtr ring, size_t rank) : ring_(std::move(ring)) {
  c_.assign(rank, Poly(ring_));
}

Vec Vec::unit(const PolyRingPtr& ring, size_t rank, size_t pos) {
  Vec v(ring, rank);
  v.c_[pos] = Poly::constant(ring, 1);
  return v;
}

bool Vec::is_zero() const {
  for (const auto& p : c_)
    if (!p.is_zero()) return false;
  return true;
}

size_t Vec::lead_pos() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return i;
  return c_.size();
}

Vec Vec::operator+(const Vec& o) const {
  Vec r(ring_, c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

Vec Vec::operator-(const Vec& o) const {
  Vec r(ring_, c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

Vec Vec::mul_term(const Term& t) const {
  Vec r(ring_, c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i].mul_term(t);
  return r;
}

Vec Vec::scale(const FieldElem& c) const {
  Vec r(ring_, c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i].scale(c);
  return r;
}

bool Vec::operator==(const Vec& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (!(c_[i] == o.c_[i])) return false;
  return true;
}

std::optional<long> Vec::degree(const std::vector<long>& gen_degs) const {
  std::optional<long> d;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    auto pd = c_[i].weighted_degree();
    if (!pd) return std::nullopt;
    long e = *pd + gen_degs[i];
    if (d && *d != e) return std::nullopt;
    d = e;
  }
  return d ? d : std::optional<long>(0);
}

namespace {

struct LeadRef {
  size_t pos;
  Monomial m;
  long deg;  // weighted degree of the lead monomial plus generator degree
};

LeadRef lead_of(const Vec& v, const std::vector<long>& gen_degs) {
  size_t p = v.lead_pos();
  const Term& t = v[p].lead();
  return LeadRef{p, t.m, t.deg + gen_degs[p]};
}

/// Divisibility index: lead references bucketed by position.
struct Reducer {
  std::vector<std::vector<std::pair<Monomial, size_t>>> by_pos;

  Reducer(size_t rank, const std::vector<LeadRef>& leads) : by_pos(rank) {
    for (size_t k = 0; k < leads.size(); ++k)
      by_pos[leads[k].pos].push_back({leads[k].m, k});
  }
  int find(size_t pos, const Monomial& m) const {
    for (const auto& [lm, k] : by_pos[pos])
      if (mono_divides(lm, m)) return static_cast<int>(k);
    return -1;
  }
};

/// One full-reduction pass: rewrites v so that no term in any slot is divisible
/// by a basis lead term. Canonical for auto-reduced bases.
Vec reduce_full(Vec v, const std::vector<Vec>& basis, const std::vector<LeadRef>& leads,
                const Reducer& red) {
  const PolyRingPtr& ring = v.ring();
  const auto& weights = ring->weights;
  Vec out(ring, v.rank());
  while (!v.is_zero()) {
    size_t pos = v.lead_pos();
    const Term& lt = v[pos].lead();
    int k = red.find(pos, lt.m);
    if (k >= 0) {
      Term q{mono_div(lt.m, leads[k].m), lt.c, lt.deg - wdeg(leads[k].m, weights)};
      v = v - basis[k].mul_term(q);
    } else {
      // move the irreducible lead term into the output and continue with the rest
      out[pos] = out[pos] + Poly::monomial(ring, lt.m, lt.c);
      v[pos] = v[pos] - Poly::monomial(ring, lt.m, lt.c);
    }
  }
  return out;
}

Vec reduce_full(Vec v, const std::vector<Vec>& basis, const std::vector<LeadRef>& leads,
                const std::vector<long>& /*gen_degs*/) {
  if (basis.empty()) return v;
  Reducer red(v.rank(), leads);
  return reduce_full(std::move(v), basis, leads, red);
}

Vec make_monic(Vec v) {
  size_t p = v.lead_pos();
  if (p == v.rank()) return v;
  return v.scale(v[p].lead().c.inverse());
}

bool lead_less(const Vec& a, const Vec& b, const std::vector<long>& weights) {
  size_t pa = a.lead_pos(), pb = b.lead_pos();
  if (pa != pb) return pa < pb;
  if (pa == a.rank()) return false;
  return mono_cmp(a[pa].lead().m, b[pb].lead().m, weights) > 0;
}

/// Reduction variant that never uses basis element `exclude`.
Vec reduce_full_excluding(Vec v, const std::vector<Vec>& basis,
                          const std::vector<LeadRef>& leads, const Reducer& red,
                          size_t exclude) {
  const PolyRingPtr& ring = v.ring();
  const auto& weights = ring->weights;
  Vec out(ring, v.rank());
  while (!v.is_zero()) {
    size_t pos = v.lead_pos();
    const Term& lt = v[pos].lead();
    int found = -1;
    for (const auto& [lm, k] : red.by_pos[pos])
      if (k != exclude && mono_divides(lm, lt.m)) {
        found = static_cast<int>(k);
        break;
      }
    if (found >= 0) {
      Term q{mono_div(lt.m, leads[found].m), lt.c, lt.deg - wdeg(leads[found].m, weights)};
      v = v - basis[found].mul_term(q);
    } else {
      out[pos] = out[pos] + Poly::monomial(ring, lt.m, lt.c);
      v[pos] = v[pos] - Poly::monomial(ring, lt.m, lt.c);
    }
  }
  return out;
}

/// Auto-reduce: drop redundant lead terms, tail-reduce, sort, make monic.
std::vector<Vec> autoreduce(std::vector<Vec> g, const FreeModule& F) {
  const auto& weights = F.ring->weights;
  // drop elements whose lead term is divisible by another's
  std::vector<Vec> kept;
  for (size_t i = 0; i < g.size(); ++i) {
    if (g[i].is_zero()) continue;
    size_t pi = g[i].lead_pos();
    const Monomial& mi = g[i][pi].lead().m;
    bool redundant = false;
    for (size_t j = 0; j < g.size(); ++j) {
      if (i == j || g[j].is_zero()) continue;
      size_t pj = g[j].lead_pos();
      if (pj != pi) continue;
      const Monomial& mj = g[j][pj].lead().m;
      if (mono_divides(mj, mi)) {
        if (!(mj == mi)) {
          redundant = true;
          break;
        }
        // equal leads: keep the earlier one
        if (j < i) {
          redundant = true;
          break;
        }
      }
    }
    if (!redundant) kept.push_back(g[i]);
  }
  // tail-reduce each element against all the others, in place
  std::vector<LeadRef> leads;
  for (const auto& v : kept) leads.push_back(lead_of(v, F.gen_degs));
  Reducer red(F.rank(), leads);
  std::vector<Vec> out;
  for (size_t i = 0; i < kept.size(); ++i) {
    Vec r = reduce_full_excluding(kept[i], kept, leads, red, i);
    if (!r.is_zero()) out.push_back(make_monic(r));
  }
  std::sort(out.begin(), out.end(),
            [&](const Vec& a, const Vec& b) { return lead_less(a, b, weights); });
  return out;
}

}  // namespace

bool GroebnerBasis::operator==(const GroebnerBasis& o) const {
  if (gens.size() != o.gens.size()) return false;
  for (size_t i = 0; i < gens.size(); ++i)
    if (!(gens[i] == o.gens[i])) return false;
  return true;
}

namespace {

/// Buchberger completion. Pairs among the first `presize` generators are
/// assumed to reduce to zero already (warm start).
GroebnerBasis complete_basis(const FreeModule& F, std::vector<Vec> input, size_t presize) {
  const auto& weights = F.ring->weights;
  for (const auto& v : input) {
    if (v.rank() != F.rank()) fail(Err::ShapeMismatch, "generator rank mismatch");
    if (!v.degree(F.gen_degs)) fail(Err::NotGraded, "generator not homogeneous");
  }

  std::vector<Vec> g;
  std::vector<LeadRef> leads;
  std::unique_ptr<Reducer> red;
  auto insert = [&](Vec v) {
    v = make_monic(std::move(v));
    leads.push_back(lead_of(v, F.gen_degs));
    red->by_pos[leads.back().pos].push_back({leads.back().m, g.size()});
    g.push_back(std::move(v));
  };
  size_t kept_presize = 0;
  {
    std::vector<Vec> nonzero;
    for (size_t k = 0; k < input.size(); ++k) {
      if (input[k].is_zero()) continue;
      nonzero.push_back(std::move(input[k]));
      if (k < presize) ++kept_presize;
    }
    red = std::make_unique<Reducer>(F.rank(), std::vector<LeadRef>{});
    red->by_pos.assign(F.rank(), {});
    for (auto& v : nonzero) insert(std::move(v));
  }

  struct Pair {
    size_t i, j;
    Monomial lcm;
    long deg;
  };
  auto pair_less = [&](const Pair& a, const Pair& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  };
  std::vector<Pair> queue;
  std::set<std::pair<size_t, size_t>> processed;
  auto add_pairs_for = [&](size_t j, size_t lo) {
    for (size_t i = lo; i < j; ++i) {
      if (leads[i].pos != leads[j].pos) continue;
      Monomial l = mono_lcm(leads[i].m, leads[j].m);
      long d = wdeg(l, weights) + F.gen_degs[leads[i].pos];
      queue.push_back(Pair{i, j, std::move(l), d});
    }
  };
  for (size_t j = 0; j < g.size(); ++j)
    add_pairs_for(j, j < kept_presize ? j : 0);  // skip pre-verified pairs
  std::sort(queue.begin(), queue.end(), pair_less);

  size_t guard = 0;
  while (!queue.empty()) {
    if (++guard > 2000000) fail(Err::Internal, "Buchberger loop guard tripped");
    auto it = std::min_element(queue.begin(), queue.end(), pair_less);
    Pair p = *it;
    queue.erase(it);

    // chain criterion, conservative form: only genuinely reduced companion
    // pairs justify a skip, so skips can never justify each other
    bool skip = false;
    for (size_t k = 0; k < g.size() && !skip; ++k) {
      if (k == p.i || k == p.j || leads[k].pos != leads[p.i].pos) continue;
      if (!mono_divides(leads[k].m, p.lcm)) continue;
      auto key = [](size_t a, size_t b) {
        return std::pair<size_t, size_t>(std::min(a, b), std::max(a, b));
      };
      if (processed.count(key(p.i, k)) && processed.count(key(p.j, k))) skip = true;
    }
    if (skip) continue;
    processed.insert({p.i, p.j});

    const Vec& vi = g[p.i];
    const Vec& vj = g[p.j];
    Term ti{mono_div(p.lcm, leads[p.i].m), FieldElem::one(F.ring->field),
            wdeg(p.lcm, weights) - wdeg(leads[p.i].m, weights)};
    Term tj{mono_div(p.lcm, leads[p.j].m), FieldElem::one(F.ring->field),
            wdeg(p.lcm, weights) - wdeg(leads[p.j].m, weights)};
    Vec s = vi.mul_term(ti) - vj.mul_term(tj);
    Vec r = reduce_full(std::move(s), g, leads, *red);
    if (!r.is_zero()) {
      insert(std::move(r));
      add_pairs_for(g.size() - 1, 0);
    }
  }

  GroebnerBasis out{F, autoreduce(std::move(g), F)};
  return out;
}

}  // namespace

GroebnerBasis groebner(const FreeModule& F, std::vector<Vec> input) {
  return complete_basis(F, std::move(input), 0);
}

GroebnerBasis groebner_extend(const GroebnerBasis& base, std::vector<Vec> extra) {
  std::vector<Vec> input = base.gens;
  size_t presize = input.size();
  for (auto& v : extra) input.push_back(std::move(v));
  return complete_basis(base.ambient, std::move(input), presize);
}

GroebnerBasis groebner_seeded(const FreeModule& F, std::vector<Vec> gens,
                              size_t complete_prefix) {
  return complete_basis(F, std::move(gens), complete_prefix);
}

Vec normal_form(const Vec& v, const GroebnerBasis& G) {
  if (v.rank() != G.ambient.rank()) fail(Err::ShapeMismatch, "normal form rank mismatch");
  std::vector<LeadRef> leads;
  for (const auto& w : G.gens) leads.push_back(lead_of(w, G.ambient.gen_degs));
  return reduce_full(v, G.gens, leads, G.ambient.gen_degs);
}

bool member(const Vec& v, const GroebnerBasis& G) { return normal_form(v, G).is_zero(); }

size_t verify_spairs(const GroebnerBasis& G) {
  const auto& weights = G.ambient.ring->weights;
  std::vector<LeadRef> leads;
  for (const auto& w : G.gens) leads.push_back(lead_of(w, G.ambient.gen_degs));
  size_t checked = 0;
  for (size_t i = 0; i < G.gens.size(); ++i)
    for (size_t j = i + 1; j < G.gens.size(); ++j) {
      if (leads[i].pos != leads[j].pos) continue;
      Monomial l = mono_lcm(leads[i].m, leads[j].m);
      Term ti{mono_div(l, leads[i].m), FieldElem::one(G.ambient.ring->field),
              wdeg(l, weights) - wdeg(leads[i].m, weights)};
      Term tj{mono_div(l, leads[j].m), FieldElem::one(G.ambient.ring->field),
              wdeg(l, weights) - wdeg(leads[j].m, weights)};
      Vec s = G.gens[i].mul_term(ti) - G.gens[j].mul_term(tj);
      if (!reduce_full(std::move(s), G.gens, leads, G.ambient.gen_degs).is_zero())
        fail(Err::Internal, "S-pair does not reduce to zero");
      ++checked;
    }
  return checked;
}

std::vector<Vec> matrix_cols(const PolyMatrix& A) {
  std::vector<Vec> out;
  for (size_t j = 0; j < A.cols(); ++j) {
    Vec v(A.ring(), A.rows());
    for (size_t i = 0; i < A.rows(); ++i) v[i] = A.at(i, j);
    out.push_back(std::move(v));
  }
  return out;
}

PolyMatrix vecs_to_matrix(const PolyRingPtr& ring, size_t rank,
                          const std::vector<long>& row_degs, const std::vector<Vec>& vs) {
  PolyMatrix m(ring, rank, vs.size());
  m.row_degs() = row_degs;
  for (size_t j = 0; j < vs.size(); ++j) {
    for (size_t i = 0; i < rank; ++i) m.at(i, j) = vs[j][i];
    auto d = vs[j].degree(row_degs);
    m.col_degs()[j] = d ? *d : 0;
  }
  return m;
}

namespace {

/// Shared elimination setup: basis of the span of {(A_j, e_j)} and {(b, 0)}
/// in F (+) R^cols, F slots first so they dominate the tag slots. The first
/// `complete_prefix` modulo elements are trusted to be S-complete.
GroebnerBasis tagged_basis(const PolyMatrix& A, const std::vector<Vec>& modulo,
                           size_t complete_prefix) {
  const PolyRingPtr& ring = A.ring();
  size_t r = A.rows(), m = A.cols();
  FreeModule big{ring, {}};
  big.gen_degs = A.row_degs();
  big.gen_degs.insert(big.gen_degs.end(), A.col_degs().begin(), A.col_degs().end());
  std::vector<Vec> gens;
  for (const auto& b : modulo) {
    if (b.rank() != r) fail(Err::ShapeMismatch, "modulo element rank mismatch");
    Vec v(ring, r + m);
    for (size_t i = 0; i < r; ++i) v[i] = b[i];
    gens.push_back(std::move(v));
  }
  for (size_t j = 0; j < m; ++j) {
    Vec v(ring, r + m);
    for (size_t i = 0; i < r; ++i) v[i] = A.at(i, j);
    v[r + j] = Poly::constant(ring, 1);
    gens.push_back(std::move(v));
  }
  return groebner_seeded(big, std::move(gens), std::min(complete_prefix, modulo.size()));
}

}  // namespace

PolyMatrix syzygy_matrix(const PolyMatrix& A, const std::vector<Vec>& modulo,
                         size_t complete_prefix) {
  size_t r = A.rows(), m = A.cols();
  GroebnerBasis G = tagged_basis(A, modulo, complete_prefix);
  std::vector<Vec> syz;
  for (const auto& g : G.gens) {
    bool top_zero = true;
    for (size_t i = 0; i < r && top_zero; ++i)
      if (!g[i].is_zero()) top_zero = false;
    if (!top_zero) continue;
    Vec u(A.ring(), m);
    for (size_t j = 0; j < m; ++j) u[j] = g[r + j];
    if (!u.is_zero()) syz.push_back(std::move(u));
  }
  return vecs_to_matrix(A.ring(), m, A.col_degs(), syz);
}

std::optional<Vec> express(const PolyMatrix& A, const std::vector<Vec>& modulo,
                           const Vec& target, size_t complete_prefix) {
  size_t r = A.rows(), m = A.cols();
  if (target.rank() != r) fail(Err::ShapeMismatch, "target rank mismatch");
  GroebnerBasis G = tagged_basis(A, modulo, complete_prefix);
  Vec big(A.ring(), r + m);
  for (size_t i = 0; i < r; ++i) big[i] = target[i];
  Vec red = normal_form(big, G);
  for (size_t i = 0; i < r; ++i)
    if (!red[i].is_zero()) return std::nullopt;
  // target = A*(-tags) modulo span(modulo)
  Vec u(A.ring(), m);
  for (size_t j = 0; j < m; ++j) u[j] = -red[r + j];
  return u;
}

GroebnerBasis module_quotient(const GroebnerBasis& U, const Poly& t) {
  if (t.is_zero()) fail(Err::DivisionByZero, "module quotient by zero");
  const FreeModule& F = U.ambient;
  size_t r = F.rank();
  auto td = t.weighted_degree();
  if (!td) fail(Err::NotGraded, "quotient by inhomogeneous element");
  // columns t*e_i tagged, U untagged: syzygy tags v satisfy t*v in span(U)
  PolyMatrix tid(F.ring, r, r);
  tid.row_degs() = F.gen_degs;
  for (size_t i = 0; i < r; ++i) {
    tid.at(i, i) = t;
    tid.col_degs()[i] = F.gen_degs[i] + *td;
  }
  // U is a basis already, so its internal pairs can be skipped
  PolyMatrix q = syzygy_matrix(tid, U.gens, U.gens.size());
  return groebner(F, matrix_cols(q));
}

GroebnerBasis saturate(const GroebnerBasis& U, const Poly& t) {
  GroebnerBasis cur = U;
  for (int step = 0; step < 64; ++step) {
    GroebnerBasis next = module_quotient(cur, t);
    if (next == cur) return cur;
    cur = std::move(next);
  }
  fail(Err::SaturationCapExceeded, "saturation did not stabilize in 64 steps");
}

std::optional<unsigned long> kdim_quotient(const FreeModule& F, const GroebnerBasis& U) {
  size_t nv = F.ring->nvars();
  unsigned long total = 0;
  for (size_t pos = 0; pos < F.rank(); ++pos) {
    std::vector<Monomial> leads;
    bool unit_lead = false;
    for (const auto& g : U.gens) {
      if (g.lead_pos() != pos) continue;
      const Monomial& m = g[pos].lead().m;
      if (m.is_one()) unit_lead = true;
      leads.push_back(m);
    }
    if (unit_lead) continue;  // this slot contributes nothing
    // finite iff some pure power of every variable leads
    std::vector<unsigned> bound(nv, 0);
    for (size_t v = 0; v < nv; ++v) {
      unsigned best = 0;
      bool found = false;
      for (const auto& m : leads) {
        bool pure = true;
        for (size_t w = 0; w < nv; ++w)
          if (w != v && m.e[w]) pure = false;
        if (pure && m.e[v]) {
          if (!found || m.e[v] < best) best = m.e[v];
          found = true;
        }
      }
      if (!found) return std::nullopt;
      bound[v] = best;
    }
    // walk the finite box, count monomials not divisible by any lead
    Monomial cur = mono_one(nv);
    while (true) {
      bool divisible = false;
      for (const auto& m : leads)
        if (mono_divides(m, cur)) {
          divisible = true;
          break;
        }
      if (!divisible) ++total;
      size_t v = 0;
      while (v < nv) {
        if (++cur.e[v] < bound[v]) break;
        cur.e[v] = 0;
        ++v;
      }
      if (v == nv) break;
    }
  }
  return total;
}

}  // namespace torhom
