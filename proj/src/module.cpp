#include "torhom/module.hpp"

#include <algorithm>

namespace torhom {

namespace {

void check_ring(const PresentedModule& a, const PresentedModule& b) {
  if (a.ring().get() != b.ring().get()) fail(Err::RingMismatch, "modules over different rings");
}

}  // namespace

PolyMatrix hconcat(const PolyMatrix& A, const PolyMatrix& B) {
  if (A.rows() != B.rows()) fail(Err::ShapeMismatch, "hconcat row mismatch");
  PolyMatrix r(A.ring(), A.rows(), A.cols() + B.cols());
  r.row_degs() = A.row_degs();
  for (size_t i = 0; i < A.rows(); ++i) {
    for (size_t j = 0; j < A.cols(); ++j) r.at(i, j) = A.at(i, j);
    for (size_t j = 0; j < B.cols(); ++j) r.at(i, A.cols() + j) = B.at(i, j);
  }
  for (size_t j = 0; j < A.cols(); ++j) r.col_degs()[j] = A.col_degs()[j];
  for (size_t j = 0; j < B.cols(); ++j) r.col_degs()[A.cols() + j] = B.col_degs()[j];
  return r;
}

PresentedModule present(const RingPtr& R, PolyMatrix pres,
                        std::optional<std::vector<long>> gen_degs, std::string provenance) {
  if (pres.ring().get() != R->ambient().get())
    fail(Err::RingMismatch, "presentation over a different ambient ring");
  // reduce entries, then validate or infer the grading
  for (size_t i = 0; i < pres.rows(); ++i)
    for (size_t j = 0; j < pres.cols(); ++j) pres.at(i, j) = R->nf(pres.at(i, j));
  if (gen_degs) {
    if (gen_degs->size() != pres.rows()) fail(Err::ShapeMismatch, "one degree per generator");
    pres.row_degs() = *gen_degs;
    for (size_t j = 0; j < pres.cols(); ++j) {
      std::optional<long> cd;
      for (size_t i = 0; i < pres.rows(); ++i) {
        const Poly& p = pres.at(i, j);
        if (p.is_zero()) continue;
        auto d = p.weighted_degree();
        if (!d) fail(Err::NotGraded, "presentation entry not homogeneous");
        long c = *d + pres.row_degs()[i];
        if (cd && *cd != c) fail(Err::NotGraded, "presentation column mixes degrees");
        cd = c;
      }
      pres.col_degs()[j] = cd.value_or(0);
    }
  } else {
    pres.infer_degrees();
  }
  // drop columns that vanished under normal form
  std::vector<size_t> keep;
  for (size_t j = 0; j < pres.cols(); ++j) {
    bool zero = true;
    for (size_t i = 0; i < pres.rows() && zero; ++i)
      if (!pres.at(i, j).is_zero()) zero = false;
    if (!zero) keep.push_back(j);
  }
  if (keep.size() != pres.cols()) {
    PolyMatrix q(pres.ring(), pres.rows(), keep.size());
    q.row_degs() = pres.row_degs();
    for (size_t k = 0; k < keep.size(); ++k) {
      for (size_t i = 0; i < pres.rows(); ++i) q.at(i, k) = pres.at(i, keep[k]);
      q.col_degs()[k] = pres.col_degs()[keep[k]];
    }
    pres = std::move(q);
  }
  auto d = std::make_shared<PresentedModule::Data>();
  d->ring = R;
  d->pres = std::move(pres);
  d->provenance = std::move(provenance);
  return PresentedModule::wrap(std::move(d));
}

PresentedModule present_ideal(const RingPtr& R, const std::vector<Poly>& gens) {
  const auto& ring = R->ambient();
  std::vector<Poly> nz;
  for (const auto& g : gens) {
    Poly n = R->nf(g);
    if (!n.is_zero()) nz.push_back(std::move(n));
  }
  if (nz.empty()) return present(R, PolyMatrix(ring, 0, 0), std::vector<long>{}, "ideal");
  PolyMatrix row(ring, 1, nz.size());
  row.row_degs() = {0};
  std::vector<long> gdegs;
  for (size_t j = 0; j < nz.size(); ++j) {
    auto d = nz[j].weighted_degree();
    if (!d) fail(Err::NotGraded, "ideal generator not homogeneous");
    row.at(0, j) = nz[j];
    row.col_degs()[j] = *d;
    gdegs.push_back(*d);
  }
  std::vector<Vec> ib1 = R->ideal_block(1);
  PolyMatrix rel = syzygy_matrix(row, ib1, ib1.size());
  // relations as a map onto generators: rows = ideal generators
  PolyMatrix pres(ring, nz.size(), rel.cols());
  pres.row_degs() = gdegs;
  for (size_t i = 0; i < nz.size(); ++i)
    for (size_t j = 0; j < rel.cols(); ++j) pres.at(i, j) = rel.at(i, j);
  pres.col_degs() = rel.col_degs();
  return present(R, std::move(pres), gdegs, "ideal");
}

PresentedModule free_module(const RingPtr& R, size_t rank, std::vector<long> degs) {
  if (degs.empty()) degs.assign(rank, 0);
  PolyMatrix pres(R->ambient(), rank, 0);
  pres.row_degs() = degs;
  return present(R, std::move(pres), degs, "free");
}

const GroebnerBasis& relations_gb(const PresentedModule& M) {
  auto& data = M.data();
  std::scoped_lock lk(data.mu);
  if (!data.relations) {
    const RingPtr& R = M.ring();
    FreeModule F{R->ambient(), M.gen_degs()};
    std::vector<Vec> gens = R->ideal_block(M.ngens());
    size_t prefix = gens.size();
    for (auto& v : matrix_cols(M.pres())) gens.push_back(std::move(v));
    data.relations = std::make_shared<GroebnerBasis>(groebner_seeded(F, std::move(gens), prefix));
  }
  return *data.relations;
}

PresentedModule minimize(const PresentedModule& M) {
  {
    std::scoped_lock lk(M.data().mu);
    if (M.data().minimized) return PresentedModule::wrap(M.data().minimized);
  }
  const RingPtr& R = M.ring();
  PolyMatrix A = M.pres();
  std::string ops;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < A.rows() && !changed; ++i)
      for (size_t j = 0; j < A.cols() && !changed; ++j) {
        const Poly& piv = A.at(i, j);
        if (piv.is_zero() || !piv.is_constant()) continue;
        FieldElem c = piv.lead().c;
        // clear row i across the other columns, then column j across rows
        for (size_t j2 = 0; j2 < A.cols(); ++j2) {
          if (j2 == j || A.at(i, j2).is_zero()) continue;
          Poly m = A.at(i, j2).scale(c.inverse());
          for (size_t i2 = 0; i2 < A.rows(); ++i2)
            A.at(i2, j2) = R->nf(A.at(i2, j2) - A.at(i2, j) * m);
        }
        for (size_t i2 = 0; i2 < A.rows(); ++i2) {
          if (i2 == i) continue;
          A.at(i2, j) = Poly::zero(A.ring());
        }
        ops += "pivot(" + std::to_string(i) + "," + std::to_string(j) + ");";
        // delete generator i and relation j
        PolyMatrix B(A.ring(), A.rows() - 1, A.cols() - 1);
        size_t ri = 0;
        for (size_t i2 = 0; i2 < A.rows(); ++i2) {
          if (i2 == i) continue;
          size_t cj = 0;
          for (size_t j2 = 0; j2 < A.cols(); ++j2) {
            if (j2 == j) continue;
            B.at(ri, cj) = A.at(i2, j2);
            ++cj;
          }
          B.row_degs()[ri] = A.row_degs()[i2];
          ++ri;
        }
        size_t cj = 0;
        for (size_t j2 = 0; j2 < A.cols(); ++j2) {
          if (j2 == j) continue;
          B.col_degs()[cj++] = A.col_degs()[j2];
        }
        A = std::move(B);
        changed = true;
      }
  }
  std::vector<long> degs = A.row_degs();
  PresentedModule out =
      present(R, std::move(A), degs, M.provenance() + (ops.empty() ? "" : "|min:" + ops));
  {
    std::scoped_lock lk(M.data().mu);
    if (!M.data().minimized) M.data().minimized = out.ptr();
    return PresentedModule::wrap(M.data().minimized);
  }
}

PresentedModule direct_sum(const std::vector<PresentedModule>& Ms) {
  if (Ms.empty()) fail(Err::ShapeMismatch, "empty direct sum");
  PresentedModule acc = Ms[0];
  PolyMatrix A = Ms[0].pres();
  for (size_t k = 1; k < Ms.size(); ++k) {
    check_ring(Ms[0], Ms[k]);
    A = A.direct_sum(Ms[k].pres());
  }
  return present(Ms[0].ring(), A, A.row_degs(), "dsum");
}

PresentedModule tensor(const PresentedModule& M, const PresentedModule& N) {
  check_ring(M, N);
  const RingPtr& R = M.ring();
  size_t m = M.ngens(), n = N.ngens();
  if (m == 0 || n == 0) return present(R, PolyMatrix(R->ambient(), 0, 0), std::vector<long>{}, "tensor");
  PolyMatrix left = M.pres().kron_id_right(n, N.gen_degs());
  PolyMatrix right = N.pres().kron_id_left(m, M.gen_degs());
  PolyMatrix pres = hconcat(left, right);
  return present(R, std::move(pres), left.row_degs(), "tensor");
}

std::vector<Vec> minimal_generators(const RingPtr& R, const FreeModule& F,
                                    std::vector<Vec> gens) {
  // sort by degree, then by original index, and greedily drop anything already
  // in the span of the accepted generators plus I*F
  std::vector<std::pair<long, size_t>> order;
  for (size_t k = 0; k < gens.size(); ++k) {
    auto d = gens[k].degree(F.gen_degs);
    if (!d) fail(Err::NotGraded, "generator not homogeneous");
    order.push_back({*d, k});
  }
  std::sort(order.begin(), order.end());
  std::vector<Vec> accepted;
  GroebnerBasis G = groebner(F, R->ideal_block(F.rank()));
  for (auto [deg, k] : order) {
    const Vec& v = gens[k];
    if (v.is_zero() || member(v, G)) continue;
    accepted.push_back(v);
    G = groebner_extend(G, {v});
  }
  return accepted;
}

std::optional<unsigned long> length_of(const PresentedModule& M) {
  if (M.ngens() == 0) return 0;
  FreeModule F{M.ring()->ambient(), M.gen_degs()};
  return kdim_quotient(F, relations_gb(M));
}

bool is_zero_module(const PresentedModule& M) {
  if (M.ngens() == 0) return true;
  const GroebnerBasis& G = relations_gb(M);
  for (size_t i = 0; i < M.ngens(); ++i)
    if (!member(Vec::unit(M.ring()->ambient(), M.ngens(), i), G)) return false;
  return true;
}

bool is_free(const PresentedModule& M) { return minimize(M).pres().cols() == 0; }

TorsionResult torsion_submodule_with(const PresentedModule& M, const Poly& t) {
  const RingPtr& R = M.ring();
  if (!R->declared_dim1())
    fail(Err::Unsupported, "torsion computation needs a ring declared dim 1 Cohen-Macaulay");
  if (!R->is_nonzerodivisor(t)) fail(Err::NotNonZeroDivisor, "torsion test element is a zero-divisor");
  size_t m = M.ngens();
  if (m == 0)
    return {present(R, PolyMatrix(R->ambient(), 0, 0), std::vector<long>{}, "torsion"), true};
  const GroebnerBasis& U = relations_gb(M);
  GroebnerBasis W = saturate(U, t);
  std::vector<Vec> kept;
  for (const auto& w : W.gens)
    if (!member(w, U)) kept.push_back(w);
  if (kept.empty())
    return {present(R, PolyMatrix(R->ambient(), 0, 0), std::vector<long>{}, "torsion"), true};
  PolyMatrix Wm = vecs_to_matrix(R->ambient(), m, M.gen_degs(), kept);
  PolyMatrix rel = syzygy_matrix(Wm, U.gens, U.gens.size());
  PresentedModule T = present(R, rel, rel.row_degs(), "torsion");
  return {std::move(T), false};
}

TorsionResult torsion_submodule(const PresentedModule& M) {
  return torsion_submodule_with(M, M.ring()->find_nonzerodivisor());
}

namespace {

/// Rank of C over the fraction field of P/p via bordered minors; zero tests
/// are normal forms modulo the prime's basis.
size_t rank_mod_prime(const PolyMatrix& C, const GroebnerBasis& pgb) {
  auto nf_zero = [&](const Poly& q) {
    Vec v(q.ring(), 1);
    v[0] = q;
    return normal_form(v, pgb)[0].is_zero();
  };
  size_t rows = C.rows(), cols = C.cols();
  std::vector<size_t> ri, ci;
  while (true) {
    bool extended = false;
    for (size_t r = 0; r < rows && !extended; ++r) {
      if (std::find(ri.begin(), ri.end(), r) != ri.end()) continue;
      for (size_t c = 0; c < cols && !extended; ++c) {
        if (std::find(ci.begin(), ci.end(), c) != ci.end()) continue;
        std::vector<size_t> r2 = ri, c2 = ci;
        r2.push_back(r);
        c2.push_back(c);
        PolyMatrix sub(C.ring(), r2.size(), c2.size());
        for (size_t a = 0; a < r2.size(); ++a)
          for (size_t b = 0; b < c2.size(); ++b) sub.at(a, b) = C.at(r2[a], c2[b]);
        if (!nf_zero(determinant(sub))) {
          ri = std::move(r2);
          ci = std::move(c2);
          extended = true;
        }
      }
    }
    if (!extended) return ri.size();
  }
}

std::vector<Vec> power_products(const RingPtr& R, const std::vector<Poly>& pgens,
                                size_t power, size_t rank) {
  // all products of `power` prime generators (with repetition), one per slot
  std::vector<Poly> prods;
  if (power == 0) {
    prods.push_back(Poly::constant(R->ambient(), 1));
  } else if (!pgens.empty()) {
    std::vector<size_t> idx;
    auto rec = [&](auto&& self, size_t from) -> void {
      if (idx.size() == power) {
        Poly q = Poly::constant(R->ambient(), 1);
        for (size_t t : idx) q = q * pgens[t];
        prods.push_back(std::move(q));
        return;
      }
      for (size_t t = from; t < pgens.size(); ++t) {
        idx.push_back(t);
        self(self, t);
        idx.pop_back();
      }
    };
    rec(rec, 0);
  }
  std::vector<Vec> out;
  for (const auto& q : prods)
    for (size_t i = 0; i < rank; ++i) {
      Vec v(R->ambient(), rank);
      v[i] = q;
      out.push_back(std::move(v));
    }
  return out;
}

size_t layer_generic_rank(const PresentedModule& M, const PrimeIdeal& p, size_t layer) {
  const RingPtr& R = M.ring();
  size_t m = M.ngens();
  if (p.gens.empty() && layer > 0) return 0;  // zero prime has no positive powers
  std::vector<Vec> gens = power_products(R, p.gens, layer, m);
  std::vector<Vec> next = power_products(R, p.gens, layer + 1, m);
  for (const auto& u : relations_gb(M).gens) next.push_back(u);
  PolyMatrix G = vecs_to_matrix(R->ambient(), m, M.gen_degs(), gens);
  PolyMatrix rel = syzygy_matrix(G, next);
  // presentation of the layer over P/p
  PolyMatrix C(rel.ring(), rel.rows(), rel.cols());
  C.row_degs() = rel.row_degs();
  C.col_degs() = rel.col_degs();
  for (size_t i = 0; i < rel.rows(); ++i)
    for (size_t j = 0; j < rel.cols(); ++j) {
      Vec v(rel.ring(), 1);
      v[0] = rel.at(i, j);
      C.at(i, j) = normal_form(v, p.gb)[0];
    }
  size_t r = rank_mod_prime(C, p.gb);
  return gens.size() - r;
}

}  // namespace

unsigned long rank_at_prime(const PresentedModule& M, size_t prime_index) {
  const RingPtr& R = M.ring();
  if (prime_index >= R->minimal_primes().size())
    fail(Err::PrimeNotDeclared, "prime index out of range");
  const PrimeIdeal& p = R->minimal_primes()[prime_index];
  if (M.ngens() == 0) return 0;
  unsigned long total = 0;
  size_t zero_run = 0;
  for (size_t layer = 0; layer < 16; ++layer) {
    size_t r = layer_generic_rank(M, p, layer);
    total += r;
    zero_run = (r == 0) ? zero_run + 1 : 0;
    if (zero_run >= 2) return total;
    if (p.gens.empty() && layer >= 1) return total;  // no higher layers over the zero prime
  }
  fail(Err::StabilizationCapExceeded, "rank layers did not stabilize within 16 steps");
}

ClassReport reduced_class(const PresentedModule& M) {
  const RingPtr& R = M.ring();
  if (R->minimal_primes().empty())
    fail(Err::PrimeNotDeclared, "no minimal primes declared for this ring");
  ClassReport rep;
  PresentedModule Rfree = free_module(R, 1);
  bool consistent = true;
  std::optional<mpq_class> ratio;
  for (size_t i = 0; i < R->minimal_primes().size(); ++i) {
    unsigned long lm = rank_at_prime(M, i);
    unsigned long lr = rank_at_prime(Rfree, i);
    rep.localized_lengths.push_back({R->minimal_primes()[i].label, lm});
    rep.ring_lengths.push_back({R->minimal_primes()[i].label, lr});
    mpq_class q(static_cast<long>(lm), static_cast<long>(lr));
    q.canonicalize();
    if (!ratio)
      ratio = q;
    else if (*ratio != q)
      consistent = false;
  }
  rep.is_zero_class = consistent;
  rep.ratio = consistent ? ratio : std::nullopt;
  if (R->declared_reduced()) rep.has_rank = rep.is_zero_class;
  return rep;
}

DualResult dual(const PresentedModule& M) {
  const RingPtr& R = M.ring();
  size_t m = M.ngens();
  if (m == 0) {
    return {present(R, PolyMatrix(R->ambient(), 0, 0), std::vector<long>{}, "dual"),
            PolyMatrix(R->ambient(), 0, 0)};
  }
  PolyMatrix At = M.pres().transpose();
  std::vector<Vec> ib = R->ideal_block(At.rows());
  PolyMatrix K = syzygy_matrix(At, ib, ib.size());
  // kernel generators, reduced and pruned to a minimal set
  FreeModule Fdual{R->ambient(), At.col_degs()};
  std::vector<Vec> kept = minimal_generators(R, Fdual, matrix_cols(K));
  if (kept.empty()) {
    return {present(R, PolyMatrix(R->ambient(), 0, 0), std::vector<long>{}, "dual"),
            PolyMatrix(R->ambient(), 0, 0)};
  }
  PolyMatrix Vm = vecs_to_matrix(R->ambient(), m, Fdual.gen_degs, kept);
  std::vector<Vec> ibm = R->ideal_block(m);
  PolyMatrix rel = syzygy_matrix(Vm, ibm, ibm.size());
  PresentedModule Mstar = present(R, rel, rel.row_degs(), "dual");
  return {std::move(Mstar), Vm.transpose()};
}

PresentedModule transpose(const PresentedModule& M) {
  PresentedModule Mm = minimize(M);
  PolyMatrix At = Mm.pres().transpose();
  return present(M.ring(), At, At.row_degs(), "transpose");
}

PresentedModule pushforward(const PresentedModule& M) {
  TorsionResult t = torsion_submodule(M);
  if (!t.is_torsion_free) fail(Err::TorsionInput, "pushforward requires a torsion-free module");
  DualResult D = dual(M);
  if (D.lifts.rows() == 0) fail(Err::ZeroDual, "pushforward requires a nonzero dual");
  return present(M.ring(), D.lifts, D.lifts.row_degs(), "pushforward");
}

}  // namespace torhom
