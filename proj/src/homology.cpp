#include "torhom/homology.hpp"

#include <algorithm>

namespace torhom {

namespace {

struct ResCache {
  std::mutex mu;
  Resolution res;
  bool initialized = false;
};

ResCache& cache_of(const PresentedModule& M) {
  auto& data = M.data();
  std::scoped_lock lk(data.mu);
  if (!data.resolution) data.resolution = std::make_shared<ResCache>();
  return *std::static_pointer_cast<ResCache>(data.resolution);
}

/// Next differential: a minimal generating set of ker(d mod I) as columns.
PolyMatrix kernel_step(const RingPtr& R, const PolyMatrix& d) {
  std::vector<Vec> iblock = R->ideal_block(d.rows());
  PolyMatrix K = syzygy_matrix(d, iblock, iblock.size());
  std::vector<Vec> cand;
  for (auto& v : matrix_cols(K)) {
    Vec n = R->nf_vec(v);
    if (!n.is_zero()) cand.push_back(std::move(n));
  }
  FreeModule F{R->ambient(), d.col_degs()};
  std::vector<Vec> mins = minimal_generators(R, F, std::move(cand));
  return vecs_to_matrix(R->ambient(), d.cols(), d.col_degs(), mins);
}

void extend_resolution(Resolution& res, const PresentedModule& M, int n) {
  const RingPtr& R = M.ring();
  if (res.diffs.empty() && res.degs.empty()) {
    PresentedModule Mm = minimize(M);
    res.ring = R;
    res.degs.push_back(Mm.gen_degs());
    // prune the minimized presentation columns to a minimal generating set of
    // the relation submodule
    FreeModule F0{R->ambient(), Mm.gen_degs()};
    std::vector<Vec> cols;
    for (auto& v : matrix_cols(Mm.pres())) {
      Vec nv = R->nf_vec(v);
      if (!nv.is_zero()) cols.push_back(std::move(nv));
    }
    std::vector<Vec> mins = minimal_generators(R, F0, std::move(cols));
    PolyMatrix d1 = vecs_to_matrix(R->ambient(), Mm.ngens(), Mm.gen_degs(), mins);
    res.degs.push_back(d1.col_degs());
    res.diffs.push_back(std::move(d1));
  }
  while (res.computed() < n) {
    const PolyMatrix& last = res.diffs.back();
    PolyMatrix next = kernel_step(R, last);
    // exactness guard: d_i * d_{i+1} must vanish mod I
    PolyMatrix prod = last.mul(next);
    for (size_t i = 0; i < prod.rows(); ++i)
      for (size_t j = 0; j < prod.cols(); ++j)
        if (!R->nf(prod.at(i, j)).is_zero())
          fail(Err::Internal, "resolution differentials do not compose to zero");
    res.degs.push_back(next.col_degs());
    res.diffs.push_back(std::move(next));
  }
}

}  // namespace

Resolution resolve(const PresentedModule& M, int n) {
  if (n < 1) fail(Err::ShapeMismatch, "resolution depth must be at least 1");
  ResCache& c = cache_of(M);
  std::scoped_lock lk(c.mu);
  extend_resolution(c.res, M, n);
  Resolution out;
  out.ring = c.res.ring;
  out.diffs.assign(c.res.diffs.begin(), c.res.diffs.begin() + n);
  out.degs.assign(c.res.degs.begin(), c.res.degs.begin() + n + 1);
  return out;
}

BettiTable betti(const PresentedModule& M, int n) {
  Resolution res = resolve(M, n);
  BettiTable t;
  for (int i = 0; i <= n; ++i) {
    unsigned long total = 0;
    for (long d : res.degs[i]) {
      ++t.entries[{i, d}];
      ++total;
    }
    t.totals.push_back(total);
  }
  return t;
}

std::optional<Periodicity> detect_periodicity(const Resolution& res) {
  int n = res.computed();
  // degenerate zero tail: all ranks vanish from some start <= 6
  for (int s = 1; s <= 6 && s + 1 <= n; ++s) {
    bool zero = true;
    for (int i = s; i <= n && zero; ++i)
      if (res.rank(i) != 0) zero = false;
    if (zero) return Periodicity{s, 1, true};
  }
  auto shifted_eq = [&](int i, int p) {
    // compare d_{i+p} with d_i up to one uniform degree shift
    const PolyMatrix& a = res.diffs[i - 1];
    const PolyMatrix& b = res.diffs[i + p - 1];
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    if (!(a == b)) return false;
    if (a.rows() == 0 && a.cols() == 0) return true;
    std::optional<long> shift;
    for (size_t k = 0; k < a.rows(); ++k) {
      long d = res.degs[i + p - 1][k] - res.degs[i - 1][k];
      if (shift && *shift != d) return false;
      shift = d;
    }
    for (size_t k = 0; k < a.cols(); ++k) {
      long d = res.degs[i + p][k] - res.degs[i][k];
      if (shift && *shift != d) return false;
      shift = d;
    }
    return true;
  };
  for (int p = 1; p <= 2; ++p)
    for (int s = 1; s <= 6; ++s) {
      if (s + 2 * p > n) continue;  // need two full periods of evidence
      bool ok = true;
      for (int i = s; i + p <= n && ok; ++i)
        if (!shifted_eq(i, p)) ok = false;
      if (ok) return Periodicity{s, p, false};
    }
  return std::nullopt;
}

namespace {

PresentedModule subquotient_presentation(const RingPtr& R, const PolyMatrix& gens_matrix,
                                         std::vector<Vec> modulo, size_t prefix,
                                         const char* tag) {
  PolyMatrix rel = syzygy_matrix(gens_matrix, modulo, prefix);
  return present(R, rel, rel.row_degs(), tag);
}

PresentedModule zero_module(const RingPtr& R, const char* tag) {
  return present(R, PolyMatrix(R->ambient(), 0, 0), std::vector<long>{}, tag);
}

}  // namespace

PresentedModule tor(const PresentedModule& M, const PresentedModule& N, int i) {
  if (i < 1) fail(Err::ShapeMismatch, "tor index must be at least 1");
  if (M.ring().get() != N.ring().get()) fail(Err::RingMismatch, "tor over different rings");
  const RingPtr& R = M.ring();
  Resolution res = resolve(M, i + 1);
  size_t fi = res.rank(i);
  size_t n = N.ngens();
  if (fi == 0 || n == 0) return zero_module(R, "tor");

  PolyMatrix Di = res.diffs[i - 1].kron_id_right(n, N.gen_degs());
  PolyMatrix Di1 = res.diffs[i].kron_id_right(n, N.gen_degs());
  size_t up_rank = res.rank(i - 1) * n;

  std::vector<Vec> target_rels;  // relations of F_{i-1} (x) N, ideal block first
  size_t prefix = 0;
  if (up_rank > 0) {
    for (auto& v : R->ideal_block(up_rank)) target_rels.push_back(std::move(v));
    prefix = target_rels.size();
    for (auto& v : matrix_cols(N.pres().kron_id_left(res.rank(i - 1), res.degs[i - 1])))
      target_rels.push_back(std::move(v));
  }
  PolyMatrix K = syzygy_matrix(Di, target_rels, prefix);
  std::vector<Vec> kept;
  for (auto& v : matrix_cols(K)) {
    Vec nv = R->nf_vec(v);
    if (!nv.is_zero()) kept.push_back(std::move(nv));
  }
  if (kept.empty()) return zero_module(R, "tor");
  PolyMatrix Km = vecs_to_matrix(R->ambient(), fi * n, Di.col_degs(), kept);

  std::vector<Vec> modulo = R->ideal_block(fi * n);
  size_t mprefix = modulo.size();
  for (auto& v : matrix_cols(Di1)) modulo.push_back(std::move(v));
  for (auto& v : matrix_cols(N.pres().kron_id_left(fi, res.degs[i])))
    modulo.push_back(std::move(v));
  return subquotient_presentation(R, Km, std::move(modulo), mprefix, "tor");
}

TorWindow tor_lengths(const PresentedModule& M, const PresentedModule& N, int lo, int hi) {
  if (lo < 1 || hi < lo) fail(Err::ShapeMismatch, "bad tor window");
  resolve(M, hi + 1);  // fill the cache once
  TorWindow w;
  w.lo = lo;
  w.hi = hi;
  for (int i = lo; i <= hi; ++i) w.lengths.push_back(length_of(tor(M, N, i)));
  return w;
}

PresentedModule ext_ring(const PresentedModule& M, int i) {
  if (i < 1) fail(Err::ShapeMismatch, "ext index must be at least 1");
  const RingPtr& R = M.ring();
  Resolution res = resolve(M, i + 1);
  size_t fi = res.rank(i);
  if (fi == 0) return zero_module(R, "ext");
  PolyMatrix Dt_up = res.diffs[i].transpose();        // F_i* -> F_{i+1}*
  PolyMatrix Dt_dn = res.diffs[i - 1].transpose();    // F_{i-1}* -> F_i*
  std::vector<Vec> iblock_up = R->ideal_block(Dt_up.rows());
  PolyMatrix K = syzygy_matrix(Dt_up, iblock_up, iblock_up.size());
  std::vector<Vec> kept;
  for (auto& v : matrix_cols(K)) {
    Vec nv = R->nf_vec(v);
    if (!nv.is_zero()) kept.push_back(std::move(nv));
  }
  if (kept.empty()) return zero_module(R, "ext");
  PolyMatrix Km = vecs_to_matrix(R->ambient(), fi, Dt_up.col_degs(), kept);
  std::vector<Vec> modulo = R->ideal_block(fi);
  size_t mprefix = modulo.size();
  for (auto& v : matrix_cols(Dt_dn)) modulo.push_back(std::move(v));
  return subquotient_presentation(R, Km, std::move(modulo), mprefix, "ext");
}

PresentedModule syzygy_module(const PresentedModule& M, int k) {
  if (k < 1) fail(Err::ShapeMismatch, "syzygy index must be at least 1");
  Resolution res = resolve(M, k + 1);
  if (res.rank(k) == 0) return zero_module(M.ring(), "syzygy");
  return present(M.ring(), res.diffs[k], res.degs[k], "syzygy");
}

PresentedModule tr_omega_tr_omega(const PresentedModule& omega) {
  PresentedModule x = minimize(omega);
  if (is_zero_module(x) || is_free(x)) return zero_module(omega.ring(), "trotr");
  x = syzygy_module(x, 1);
  x = transpose(minimize(x));
  if (is_zero_module(x)) return zero_module(omega.ring(), "trotr");
  x = syzygy_module(x, 1);
  x = transpose(minimize(x));
  return minimize(x);
}

}  // namespace torhom
