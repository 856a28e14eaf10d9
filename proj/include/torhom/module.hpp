#pragma once

#include <gmpxx.h>

#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "torhom/ring.hpp"

namespace torhom {

/// Finitely generated graded module over a QuotientRing, given as the cokernel
/// of its presentation matrix (rows = generators). Entries are kept in normal
/// form modulo the defining ideal. Value semantics; cheap to copy.
class PresentedModule {
 public:
  struct Data {
    RingPtr ring;
    PolyMatrix pres;
    std::string provenance;

    // session-scoped memoization; logically const
    mutable std::mutex mu;
    mutable std::shared_ptr<Data> minimized;
    mutable std::shared_ptr<void> resolution;
    mutable std::shared_ptr<GroebnerBasis> relations;
  };

  PresentedModule() = default;

  bool valid() const { return static_cast<bool>(d_); }
  const RingPtr& ring() const { return d_->ring; }
  const PolyMatrix& pres() const { return d_->pres; }
  size_t ngens() const { return d_->pres.rows(); }
  const std::vector<long>& gen_degs() const { return d_->pres.row_degs(); }
  const std::string& provenance() const { return d_->provenance; }
  Data& data() const { return *d_; }

  static PresentedModule wrap(std::shared_ptr<Data> d) {
    PresentedModule m;
    m.d_ = std::move(d);
    return m;
  }
  const std::shared_ptr<Data>& ptr() const { return d_; }

 private:
  std::shared_ptr<Data> d_;
};

/// Builds a module from a presentation matrix. Generator degrees are inferred
/// from the entries when not supplied. Throws NotGraded on inconsistency.
PresentedModule present(const RingPtr& R, PolyMatrix pres,
                        std::optional<std::vector<long>> gen_degs = std::nullopt,
                        std::string provenance = "coker");

/// An ideal (g_1, ..., g_s) of R as the module with those generators; the
/// relations come from one syzygy computation.
PresentedModule present_ideal(const RingPtr& R, const std::vector<Poly>& gens);

PresentedModule free_module(const RingPtr& R, size_t rank, std::vector<long> degs = {});

/// Groebner basis of im(pres) + I*F0 inside F0; cached on the module.
const GroebnerBasis& relations_gb(const PresentedModule& M);

/// Unit-pivot elimination plus zero-column pruning; cokernel is unchanged.
PresentedModule minimize(const PresentedModule& M);

PresentedModule direct_sum(const std::vector<PresentedModule>& Ms);
PresentedModule tensor(const PresentedModule& M, const PresentedModule& N);

struct DualResult {
  PresentedModule module;
  /// Rows are the generator functionals of the dual inside F0*.
  PolyMatrix lifts;
};
DualResult dual(const PresentedModule& M);

PresentedModule transpose(const PresentedModule& M);

std::optional<unsigned long> length_of(const PresentedModule& M);  // nullopt = infinite
bool is_zero_module(const PresentedModule& M);
bool is_free(const PresentedModule& M);

struct TorsionResult {
  PresentedModule torsion;
  bool is_torsion_free;
};
TorsionResult torsion_submodule(const PresentedModule& M);
TorsionResult torsion_submodule_with(const PresentedModule& M, const Poly& t);

/// length over the localization at the declared minimal prime, via generic
/// ranks of the p-adic layers over R/p.
unsigned long rank_at_prime(const PresentedModule& M, size_t prime_index);

struct ClassReport {
  std::vector<std::pair<std::string, unsigned long>> localized_lengths;
  std::vector<std::pair<std::string, unsigned long>> ring_lengths;
  std::optional<mpq_class> ratio;
  bool is_zero_class = false;
  std::optional<bool> has_rank;  // nullopt when the ring is not declared reduced
};
ClassReport reduced_class(const PresentedModule& M);

/// coker of the dual generator lift matrix; the module fits in
/// 0 -> M -> F* -> result -> 0 for torsion-free M with nonzero dual.
PresentedModule pushforward(const PresentedModule& M);

/// Minimal generating set of the span of `gens` plus I*F, graded greedy prune.
std::vector<Vec> minimal_generators(const RingPtr& R, const FreeModule& F,
                                    std::vector<Vec> gens);

/// present() helper: drops columns that reduce to zero mod I.
PolyMatrix hconcat(const PolyMatrix& A, const PolyMatrix& B);

}  // namespace torhom
