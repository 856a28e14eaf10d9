#pragma once

#include <map>

#include "torhom/module.hpp"

namespace torhom {

/// Minimal graded free resolution over R, computed incrementally and cached on
/// the module. diffs[i] is d_{i+1}: F_{i+1} -> F_i; degs[i] holds the
/// generator degrees of F_i. d_i * d_{i+1} reduces to zero modulo I.
struct Resolution {
  RingPtr ring;
  std::vector<PolyMatrix> diffs;
  std::vector<std::vector<long>> degs;

  int computed() const { return static_cast<int>(diffs.size()); }
  size_t rank(int i) const {
    return i < static_cast<int>(degs.size()) ? degs[i].size() : 0;
  }
};

Resolution resolve(const PresentedModule& M, int n);

struct BettiTable {
  std::map<std::pair<int, long>, unsigned long> entries;  // (index, degree) -> count
  std::vector<unsigned long> totals;                      // per homological index

  bool operator==(const BettiTable& o) const {
    return entries == o.entries && totals == o.totals;
  }
};

BettiTable betti(const PresentedModule& M, int n);

struct Periodicity {
  int start;
  int period;
  bool degenerate = false;  // zero tail

  bool operator==(const Periodicity&) const = default;
};

/// Smallest (start <= 6, period in {1,2}) such that the differentials repeat
/// exactly up to a uniform degree shift over the computed window. A vanishing
/// tail reports the degenerate period-1 witness.
std::optional<Periodicity> detect_periodicity(const Resolution& res);

PresentedModule tor(const PresentedModule& M, const PresentedModule& N, int i);

struct TorWindow {
  int lo = 1, hi = 0;
  std::vector<std::optional<unsigned long>> lengths;  // nullopt = infinite

  bool any_infinite() const {
    for (const auto& l : lengths)
      if (!l) return true;
    return false;
  }
  std::optional<unsigned long> at(int i) const { return lengths.at(i - lo); }
};

TorWindow tor_lengths(const PresentedModule& M, const PresentedModule& N, int lo, int hi);

PresentedModule ext_ring(const PresentedModule& M, int i);

/// k-th syzygy in the minimal resolution, presented by d_{k+1}.
PresentedModule syzygy_module(const PresentedModule& M, int k);

/// transpose(syzygy(transpose(syzygy(omega)))) with minimization between steps.
PresentedModule tr_omega_tr_omega(const PresentedModule& omega);

}  // namespace torhom
