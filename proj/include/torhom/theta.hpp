#pragma once

#include "torhom/homology.hpp"

namespace torhom {

enum class ThetaReason { Stable, NotStabilized, InfiniteLength };

const char* theta_reason_name(ThetaReason r);

/// Stabilized difference length(Tor_{2n+2}) - length(Tor_{2n+1}). A value is
/// reported only with a periodicity witness on the resolution tail and a
/// repeated difference across consecutive n.
struct ThetaReport {
  std::optional<long> value;
  TorWindow window;
  std::optional<Periodicity> period;
  ThetaReason reason = ThetaReason::NotStabilized;

  bool defined() const { return value.has_value(); }
};

ThetaReport theta(const PresentedModule& M, const PresentedModule& N, int max_index = 12);

/// theta(dsum(summands), N) == sum of theta(summand, N); exact equality.
/// Throws ThetaUndefined when any of the values is undefined.
bool theta_bilinearity_check(const std::vector<PresentedModule>& summands,
                             const PresentedModule& N, int max_index = 12);

/// Instance check for the tensor-MCM vanishing criterion over a dim-1 ring
/// with a hypersurface split: evaluates the hypotheses (finite Tor lengths in
/// the window, theta = 0, tensor torsion-free and nonzero) and the conclusion
/// (Tor_1..6 = 0, both modules torsion-free). Never a prover.
struct VanishingCheck {
  bool hyp_finite_lengths = false;
  std::optional<bool> hyp_theta_zero;  // nullopt when theta is undefined
  bool hyp_tensor_torsion_free = false;
  bool hyp_tensor_nonzero = false;
  bool concl_tor_vanish = false;
  bool concl_M_torsion_free = false;
  bool concl_N_torsion_free = false;

  std::optional<bool> hypotheses_hold() const {
    if (!hyp_finite_lengths || !hyp_tensor_torsion_free || !hyp_tensor_nonzero) return false;
    if (!hyp_theta_zero) return std::nullopt;
    return *hyp_theta_zero;
  }
  bool conclusion_holds() const {
    return concl_tor_vanish && concl_M_torsion_free && concl_N_torsion_free;
  }
  /// false only on a genuine counterexample instance
  bool consistent() const {
    auto h = hypotheses_hold();
    if (!h || !*h) return true;
    return conclusion_holds();
  }
};

VanishingCheck tor_vanishing_check(const PresentedModule& M, const PresentedModule& N,
                                   int max_index = 12);

/// Torsion test on M (x) M*: a non-free torsion-free module whose tensor with
/// its dual stays torsion-free would contradict the conjecture.
struct HWVerdict {
  bool is_free = false;
  bool is_torsion_free = false;
  bool dual_nonzero = false;
  bool tensor_dual_torsion = false;
  ThetaReport theta_self;
  bool consistent_with_conjecture = true;
};

HWVerdict hw_verdict(const PresentedModule& M, int max_index = 12);

}  // namespace torhom
