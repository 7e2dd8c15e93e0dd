#pragma once

#include "loqc/ghz.hpp"

namespace loqc {

/// An ideal entangled state together with the per-photon loss rate of the
/// independent loss channels acting on it.
struct IdState {
  PureState ideal;
  double epsilon = 0.0;
};

/// Sends every spatial mode of the ideal state through an independent loss
/// channel of rate epsilon and traces out the lost photons.
WeightedEnsemble id_expand(const IdState& state);
WeightedEnsemble id_expand(const PureState& ideal, double epsilon);

struct FusionResult {
  double success_probability = 0.0;
  WeightedEnsemble fused;  // normalized, on surviving modes, corrections applied
  double failure_probability = 0.0;
};

/// Type-II fusion: rotated PBS between mode_a and mode_b followed by
/// eta_d-efficient polarization-resolving detection of both spatial modes.
/// Success requires exactly one photon at each detector; all other outcomes
/// are failures and the involved states are discarded.
FusionResult type_ii_fuse(const WeightedEnsemble& a, int mode_a, const WeightedEnsemble& b,
                          int mode_b, double eta_d);

/// Fusion success probability on independently degraded inputs:
/// (1-epsilon)^2 * eta_d^2 / 2.
double p_ii(double epsilon, double eta_d);

/// Fuses GHZ_n and GHZ_m after independent degradation at rate epsilon and
/// checks that the success-conditioned output equals the independently
/// degraded GHZ_{n+m-2} at the same rate, with success probability
/// p_ii(epsilon, eta_d).
bool verify_id_preservation(int n, int m, double epsilon, double eta_d, double tol);

}  // namespace loqc
