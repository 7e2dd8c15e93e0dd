#pragma once

#include <array>

#include "loqc/detection.hpp"

namespace loqc {

/// Single-mode polarization Pauli-type operations used as heralded local
/// corrections. XZ means Z first, then X.
enum class LocalPauli { I, X, Z, XZ };

std::string pauli_name(LocalPauli p);

/// The 2x2 mode transform realizing the Pauli on one spatial mode.
LinearModeTransform pauli_transform(int spatial, LocalPauli p);

/// (|H..H> + |V..V>)/sqrt2 over the given spatial modes.
PureState ghz_state(const std::vector<int>& spatial_modes);

/// The 6-photon interferometer: three rotated PBSs on input pairs, two PBSs
/// folding modes 1/4 and 1/6, polarization rotators and detectors on modes
/// 1, 4 and 6. Modes 2, 3 and 5 carry the heralded output.
struct GhzCircuit {
  std::vector<LinearModeTransform> transforms;
  std::array<int, 3> detector_modes{};
  std::array<int, 3> output_modes{};
};

GhzCircuit build_ghz_circuit();

struct GhzPatternOutcome {
  DetectionPattern pattern;
  double probability = 0.0;
  WeightedEnsemble corrected;  // normalized conditional, correction applied
  std::array<LocalPauli, 3> correction{};
};

struct GhzFactoryResult {
  double success_probability = 0.0;
  WeightedEnsemble output;  // normalized mixture over modes 2, 3, 5
  std::vector<GhzPatternOutcome> per_pattern;
};

/// True when each of the three detectors registered exactly one photon.
bool is_success_pattern(const DetectionPattern& pattern);

/// Exact enumeration over all source presence patterns.
GhzFactoryResult run_ghz_factory(double eta_s, double eta_d);

/// Runs the circuit on an arbitrary input ensemble over modes 1..6.
GhzFactoryResult run_ghz_factory_on(const WeightedEnsemble& inputs, double eta_d);

/// Runs the circuit on one fixed presence pattern (bit k of the mask marks
/// input mode k+1 occupied), input weight 1.
GhzFactoryResult run_ghz_factory_conditional(unsigned presence_mask, double eta_d);

/// The ideal GHZ state on modes 2, 3, 5 sent through independent loss
/// channels with the given per-photon survival.
WeightedEnsemble analytic_id_ghz(double survival);

/// Per-photon survival of the heralded output state, eta_s/(2 - eta_d*eta_s).
double effective_survival(double eta_s, double eta_d);

/// Checks that sources eta_s with detectors eta_d reproduce the full
/// heralded statistics of sources eta_s*eta_d with perfect detectors,
/// including a subsequent eta_d-efficient measurement of the output modes.
bool verify_equivalence(double eta_s, double eta_d, double tol);

/// Correction mapping the pattern's ideal-case conditional onto the GHZ
/// state on modes 2, 3, 5. Built once by exhaustive search against the
/// perfect-source, perfect-detector simulation. Throws on non-success
/// patterns.
std::array<LocalPauli, 3> local_correction_for_pattern(const DetectionPattern& pattern);

/// Un-normalized heralded weight per output photon sector, indexed by
/// photon count 0..3.
std::array<double, 4> sector_weights(const GhzFactoryResult& result);

}  // namespace loqc
