#pragma once

#include <functional>
#include <string>

#include "loqc/elements.hpp"

namespace loqc {

/// A bank of heralded single-photon sources, each emitting an H photon into
/// its mode with probability eta_s and vacuum otherwise.
struct SourceBankSpec {
  std::vector<ModeLabel> modes;
  double eta_s = 1.0;
};

/// One branch per presence pattern, 2^n in total (zero-weight branches are
/// dropped).
WeightedEnsemble source_bank(const SourceBankSpec& spec);

/// Enumerates the presence patterns of a source bank in mask order; bit k of
/// the mask marks mode k present. Used to drive restricted-input runs.
PureState presence_state(const std::vector<ModeLabel>& modes, unsigned mask);

struct DetectorSpec {
  int spatial = 0;
  double eta_d = 1.0;
  bool number_resolving = true;
};

/// Photon counts registered by one detector, per polarization.
struct DetectorCounts {
  int spatial = 0;
  int n_h = 0;
  int n_v = 0;

  friend auto operator<=>(const DetectorCounts&, const DetectorCounts&) = default;
};

/// Full detection pattern: one entry per detector, sorted by spatial index.
using DetectionPattern = std::vector<DetectorCounts>;

std::string pattern_to_string(const DetectionPattern& p);

struct DetectionOutcome {
  DetectionPattern pattern;
  double probability = 0.0;
  WeightedEnsemble conditional;  // normalized, detector and loss modes removed
};

/// Inserts an eta_d loss beamsplitter in front of each perfect detector and
/// projects onto photon-number eigenstates per polarization. Probabilities
/// are exact sums over branches; no sampling. Outcomes come back in
/// canonical pattern order.
std::vector<DetectionOutcome> detect(const WeightedEnsemble& ensemble,
                                     const std::vector<DetectorSpec>& detectors);

struct PostSelection {
  double probability = 0.0;
  WeightedEnsemble state;  // normalized mixture of matching conditionals
  bool heralded = false;   // false when no outcome matched
};

PostSelection post_select(const std::vector<DetectionOutcome>& outcomes,
                          const std::function<bool(const DetectionPattern&)>& predicate);

}  // namespace loqc
