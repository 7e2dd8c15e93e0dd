#pragma once

#include "loqc/fock.hpp"

namespace loqc {

/// Spatial indices at or above this value are reserved for loss modes.
inline constexpr int kLossSpatialBase = 1'000'000;

inline bool is_loss_mode(ModeLabel m) { return m.spatial >= kLossSpatialBase; }

/// Hands out fresh loss-mode spatial indices. One allocator per run keeps
/// loss labels unique without global state.
class LossModeAllocator {
 public:
  int fresh() { return next_++; }

 private:
  int next_ = kLossSpatialBase;
};

/// Linear map over mode creation operators. Columns are input modes, rows
/// are output modes; the matrix must be an isometry. Unitary elements are
/// square; loss elements embed the inputs into a larger output set.
struct LinearModeTransform {
  std::vector<ModeLabel> inputs;
  std::vector<ModeLabel> outputs;
  std::vector<std::vector<Complex>> matrix;  // [output][input]

  bool is_isometry(double tol = 1e-12) const;
};

/// Rewrites every creation operator of the state by its image under the
/// transform and re-expands into the Fock basis. Norm preserving.
PureState apply_transform(const PureState& state, const LinearModeTransform& t);
WeightedEnsemble apply_transform(const WeightedEnsemble& ensemble, const LinearModeTransform& t);

/// Polarizing beamsplitter between spatial modes i and j: transmits H,
/// reflects V.
LinearModeTransform pbs(int i, int j);

/// PBS oriented at 45 degrees between spatial modes i and j.
LinearModeTransform pbs45(int i, int j);

/// 45-degree polarization rotation on one spatial mode:
/// H -> (H+V)/sqrt2, V -> (H-V)/sqrt2.
LinearModeTransform rotate45(int i);

/// Variable beamsplitter modeling loss on spatial mode i: each polarization
/// keeps amplitude sqrt(t) and leaks sqrt(1-t) into a fresh loss mode.
LinearModeTransform variable_bs(int i, double transmissivity, LossModeAllocator& alloc);

/// Groups amplitudes by loss-mode occupation and traces the loss modes out,
/// returning one conditional branch per occupation pattern.
WeightedEnsemble discard_loss_modes(const PureState& state, const std::set<ModeLabel>& loss_modes);
WeightedEnsemble discard_loss_modes(const WeightedEnsemble& ensemble,
                                    const std::set<ModeLabel>& loss_modes);

}  // namespace loqc
