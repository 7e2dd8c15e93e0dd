#include "loqc/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loqc {

namespace {

std::set<int> ensemble_spatial_modes(const WeightedEnsemble& e) {
  std::set<int> out;
  for (const Branch& b : e.branches) {
    for (int s : b.state.spatial_modes()) out.insert(s);
  }
  return out;
}

bool fusion_success(const DetectionPattern& pattern) {
  if (pattern.size() != 2) return false;
  for (const DetectorCounts& d : pattern) {
    if (d.n_h + d.n_v != 1) return false;
  }
  return true;
}

struct SideCorrection {
  bool apply_x = false;  // flip H/V on every surviving mode of the side
  bool apply_z = false;  // phase-flip V on one surviving mode of the side
};

SideCorrection decompose(LocalPauli p) {
  switch (p) {
    case LocalPauli::I: return {false, false};
    case LocalPauli::X: return {true, false};
    case LocalPauli::Z: return {false, true};
    case LocalPauli::XZ: return {true, true};
  }
  return {};
}

PureState apply_side_correction(PureState state, const std::vector<int>& survivors,
                                const SideCorrection& c) {
  if (c.apply_z && !survivors.empty()) {
    state = apply_transform(state, pauli_transform(survivors.front(), LocalPauli::Z));
  }
  if (c.apply_x) {
    for (int s : survivors) {
      state = apply_transform(state, pauli_transform(s, LocalPauli::X));
    }
  }
  return state;
}

using PatternKey = std::pair<Pol, Pol>;  // polarization seen at detector a, detector b

/// Heralded corrections reconstructed by exhaustive search against the
/// ideal Bell-projection semantics (two perfect Bell pairs, perfect
/// detectors), then frozen.
const std::map<PatternKey, std::pair<LocalPauli, LocalPauli>>& fusion_corrections() {
  static const auto table = [] {
    std::map<PatternKey, std::pair<LocalPauli, LocalPauli>> t;
    const PureState bell_a = ghz_state({1, 2});
    const PureState bell_b = ghz_state({3, 4});
    const PureState target = ghz_state({1, 4});
    PureState joint = tensor(bell_a, bell_b);
    joint = apply_transform(joint, pbs45(2, 3));
    const std::vector<DetectionOutcome> outcomes =
        detect(WeightedEnsemble::pure(std::move(joint)), {{2, 1.0}, {3, 1.0}});
    const std::array<LocalPauli, 4> candidates{LocalPauli::I, LocalPauli::X, LocalPauli::Z,
                                               LocalPauli::XZ};
    for (const DetectionOutcome& o : outcomes) {
      if (!fusion_success(o.pattern)) continue;
      const PatternKey key{o.pattern[0].n_v == 1 ? Pol::V : Pol::H,
                           o.pattern[1].n_v == 1 ? Pol::V : Pol::H};
      bool found = false;
      for (LocalPauli pa : candidates) {
        for (LocalPauli pb : candidates) {
          PureState corrected = apply_side_correction(o.conditional.branches.front().state, {1},
                                                      decompose(pa));
          corrected = apply_side_correction(std::move(corrected), {4}, decompose(pb));
          if (std::abs(std::abs(inner_product(target, corrected)) - 1.0) < 1e-9) {
            t[key] = {pa, pb};
            found = true;
          }
          if (found) break;
        }
        if (found) break;
      }
      if (!found) throw std::logic_error("no fusion correction found for a success pattern");
    }
    if (t.size() != 4) throw std::logic_error("expected 4 fusion success patterns");
    return t;
  }();
  return table;
}

}  // namespace

WeightedEnsemble id_expand(const PureState& ideal, double epsilon) {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw std::invalid_argument("id_expand: epsilon outside [0,1]");
  }
  LossModeAllocator alloc;
  std::set<ModeLabel> loss_modes;
  PureState state = ideal;
  for (int spatial : ideal.spatial_modes()) {
    const LinearModeTransform bs = variable_bs(spatial, 1.0 - epsilon, alloc);
    state = apply_transform(state, bs);
    loss_modes.insert(bs.outputs[2]);
    loss_modes.insert(bs.outputs[3]);
  }
  return discard_loss_modes(state, loss_modes);
}

WeightedEnsemble id_expand(const IdState& state) { return id_expand(state.ideal, state.epsilon); }

FusionResult type_ii_fuse(const WeightedEnsemble& a, int mode_a, const WeightedEnsemble& b,
                          int mode_b, double eta_d) {
  const std::set<int> modes_a = ensemble_spatial_modes(a);
  const std::set<int> modes_b = ensemble_spatial_modes(b);
  for (int s : modes_b) {
    if (modes_a.contains(s)) throw std::invalid_argument("type_ii_fuse: shared mode labels");
  }
  if (!modes_a.contains(mode_a) || !modes_b.contains(mode_b)) {
    throw std::invalid_argument("type_ii_fuse: fused mode not present in its ensemble");
  }

  std::vector<int> survivors_a(modes_a.begin(), modes_a.end());
  std::erase(survivors_a, mode_a);
  std::vector<int> survivors_b(modes_b.begin(), modes_b.end());
  std::erase(survivors_b, mode_b);

  WeightedEnsemble joint;
  for (const Branch& ba : a.branches) {
    for (const Branch& bb : b.branches) {
      joint.branches.push_back({ba.weight * bb.weight, tensor(ba.state, bb.state)});
    }
  }
  joint = apply_transform(joint, pbs45(mode_a, mode_b));

  const std::vector<DetectionOutcome> outcomes =
      detect(joint, {{mode_a, eta_d}, {mode_b, eta_d}});

  FusionResult result;
  const double input_weight = a.total_weight() * b.total_weight();
  for (const DetectionOutcome& o : outcomes) {
    if (!fusion_success(o.pattern)) continue;
    const bool a_first = o.pattern[0].spatial == mode_a;
    const DetectorCounts& da = a_first ? o.pattern[0] : o.pattern[1];
    const DetectorCounts& db = a_first ? o.pattern[1] : o.pattern[0];
    const PatternKey key{da.n_v == 1 ? Pol::V : Pol::H, db.n_v == 1 ? Pol::V : Pol::H};
    const auto [pa, pb] = fusion_corrections().at(key);

    result.success_probability += o.probability;
    for (const Branch& br : o.conditional.branches) {
      PureState corrected = apply_side_correction(br.state, survivors_a, decompose(pa));
      corrected = apply_side_correction(std::move(corrected), survivors_b, decompose(pb));
      result.fused.branches.push_back({o.probability * br.weight, std::move(corrected)});
    }
  }
  if (result.success_probability > 0.0) {
    for (Branch& br : result.fused.branches) br.weight /= result.success_probability;
  }
  result.failure_probability = input_weight - result.success_probability;
  return result;
}

double p_ii(double epsilon, double eta_d) {
  if (epsilon < 0.0 || epsilon > 1.0 || eta_d < 0.0 || eta_d > 1.0) {
    throw std::invalid_argument("p_ii: arguments outside [0,1]");
  }
  const double survival = 1.0 - epsilon;
  return survival * survival * eta_d * eta_d / 2.0;
}

bool verify_id_preservation(int n, int m, double epsilon, double eta_d, double tol) {
  if (n < 2 || m < 2) throw std::invalid_argument("verify_id_preservation: need n, m >= 2");
  if (epsilon < 0.0 || epsilon >= 1.0) {
    throw std::invalid_argument("verify_id_preservation: epsilon outside [0,1)");
  }
  std::vector<int> modes_a;
  std::vector<int> modes_b;
  for (int i = 1; i <= n; ++i) modes_a.push_back(i);
  for (int i = n + 1; i <= n + m; ++i) modes_b.push_back(i);

  const WeightedEnsemble a = id_expand(ghz_state(modes_a), epsilon);
  const WeightedEnsemble b = id_expand(ghz_state(modes_b), epsilon);
  const FusionResult fused = type_ii_fuse(a, n, b, n + 1, eta_d);

  const double expected_p = p_ii(epsilon, eta_d);
  if (std::abs(fused.success_probability - expected_p) > tol) return false;
  if (fused.success_probability == 0.0) return expected_p <= tol;

  std::vector<int> survivors;
  for (int i = 1; i <= n + m; ++i) {
    if (i != n && i != n + 1) survivors.push_back(i);
  }
  const WeightedEnsemble expected = id_expand(ghz_state(survivors), epsilon);
  return ensembles_equal_as_density(fused.fused, expected, tol);
}

}  // namespace loqc
