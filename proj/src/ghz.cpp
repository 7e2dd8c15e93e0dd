#include "loqc/ghz.hpp"

#include <cmath>
#include <stdexcept>

namespace loqc {

namespace {

constexpr std::array<int, 3> kDetectorModes{1, 4, 6};
constexpr std::array<int, 3> kOutputModes{2, 3, 5};

std::vector<ModeLabel> input_modes() {
  std::vector<ModeLabel> modes;
  for (int i = 1; i <= 6; ++i) modes.push_back(mode_h(i));
  return modes;
}

WeightedEnsemble apply_circuit(const WeightedEnsemble& inputs) {
  static const GhzCircuit circuit = build_ghz_circuit();
  WeightedEnsemble state = inputs;
  for (const LinearModeTransform& t : circuit.transforms) {
    state = apply_transform(state, t);
  }
  return state;
}

WeightedEnsemble apply_correction(const WeightedEnsemble& conditional,
                                  const std::array<LocalPauli, 3>& correction) {
  WeightedEnsemble out = conditional;
  for (std::size_t k = 0; k < kOutputModes.size(); ++k) {
    if (correction[k] == LocalPauli::I) continue;
    out = apply_transform(out, pauli_transform(kOutputModes[k], correction[k]));
  }
  return out;
}

/// Success patterns and the correction each heralds, frozen from the
/// perfect-source, perfect-detector run.
const std::map<DetectionPattern, std::array<LocalPauli, 3>>& correction_table() {
  static const auto table = [] {
    std::map<DetectionPattern, std::array<LocalPauli, 3>> t;
    const PureState target = ghz_state({kOutputModes.begin(), kOutputModes.end()});
    const WeightedEnsemble ideal =
        WeightedEnsemble::pure(PureState::single_photons(input_modes()));
    const std::vector<DetectionOutcome> outcomes =
        detect(apply_circuit(ideal), {{1, 1.0}, {4, 1.0}, {6, 1.0}});
    const std::array<LocalPauli, 4> candidates{LocalPauli::I, LocalPauli::X, LocalPauli::Z,
                                               LocalPauli::XZ};
    for (const DetectionOutcome& o : outcomes) {
      if (!is_success_pattern(o.pattern)) continue;
      bool found = false;
      for (LocalPauli p2 : candidates) {
        for (LocalPauli p3 : candidates) {
          for (LocalPauli p5 : candidates) {
            const std::array<LocalPauli, 3> correction{p2, p3, p5};
            const WeightedEnsemble corrected = apply_correction(o.conditional, correction);
            const Complex overlap = inner_product(target, corrected.branches.front().state);
            if (std::abs(std::abs(overlap) - 1.0) < 1e-9) {
              t[o.pattern] = correction;
              found = true;
            }
            if (found) break;
          }
          if (found) break;
        }
        if (found) break;
      }
      if (!found) {
        throw std::logic_error("no local Pauli correction found for a success pattern");
      }
    }
    if (t.size() != 8) throw std::logic_error("expected 8 success patterns");
    return t;
  }();
  return table;
}

}  // namespace

std::string pauli_name(LocalPauli p) {
  switch (p) {
    case LocalPauli::I: return "I";
    case LocalPauli::X: return "X";
    case LocalPauli::Z: return "Z";
    case LocalPauli::XZ: return "XZ";
  }
  return "?";
}

LinearModeTransform pauli_transform(int spatial, LocalPauli p) {
  LinearModeTransform t;
  t.inputs = {mode_h(spatial), mode_v(spatial)};
  t.outputs = t.inputs;
  switch (p) {
    case LocalPauli::I: t.matrix = {{1.0, 0.0}, {0.0, 1.0}}; break;
    case LocalPauli::X: t.matrix = {{0.0, 1.0}, {1.0, 0.0}}; break;
    case LocalPauli::Z: t.matrix = {{1.0, 0.0}, {0.0, -1.0}}; break;
    case LocalPauli::XZ: t.matrix = {{0.0, -1.0}, {1.0, 0.0}}; break;
  }
  return t;
}

PureState ghz_state(const std::vector<int>& spatial_modes) {
  if (spatial_modes.empty()) throw std::invalid_argument("ghz_state: no modes");
  std::vector<ModeLabel> h_modes;
  std::vector<ModeLabel> v_modes;
  for (int s : spatial_modes) {
    h_modes.push_back(mode_h(s));
    v_modes.push_back(mode_v(s));
  }
  const double r = 1.0 / std::sqrt(2.0);
  PureState out;
  out.add(FockBasisState::from_modes(h_modes), r);
  out.add(FockBasisState::from_modes(v_modes), r);
  return out;
}

GhzCircuit build_ghz_circuit() {
  GhzCircuit c;
  c.detector_modes = kDetectorModes;
  c.output_modes = kOutputModes;
  c.transforms.push_back(pbs45(1, 2));
  c.transforms.push_back(pbs45(3, 4));
  c.transforms.push_back(pbs45(5, 6));
  c.transforms.push_back(pbs(1, 4));
  c.transforms.push_back(pbs(1, 6));
  c.transforms.push_back(rotate45(1));
  c.transforms.push_back(rotate45(4));
  c.transforms.push_back(rotate45(6));
  return c;
}

bool is_success_pattern(const DetectionPattern& pattern) {
  if (pattern.size() != 3) return false;
  for (const DetectorCounts& d : pattern) {
    if (d.n_h + d.n_v != 1) return false;
  }
  return true;
}

std::array<LocalPauli, 3> local_correction_for_pattern(const DetectionPattern& pattern) {
  const auto& table = correction_table();
  auto it = table.find(pattern);
  if (it == table.end()) {
    throw std::invalid_argument("local_correction_for_pattern: not a success pattern");
  }
  return it->second;
}

GhzFactoryResult run_ghz_factory_on(const WeightedEnsemble& inputs, double eta_d) {
  const std::vector<DetectionOutcome> outcomes =
      detect(apply_circuit(inputs), {{1, eta_d}, {4, eta_d}, {6, eta_d}});

  GhzFactoryResult result;
  for (const DetectionOutcome& o : outcomes) {
    if (!is_success_pattern(o.pattern)) continue;
    GhzPatternOutcome po;
    po.pattern = o.pattern;
    po.probability = o.probability;
    po.correction = local_correction_for_pattern(o.pattern);
    po.corrected = apply_correction(o.conditional, po.correction);
    result.success_probability += o.probability;
    result.per_pattern.push_back(std::move(po));
  }
  if (result.success_probability > 0.0) {
    for (const GhzPatternOutcome& po : result.per_pattern) {
      const double share = po.probability / result.success_probability;
      for (const Branch& b : po.corrected.branches) {
        result.output.branches.push_back({share * b.weight, b.state});
      }
    }
  }
  return result;
}

GhzFactoryResult run_ghz_factory(double eta_s, double eta_d) {
  if (eta_s < 0.0 || eta_s > 1.0 || eta_d < 0.0 || eta_d > 1.0) {
    throw std::invalid_argument("run_ghz_factory: efficiencies outside [0,1]");
  }
  return run_ghz_factory_on(source_bank({input_modes(), eta_s}), eta_d);
}

GhzFactoryResult run_ghz_factory_conditional(unsigned presence_mask, double eta_d) {
  if (presence_mask >= 64u) {
    throw std::invalid_argument("run_ghz_factory_conditional: mask must cover 6 inputs");
  }
  return run_ghz_factory_on(
      WeightedEnsemble::pure(presence_state(input_modes(), presence_mask)), eta_d);
}

WeightedEnsemble analytic_id_ghz(double survival) {
  if (survival < 0.0 || survival > 1.0) {
    throw std::invalid_argument("analytic_id_ghz: survival outside [0,1]");
  }
  const double s = survival;
  const double f = 1.0 - survival;
  WeightedEnsemble out;
  auto push = [&out](double w, PureState state) {
    if (w > 0.0) out.branches.push_back({w, std::move(state)});
  };
  push(s * s * s, ghz_state({kOutputModes.begin(), kOutputModes.end()}));
  const std::array<std::pair<int, int>, 3> pairs{{{2, 3}, {2, 5}, {3, 5}}};
  for (const auto& [i, j] : pairs) {
    push(s * s * f / 2.0, PureState::single_photons({mode_h(i), mode_h(j)}));
    push(s * s * f / 2.0, PureState::single_photons({mode_v(i), mode_v(j)}));
  }
  for (int i : kOutputModes) {
    push(s * f * f / 2.0, PureState::single_photons({mode_h(i)}));
    push(s * f * f / 2.0, PureState::single_photons({mode_v(i)}));
  }
  push(f * f * f, PureState::vacuum());
  return out;
}

double effective_survival(double eta_s, double eta_d) {
  if (eta_s < 0.0 || eta_s > 1.0 || eta_d < 0.0 || eta_d > 1.0) {
    throw std::invalid_argument("effective_survival: efficiencies outside [0,1]");
  }
  return eta_s / (2.0 - eta_d * eta_s);
}

namespace {

using JointKey = std::pair<DetectionPattern, DetectionPattern>;

std::map<JointKey, double> joint_statistics(double eta_s, double eta_d_gate, double eta_d_final,
                                            double* success_out) {
  const GhzFactoryResult result = run_ghz_factory(eta_s, eta_d_gate);
  if (success_out != nullptr) *success_out = result.success_probability;
  std::map<JointKey, double> joint;
  for (const GhzPatternOutcome& po : result.per_pattern) {
    const std::vector<DetectionOutcome> final_outcomes =
        detect(po.corrected, {{2, eta_d_final}, {3, eta_d_final}, {5, eta_d_final}});
    for (const DetectionOutcome& fo : final_outcomes) {
      joint[{po.pattern, fo.pattern}] += po.probability * fo.probability;
    }
  }
  return joint;
}

}  // namespace

bool verify_equivalence(double eta_s, double eta_d, double tol) {
  double success_a = 0.0;
  double success_b = 0.0;
  const auto stats_a = joint_statistics(eta_s, eta_d, eta_d, &success_a);
  const auto stats_b = joint_statistics(eta_s * eta_d, 1.0, 1.0, &success_b);
  if (std::abs(success_a - success_b) > tol) return false;

  auto probability_in = [](const std::map<JointKey, double>& m, const JointKey& k) {
    auto it = m.find(k);
    return it == m.end() ? 0.0 : it->second;
  };
  for (const auto& [key, p] : stats_a) {
    if (std::abs(p - probability_in(stats_b, key)) > tol) return false;
  }
  for (const auto& [key, p] : stats_b) {
    if (std::abs(p - probability_in(stats_a, key)) > tol) return false;
  }
  return true;
}

std::array<double, 4> sector_weights(const GhzFactoryResult& result) {
  std::array<double, 4> weights{};  // indexed by output photon count
  for (const GhzPatternOutcome& po : result.per_pattern) {
    for (const Branch& b : po.corrected.branches) {
      const int n = b.state.amplitudes().begin()->first.total_photons();
      if (n < 0 || n > 3) throw std::logic_error("unexpected output photon sector");
      weights[static_cast<std::size_t>(n)] += po.probability * b.weight;
    }
  }
  return weights;
}

}  // namespace loqc
