#include "loqc/elements.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace loqc {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

constexpr double kIsometryTol = 1e-12;

}  // namespace

bool LinearModeTransform::is_isometry(double tol) const {
  const std::size_t rows = outputs.size();
  const std::size_t cols = inputs.size();
  if (matrix.size() != rows) return false;
  for (const auto& row : matrix) {
    if (row.size() != cols) return false;
  }
  if (rows < cols) return false;
  for (std::size_t c1 = 0; c1 < cols; ++c1) {
    for (std::size_t c2 = 0; c2 < cols; ++c2) {
      Complex dot = 0.0;
      for (std::size_t r = 0; r < rows; ++r) {
        dot += std::conj(matrix[r][c1]) * matrix[r][c2];
      }
      const Complex expected = (c1 == c2) ? 1.0 : 0.0;
      if (std::abs(dot - expected) > tol) return false;
    }
  }
  return true;
}

PureState apply_transform(const PureState& state, const LinearModeTransform& t) {
  if (!t.is_isometry(kIsometryTol)) {
    throw std::invalid_argument("apply_transform: matrix is not an isometry");
  }
  std::map<ModeLabel, std::size_t> input_index;
  for (std::size_t c = 0; c < t.inputs.size(); ++c) input_index[t.inputs[c]] = c;
  const std::set<ModeLabel> output_set(t.outputs.begin(), t.outputs.end());

  PureState result;
  for (const auto& [basis, amp] : state.amplitudes()) {
    std::vector<std::pair<ModeLabel, int>> untouched;
    std::vector<std::pair<std::size_t, int>> touched;  // (input column, count)
    double in_norm = 1.0;
    for (const auto& [mode, n] : basis.occupations()) {
      auto it = input_index.find(mode);
      if (it == input_index.end()) {
        if (output_set.contains(mode)) {
          throw std::invalid_argument("apply_transform: output mode collides with bystander mode");
        }
        untouched.emplace_back(mode, n);
      } else {
        touched.emplace_back(it->second, n);
        in_norm *= factorial(n);
      }
    }

    // Expand the product of transformed creation operators one photon at a
    // time, tracking output occupation vectors.
    std::map<std::vector<int>, Complex> expansion;
    expansion[std::vector<int>(t.outputs.size(), 0)] = 1.0;
    for (const auto& [col, n] : touched) {
      for (int photon = 0; photon < n; ++photon) {
        std::map<std::vector<int>, Complex> next;
        for (const auto& [occ, coeff] : expansion) {
          for (std::size_t r = 0; r < t.outputs.size(); ++r) {
            const Complex entry = t.matrix[r][col];
            if (entry == 0.0) continue;
            std::vector<int> grown = occ;
            ++grown[r];
            next[std::move(grown)] += coeff * entry;
          }
        }
        expansion = std::move(next);
      }
    }

    for (const auto& [occ, coeff] : expansion) {
      double out_norm = 1.0;
      std::vector<std::pair<ModeLabel, int>> merged = untouched;
      for (std::size_t r = 0; r < occ.size(); ++r) {
        if (occ[r] == 0) continue;
        out_norm *= factorial(occ[r]);
        merged.emplace_back(t.outputs[r], occ[r]);
      }
      const Complex a = amp * coeff * std::sqrt(out_norm / in_norm);
      result.add(FockBasisState(std::move(merged)), a);
    }
  }
  result.prune();
  return result;
}

WeightedEnsemble apply_transform(const WeightedEnsemble& ensemble, const LinearModeTransform& t) {
  WeightedEnsemble out;
  out.branches.reserve(ensemble.branches.size());
  for (const Branch& b : ensemble.branches) {
    out.branches.push_back({b.weight, apply_transform(b.state, t)});
  }
  return out;
}

LinearModeTransform pbs(int i, int j) {
  if (i == j) throw std::invalid_argument("pbs: spatial modes must differ");
  LinearModeTransform t;
  t.inputs = {mode_h(i), mode_v(i), mode_h(j), mode_v(j)};
  t.outputs = t.inputs;
  t.matrix.assign(4, std::vector<Complex>(4, 0.0));
  t.matrix[0][0] = 1.0;  // H_i -> H_i
  t.matrix[3][1] = 1.0;  // V_i -> V_j
  t.matrix[2][2] = 1.0;  // H_j -> H_j
  t.matrix[1][3] = 1.0;  // V_j -> V_i
  return t;
}

LinearModeTransform pbs45(int i, int j) {
  if (i == j) throw std::invalid_argument("pbs45: spatial modes must differ");
  LinearModeTransform t;
  t.inputs = {mode_h(i), mode_v(i), mode_h(j), mode_v(j)};
  t.outputs = t.inputs;
  // Columns give the image of each input creation operator in the
  // (H_i, V_i, H_j, V_j) output order.
  t.matrix = {
      {0.5, 0.5, 0.5, -0.5},
      {0.5, 0.5, -0.5, 0.5},
      {0.5, -0.5, 0.5, 0.5},
      {-0.5, 0.5, 0.5, 0.5},
  };
  return t;
}

LinearModeTransform rotate45(int i) {
  const double r = 1.0 / std::sqrt(2.0);
  LinearModeTransform t;
  t.inputs = {mode_h(i), mode_v(i)};
  t.outputs = t.inputs;
  t.matrix = {{r, r}, {r, -r}};
  return t;
}

LinearModeTransform variable_bs(int i, double transmissivity, LossModeAllocator& alloc) {
  if (transmissivity < 0.0 || transmissivity > 1.0) {
    throw std::invalid_argument("variable_bs: transmissivity outside [0,1]");
  }
  const int loss = alloc.fresh();
  const double keep = std::sqrt(transmissivity);
  const double leak = std::sqrt(1.0 - transmissivity);
  LinearModeTransform t;
  t.inputs = {mode_h(i), mode_v(i)};
  t.outputs = {mode_h(i), mode_v(i), mode_h(loss), mode_v(loss)};
  t.matrix = {
      {keep, 0.0},
      {0.0, keep},
      {leak, 0.0},
      {0.0, leak},
  };
  return t;
}

WeightedEnsemble discard_loss_modes(const PureState& state,
                                    const std::set<ModeLabel>& loss_modes) {
  // Branch per loss-mode occupation pattern: the environment keeps a record
  // of what was lost, so distinct patterns decohere.
  std::map<FockBasisState, PureState> groups;
  for (const auto& [basis, amp] : state.amplitudes()) {
    groups[basis.restricted_to(loss_modes)].add(basis.without(loss_modes), amp);
  }
  WeightedEnsemble out;
  for (auto& [pattern, conditional] : groups) {
    const double w = conditional.norm_sq();
    if (w < kPruneTol * kPruneTol) continue;
    conditional.scale(1.0 / std::sqrt(w));
    conditional.prune();
    out.branches.push_back({w, std::move(conditional)});
  }
  return out;
}

WeightedEnsemble discard_loss_modes(const WeightedEnsemble& ensemble,
                                    const std::set<ModeLabel>& loss_modes) {
  WeightedEnsemble out;
  for (const Branch& b : ensemble.branches) {
    WeightedEnsemble partial = discard_loss_modes(b.state, loss_modes);
    for (Branch& p : partial.branches) {
      out.branches.push_back({b.weight * p.weight, std::move(p.state)});
    }
  }
  return out;
}

}  // namespace loqc
