#include "loqc/detection.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace loqc {

WeightedEnsemble source_bank(const SourceBankSpec& spec) {
  if (spec.eta_s < 0.0 || spec.eta_s > 1.0) {
    throw std::invalid_argument("source_bank: eta_s outside [0,1]");
  }
  const std::set<ModeLabel> distinct(spec.modes.begin(), spec.modes.end());
  if (distinct.size() != spec.modes.size()) {
    throw std::invalid_argument("source_bank: duplicate source modes");
  }
  const unsigned n = static_cast<unsigned>(spec.modes.size());
  WeightedEnsemble out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int present = std::popcount(mask);
    const double w = std::pow(spec.eta_s, present) * std::pow(1.0 - spec.eta_s, n - present);
    if (w == 0.0) continue;
    out.branches.push_back({w, presence_state(spec.modes, mask)});
  }
  return out;
}

PureState presence_state(const std::vector<ModeLabel>& modes, unsigned mask) {
  std::vector<ModeLabel> occupied;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (mask & (1u << k)) occupied.push_back(modes[k]);
  }
  return PureState::single_photons(occupied);
}

std::string pattern_to_string(const DetectionPattern& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) os << ' ';
    os << p[i].spatial << ":H" << p[i].n_h << "V" << p[i].n_v;
  }
  return os.str();
}

std::vector<DetectionOutcome> detect(const WeightedEnsemble& ensemble,
                                     const std::vector<DetectorSpec>& detectors) {
  std::vector<DetectorSpec> dets = detectors;
  std::sort(dets.begin(), dets.end(),
            [](const DetectorSpec& a, const DetectorSpec& b) { return a.spatial < b.spatial; });

  struct Partial {
    double probability = 0.0;
    std::vector<Branch> branches;
  };
  std::map<DetectionPattern, Partial> by_pattern;

  for (const Branch& br : ensemble.branches) {
    LossModeAllocator alloc;
    std::set<ModeLabel> loss_modes;
    PureState state = br.state;
    for (const DetectorSpec& d : dets) {
      if (d.eta_d < 0.0 || d.eta_d > 1.0) {
        throw std::invalid_argument("detect: eta_d outside [0,1]");
      }
      if (d.eta_d >= 1.0) continue;
      const LinearModeTransform bs = variable_bs(d.spatial, d.eta_d, alloc);
      state = apply_transform(state, bs);
      loss_modes.insert(bs.outputs[2]);
      loss_modes.insert(bs.outputs[3]);
    }

    std::set<ModeLabel> measured = loss_modes;
    for (const DetectorSpec& d : dets) {
      measured.insert(mode_h(d.spatial));
      measured.insert(mode_v(d.spatial));
    }

    // Projection onto photon-number eigenstates of the detector modes,
    // jointly with the loss-mode record.
    std::map<FockBasisState, PureState> groups;
    for (const auto& [basis, amp] : state.amplitudes()) {
      groups[basis.restricted_to(measured)].add(basis.without(measured), amp);
    }
    for (auto& [key, conditional] : groups) {
      DetectionPattern pattern;
      pattern.reserve(dets.size());
      for (const DetectorSpec& d : dets) {
        pattern.push_back({d.spatial, key.count(mode_h(d.spatial)), key.count(mode_v(d.spatial))});
      }
      const double p = conditional.norm_sq() * br.weight;
      if (p < kPruneTol * kPruneTol) continue;
      conditional.scale(1.0 / std::sqrt(conditional.norm_sq()));
      conditional.prune();
      Partial& slot = by_pattern[pattern];
      slot.probability += p;
      slot.branches.push_back({p, std::move(conditional)});
    }
  }

  std::vector<DetectionOutcome> outcomes;
  outcomes.reserve(by_pattern.size());
  for (auto& [pattern, partial] : by_pattern) {
    DetectionOutcome o;
    o.pattern = pattern;
    o.probability = partial.probability;
    o.conditional.branches = std::move(partial.branches);
    for (Branch& b : o.conditional.branches) b.weight /= partial.probability;
    outcomes.push_back(std::move(o));
  }
  return outcomes;
}

PostSelection post_select(const std::vector<DetectionOutcome>& outcomes,
                          const std::function<bool(const DetectionPattern&)>& predicate) {
  PostSelection sel;
  for (const DetectionOutcome& o : outcomes) {
    if (!predicate(o.pattern)) continue;
    sel.probability += o.probability;
    for (const Branch& b : o.conditional.branches) {
      sel.state.branches.push_back({b.weight * o.probability, b.state});
    }
  }
  if (sel.probability <= 0.0) {
    return {};  // empty herald
  }
  sel.heralded = true;
  for (Branch& b : sel.state.branches) b.weight /= sel.probability;
  return sel;
}

}  // namespace loqc
