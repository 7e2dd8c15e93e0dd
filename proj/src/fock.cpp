#include "loqc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loqc {

FockBasisState::FockBasisState(std::vector<std::pair<ModeLabel, int>> occupations)
    : occ_(std::move(occupations)) {
  for (const auto& [mode, n] : occ_) {
    if (n < 0) throw std::invalid_argument("negative photon count");
  }
  std::erase_if(occ_, [](const auto& p) { return p.second == 0; });
  std::sort(occ_.begin(), occ_.end());
  for (std::size_t i = 1; i < occ_.size(); ++i) {
    if (occ_[i - 1].first == occ_[i].first) {
      throw std::invalid_argument("duplicate mode label in basis state");
    }
  }
}

FockBasisState FockBasisState::from_modes(const std::vector<ModeLabel>& modes) {
  std::map<ModeLabel, int> counts;
  for (ModeLabel m : modes) ++counts[m];
  std::vector<std::pair<ModeLabel, int>> occ(counts.begin(), counts.end());
  return FockBasisState(std::move(occ));
}

int FockBasisState::count(ModeLabel m) const {
  auto it = std::lower_bound(occ_.begin(), occ_.end(), m,
                             [](const auto& p, ModeLabel mode) { return p.first < mode; });
  if (it != occ_.end() && it->first == m) return it->second;
  return 0;
}

int FockBasisState::total_photons() const {
  int n = 0;
  for (const auto& [mode, count] : occ_) n += count;
  return n;
}

FockBasisState FockBasisState::restricted_to(const std::set<ModeLabel>& modes) const {
  std::vector<std::pair<ModeLabel, int>> occ;
  for (const auto& p : occ_) {
    if (modes.contains(p.first)) occ.push_back(p);
  }
  return FockBasisState(std::move(occ));
}

FockBasisState FockBasisState::without(const std::set<ModeLabel>& modes) const {
  std::vector<std::pair<ModeLabel, int>> occ;
  for (const auto& p : occ_) {
    if (!modes.contains(p.first)) occ.push_back(p);
  }
  return FockBasisState(std::move(occ));
}

PureState PureState::vacuum() { return basis(FockBasisState{}); }

PureState PureState::basis(FockBasisState b, Complex amplitude) {
  PureState s;
  s.add(b, amplitude);
  return s;
}

PureState PureState::single_photons(const std::vector<ModeLabel>& modes) {
  return basis(FockBasisState::from_modes(modes));
}

void PureState::add(const FockBasisState& b, Complex amplitude) {
  auto [it, inserted] = amps_.try_emplace(b, amplitude);
  if (!inserted) it->second += amplitude;
}

double PureState::norm_sq() const {
  double n = 0.0;
  for (const auto& [b, a] : amps_) n += std::norm(a);
  return n;
}

PureState PureState::normalized() const {
  const double n = norm_sq();
  if (n <= 0.0) throw std::invalid_argument("cannot normalize the zero state");
  PureState out = *this;
  out.scale(1.0 / std::sqrt(n));
  out.prune();
  return out;
}

void PureState::scale(Complex c) {
  for (auto& [b, a] : amps_) a *= c;
}

void PureState::prune(double tol) {
  std::erase_if(amps_, [tol](const auto& p) { return std::abs(p.second) < tol; });
}

std::set<ModeLabel> PureState::modes() const {
  std::set<ModeLabel> out;
  for (const auto& [b, a] : amps_) {
    for (const auto& [mode, count] : b.occupations()) out.insert(mode);
  }
  return out;
}

std::set<int> PureState::spatial_modes() const {
  std::set<int> out;
  for (ModeLabel m : modes()) out.insert(m.spatial);
  return out;
}

PureState tensor(const PureState& a, const PureState& b) {
  const std::set<ModeLabel> ma = a.modes();
  for (ModeLabel m : b.modes()) {
    if (ma.contains(m)) throw std::invalid_argument("tensor: overlapping mode labels");
  }
  PureState out;
  for (const auto& [ba, ca] : a.amplitudes()) {
    for (const auto& [bb, cb] : b.amplitudes()) {
      std::vector<std::pair<ModeLabel, int>> occ = ba.occupations();
      const auto& other = bb.occupations();
      occ.insert(occ.end(), other.begin(), other.end());
      out.add(FockBasisState(std::move(occ)), ca * cb);
    }
  }
  return out;
}

Complex inner_product(const PureState& a, const PureState& b) {
  // Iterate over the smaller state.
  const PureState& lhs = a.amplitudes().size() <= b.amplitudes().size() ? a : b;
  const PureState& rhs = &lhs == &a ? b : a;
  Complex sum = 0.0;
  for (const auto& [basis, amp] : lhs.amplitudes()) {
    auto it = rhs.amplitudes().find(basis);
    if (it == rhs.amplitudes().end()) continue;
    if (&lhs == &a) {
      sum += std::conj(amp) * it->second;
    } else {
      sum += std::conj(it->second) * amp;
    }
  }
  return sum;
}

WeightedEnsemble WeightedEnsemble::pure(PureState s, double weight) {
  WeightedEnsemble e;
  e.branches.push_back({weight, std::move(s)});
  return e;
}

double WeightedEnsemble::total_weight() const {
  double w = 0.0;
  for (const Branch& b : branches) w += b.weight;
  return w;
}

WeightedEnsemble WeightedEnsemble::normalized() const {
  const double w = total_weight();
  if (w <= 0.0) throw std::invalid_argument("cannot normalize an empty ensemble");
  WeightedEnsemble out = *this;
  for (Branch& b : out.branches) b.weight /= w;
  return out;
}

void WeightedEnsemble::prune(double tol) {
  std::erase_if(branches, [tol](const Branch& b) { return b.weight < tol; });
}

std::vector<FockBasisState> union_basis(const std::vector<const WeightedEnsemble*>& ensembles) {
  std::set<FockBasisState> seen;
  for (const WeightedEnsemble* e : ensembles) {
    for (const Branch& br : e->branches) {
      for (const auto& [b, a] : br.state.amplitudes()) seen.insert(b);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::vector<Complex>> density_matrix(const WeightedEnsemble& e,
                                                 const std::vector<FockBasisState>& basis) {
  const std::size_t d = basis.size();
  std::map<FockBasisState, std::size_t> index;
  for (std::size_t i = 0; i < d; ++i) index[basis[i]] = i;

  std::vector<std::vector<Complex>> rho(d, std::vector<Complex>(d, 0.0));
  for (const Branch& br : e.branches) {
    std::vector<std::pair<std::size_t, Complex>> vec;
    vec.reserve(br.state.amplitudes().size());
    for (const auto& [b, a] : br.state.amplitudes()) {
      auto it = index.find(b);
      if (it == index.end()) throw std::invalid_argument("basis does not cover ensemble");
      vec.emplace_back(it->second, a);
    }
    for (const auto& [i, ai] : vec) {
      for (const auto& [j, aj] : vec) {
        rho[i][j] += br.weight * ai * std::conj(aj);
      }
    }
  }
  return rho;
}

double max_density_difference(const WeightedEnsemble& e1, const WeightedEnsemble& e2) {
  const std::vector<FockBasisState> basis = union_basis({&e1, &e2});
  const auto r1 = density_matrix(e1, basis);
  const auto r2 = density_matrix(e2, basis);
  double worst = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      worst = std::max(worst, std::abs(r1[i][j] - r2[i][j]));
    }
  }
  return worst;
}

bool ensembles_equal_as_density(const WeightedEnsemble& e1, const WeightedEnsemble& e2,
                                double tol) {
  return max_density_difference(e1, e2) <= tol;
}

}  // namespace loqc
