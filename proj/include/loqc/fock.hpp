#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace loqc {

using Complex = std::complex<double>;

/// Amplitudes below this magnitude are dropped when states are pruned.
inline constexpr double kPruneTol = 1e-12;

/// Default tolerance for entrywise density-operator comparison.
inline constexpr double kDensityTol = 1e-10;

enum class Pol : std::uint8_t { H = 0, V = 1 };

/// One polarization mode of one spatial path.
struct ModeLabel {
  int spatial = 0;
  Pol pol = Pol::H;

  friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

inline ModeLabel mode_h(int spatial) { return ModeLabel{spatial, Pol::H}; }
inline ModeLabel mode_v(int spatial) { return ModeLabel{spatial, Pol::V}; }

/// Photon occupation numbers per mode. Modes not listed hold zero photons,
/// so the representation is canonical and directly comparable.
class FockBasisState {
 public:
  FockBasisState() = default;  // vacuum

  explicit FockBasisState(std::vector<std::pair<ModeLabel, int>> occupations);

  /// Basis state with exactly one photon in each listed mode.
  static FockBasisState from_modes(const std::vector<ModeLabel>& modes);

  int count(ModeLabel m) const;
  int total_photons() const;

  const std::vector<std::pair<ModeLabel, int>>& occupations() const { return occ_; }

  /// Occupations of the given modes only.
  FockBasisState restricted_to(const std::set<ModeLabel>& modes) const;
  /// Occupations with the given modes removed.
  FockBasisState without(const std::set<ModeLabel>& modes) const;

  friend auto operator<=>(const FockBasisState&, const FockBasisState&) = default;

 private:
  std::vector<std::pair<ModeLabel, int>> occ_;  // sorted by mode, counts > 0
};

/// Finite superposition over Fock basis states. A mode carrying n photons
/// uses the standard 1/sqrt(n!) creation-operator normalization.
class PureState {
 public:
  PureState() = default;

  static PureState vacuum();
  static PureState basis(FockBasisState b, Complex amplitude = 1.0);
  /// One photon per listed mode, amplitude 1.
  static PureState single_photons(const std::vector<ModeLabel>& modes);

  void add(const FockBasisState& b, Complex amplitude);

  const std::map<FockBasisState, Complex>& amplitudes() const { return amps_; }
  bool empty() const { return amps_.empty(); }

  double norm_sq() const;
  PureState normalized() const;
  void scale(Complex c);
  void prune(double tol = kPruneTol);

  std::set<ModeLabel> modes() const;
  std::set<int> spatial_modes() const;

 private:
  std::map<FockBasisState, Complex> amps_;
};

/// Tensor product of states over disjoint mode sets.
PureState tensor(const PureState& a, const PureState& b);

/// <a|b>, conjugate-linear in a.
Complex inner_product(const PureState& a, const PureState& b);

struct Branch {
  double weight = 0.0;
  PureState state;
};

/// A classical mixture of pure states. Weights may sum to less than one
/// for sub-normalized (heralded) ensembles.
struct WeightedEnsemble {
  std::vector<Branch> branches;

  static WeightedEnsemble pure(PureState s, double weight = 1.0);

  double total_weight() const;
  WeightedEnsemble normalized() const;
  /// Drops branches with negligible weight.
  void prune(double tol = kPruneTol);
};

/// Canonical enumeration of every basis state appearing in the ensembles,
/// ordered lexicographically in (spatial, polarization, count).
std::vector<FockBasisState> union_basis(const std::vector<const WeightedEnsemble*>& ensembles);

/// Dense density matrix of the ensemble in the given basis enumeration.
std::vector<std::vector<Complex>> density_matrix(const WeightedEnsemble& e,
                                                 const std::vector<FockBasisState>& basis);

/// Largest entrywise difference between the two induced density operators.
double max_density_difference(const WeightedEnsemble& e1, const WeightedEnsemble& e2);

bool ensembles_equal_as_density(const WeightedEnsemble& e1, const WeightedEnsemble& e2,
                                double tol = kDensityTol);

}  // namespace loqc
