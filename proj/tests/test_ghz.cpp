#include <cmath>

#include "doctest.h"
#include "loqc/ghz.hpp"

using namespace loqc;

TEST_CASE("circuit_has_the_fixed_layout") {
  GhzCircuit c = build_ghz_circuit();
  CHECK(c.transforms.size() == 8);
  CHECK(c.detector_modes == std::array<int, 3>{1, 4, 6});
  CHECK(c.output_modes == std::array<int, 3>{2, 3, 5});
  for (const LinearModeTransform& t : c.transforms) {
    CHECK(t.is_isometry());
  }
}

TEST_CASE("ideal_factory_heralds_ghz_at_one_in_thirtytwo") {
  GhzFactoryResult r = run_ghz_factory(1.0, 1.0);
  CHECK(r.success_probability == doctest::Approx(1.0 / 32.0).epsilon(1e-12));
  REQUIRE(r.per_pattern.size() == 8);
  for (const GhzPatternOutcome& po : r.per_pattern) {
    CHECK(po.probability == doctest::Approx(1.0 / 256.0).epsilon(1e-12));
  }
  WeightedEnsemble ideal = WeightedEnsemble::pure(ghz_state({2, 3, 5}));
  CHECK(max_density_difference(r.output.normalized(), ideal) < 1e-10);
}

TEST_CASE("corrected_patterns_all_agree") {
  GhzFactoryResult r = run_ghz_factory(1.0, 1.0);
  WeightedEnsemble ideal = WeightedEnsemble::pure(ghz_state({2, 3, 5}));
  for (const GhzPatternOutcome& po : r.per_pattern) {
    CHECK(max_density_difference(po.corrected, ideal) < 1e-10);
  }
}

TEST_CASE("correction_depends_on_v_count_parity") {
  GhzFactoryResult r = run_ghz_factory(1.0, 1.0);
  for (const GhzPatternOutcome& po : r.per_pattern) {
    int v_count = 0;
    for (const DetectorCounts& d : po.pattern) v_count += d.n_v;
    const std::array<LocalPauli, 3> expected =
        v_count % 2 == 0 ? std::array<LocalPauli, 3>{LocalPauli::I, LocalPauli::I, LocalPauli::I}
                         : std::array<LocalPauli, 3>{LocalPauli::I, LocalPauli::I, LocalPauli::Z};
    CHECK(po.correction == expected);
    CHECK(local_correction_for_pattern(po.pattern) == expected);
  }
}

TEST_CASE("correction_rejects_non_success_patterns") {
  DetectionPattern bogus{{1, 2, 0}, {4, 1, 0}, {6, 1, 0}};
  CHECK_FALSE(is_success_pattern(bogus));
  CHECK_THROWS(local_correction_for_pattern(bogus));
}

TEST_CASE("sector_weights_match_the_closed_forms") {
  const double s = 0.8;
  GhzFactoryResult r = run_ghz_factory(s, 1.0);
  std::array<double, 4> w = sector_weights(r);
  const double f = 1.0 - s;
  CHECK(w[3] == doctest::Approx(std::pow(s, 6) / 32.0).epsilon(1e-12));
  CHECK(w[2] == doctest::Approx(6.0 * std::pow(s, 5) * f / 32.0).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(6.0 * std::pow(s, 4) * f * f / 16.0).epsilon(1e-12));
  CHECK(w[0] == doctest::Approx(std::pow(s, 3) * f * f * f / 4.0).epsilon(1e-12));
  CHECK(w[0] + w[1] + w[2] + w[3] == doctest::Approx(r.success_probability).epsilon(1e-12));
}

TEST_CASE("lossy_factory_output_is_the_degraded_ghz") {
  for (double eta_s : {0.6, 0.9}) {
    GhzFactoryResult r = run_ghz_factory(eta_s, 1.0);
    const double survival = effective_survival(eta_s, 1.0);
    CHECK(survival == doctest::Approx(eta_s / (2.0 - eta_s)).epsilon(1e-12));
    CHECK(max_density_difference(r.output.normalized(), analytic_id_ghz(survival)) < 1e-10);
  }
}

TEST_CASE("analytic_id_ghz_edge_cases") {
  WeightedEnsemble pure_ghz = analytic_id_ghz(1.0);
  CHECK(max_density_difference(pure_ghz, WeightedEnsemble::pure(ghz_state({2, 3, 5}))) < 1e-12);

  WeightedEnsemble vac = analytic_id_ghz(0.0);
  CHECK(max_density_difference(vac, WeightedEnsemble::pure(PureState::vacuum())) < 1e-12);

  WeightedEnsemble mid = analytic_id_ghz(0.6);
  CHECK(mid.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("restricted_five_photon_inputs_herald_bell_pairs") {
  // Drop input photon 1: the correct patterns still occur with total 1/32
  // and the surviving output pair is maximally entangled.
  GhzFactoryResult r = run_ghz_factory_conditional(0b111110u, 1.0);
  CHECK(r.success_probability == doctest::Approx(1.0 / 32.0).epsilon(1e-10));
  for (const GhzPatternOutcome& po : r.per_pattern) {
    REQUIRE(po.corrected.branches.size() == 1);
    const PureState& psi = po.corrected.branches[0].state;
    for (const auto& [basis, amplitude] : psi.amplitudes()) {
      CHECK(basis.total_photons() == 2);
      CHECK(std::abs(amplitude) == doctest::Approx(1.0 / std::sqrt(2.0)));
    }
  }
}

TEST_CASE("equivalence_of_source_and_detector_loss") {
  CHECK(verify_equivalence(1.0, 1.0, 1e-12));
  CHECK(verify_equivalence(0.8, 1.0, 1e-12));
  CHECK(verify_equivalence(0.9, 0.8, 1e-10));
}

TEST_CASE("pauli_transforms_act_as_expected") {
  PureState h = PureState::single_photons({mode_h(7)});
  PureState v = PureState::single_photons({mode_v(7)});

  PureState flipped = apply_transform(h, pauli_transform(7, LocalPauli::X));
  CHECK(std::abs(inner_product(v, flipped)) == doctest::Approx(1.0));

  PureState phased = apply_transform(v, pauli_transform(7, LocalPauli::Z));
  CHECK(inner_product(v, phased).real() == doctest::Approx(-1.0));

  PureState unchanged = apply_transform(h, pauli_transform(7, LocalPauli::Z));
  CHECK(inner_product(h, unchanged).real() == doctest::Approx(1.0));
}
