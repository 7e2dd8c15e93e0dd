#include <cmath>

#include "doctest.h"
#include "loqc/detection.hpp"

using namespace loqc;

TEST_CASE("source_bank_enumerates_presence_patterns") {
  WeightedEnsemble bank = source_bank({{mode_h(1), mode_h(2)}, 0.8});
  CHECK(bank.branches.size() == 4);
  CHECK(bank.total_weight() == doctest::Approx(1.0));

  double both = 0.0;
  double none = 0.0;
  for (const Branch& br : bank.branches) {
    const int photons = br.state.amplitudes().begin()->first.total_photons();
    if (photons == 2) both += br.weight;
    if (photons == 0) none += br.weight;
  }
  CHECK(both == doctest::Approx(0.64));
  CHECK(none == doctest::Approx(0.04));
}

TEST_CASE("source_bank_drops_impossible_branches") {
  WeightedEnsemble sure = source_bank({{mode_h(1), mode_h(2)}, 1.0});
  CHECK(sure.branches.size() == 1);
  CHECK(sure.branches[0].weight == doctest::Approx(1.0));
}

TEST_CASE("presence_state_follows_the_mask") {
  std::vector<ModeLabel> modes{mode_h(1), mode_h(2), mode_h(3)};
  PureState s = presence_state(modes, 0b101u);
  CHECK(s.amplitudes().size() == 1);
  const FockBasisState& b = s.amplitudes().begin()->first;
  CHECK(b.count(mode_h(1)) == 1);
  CHECK(b.count(mode_h(2)) == 0);
  CHECK(b.count(mode_h(3)) == 1);
}

TEST_CASE("perfect_detector_registers_one_photon") {
  WeightedEnsemble in = WeightedEnsemble::pure(PureState::single_photons({mode_h(1)}));
  std::vector<DetectionOutcome> outcomes = detect(in, {{1, 1.0, true}});
  REQUIRE(outcomes.size() == 1);
  CHECK(outcomes[0].probability == doctest::Approx(1.0));
  CHECK(outcomes[0].pattern[0].n_h == 1);
  CHECK(outcomes[0].pattern[0].n_v == 0);
}

TEST_CASE("inefficient_detector_binomial_counts") {
  // Two photons against an eta_d = 0.8 detector: 0.64 / 0.32 / 0.04.
  WeightedEnsemble in = WeightedEnsemble::pure(PureState::basis(FockBasisState({{mode_h(1), 2}})));
  std::vector<DetectionOutcome> outcomes = detect(in, {{1, 0.8, true}});
  REQUIRE(outcomes.size() == 3);

  double total = 0.0;
  for (const DetectionOutcome& o : outcomes) {
    total += o.probability;
    if (o.pattern[0].n_h == 2) CHECK(o.probability == doctest::Approx(0.64));
    if (o.pattern[0].n_h == 1) CHECK(o.probability == doctest::Approx(2.0 * 0.8 * 0.2));
    if (o.pattern[0].n_h == 0) CHECK(o.probability == doctest::Approx(0.04));
  }
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("detection_collapses_entanglement") {
  PureState bell;
  bell.add(FockBasisState::from_modes({mode_h(1), mode_h(2)}), 1.0 / std::sqrt(2.0));
  bell.add(FockBasisState::from_modes({mode_v(1), mode_v(2)}), 1.0 / std::sqrt(2.0));

  std::vector<DetectionOutcome> outcomes = detect(WeightedEnsemble::pure(bell), {{1, 1.0, true}});
  REQUIRE(outcomes.size() == 2);
  for (const DetectionOutcome& o : outcomes) {
    CHECK(o.probability == doctest::Approx(0.5));
    REQUIRE(o.conditional.branches.size() == 1);
    const PureState& rest = o.conditional.branches[0].state;
    const ModeLabel expected = o.pattern[0].n_h == 1 ? mode_h(2) : mode_v(2);
    CHECK(std::abs(inner_product(PureState::single_photons({expected}), rest)) ==
          doctest::Approx(1.0));
  }
}

TEST_CASE("detectors_report_in_canonical_order") {
  WeightedEnsemble in =
      WeightedEnsemble::pure(PureState::single_photons({mode_h(2), mode_v(5)}));
  std::vector<DetectionOutcome> outcomes = detect(in, {{5, 1.0, true}, {2, 1.0, true}});
  REQUIRE(outcomes.size() == 1);
  CHECK(outcomes[0].pattern[0].spatial == 2);
  CHECK(outcomes[0].pattern[1].spatial == 5);
  CHECK(pattern_to_string(outcomes[0].pattern) == "2:H1V0 5:H0V1");
}

TEST_CASE("post_select_aggregates_matching_outcomes") {
  WeightedEnsemble in = WeightedEnsemble::pure(PureState::basis(FockBasisState({{mode_h(1), 2}})));
  std::vector<DetectionOutcome> outcomes = detect(in, {{1, 0.8, true}});

  PostSelection any_click = post_select(
      outcomes, [](const DetectionPattern& p) { return p[0].n_h + p[0].n_v > 0; });
  CHECK(any_click.heralded);
  CHECK(any_click.probability == doctest::Approx(0.96));

  PostSelection impossible = post_select(
      outcomes, [](const DetectionPattern& p) { return p[0].n_v > 0; });
  CHECK_FALSE(impossible.heralded);
  CHECK(impossible.probability == doctest::Approx(0.0));
}
