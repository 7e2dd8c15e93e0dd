// End-to-end acceptance checks. Each criterion prints exactly one line;
// the process exits nonzero if any criterion fails.
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "loqc/fusion.hpp"
#include "loqc/thresholds.hpp"
#include "loqc/trees.hpp"

using namespace loqc;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// --- criterion 1: exact heralding probabilities of the ideal factory ---

bool ideal_factory_ok(std::string& why) {
  const double tol = 1e-10;
  GhzFactoryResult r = run_ghz_factory(1.0, 1.0);
  if (!near(r.success_probability, 1.0 / 32.0, tol)) {
    why = "success probability != 1/32";
    return false;
  }
  if (r.per_pattern.size() != 8) {
    why = "expected 8 heralding patterns";
    return false;
  }
  for (const GhzPatternOutcome& po : r.per_pattern) {
    if (!near(po.probability, 1.0 / 256.0, tol)) {
      why = "pattern probability != 1/256";
      return false;
    }
  }
  WeightedEnsemble ideal = WeightedEnsemble::pure(ghz_state({2, 3, 5}));
  if (max_density_difference(r.output.normalized(), ideal) > tol) {
    why = "heralded state is not the GHZ state";
    return false;
  }
  return true;
}

bool five_photon_ok(std::string& why) {
  const double tol = 1e-10;
  for (int missing = 0; missing < 6; ++missing) {
    GhzFactoryResult r = run_ghz_factory_conditional(0b111111u ^ (1u << missing), 1.0);
    if (!near(r.success_probability, 1.0 / 32.0, tol)) {
      why = "5-photon heralding probability != 1/32";
      return false;
    }
    for (const GhzPatternOutcome& po : r.per_pattern) {
      if (po.corrected.branches.size() != 1) {
        why = "5-photon conditional is not pure";
        return false;
      }
      for (const auto& [basis, amplitude] : po.corrected.branches[0].state.amplitudes()) {
        if (basis.total_photons() != 2 || !near(std::abs(amplitude), 1.0 / std::sqrt(2.0), tol)) {
          why = "5-photon conditional is not a Bell pair";
          return false;
        }
      }
    }
  }
  return true;
}

bool four_photon_ok(std::string& why) {
  // One photon missing from the first pair and one from the second: the
  // survivor of the third pair exits in |+> or |-> on mode 5. Summed over
  // the four configurations each sign carries total probability 1/16.
  const double tol = 1e-10;
  PureState plus;
  plus.add(FockBasisState::from_modes({mode_h(5)}), 1.0 / std::sqrt(2.0));
  plus.add(FockBasisState::from_modes({mode_v(5)}), 1.0 / std::sqrt(2.0));
  PureState minus;
  minus.add(FockBasisState::from_modes({mode_h(5)}), 1.0 / std::sqrt(2.0));
  minus.add(FockBasisState::from_modes({mode_v(5)}), -1.0 / std::sqrt(2.0));

  double plus_prob = 0.0;
  double minus_prob = 0.0;
  for (int i : {0, 1}) {
    for (int j : {2, 3}) {
      const unsigned mask = 0b111111u ^ (1u << i) ^ (1u << j);
      GhzFactoryResult r = run_ghz_factory_conditional(mask, 1.0);
      for (const GhzPatternOutcome& po : r.per_pattern) {
        for (const Branch& br : po.corrected.branches) {
          const double p_plus = std::norm(inner_product(plus, br.state));
          const double p_minus = std::norm(inner_product(minus, br.state));
          if (!near(p_plus + p_minus, 1.0, tol)) {
            why = "4-photon conditional not supported on mode-5 |+>/|->";
            return false;
          }
          plus_prob += po.probability * br.weight * p_plus;
          minus_prob += po.probability * br.weight * p_minus;
        }
      }
    }
  }
  if (!near(plus_prob, 1.0 / 16.0, tol) || !near(minus_prob, 1.0 / 16.0, tol)) {
    why = "|+>/|-> output probabilities != 1/16 each";
    return false;
  }
  return true;
}

bool three_photon_ok(std::string& why) {
  // One photon per pair: every correct pattern consumes all three photons,
  // so the output is vacuum and the eight configurations herald 1/4 in total.
  const double tol = 1e-10;
  double total = 0.0;
  for (int i : {0, 1}) {
    for (int j : {2, 3}) {
      for (int k : {4, 5}) {
        const unsigned mask = (1u << i) | (1u << j) | (1u << k);
        GhzFactoryResult r = run_ghz_factory_conditional(mask, 1.0);
        total += r.success_probability;
        if (max_density_difference(r.output.normalized(),
                                   WeightedEnsemble::pure(PureState::vacuum())) > tol) {
          why = "3-photon conditional output is not vacuum";
          return false;
        }
      }
    }
  }
  if (!near(total, 0.25, tol)) {
    why = "3-photon heralding probability != 1/4";
    return false;
  }
  return true;
}

void criterion_1() {
  std::string why;
  const bool ok =
      ideal_factory_ok(why) && five_photon_ok(why) && four_photon_ok(why) && three_photon_ok(why);
  report(1, "GHZ-factory exact probabilities (1/32, 1/256, restricted-input cases)", ok, why);
}

// --- criterion 2: ID-GHZ identity at perfect detectors ---

void criterion_2() {
  const double tol = 1e-10;
  const double weight_tol = 1e-12;
  std::string why;
  bool ok = true;
  for (double s : {0.6, 0.7, 0.8, 0.9, 1.0}) {
    GhzFactoryResult r = run_ghz_factory(s, 1.0);
    const double survival = s / (2.0 - s);
    const double diff = max_density_difference(r.output.normalized(), analytic_id_ghz(survival));
    if (diff > tol) {
      ok = false;
      why = "density mismatch at eta_s=" + std::to_string(s);
      break;
    }
    const std::array<double, 4> w = sector_weights(r);
    const double f = 1.0 - s;
    const bool sectors_ok = near(w[3], std::pow(s, 6) / 32.0, weight_tol) &&
                            near(w[2], 6.0 * std::pow(s, 5) * f / 32.0, weight_tol) &&
                            near(w[1], 6.0 * std::pow(s, 4) * f * f / 16.0, weight_tol) &&
                            near(w[0], std::pow(s, 3) * f * f * f / 4.0, weight_tol);
    if (!sectors_ok) {
      ok = false;
      why = "sector weights mismatch at eta_s=" + std::to_string(s);
      break;
    }
  }
  report(2, "ID-GHZ identity and sector weights (eta_d = 1)", ok, why);
}

// --- criterion 3: source/detector loss equivalence ---

void criterion_3() {
  std::string why;
  bool ok = true;
  for (double s : {0.7, 0.85, 1.0}) {
    for (double d : {0.7, 0.85, 1.0}) {
      if (!verify_equivalence(s, d, 1e-10)) {
        ok = false;
        std::ostringstream o;
        o << "statistics differ at (" << s << ", " << d << ")";
        why = o.str();
      }
    }
  }
  report(3, "equivalence of (eta_s, eta_d) and (eta_s*eta_d, 1)", ok, why);
}

// --- criterion 4: Type-II fusion ---

void criterion_4() {
  const double tol = 1e-10;
  std::string why;
  bool ok = true;

  FusionResult bell = type_ii_fuse(id_expand(ghz_state({1, 2}), 0.0), 2,
                                   id_expand(ghz_state({3, 4}), 0.0), 3, 1.0);
  if (!near(bell.success_probability, 0.5, tol)) {
    ok = false;
    why = "ideal fusion success != 1/2";
  }

  if (ok) {
    FusionResult ghz4 = type_ii_fuse(id_expand(ghz_state({1, 2, 3}), 0.0), 3,
                                     id_expand(ghz_state({4, 5, 6}), 0.0), 4, 1.0);
    if (max_density_difference(ghz4.fused, WeightedEnsemble::pure(ghz_state({1, 2, 5, 6}))) >
        tol) {
      ok = false;
      why = "GHZ3 (+) GHZ3 does not yield GHZ4";
    }
  }

  if (ok) {
    for (double eps : {0.0, 0.1, 0.25}) {
      for (double d : {1.0, 0.85}) {
        FusionResult r = type_ii_fuse(id_expand(ghz_state({1, 2}), eps), 2,
                                      id_expand(ghz_state({3, 4}), eps), 3, d);
        if (!near(r.success_probability, p_ii(eps, d), tol)) {
          ok = false;
          why = "success probability does not factorize as (1-eps)^2 eta_d^2 / 2";
        }
      }
    }
  }

  if (ok) {
    for (const auto& [n, m] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}, {4, 3}}) {
      for (double eps : {0.0, 0.25}) {
        for (double d : {1.0, 0.85}) {
          if (!verify_id_preservation(n, m, eps, d, tol)) {
            ok = false;
            std::ostringstream o;
            o << "ID property lost at (n,m,eps,eta_d) = (" << n << "," << m << "," << eps << ","
              << d << ")";
            why = o.str();
          }
        }
      }
    }
  }
  report(4, "Type-II fusion probabilities and ID preservation", ok, why);
}

// --- criterion 5: tree growth costs ---

void criterion_5() {
  const double rel_tol = 1e-12;
  std::string why;
  bool ok = true;

  for (double p : {0.3, 0.5, 0.8}) {
    for (int l = 1; l <= 5 && ok; ++l) {
      const double direct = expected_power_tree_cost(l, p);
      const double recursed = analytic_tree_cost(TreeSpec{{1 << l}}, p);
      if (std::abs(direct - recursed) > rel_tol * direct) {
        ok = false;
        why = "doubling law violated";
      }
    }
  }

  const std::vector<TreeSpec> specs{TreeSpec{{4}},    TreeSpec{{8}},    TreeSpec{{16}},
                                    TreeSpec{{2, 4}}, TreeSpec{{3, 4}}, TreeSpec{{4, 4, 2}}};
  std::uint64_t seed = 20260825;
  for (const TreeSpec& spec : specs) {
    for (double p : {0.3, 0.5, 0.8}) {
      if (!ok) break;
      ResourceEstimate est = monte_carlo_tree_cost(spec, p, 1000000, seed++);
      if (est.analytic_mean > est.analytic_bound * (1.0 + rel_tol)) {
        ok = false;
        why = "analytic mean exceeds the closed-form bound";
      }
      const double dev = std::abs(est.mean_2trees - est.analytic_mean);
      if (dev > 3.0 * est.std_error) {
        ok = false;
        std::ostringstream o;
        o << "Monte-Carlo mean off by " << dev / est.std_error << " standard errors at p=" << p;
        why = o.str();
      }
    }
  }
  report(5, "tree costs: Monte-Carlo vs recursion (3 sigma, 1e6 trials) and bound", ok, why);
}

// --- criterion 6: loss-tolerance threshold ---

void criterion_6() {
  std::string why;
  bool ok = near(measured_survival(2.0 / 3.0, 1.0), 0.5, 1e-12);
  if (!ok) why = "measured survival at the boundary != 1/2";

  if (ok) {
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
    for (const ThresholdRow& row : threshold_sweep(grid, grid)) {
      const bool product_rule = row.eta_s * row.eta_d > 2.0 / 3.0;
      if (row.tolerant != product_rule || row.tolerant != (row.measured_survival > 0.5)) {
        ok = false;
        std::ostringstream o;
        o << "classification mismatch at (" << row.eta_s << ", " << row.eta_d << ")";
        why = o.str();
        break;
      }
    }
  }
  report(6, "threshold region equals {eta_s*eta_d > 2/3} on a 101x101 grid", ok, why);
}

// --- criterion 7: byte-identical CLI reruns ---

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool rerun_identical(const std::string& cli, const std::string& args) {
  const std::string a = "acceptance_rerun_a.out";
  const std::string b = "acceptance_rerun_b.out";
  const std::string base = "\"" + cli + "\" " + args;
  if (std::system((base + " --out " + a).c_str()) != 0) return false;
  if (std::system((base + " --out " + b).c_str()) != 0) return false;
  const std::string bytes_a = slurp(a);
  const std::string bytes_b = slurp(b);
  std::remove(a.c_str());
  std::remove(b.c_str());
  return !bytes_a.empty() && bytes_a == bytes_b;
}

void criterion_7(const std::string& cli) {
  std::string why;
  bool ok = true;
  const std::vector<std::string> runs{
      "tree-cost --spec 4,4,2 --p-ii 0.5 --trials 100000 --seed 42",
      "tree-cost --spec 2,4 --p-ii 0.3 --trials 100000 --seed 7 --format json",
      "ghz-verify --eta-s 0.9 --eta-d 0.8",
      "threshold-sweep --eta-s-grid lin:0.5:1:21 --eta-d-grid lin:0.5:1:21",
  };
  for (const std::string& args : runs) {
    if (!rerun_identical(cli, args)) {
      ok = false;
      why = "outputs differ for: " + args;
      break;
    }
  }
  report(7, "deterministic CLI output under fixed seeds", ok, why);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : LOQC_CLI_PATH;
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7(cli);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 7 criteria passed\n");
  return 0;
}
