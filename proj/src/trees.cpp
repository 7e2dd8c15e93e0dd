#include "loqc/trees.hpp"

#include <cmath>
#include <stdexcept>

namespace loqc {

namespace {

int ceil_log2(int b) {
  int k = 0;
  while ((1 << k) < b) ++k;
  return k;
}

/// Doublings needed to reach branching b from a 2-tree, after padding b up
/// to the next power of two.
int doublings_for(int b) {
  const int k = ceil_log2(b);
  return k > 0 ? k - 1 : 0;
}

void validate(const TreeSpec& spec, double p) {
  if (!spec.valid()) throw std::invalid_argument("tree spec: need at least one b_i >= 1");
  if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("p_ii must lie in (0,1]");
}

struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1], safe to pass through log().
  double uniform_open() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }
};

std::uint64_t trial_stream_state(std::uint64_t seed, std::uint64_t trial) {
  SplitMix64 scrambler{seed + (trial + 1) * 0x9E3779B97F4A7C15ULL};
  return scrambler.next();
}

struct Stage {
  enum Kind { kLeaf, kDouble, kJoin } kind = kLeaf;
  int child = -1;
  double success_prob = 1.0;
  double log1m_prob = 0.0;

  Stage(Kind k, int c, double p)
      : kind(k), child(c), success_prob(p), log1m_prob(p < 1.0 ? std::log1p(-p) : 0.0) {}
};

/// Bottom-up build plan: doublings to the padded bottom branching, then a
/// two-fusion level join plus doublings per upper level.
std::vector<Stage> build_plan(const TreeSpec& spec, double p) {
  std::vector<Stage> stages;
  stages.push_back({Stage::kLeaf, -1, 1.0});
  int current = 0;
  const int m = static_cast<int>(spec.branching.size()) - 1;
  for (int d = 0; d < doublings_for(spec.branching[m]); ++d) {
    stages.push_back({Stage::kDouble, current, p});
    current = static_cast<int>(stages.size()) - 1;
  }
  for (int level = m - 1; level >= 0; --level) {
    stages.push_back({Stage::kJoin, current, p * p});
    current = static_cast<int>(stages.size()) - 1;
    for (int d = 0; d < doublings_for(spec.branching[level]); ++d) {
      stages.push_back({Stage::kDouble, current, p});
      current = static_cast<int>(stages.size()) - 1;
    }
  }
  return stages;
}

std::uint64_t sample_cost(const std::vector<Stage>& stages, int idx, SplitMix64& rng) {
  const Stage& st = stages[idx];
  if (st.kind == Stage::kLeaf) return 1;
  const std::uint64_t base = st.kind == Stage::kJoin ? 1 : 0;
  if (stages[st.child].kind == Stage::kLeaf) {
    // Every attempt consumes the same number of 2-trees, so the total is
    // attempt cost times a geometric attempt count.
    const std::uint64_t unit = base + 2;
    if (st.success_prob >= 1.0) return unit;
    const std::uint64_t attempts =
        1 + static_cast<std::uint64_t>(std::log(rng.uniform_open()) / st.log1m_prob);
    return attempts * unit;
  }
  std::uint64_t total = 0;
  for (;;) {
    std::uint64_t attempt = base;
    attempt += sample_cost(stages, st.child, rng);
    attempt += sample_cost(stages, st.child, rng);
    total += attempt;
    if (rng.uniform() < st.success_prob) return total;
  }
}

}  // namespace

long long TreeSpec::total_qubits() const {
  long long total = 1;
  long long level = 1;
  for (int b : branching) {
    level *= b;
    total += level;
  }
  return total;
}

bool TreeSpec::valid() const {
  if (branching.empty()) return false;
  for (int b : branching) {
    if (b < 1) return false;
  }
  return true;
}

double expected_power_tree_cost(int l, double p_ii) {
  if (l < 1) throw std::invalid_argument("expected_power_tree_cost: l must be >= 1");
  if (!(p_ii > 0.0) || p_ii > 1.0) throw std::invalid_argument("p_ii must lie in (0,1]");
  return std::pow(2.0 / p_ii, l - 1);
}

double analytic_tree_cost(const TreeSpec& spec, double p_ii) {
  validate(spec, p_ii);
  const int m = static_cast<int>(spec.branching.size()) - 1;
  double cost = std::pow(2.0 / p_ii, doublings_for(spec.branching[m]));
  for (int level = m - 1; level >= 0; --level) {
    cost = (2.0 * cost + 1.0) / (p_ii * p_ii);
    cost *= std::pow(2.0 / p_ii, doublings_for(spec.branching[level]));
  }
  return cost;
}

double tree_cost_bound(const TreeSpec& spec, double p_ii) {
  validate(spec, p_ii);
  const int m = static_cast<int>(spec.branching.size()) - 1;
  double bound = std::pow(2.0 / (p_ii * p_ii), m);
  for (int b : spec.branching) {
    bound *= std::pow(2.0 / p_ii, std::log2(static_cast<double>(b)));
  }
  return bound;
}

ResourceEstimate monte_carlo_tree_cost(const TreeSpec& spec, double p_ii, long long trials,
                                       std::uint64_t seed) {
  validate(spec, p_ii);
  if (trials < 1) throw std::invalid_argument("monte_carlo_tree_cost: trials must be >= 1");

  const std::vector<Stage> plan = build_plan(spec, p_ii);
  const int top = static_cast<int>(plan.size()) - 1;

  std::uint64_t sum = 0;
  unsigned __int128 sum_sq = 0;
  for (long long trial = 0; trial < trials; ++trial) {
    SplitMix64 rng{trial_stream_state(seed, static_cast<std::uint64_t>(trial))};
    const std::uint64_t cost = sample_cost(plan, top, rng);
    sum += cost;
    sum_sq += static_cast<unsigned __int128>(cost) * cost;
  }

  const long double n = static_cast<long double>(trials);
  const long double mean = static_cast<long double>(sum) / n;
  long double variance = 0.0L;
  if (trials > 1) {
    variance = (static_cast<long double>(sum_sq) - n * mean * mean) / (n - 1.0L);
    if (variance < 0.0L) variance = 0.0L;
  }

  ResourceEstimate est;
  est.mean_2trees = static_cast<double>(mean);
  est.std_error = static_cast<double>(std::sqrt(variance / n));
  est.trials = trials;
  est.p_ii_used = p_ii;
  est.analytic_mean = analytic_tree_cost(spec, p_ii);
  est.analytic_bound = tree_cost_bound(spec, p_ii);
  return est;
}

double encoded_cluster_cost(int n, double p_ii, double n_tree) {
  if (n < 1) throw std::invalid_argument("encoded_cluster_cost: n must be >= 1");
  if (!(p_ii > 0.0) || p_ii > 1.0) throw std::invalid_argument("p_ii must lie in (0,1]");
  if (!(n_tree > 0.0)) throw std::invalid_argument("encoded_cluster_cost: n_tree must be > 0");
  const double p3 = p_ii * p_ii * p_ii;
  return n * (3.0 / p3 + 3.0 * n_tree) / p3;
}

}  // namespace loqc
