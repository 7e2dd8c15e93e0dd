#pragma once

#include <cstdint>
#include <vector>

namespace loqc {

/// Branching profile {b_0 ... b_m}, top level first.
struct TreeSpec {
  std::vector<int> branching;

  /// 1 + b_0 + b_0*b_1 + ... qubits in the full tree.
  long long total_qubits() const;
  bool valid() const;
};

struct ResourceEstimate {
  double mean_2trees = 0.0;
  double std_error = 0.0;
  long long trials = 0;
  double p_ii_used = 0.0;
  double analytic_mean = 0.0;
  double analytic_bound = 0.0;
};

/// Expected 2-trees consumed to build a 2^l-tree by repeated doubling with
/// discard-on-failure: (2/p_ii)^(l-1).
double expected_power_tree_cost(int l, double p_ii);

/// Exact expectation of the discard-on-failure build strategy for the full
/// branching profile, with non-power-of-two branching padded up to the next
/// power of two.
double analytic_tree_cost(const TreeSpec& spec, double p_ii);

/// Upper bound (2/p_ii^2)^m * prod_i (2/p_ii)^(log2 b_i).
double tree_cost_bound(const TreeSpec& spec, double p_ii);

/// Stochastic simulation of the build: every fusion succeeds independently
/// with probability p_ii and any failure discards everything consumed by
/// the attempt. Deterministic given (seed, trials); trial i draws from its
/// own stream derived from (seed, i).
ResourceEstimate monte_carlo_tree_cost(const TreeSpec& spec, double p_ii, long long trials,
                                       std::uint64_t seed);

/// 2-tree cost of an n encoded-qubit linear cluster built from tree-encoded
/// three-GHZ states: n * (3/p_ii^3 + 3*n_tree) / p_ii^3.
double encoded_cluster_cost(int n, double p_ii, double n_tree);

}  // namespace loqc
