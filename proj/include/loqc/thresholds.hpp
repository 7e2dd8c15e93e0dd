#pragma once

#include <vector>

namespace loqc {

/// Closed-form threshold quantities at one (eta_s, eta_d) point.
struct ThresholdRow {
  double eta_s = 0.0;
  double eta_d = 0.0;
  double epsilon = 0.0;            // 1 - eta_s/(2 - eta_d*eta_s)
  double state_survival = 0.0;     // eta_s/(2 - eta_d*eta_s)
  double measured_survival = 0.0;  // eta_s*eta_d/(2 - eta_s*eta_d)
  double p_ii = 0.0;               // (1-epsilon)^2 * eta_d^2 / 2
  bool tolerant = false;
};

/// eta_s*eta_d/(2 - eta_s*eta_d): survival of the output state as seen
/// through a later eta_d-efficient measurement. Equals
/// effective_survival(eta_s, eta_d)*eta_d identically.
double measured_survival(double eta_s, double eta_d);

/// Loss-tolerant computation is possible iff measured_survival > 1/2,
/// equivalently eta_s*eta_d > 2/3. Boundary points are not tolerant.
bool loss_tolerance_condition(double eta_s, double eta_d);

ThresholdRow threshold_row(double eta_s, double eta_d);

/// Row-major sweep (eta_s outer loop).
std::vector<ThresholdRow> threshold_sweep(const std::vector<double>& eta_s_values,
                                          const std::vector<double>& eta_d_values);

}  // namespace loqc
