#include "loqc/thresholds.hpp"

#include <stdexcept>

#include "loqc/fusion.hpp"
#include "loqc/ghz.hpp"

namespace loqc {

double measured_survival(double eta_s, double eta_d) {
  if (eta_s < 0.0 || eta_s > 1.0 || eta_d < 0.0 || eta_d > 1.0) {
    throw std::invalid_argument("measured_survival: efficiencies outside [0,1]");
  }
  return eta_s * eta_d / (2.0 - eta_s * eta_d);
}

bool loss_tolerance_condition(double eta_s, double eta_d) {
  return measured_survival(eta_s, eta_d) > 0.5;
}

ThresholdRow threshold_row(double eta_s, double eta_d) {
  ThresholdRow row;
  row.eta_s = eta_s;
  row.eta_d = eta_d;
  row.state_survival = effective_survival(eta_s, eta_d);
  row.epsilon = 1.0 - row.state_survival;
  row.measured_survival = measured_survival(eta_s, eta_d);
  row.p_ii = p_ii(row.epsilon, eta_d);
  row.tolerant = loss_tolerance_condition(eta_s, eta_d);
  return row;
}

std::vector<ThresholdRow> threshold_sweep(const std::vector<double>& eta_s_values,
                                          const std::vector<double>& eta_d_values) {
  std::vector<ThresholdRow> rows;
  rows.reserve(eta_s_values.size() * eta_d_values.size());
  for (double s : eta_s_values) {
    for (double d : eta_d_values) {
      rows.push_back(threshold_row(s, d));
    }
  }
  return rows;
}

}  // namespace loqc
