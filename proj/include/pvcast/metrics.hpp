#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pvcast {

// Measured/forecast power pairs over an evaluation window. Construction
// applies the positive-pair filter: only pairs with measured > 0 and
// predicted > 0 enter any of the error measures.
struct EvaluationSet {
  std::vector<double> measured;
  std::vector<double> predicted;
  double p_nom_kw = 0.0;

  static EvaluationSet from_pairs(const std::vector<std::pair<double, double>>& pairs,
                                  double p_nom_kw);
  void add(double measured_kw, double predicted_kw);
  std::size_t size() const { return measured.size(); }
};

struct MetricsFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Error measures. All throw MetricsFault on an empty set; r2/nrmse also fault
// when the measured power has no variance.
double rmse(const EvaluationSet& set);
double mbe(const EvaluationSet& set);   // mean of (measured - predicted)
double mape(const EvaluationSet& set);  // percent
double r2(const EvaluationSet& set);    // may be negative, never floored
// Computed as sqrt(SSE/SST) directly, which equals sqrt(1 - R^2) whenever the
// latter is defined and stays meaningful for R^2 < 0.
double nrmse(const EvaluationSet& set);
double rmse_np(const EvaluationSet& set);  // RMSE / P_nom
double mape_np(const EvaluationSet& set);  // percent of P_nom

struct DailyRmse {
  int day = 0;
  double rmse_kw = 0.0;
};

// Per-day RMSE over the pairs of each day; days without a valid pair are
// omitted.
std::vector<DailyRmse> rmse_daily(const std::vector<int>& day_of_pair,
                                  const std::vector<std::pair<double, double>>& pairs);

// Sample standard deviation of measured power (the reference line the daily
// RMSE plots are compared against).
double power_std(const std::vector<double>& measured);

struct MetricsRow {
  std::string model;
  std::string kind;  // "da" or "ha"
  std::string metric;
  double value = 0.0;
};

void write_metrics_csv(const std::vector<MetricsRow>& rows, const std::string& path);

}  // namespace pvcast
