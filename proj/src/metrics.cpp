#include "pvcast/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace pvcast {

EvaluationSet EvaluationSet::from_pairs(const std::vector<std::pair<double, double>>& pairs,
                                        double p_nom_kw) {
  EvaluationSet set;
  set.p_nom_kw = p_nom_kw;
  for (const auto& [pm, ph] : pairs) set.add(pm, ph);
  return set;
}

void EvaluationSet::add(double measured_kw, double predicted_kw) {
  if (measured_kw > 0.0 && predicted_kw > 0.0) {
    measured.push_back(measured_kw);
    predicted.push_back(predicted_kw);
  }
}

namespace {

void require_nonempty(const EvaluationSet& set) {
  if (set.size() == 0) throw MetricsFault("empty evaluation set");
}

double sse(const EvaluationSet& set) {
  double acc = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const double e = set.measured[i] - set.predicted[i];
    acc += e * e;
  }
  return acc;
}

double sst(const EvaluationSet& set) {
  double mean = 0.0;
  for (double v : set.measured) mean += v;
  mean /= static_cast<double>(set.size());
  double acc = 0.0;
  for (double v : set.measured) acc += (v - mean) * (v - mean);
  return acc;
}

double sst_checked(const EvaluationSet& set) {
  if (set.size() < 2) throw MetricsFault("determination coefficient needs at least two pairs");
  const double value = sst(set);
  if (!(value > 0.0)) throw MetricsFault("measured power has zero variance");
  return value;
}

}  // namespace

double rmse(const EvaluationSet& set) {
  require_nonempty(set);
  return std::sqrt(sse(set) / static_cast<double>(set.size()));
}

double mbe(const EvaluationSet& set) {
  require_nonempty(set);
  double acc = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) acc += set.measured[i] - set.predicted[i];
  return acc / static_cast<double>(set.size());
}

double mape(const EvaluationSet& set) {
  require_nonempty(set);
  double acc = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    acc += std::abs((set.measured[i] - set.predicted[i]) / set.measured[i]);
  }
  return acc / static_cast<double>(set.size()) * 100.0;
}

double r2(const EvaluationSet& set) {
  require_nonempty(set);
  return 1.0 - sse(set) / sst_checked(set);
}

double nrmse(const EvaluationSet& set) {
  require_nonempty(set);
  return std::sqrt(sse(set) / sst_checked(set));
}

double rmse_np(const EvaluationSet& set) {
  if (!(set.p_nom_kw > 0.0)) throw MetricsFault("nominal power not set");
  return rmse(set) / set.p_nom_kw;
}

double mape_np(const EvaluationSet& set) {
  require_nonempty(set);
  if (!(set.p_nom_kw > 0.0)) throw MetricsFault("nominal power not set");
  double acc = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    acc += std::abs((set.measured[i] - set.predicted[i]) / set.p_nom_kw);
  }
  return acc / static_cast<double>(set.size()) * 100.0;
}

std::vector<DailyRmse> rmse_daily(const std::vector<int>& day_of_pair,
                                  const std::vector<std::pair<double, double>>& pairs) {
  if (day_of_pair.size() != pairs.size()) throw std::invalid_argument("mismatched day labels");
  std::map<int, EvaluationSet> per_day;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    per_day[day_of_pair[i]].add(pairs[i].first, pairs[i].second);
  }
  std::vector<DailyRmse> out;
  for (const auto& [day, set] : per_day) {
    if (set.size() == 0) continue;
    out.push_back({day, rmse(set)});
  }
  return out;
}

double power_std(const std::vector<double>& measured) {
  if (measured.size() < 2) throw MetricsFault("standard deviation needs at least two samples");
  double mean = 0.0;
  for (double v : measured) mean += v;
  mean /= static_cast<double>(measured.size());
  double acc = 0.0;
  for (double v : measured) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / static_cast<double>(measured.size() - 1));
}

void write_metrics_csv(const std::vector<MetricsRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "model,kind,metric,value\n";
  char buf[32];
  for (const MetricsRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%.10g", row.value);
    out << row.model << ',' << row.kind << ',' << row.metric << ',' << buf << '\n';
  }
}

}  // namespace pvcast
