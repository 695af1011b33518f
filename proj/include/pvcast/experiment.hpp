#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pvcast/benchmarks.hpp"
#include "pvcast/estimation.hpp"
#include "pvcast/forecast.hpp"
#include "pvcast/metrics.hpp"
#include "pvcast/simulator.hpp"
#include "pvcast/solar_geometry.hpp"

namespace pvcast {

enum class ModelKind { N5, N6, L, Pvgm, Ccd, Odnp };

const char* model_name(ModelKind kind);
ModelKind model_from_name(const std::string& name);  // throws on unknown names

enum class InitMode {
  Guideline,   // nominal-power / typical-range / climate-prior initialization
  TruthScaled  // simulation protocol: 75% of the true physical parameters
};

struct ExperimentConfig {
  GeoLocation location{39.2, 9.1};
  int utc_offset_minutes = 60;
  std::optional<SurfaceOrientation> orientation;  // default: guideline for the latitude
  double p_nom_kw = 920.0;

  std::vector<ModelKind> models{ModelKind::N5, ModelKind::N6, ModelKind::L};

  double l0 = 0.01;
  double noise_var = 1e4;
  double forgetting = 1.0;
  double mu4_prior = 0.784;   // Italian climate
  double mu5_prior = -1.344;
  InitMode init_mode = InitMode::Guideline;
  double truth_init_fraction = 0.75;

  int d0 = 18;                // aggregate indices start here
  int daily_start_day = 15;   // daily RMSE series and per-day comparisons
  int da_submission_tod = kDefaultSubmissionTod;
  int ha_submission_tod = kDefaultSubmissionTod;

  int sid = 0;
  std::uint64_t seed = 1;
  int runs = 1;
  int days = 365;

  SurfaceOrientation effective_orientation() const {
    return orientation ? *orientation : guideline_orientation(location);
  }

  // Canonical key=value rendering (also the input format of --config files).
  std::string to_key_values() const;
  static ExperimentConfig from_key_values(const std::string& text);
  std::uint64_t config_hash() const;
};

struct ModelResult {
  ModelKind kind = ModelKind::N5;
  std::optional<EstimationRun> estimation;
  std::optional<BenchmarkRun> benchmark;
  std::vector<ForecastSeries> day_ahead;
  std::vector<ForecastSeries> hour_ahead;
  std::map<std::string, double> da_metrics;
  std::map<std::string, double> ha_metrics;
  std::vector<DailyRmse> da_daily_rmse;
};

struct PipelineResult {
  DaylightCalendar calendar;
  std::vector<ModelResult> models;
  double power_std_kw = 0.0;  // daylight measured power, evaluation window
};

// Dataset -> estimates -> forecasts -> metrics for every requested model.
PipelineResult run_pipeline(const TimeSeries& data, const ExperimentConfig& cfg);

// Aggregate metrics recomputed from persisted forecast rows (model, kind,
// target day, measured, predicted); the resume path of the evaluate command.
struct ForecastRow {
  std::string model;
  std::string kind;
  int period = 0;
  int j = 0;
  std::int64_t unix_time = 0;
  double predicted_kw = 0.0;
  double measured_kw = 0.0;
  int q = 0;
};

std::vector<ForecastRow> read_forecast_csv(const std::string& path);

struct EvaluationTables {
  std::vector<MetricsRow> metrics;
  std::map<std::string, std::vector<DailyRmse>> daily_rmse;  // model -> series
  double power_std_kw = 0.0;
};

EvaluationTables evaluate_forecast_rows(const std::vector<ForecastRow>& rows,
                                        const ExperimentConfig& cfg);

struct MonteCarloSummary {
  int sid = 0;
  int runs = 0;
  // model -> metric -> mean over runs (DA forecasts).
  std::map<std::string, std::map<std::string, double>> mean_da_metrics;
  // per-run values used by the averages, kept for reporting.
  std::map<std::string, std::vector<double>> da_rmse_per_run;
  std::vector<double> power_std_per_run;
};

// Generates one synthetic year per run (seed, seed+1, ...) under the
// configured SID and averages the DA indices over the runs.
MonteCarloSummary run_monte_carlo(const ExperimentConfig& cfg);

// Wall-clock of the estimation + forecasting stage per model, seconds.
std::map<std::string, double> benchmark_runtime(const TimeSeries& data,
                                                const ExperimentConfig& cfg);

}  // namespace pvcast
