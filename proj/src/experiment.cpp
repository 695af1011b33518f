#include "pvcast/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pvcast/csv.hpp"
#include "pvcast/time_utils.hpp"

namespace pvcast {

const char* model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::N5: return "n5";
    case ModelKind::N6: return "n6";
    case ModelKind::L: return "l";
    case ModelKind::Pvgm: return "pvgm";
    case ModelKind::Ccd: return "ccd";
    case ModelKind::Odnp: return "odnp";
  }
  return "?";
}

ModelKind model_from_name(const std::string& name) {
  if (name == "n5") return ModelKind::N5;
  if (name == "n6") return ModelKind::N6;
  if (name == "l") return ModelKind::L;
  if (name == "pvgm") return ModelKind::Pvgm;
  if (name == "ccd") return ModelKind::Ccd;
  if (name == "odnp") return ModelKind::Odnp;
  throw std::invalid_argument("unknown model: " + name);
}

std::string ExperimentConfig::to_key_values() const {
  std::ostringstream out;
  char buf[64];
  auto put = [&](const char* key, double v) {
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    out << key << '=' << buf << '\n';
  };
  put("latitude", location.latitude_deg);
  put("longitude", location.longitude_deg);
  out << "utc_offset_minutes=" << utc_offset_minutes << '\n';
  if (orientation) {
    put("tilt", orientation->tilt_deg);
    put("azimuth", orientation->azimuth_deg);
  }
  put("p_nom_kw", p_nom_kw);
  out << "models=";
  for (std::size_t i = 0; i < models.size(); ++i) {
    out << (i ? "," : "") << model_name(models[i]);
  }
  out << '\n';
  put("l0", l0);
  put("r", noise_var);
  put("forgetting", forgetting);
  put("mu4_prior", mu4_prior);
  put("mu5_prior", mu5_prior);
  out << "init=" << (init_mode == InitMode::Guideline ? "guideline" : "truth75") << '\n';
  put("truth_init_fraction", truth_init_fraction);
  out << "d0=" << d0 << '\n';
  out << "daily_start_day=" << daily_start_day << '\n';
  out << "da_submission_tod=" << da_submission_tod << '\n';
  out << "ha_submission_tod=" << ha_submission_tod << '\n';
  out << "sid=" << sid << '\n';
  out << "seed=" << seed << '\n';
  out << "runs=" << runs << '\n';
  out << "days=" << days << '\n';
  return out.str();
}

ExperimentConfig ExperimentConfig::from_key_values(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::optional<double> tilt, azimuth;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line missing '=': " + line);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "latitude") cfg.location.latitude_deg = std::stod(value);
    else if (key == "longitude") cfg.location.longitude_deg = std::stod(value);
    else if (key == "utc_offset_minutes") cfg.utc_offset_minutes = std::stoi(value);
    else if (key == "tilt") tilt = std::stod(value);
    else if (key == "azimuth") azimuth = std::stod(value);
    else if (key == "p_nom_kw") cfg.p_nom_kw = std::stod(value);
    else if (key == "models") {
      cfg.models.clear();
      std::string token;
      std::istringstream ms(value);
      while (std::getline(ms, token, ',')) {
        if (!token.empty()) cfg.models.push_back(model_from_name(token));
      }
    } else if (key == "l0") cfg.l0 = std::stod(value);
    else if (key == "r") cfg.noise_var = std::stod(value);
    else if (key == "forgetting") cfg.forgetting = std::stod(value);
    else if (key == "mu4_prior") cfg.mu4_prior = std::stod(value);
    else if (key == "mu5_prior") cfg.mu5_prior = std::stod(value);
    else if (key == "init") {
      if (value == "guideline") cfg.init_mode = InitMode::Guideline;
      else if (value == "truth75") cfg.init_mode = InitMode::TruthScaled;
      else throw std::invalid_argument("unknown init mode: " + value);
    } else if (key == "truth_init_fraction") cfg.truth_init_fraction = std::stod(value);
    else if (key == "d0") cfg.d0 = std::stoi(value);
    else if (key == "daily_start_day") cfg.daily_start_day = std::stoi(value);
    else if (key == "da_submission_tod") cfg.da_submission_tod = std::stoi(value);
    else if (key == "ha_submission_tod") cfg.ha_submission_tod = std::stoi(value);
    else if (key == "sid") cfg.sid = std::stoi(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "runs") cfg.runs = std::stoi(value);
    else if (key == "days") cfg.days = std::stoi(value);
    else throw std::invalid_argument("unknown config key: " + key);
  }
  if (tilt || azimuth) {
    cfg.orientation = SurfaceOrientation{tilt.value_or(0.0), azimuth.value_or(0.0)};
  }
  return cfg;
}

std::uint64_t ExperimentConfig::config_hash() const {
  // FNV-1a over the canonical rendering.
  std::uint64_t h = 1469598103934665603ull;
  for (char c : to_key_values()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

EstimationRun estimate_parametric(ModelKind kind, const TimeSeries& data,
                                  const DaylightCalendar& cal, const ExperimentConfig& cfg) {
  InitConfig init;
  init.p_nom_kw = cfg.p_nom_kw;
  init.mu4_prior = cfg.mu4_prior;
  init.mu5_prior = cfg.mu5_prior;
  init.l0 = cfg.l0;
  init.noise_var = cfg.noise_var;
  init.forgetting = cfg.forgetting;

  const ModelVariant variant = kind == ModelKind::N5   ? ModelVariant::N5
                               : kind == ModelKind::N6 ? ModelVariant::N6
                                                       : ModelVariant::L;
  if (cfg.init_mode == InitMode::Guideline) {
    return run_estimation(variant, data, cal, init);
  }

  // Simulation protocol: physical parameters start at a fraction of the true
  // values; the surrogate and linear images derive from that same guess.
  const TruePlant plant;
  const double f = cfg.truth_init_fraction;
  Eigen::VectorXd mu0(5);
  mu0 << f * plant.params.mu1, f * plant.params.mu2, f * plant.params.mu3, f * plant.params.mu4,
      f * plant.params.mu5;
  if (variant == ModelVariant::N5) {
    EkfState s{mu0, cfg.l0 * Eigen::MatrixXd::Identity(5, 5), cfg.noise_var};
    return run_estimation_ekf(variant, data, cal, std::move(s));
  }
  if (variant == ModelVariant::N6) {
    Eigen::VectorXd mu6(6);
    mu6 << mu0, mu0(1) * mu0(3);
    EkfState s{mu6, cfg.l0 * Eigen::MatrixXd::Identity(6, 6), cfg.noise_var};
    return run_estimation_ekf(variant, data, cal, std::move(s));
  }
  RlsState s;
  s.theta = theta_n5(params_n5(mu0));
  s.weight = cfg.l0 * Eigen::MatrixXd::Identity(kThetaSize, kThetaSize);
  s.forgetting = cfg.forgetting;
  return run_estimation_rls(data, cal, std::move(s));
}

int ha_submission_index(const DaylightCalendar& cal, int day, int tod) {
  if (cal.day_empty(day)) return -1;
  for (int k = cal.first_k(day); k <= cal.last_k(day); ++k) {
    if (cal.entries[static_cast<std::size_t>(k)].tod_minutes >= tod) return k;
  }
  return -1;
}

struct PairSet {
  std::vector<std::pair<double, double>> pairs;  // (measured, predicted)
  std::vector<int> days;
};

PairSet collect_pairs(const std::vector<ForecastSeries>& series, const DaylightCalendar& cal,
                      int min_day) {
  PairSet out;
  for (const ForecastSeries& s : series) {
    for (const ForecastEntry& e : s.entries) {
      const int day = cal.entries.at(static_cast<std::size_t>(e.j)).day;
      if (day < min_day) continue;
      out.pairs.emplace_back(e.measured_kw, e.predicted_kw);
      out.days.push_back(day);
    }
  }
  return out;
}

std::map<std::string, double> aggregate_metrics(const PairSet& ps, double p_nom) {
  const EvaluationSet set = EvaluationSet::from_pairs(ps.pairs, p_nom);
  std::map<std::string, double> m;
  m["rmse"] = rmse(set);
  m["mbe"] = mbe(set);
  m["mape"] = mape(set);
  m["r2"] = r2(set);
  m["nrmse"] = nrmse(set);
  m["rmse_np"] = rmse_np(set);
  m["mape_np"] = mape_np(set);
  return m;
}

}  // namespace

PipelineResult run_pipeline(const TimeSeries& data, const ExperimentConfig& cfg) {
  if (data.empty()) throw std::invalid_argument("empty dataset");
  PipelineResult result;
  result.calendar = build_daylight_calendar(data, cfg.location, cfg.effective_orientation());
  const DaylightCalendar& cal = result.calendar;
  const ReplayWeatherProvider provider(data, cal);

  {
    std::vector<double> daylight_power;
    for (const auto& e : cal.entries) {
      if (e.day < cfg.d0) continue;
      daylight_power.push_back(data.samples[e.sample_pos].power_kw);
    }
    result.power_std_kw = daylight_power.size() >= 2 ? power_std(daylight_power) : 0.0;
  }

  for (ModelKind kind : cfg.models) {
    ModelResult mr;
    mr.kind = kind;

    if (kind == ModelKind::N5 || kind == ModelKind::N6 || kind == ModelKind::L) {
      mr.estimation = estimate_parametric(kind, data, cal, cfg);
    } else if (kind == ModelKind::Pvgm) {
      mr.benchmark = run_pvgm(data, cal);
    } else if (kind == ModelKind::Ccd) {
      mr.benchmark = run_ccd(data, cal);
    }

    // Day-ahead: one series per submission day with a usable frozen estimate.
    for (int d = 2; d + 1 <= cal.num_days(); ++d) {
      if (kind == ModelKind::Odnp) {
        mr.day_ahead.push_back(naive_day_ahead(d + 1, data, cal));
        continue;
      }
      if (cal.day_empty(d - 1)) continue;
      if (mr.estimation) {
        mr.day_ahead.push_back(
            day_ahead(d, data, cal, *mr.estimation, provider, cfg.da_submission_tod));
      } else {
        mr.day_ahead.push_back(benchmark_day_ahead(mr.benchmark->kind, d, data, cal,
                                                   *mr.benchmark, provider,
                                                   cfg.da_submission_tod));
      }
    }

    // Hour-ahead: the single evaluation forecast per day.
    if (kind != ModelKind::Odnp) {
      for (int day = 1; day <= cal.num_days(); ++day) {
        const int k = ha_submission_index(cal, day, cfg.ha_submission_tod);
        if (k < 0) continue;
        if (mr.estimation) {
          mr.hour_ahead.push_back(hour_ahead(k, data, cal, *mr.estimation, provider));
        } else {
          mr.hour_ahead.push_back(
              benchmark_hour_ahead(mr.benchmark->kind, k, data, cal, *mr.benchmark, provider));
        }
      }
    }

    const PairSet da_pairs = collect_pairs(mr.day_ahead, cal, cfg.d0);
    mr.da_metrics = aggregate_metrics(da_pairs, cfg.p_nom_kw);
    if (!mr.hour_ahead.empty()) {
      const PairSet ha_pairs = collect_pairs(mr.hour_ahead, cal, cfg.d0);
      mr.ha_metrics = aggregate_metrics(ha_pairs, cfg.p_nom_kw);
    }
    const PairSet daily_pairs = collect_pairs(mr.day_ahead, cal, cfg.daily_start_day);
    mr.da_daily_rmse = rmse_daily(daily_pairs.days, daily_pairs.pairs);

    result.models.push_back(std::move(mr));
  }
  return result;
}

std::vector<ForecastRow> read_forecast_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  const int c_model = table.column("model");
  const int c_kind = table.column("kind");
  const int c_period = table.column("period");
  const int c_j = table.column("j");
  const int c_ts = table.column("timestamp");
  const int c_pred = table.column("predicted_kw");
  const int c_meas = table.column("measured_kw");
  const int c_q = table.column("q");
  if (c_model < 0 || c_kind < 0 || c_period < 0 || c_j < 0 || c_ts < 0 || c_pred < 0 ||
      c_meas < 0 || c_q < 0) {
    throw std::runtime_error("forecast CSV schema mismatch in " + path);
  }
  std::vector<ForecastRow> rows;
  for (const auto& r : table.rows) {
    ForecastRow row;
    row.model = r.at(static_cast<std::size_t>(c_model));
    row.kind = r.at(static_cast<std::size_t>(c_kind));
    row.period = std::stoi(r.at(static_cast<std::size_t>(c_period)));
    row.j = std::stoi(r.at(static_cast<std::size_t>(c_j)));
    row.unix_time = parse_iso8601(r.at(static_cast<std::size_t>(c_ts)));
    row.predicted_kw = std::stod(r.at(static_cast<std::size_t>(c_pred)));
    row.measured_kw = std::stod(r.at(static_cast<std::size_t>(c_meas)));
    row.q = std::stoi(r.at(static_cast<std::size_t>(c_q)));
    rows.push_back(std::move(row));
  }
  return rows;
}

EvaluationTables evaluate_forecast_rows(const std::vector<ForecastRow>& rows,
                                        const ExperimentConfig& cfg) {
  if (rows.empty()) throw std::invalid_argument("no forecast rows to evaluate");

  // Recover series-relative day numbers from the timestamps. Day-ahead rows
  // carry the target day in `period`, which anchors the mapping exactly;
  // without any the earliest row is taken as day 1.
  std::int64_t anchor = std::numeric_limits<std::int64_t>::max();
  bool anchored = false;
  for (const ForecastRow& r : rows) {
    const std::int64_t local_day = local_day_index(r.unix_time, cfg.utc_offset_minutes);
    if (r.kind == "da") {
      anchor = local_day - (r.period - 1);
      anchored = true;
      break;
    }
    anchor = std::min(anchor, local_day);
  }
  if (!anchored) {
    for (const ForecastRow& r : rows) {
      anchor = std::min(anchor, local_day_index(r.unix_time, cfg.utc_offset_minutes));
    }
  }

  struct Group {
    PairSet pairs;
  };
  std::map<std::pair<std::string, std::string>, Group> groups;
  std::map<std::int64_t, double> measured_by_time;  // dedup across models
  for (const ForecastRow& r : rows) {
    const int day =
        static_cast<int>(local_day_index(r.unix_time, cfg.utc_offset_minutes) - anchor) + 1;
    if (day < cfg.d0) continue;
    auto& g = groups[{r.model, r.kind}];
    g.pairs.pairs.emplace_back(r.measured_kw, r.predicted_kw);
    g.pairs.days.push_back(day);
    if (r.kind == "da") measured_by_time[r.unix_time] = r.measured_kw;
  }

  EvaluationTables tables;
  for (const auto& [key, group] : groups) {
    const auto metrics = aggregate_metrics(group.pairs, cfg.p_nom_kw);
    for (const auto& [metric, value] : metrics) {
      tables.metrics.push_back({key.first, key.second, metric, value});
    }
    if (key.second == "da") {
      tables.daily_rmse[key.first] = rmse_daily(group.pairs.days, group.pairs.pairs);
    }
  }
  std::vector<double> da_measured;
  da_measured.reserve(measured_by_time.size());
  for (const auto& [t, p] : measured_by_time) da_measured.push_back(p);
  tables.power_std_kw = da_measured.size() >= 2 ? power_std(da_measured) : 0.0;
  return tables;
}

MonteCarloSummary run_monte_carlo(const ExperimentConfig& cfg) {
  MonteCarloSummary summary;
  summary.sid = cfg.sid;
  summary.runs = cfg.runs;

  const TruePlant plant;
  const ScenarioConfig scenario = ScenarioConfig::for_sid(cfg.sid);

  std::map<std::string, std::map<std::string, double>> sums;
  for (int run = 0; run < cfg.runs; ++run) {
    SimulationInputs in;
    in.location = cfg.location;
    in.utc_offset_minutes = cfg.utc_offset_minutes;
    in.days = cfg.days;
    in.seed = cfg.seed + static_cast<std::uint64_t>(run);

    const TimeSeries nominal = generate_nominal_dataset(in, plant);
    const TimeSeries processed =
        apply_scenario(nominal, scenario, in.seed ^ 0x9e3779b97f4a7c15ull);

    ExperimentConfig run_cfg = cfg;
    run_cfg.orientation = plant.orientation;
    const PipelineResult result = run_pipeline(processed, run_cfg);

    for (const ModelResult& mr : result.models) {
      const std::string name = model_name(mr.kind);
      for (const auto& [metric, value] : mr.da_metrics) sums[name][metric] += value;
      summary.da_rmse_per_run[name].push_back(mr.da_metrics.at("rmse"));
    }
    summary.power_std_per_run.push_back(result.power_std_kw);
  }

  for (auto& [name, metrics] : sums) {
    for (auto& [metric, total] : metrics) {
      summary.mean_da_metrics[name][metric] = total / cfg.runs;
    }
  }
  return summary;
}

std::map<std::string, double> benchmark_runtime(const TimeSeries& data,
                                                const ExperimentConfig& cfg) {
  std::map<std::string, double> seconds;
  for (ModelKind kind : cfg.models) {
    ExperimentConfig one = cfg;
    one.models = {kind};
    const auto start = std::chrono::steady_clock::now();
    run_pipeline(data, one);
    const auto stop = std::chrono::steady_clock::now();
    seconds[model_name(kind)] = std::chrono::duration<double>(stop - start).count();
  }
  return seconds;
}

}  // namespace pvcast
