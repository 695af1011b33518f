// Batch driver: simulation, ingestion, online estimation + forecasting,
// evaluation of persisted forecasts, and a wall-clock benchmark.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pvcast/experiment.hpp"
#include "pvcast/ingest.hpp"
#include "pvcast/time_utils.hpp"

namespace fs = std::filesystem;
using namespace pvcast;

namespace {

constexpr const char* kVersion = "0.1.0";

void write_manifest(const fs::path& dir, const ExperimentConfig& cfg, nlohmann::json extra) {
  nlohmann::json j;
  j["tool"] = "pvcast";
  j["version"] = kVersion;
  j["config_hash"] = cfg.config_hash();
  j["config"] = cfg.to_key_values();
  j["seed"] = cfg.seed;
  for (auto& [key, value] : extra.items()) j[key] = value;
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
  out << j.dump(2) << '\n';
}

TimeSeries simulated_dataset(const ExperimentConfig& cfg, std::uint64_t seed) {
  SimulationInputs in;
  in.location = cfg.location;
  in.utc_offset_minutes = cfg.utc_offset_minutes;
  in.days = cfg.days;
  in.seed = seed;
  const TruePlant plant;
  const TimeSeries nominal = generate_nominal_dataset(in, plant);
  return apply_scenario(nominal, ScenarioConfig::for_sid(cfg.sid), seed ^ 0x9e3779b97f4a7c15ull);
}

void write_daily_rmse_csv(const std::map<std::string, std::vector<DailyRmse>>& series,
                          double power_std_kw, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "model,kind,day,rmse_kw\n";
  char buf[32];
  for (const auto& [model, days] : series) {
    for (const DailyRmse& d : days) {
      std::snprintf(buf, sizeof(buf), "%.10g", d.rmse_kw);
      out << model << ",da," << d.day << ',' << buf << '\n';
    }
  }
  std::snprintf(buf, sizeof(buf), "%.10g", power_std_kw);
  out << "power_std,da,0," << buf << '\n';
}

int cmd_simulate(const ExperimentConfig& cfg, const std::string& out_dir) {
  fs::create_directories(out_dir);
  SimulationInputs in;
  in.location = cfg.location;
  in.utc_offset_minutes = cfg.utc_offset_minutes;
  in.days = cfg.days;
  in.seed = cfg.seed;
  const TruePlant plant;
  const TimeSeries nominal = generate_nominal_dataset(in, plant);
  const ScenarioConfig scenario = ScenarioConfig::for_sid(cfg.sid);
  const TimeSeries processed =
      apply_scenario(nominal, scenario, cfg.seed ^ 0x9e3779b97f4a7c15ull);

  const fs::path dir(out_dir);
  write_dataset_csv(processed, (dir / "dataset.csv").string());
  write_scenario_manifest(scenario, in, (dir / "scenario.json").string());
  write_manifest(dir, cfg, {{"samples", processed.samples.size()}, {"kind", "simulate"}});
  std::cout << "wrote " << (dir / "dataset.csv").string() << " (" << processed.samples.size()
            << " samples, sid " << cfg.sid << ")\n";
  return 0;
}

int cmd_ingest(const std::string& power_csv, const std::string& cci_csv, bool okta,
               const ExperimentConfig& cfg, const std::string& out_dir) {
  fs::create_directories(out_dir);
  IngestOptions opt;
  opt.cci_in_okta = okta;
  const IngestResult result = ingest_files(power_csv, cci_csv, opt);
  const fs::path dir(out_dir);
  write_dataset_csv(result.data, (dir / "dataset.csv").string());
  write_quality_report(result.report, (dir / "quality.json").string());
  write_manifest(dir, cfg,
                 {{"kind", "ingest"},
                  {"power_csv", power_csv},
                  {"cci_csv", cci_csv},
                  {"merged_hours", result.report.merged_hours},
                  {"dropped_no_cci", result.report.dropped_no_cci}});
  std::cout << "merged " << result.report.merged_hours << " hours ("
            << result.report.dropped_no_cci << " dropped without cloud report)\n";
  return 0;
}

void write_pipeline_outputs(const PipelineResult& result, const ExperimentConfig& cfg,
                            const fs::path& dir) {
  std::vector<MetricsRow> metric_rows;
  std::map<std::string, std::vector<DailyRmse>> daily;
  {
    std::ofstream forecasts(dir / "forecasts.csv");
    forecasts << "model,kind,period,j,timestamp,predicted_kw,measured_kw,q\n";
  }

  for (const ModelResult& mr : result.models) {
    const std::string name = model_name(mr.kind);
    if (mr.estimation) {
      write_trajectory_csv(*mr.estimation, result.calendar,
                           (dir / ("trajectory_" + name + ".csv")).string());
    }
    std::vector<ForecastSeries> all = mr.day_ahead;
    all.insert(all.end(), mr.hour_ahead.begin(), mr.hour_ahead.end());
    const fs::path part = dir / "forecasts.csv.part";
    write_forecast_csv(all, name, cfg.utc_offset_minutes, part.string());
    std::ifstream in(part);
    std::ofstream out(dir / "forecasts.csv", std::ios::app);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) out << line << '\n';
    in.close();
    fs::remove(part);

    for (const auto& [metric, value] : mr.da_metrics) {
      metric_rows.push_back({name, "da", metric, value});
    }
    for (const auto& [metric, value] : mr.ha_metrics) {
      metric_rows.push_back({name, "ha", metric, value});
    }
    daily[name] = mr.da_daily_rmse;
  }
  write_metrics_csv(metric_rows, (dir / "metrics.csv").string());
  write_daily_rmse_csv(daily, result.power_std_kw, dir / "rmse_daily.csv");
}

int cmd_run(const std::string& data_file, const ExperimentConfig& cfg_in,
            const std::string& out_dir, bool init_explicit, bool l0_explicit) {
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  ExperimentConfig cfg = cfg_in;

  if (data_file.empty()) {
    // Simulation protocol: initial guesses default to a fraction of the true
    // physical parameters, one or more seeded runs.
    if (!init_explicit) cfg.init_mode = InitMode::TruthScaled;
    if (cfg.runs > 1) {
      const MonteCarloSummary summary = run_monte_carlo(cfg);
      std::vector<MetricsRow> rows;
      for (const auto& [model, metrics] : summary.mean_da_metrics) {
        for (const auto& [metric, value] : metrics) rows.push_back({model, "da", metric, value});
      }
      write_metrics_csv(rows, (dir / "metrics_mc.csv").string());
      std::ofstream per_run(dir / "rmse_per_run.csv");
      per_run << "model,run,rmse_kw,power_std_kw\n";
      for (const auto& [model, values] : summary.da_rmse_per_run) {
        for (std::size_t i = 0; i < values.size(); ++i) {
          per_run << model << ',' << i << ',' << values[i] << ','
                  << summary.power_std_per_run[i] << '\n';
        }
      }
      write_manifest(dir, cfg, {{"kind", "monte_carlo"}, {"runs", cfg.runs}});
      std::cout << "monte carlo over " << cfg.runs << " runs (sid " << cfg.sid << ")\n";
      for (const auto& [model, metrics] : summary.mean_da_metrics) {
        std::cout << "  " << model << " mean DA rmse " << metrics.at("rmse") << " kW\n";
      }
      return 0;
    }
    const TimeSeries data = simulated_dataset(cfg, cfg.seed);
    const PipelineResult result = run_pipeline(data, cfg);
    write_pipeline_outputs(result, cfg, dir);
    write_manifest(dir, cfg, {{"kind", "run"}, {"power_std_kw", result.power_std_kw}});
    std::cout << "run complete (" << result.models.size() << " models, simulated sid "
              << cfg.sid << ")\n";
    return 0;
  }

  const TimeSeries data = read_dataset_csv(data_file);
  // Context defaults: a dataset with a scenario manifest alongside is a
  // simulation export and keeps the simulation initialization; plain datasets
  // get the real-data l0 and the guideline initialization.
  const bool simulated = fs::exists(fs::path(data_file).parent_path() / "scenario.json");
  if (!simulated) {
    if (!l0_explicit) cfg.l0 = 10.0;
    if (!init_explicit) cfg.init_mode = InitMode::Guideline;
  } else if (!init_explicit) {
    cfg.init_mode = InitMode::TruthScaled;
  }
  cfg.utc_offset_minutes = data.utc_offset_minutes;
  const PipelineResult result = run_pipeline(data, cfg);
  write_pipeline_outputs(result, cfg, dir);
  write_manifest(dir, cfg,
                 {{"kind", "run"},
                  {"data", data_file},
                  {"power_std_kw", result.power_std_kw},
                  {"samples", data.samples.size()}});
  std::cout << "run complete (" << result.models.size() << " models, "
            << result.calendar.num_indices() << " daylight samples)\n";
  return 0;
}

int cmd_evaluate(const std::vector<std::string>& forecast_files, const ExperimentConfig& cfg,
                 const std::string& out_dir) {
  fs::create_directories(out_dir);
  std::vector<ForecastRow> rows;
  for (const std::string& file : forecast_files) {
    const auto part = read_forecast_csv(file);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  const EvaluationTables tables = evaluate_forecast_rows(rows, cfg);
  const fs::path dir(out_dir);
  write_metrics_csv(tables.metrics, (dir / "metrics.csv").string());
  write_daily_rmse_csv(tables.daily_rmse, tables.power_std_kw, dir / "rmse_daily.csv");
  write_manifest(dir, cfg,
                 {{"kind", "evaluate"},
                  {"rows", rows.size()},
                  {"power_std_kw", tables.power_std_kw}});
  std::cout << "evaluated " << rows.size() << " forecast rows\n";
  return 0;
}

int cmd_bench(const std::string& data_file, const ExperimentConfig& cfg_in,
              const std::string& out_dir) {
  ExperimentConfig cfg = cfg_in;
  const TimeSeries data =
      data_file.empty() ? simulated_dataset(cfg, cfg.seed) : read_dataset_csv(data_file);
  // timing only: keep the evaluation windows inside short datasets
  cfg.d0 = std::min(cfg.d0, std::max(1, cfg.days - 2));
  cfg.daily_start_day = std::min(cfg.daily_start_day, cfg.d0);
  const auto seconds = benchmark_runtime(data, cfg);
  for (const auto& [model, s] : seconds) {
    std::cout << model << "," << s << "\n";
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / "bench.csv");
    out << "model,seconds\n";
    for (const auto& [model, s] : seconds) out << model << ',' << s << '\n';
    write_manifest(out_dir, cfg, {{"kind", "bench"}});
  }
  return 0;
}

void parse_models(ExperimentConfig& cfg, const std::string& list) {
  if (list.empty()) return;
  cfg.models.clear();
  std::istringstream in(list);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) cfg.models.push_back(model_from_name(token));
  }
  if (cfg.models.empty()) throw std::invalid_argument("empty model list");
}

// key=value file plus --set overrides; flags already applied to cfg win last.
struct ConfigCli {
  std::string config_file;
  std::vector<std::string> overrides;
  bool show = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_file, "key=value configuration file");
    cmd->add_option("--set", overrides, "override one key=value entry")->take_all();
    cmd->add_flag("--show-config", show, "print the effective configuration and exit");
  }

  ExperimentConfig resolve(const ExperimentConfig& flags_applied) const {
    ExperimentConfig cfg = flags_applied;
    std::string text = cfg.to_key_values();
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw std::runtime_error("cannot open config file " + config_file);
      std::string file_text((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
      text += file_text;
    }
    for (const std::string& kv : overrides) text += kv + "\n";
    return ExperimentConfig::from_key_values(text);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PV generation model estimation and forecasting from cloud cover reports"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto add_site = [](CLI::App* cmd, ExperimentConfig& cfg, std::optional<double>& tilt,
                     std::optional<double>& azimuth) {
    cmd->add_option("--lat", cfg.location.latitude_deg, "plant latitude, degrees north");
    cmd->add_option("--lon", cfg.location.longitude_deg, "plant longitude, degrees east");
    cmd->add_option("--utc-offset", cfg.utc_offset_minutes, "local offset, minutes");
    cmd->add_option("--p-nom", cfg.p_nom_kw, "nominal plant power, kW");
    cmd->add_option("--tilt", tilt, "panel tilt, degrees (default: latitude guideline)");
    cmd->add_option("--azimuth", azimuth, "panel azimuth, degrees from south");
  };
  auto apply_orientation = [](ExperimentConfig& cfg, const std::optional<double>& tilt,
                              const std::optional<double>& azimuth) {
    if (tilt || azimuth) {
      SurfaceOrientation o = cfg.effective_orientation();
      if (tilt) o.tilt_deg = *tilt;
      if (azimuth) o.azimuth_deg = *azimuth;
      cfg.orientation = o;
    }
  };

  // simulate
  auto* sim = app.add_subcommand("simulate", "generate a synthetic plant dataset");
  ExperimentConfig sim_cfg;
  ConfigCli sim_cli;
  std::optional<double> sim_tilt, sim_azimuth;
  std::string sim_out = "out_simulate";
  sim->add_option("--sid", sim_cfg.sid, "setup id 0..12")->check(CLI::Range(0, 12));
  sim->add_option("--seed", sim_cfg.seed, "generator seed");
  sim->add_option("--days", sim_cfg.days, "number of simulated days");
  sim->add_option("--out", sim_out, "output directory");
  add_site(sim, sim_cfg, sim_tilt, sim_azimuth);
  sim_cli.attach(sim);

  // ingest
  auto* ing = app.add_subcommand("ingest", "merge plant and weather-service files");
  ExperimentConfig ing_cfg;
  ConfigCli ing_cli;
  std::optional<double> ing_tilt, ing_azimuth;
  std::string ing_power, ing_cci, ing_out = "out_ingest";
  bool ing_okta = false;
  ing->add_option("--power", ing_power, "power + temperature CSV (timestamp,power_kw,temp_c)")
      ->required();
  ing->add_option("--cci", ing_cci, "cloud cover CSV (timestamp,cci)")->required();
  ing->add_flag("--okta", ing_okta, "cloud cover reports given in okta 0..8");
  ing->add_option("--out", ing_out, "output directory");
  add_site(ing, ing_cfg, ing_tilt, ing_azimuth);
  ing_cli.attach(ing);

  // run
  auto* run = app.add_subcommand("run", "online estimation, forecasts and metrics");
  ExperimentConfig run_cfg;
  ConfigCli run_cli;
  std::optional<double> run_tilt, run_azimuth;
  std::string run_data, run_out = "out_run", run_models, run_init;
  bool l0_explicit = false;
  run->add_option("--data", run_data, "canonical dataset CSV (omit to simulate internally)");
  run->add_option("--models", run_models, "comma list: n5,n6,l,pvgm,ccd,odnp");
  run->add_option("--l0", run_cfg.l0, "initial covariance/weight scale")
      ->each([&l0_explicit](const std::string&) { l0_explicit = true; });
  run->add_option("--r", run_cfg.noise_var, "measurement noise variance, kW^2");
  run->add_option("--forgetting", run_cfg.forgetting, "RLS forgetting factor");
  run->add_option("--d0", run_cfg.d0, "first day for aggregate indices");
  run->add_option("--daily-start", run_cfg.daily_start_day, "first day for daily series");
  run->add_option("--sid", run_cfg.sid, "setup id when simulating")->check(CLI::Range(0, 12));
  run->add_option("--seed", run_cfg.seed, "seed when simulating");
  run->add_option("--days", run_cfg.days, "days when simulating");
  run->add_option("--runs", run_cfg.runs, "number of seeded simulation runs");
  run->add_option("--init", run_init, "initialization: guideline or truth75");
  run->add_option("--out", run_out, "output directory");
  add_site(run, run_cfg, run_tilt, run_azimuth);
  run_cli.attach(run);

  // evaluate
  auto* eva = app.add_subcommand("evaluate", "recompute metrics from persisted forecasts");
  ExperimentConfig eva_cfg;
  ConfigCli eva_cli;
  std::vector<std::string> eva_files;
  std::string eva_out = "out_evaluate";
  eva->add_option("--forecasts", eva_files, "forecast CSV files")->required()->take_all();
  eva->add_option("--d0", eva_cfg.d0, "first day for aggregate indices");
  eva->add_option("--p-nom", eva_cfg.p_nom_kw, "nominal plant power, kW");
  eva->add_option("--utc-offset", eva_cfg.utc_offset_minutes, "local offset, minutes");
  eva->add_option("--out", eva_out, "output directory");
  eva_cli.attach(eva);

  // bench
  auto* ben = app.add_subcommand("bench", "wall-clock per model");
  ExperimentConfig ben_cfg;
  ConfigCli ben_cli;
  std::optional<double> ben_tilt, ben_azimuth;
  std::string ben_data, ben_models, ben_out;
  ben->add_option("--data", ben_data, "canonical dataset CSV (omit to simulate)");
  ben->add_option("--models", ben_models, "comma list of models");
  ben->add_option("--sid", ben_cfg.sid, "setup id when simulating");
  ben->add_option("--days", ben_cfg.days, "days when simulating");
  ben->add_option("--out", ben_out, "optional output directory");
  add_site(ben, ben_cfg, ben_tilt, ben_azimuth);
  ben_cli.attach(ben);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      ExperimentConfig cfg = sim_cli.resolve(sim_cfg);
      apply_orientation(cfg, sim_tilt, sim_azimuth);
      if (sim_cli.show) {
        std::cout << cfg.to_key_values();
        return 0;
      }
      return cmd_simulate(cfg, sim_out);
    }
    if (ing->parsed()) {
      ExperimentConfig cfg = ing_cli.resolve(ing_cfg);
      apply_orientation(cfg, ing_tilt, ing_azimuth);
      if (ing_cli.show) {
        std::cout << cfg.to_key_values();
        return 0;
      }
      return cmd_ingest(ing_power, ing_cci, ing_okta, cfg, ing_out);
    }
    if (run->parsed()) {
      ExperimentConfig cfg = run_cli.resolve(run_cfg);
      apply_orientation(cfg, run_tilt, run_azimuth);
      parse_models(cfg, run_models);
      const bool init_explicit = !run_init.empty();
      if (init_explicit) {
        if (run_init == "guideline") cfg.init_mode = InitMode::Guideline;
        else if (run_init == "truth75") cfg.init_mode = InitMode::TruthScaled;
        else throw std::invalid_argument("unknown init mode: " + run_init);
      }
      if (run_cli.show) {
        std::cout << cfg.to_key_values();
        return 0;
      }
      return cmd_run(run_data, cfg, run_out, init_explicit, l0_explicit);
    }
    if (eva->parsed()) {
      ExperimentConfig cfg = eva_cli.resolve(eva_cfg);
      if (eva_cli.show) {
        std::cout << cfg.to_key_values();
        return 0;
      }
      return cmd_evaluate(eva_files, cfg, eva_out);
    }
    if (ben->parsed()) {
      ExperimentConfig cfg = ben_cli.resolve(ben_cfg);
      apply_orientation(cfg, ben_tilt, ben_azimuth);
      parse_models(cfg, ben_models);
      return cmd_bench(ben_data, cfg, ben_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
