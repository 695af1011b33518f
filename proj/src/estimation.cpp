#include "pvcast/estimation.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace pvcast {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void symmetrize(Eigen::MatrixXd& m) { m = ((m + m.transpose()) * 0.5).eval(); }

}  // namespace

int param_count(ModelVariant variant) {
  switch (variant) {
    case ModelVariant::N5: return 5;
    case ModelVariant::N6: return 6;
    case ModelVariant::L: return kThetaSize;
  }
  return 0;
}

const char* variant_name(ModelVariant variant) {
  switch (variant) {
    case ModelVariant::N5: return "n5";
    case ModelVariant::N6: return "n6";
    case ModelVariant::L: return "l";
  }
  return "?";
}

EkfState init_n5(const InitConfig& cfg) {
  if (cfg.p_nom_kw <= 0.0 || cfg.l0 <= 0.0 || cfg.noise_var <= 0.0) {
    throw std::invalid_argument("invalid estimator initialization");
  }
  const double mu1 = cfg.p_nom_kw / 1000.0;
  EkfState s;
  s.mu.resize(5);
  s.mu << mu1, 0.5 * (kEta2Lo + kEta2Hi) * mu1, 0.5 * (kEta3Lo + kEta3Hi) * mu1, cfg.mu4_prior,
      cfg.mu5_prior;
  s.cov = cfg.l0 * Eigen::MatrixXd::Identity(5, 5);
  s.noise_var = cfg.noise_var;
  return s;
}

EkfState init_n6(const InitConfig& cfg) {
  const EkfState n5 = init_n5(cfg);
  EkfState s;
  s.mu.resize(6);
  s.mu << n5.mu, n5.mu(1) * n5.mu(3);
  s.cov = cfg.l0 * Eigen::MatrixXd::Identity(6, 6);
  s.noise_var = cfg.noise_var;
  return s;
}

RlsState init_l(const InitConfig& cfg) {
  const EkfState n5 = init_n5(cfg);
  RlsState s;
  s.theta = theta_n5(params_n5(n5.mu));
  s.weight = cfg.l0 * Eigen::MatrixXd::Identity(kThetaSize, kThetaSize);
  s.forgetting = cfg.forgetting;
  return s;
}

ParamsN5 params_n5(const Eigen::VectorXd& mu) {
  if (mu.size() < 5) throw std::invalid_argument("parameter vector too short");
  return {mu(0), mu(1), mu(2), mu(3), mu(4)};
}

ParamsN6 params_n6(const Eigen::VectorXd& mu) {
  if (mu.size() < 6) throw std::invalid_argument("parameter vector too short");
  return {mu(0), mu(1), mu(2), mu(3), mu(4), mu(5)};
}

ThetaVector theta_of(ModelVariant variant, const Eigen::VectorXd& estimate) {
  switch (variant) {
    case ModelVariant::N5: return theta_n5(params_n5(estimate));
    case ModelVariant::N6: return theta_n6(params_n6(estimate));
    case ModelVariant::L: return ThetaVector(estimate);
  }
  throw std::logic_error("unknown variant");
}

void ekf_step(EkfState& state, ModelVariant variant, const Regressor& phi, double measured_kw) {
  const int n = static_cast<int>(state.mu.size());
  Eigen::RowVectorXd h(n);  // H = d(phi^T theta(mu))/dmu at the current estimate
  if (variant == ModelVariant::N5) {
    h = phi.transpose() * theta_jacobian_n5(params_n5(state.mu));
  } else if (variant == ModelVariant::N6) {
    h = phi.transpose() * theta_jacobian_n6(params_n6(state.mu));
  } else {
    throw std::invalid_argument("EKF applies to the nonlinear parameterizations only");
  }

  const double innovation = measured_kw - phi.dot(theta_of(variant, state.mu));
  const double s = (h * state.cov * h.transpose())(0, 0) + state.noise_var;
  if (!(s > 0.0)) {
    throw EstimationFault("innovation variance not positive");
  }
  const Eigen::VectorXd gain = state.cov * h.transpose() / s;
  state.mu += gain * innovation;
  state.cov = ((Eigen::MatrixXd::Identity(n, n) - gain * h) * state.cov).eval();
  symmetrize(state.cov);
}

void rls_step(RlsState& state, const Eigen::VectorXd& phi, double measured) {
  const double lambda = state.forgetting;
  const Eigen::VectorXd vphi = state.weight * phi;
  const double denom = lambda + phi.dot(vphi);
  state.weight = ((state.weight - vphi * vphi.transpose() / denom) / lambda).eval();
  symmetrize(state.weight);
  const Eigen::VectorXd gain = state.weight * phi;
  state.theta += gain * (measured - phi.dot(state.theta));
}

const Eigen::VectorXd& EstimationRun::estimate_at(int k) const {
  if (k < 0) return initial;
  return estimates.at(static_cast<std::size_t>(k));
}

ThetaVector EstimationRun::theta_at(int k) const { return theta_of(variant, estimate_at(k)); }

namespace {

template <typename StepFn, typename GetFn>
EstimationRun run_generic(ModelVariant variant, const TimeSeries& data,
                          const DaylightCalendar& calendar, StepFn step, GetFn current) {
  EstimationRun run;
  run.variant = variant;
  run.initial = current();
  run.estimates.reserve(calendar.entries.size());
  run.innovations.reserve(calendar.entries.size());

  std::int64_t prev_time = std::numeric_limits<std::int64_t>::min();
  for (const auto& entry : calendar.entries) {
    if (entry.unix_time <= prev_time) {
      throw EstimationFault("non-monotone sample timestamps");
    }
    prev_time = entry.unix_time;

    const Sample& s = data.samples.at(entry.sample_pos);
    if (!std::isfinite(s.power_kw) || !std::isfinite(s.temp_c) || !std::isfinite(s.cloud_cover)) {
      ++run.skipped;
      run.estimates.push_back(current());
      run.innovations.push_back(kNan);
      continue;
    }
    const Regressor phi = regressor(entry.clear_sky, s.temp_c, s.cloud_cover);
    const double innovation = step(phi, s.power_kw);
    run.estimates.push_back(current());
    run.innovations.push_back(innovation);
  }
  return run;
}

}  // namespace

EstimationRun run_estimation_ekf(ModelVariant variant, const TimeSeries& data,
                                 const DaylightCalendar& calendar, EkfState state) {
  return run_generic(
      variant, data, calendar,
      [&](const Regressor& phi, double p) {
        const double innovation = p - phi.dot(theta_of(variant, state.mu));
        ekf_step(state, variant, phi, p);
        return innovation;
      },
      [&]() { return state.mu; });
}

EstimationRun run_estimation_rls(const TimeSeries& data, const DaylightCalendar& calendar,
                                 RlsState state) {
  return run_generic(
      ModelVariant::L, data, calendar,
      [&](const Regressor& phi, double p) {
        const double innovation = p - phi.dot(state.theta);
        rls_step(state, phi, p);
        return innovation;
      },
      [&]() { return state.theta; });
}

EstimationRun run_estimation(ModelVariant variant, const TimeSeries& data,
                             const DaylightCalendar& calendar, const InitConfig& cfg) {
  switch (variant) {
    case ModelVariant::N5: return run_estimation_ekf(variant, data, calendar, init_n5(cfg));
    case ModelVariant::N6: return run_estimation_ekf(variant, data, calendar, init_n6(cfg));
    case ModelVariant::L: return run_estimation_rls(data, calendar, init_l(cfg));
  }
  throw std::logic_error("unknown variant");
}

void write_trajectory_csv(const EstimationRun& run, const DaylightCalendar& calendar,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  const int n = param_count(run.variant);
  out << "k,day,tod_minutes";
  const bool physical = run.variant != ModelVariant::L;
  for (int i = 0; i < n; ++i) {
    out << ',' << (physical ? "mu" : "theta") << (i + 1);
  }
  out << ",innovation\n";
  char buf[32];
  for (std::size_t k = 0; k < run.estimates.size(); ++k) {
    const auto& entry = calendar.entries[k];
    out << k << ',' << entry.day << ',' << entry.tod_minutes;
    for (int i = 0; i < n; ++i) {
      std::snprintf(buf, sizeof(buf), "%.10g", run.estimates[k](i));
      out << ',' << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.10g", run.innovations[k]);
    out << ',' << buf << '\n';
  }
}

}  // namespace pvcast
