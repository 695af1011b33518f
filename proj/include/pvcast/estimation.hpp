#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pvcast/model_core.hpp"
#include "pvcast/solar_geometry.hpp"

namespace pvcast {

enum class ModelVariant { N5, N6, L };

int param_count(ModelVariant variant);
const char* variant_name(ModelVariant variant);

struct EstimationFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Extended Kalman filter state for the nonlinear parameterizations. The state
// transition is the identity, so there is no prediction step: one measurement
// update per daylight sample.
struct EkfState {
  Eigen::VectorXd mu;      // 5 (N5) or 6 (N6) entries
  Eigen::MatrixXd cov;     // R, symmetric PSD
  double noise_var = 0.0;  // r, kW^2
};

// Recursive least squares state; dimension 11 for the linear plant model and
// whatever the regressor needs for the autoregressive reference models.
struct RlsState {
  Eigen::VectorXd theta;
  Eigen::MatrixXd weight;  // V, symmetric PD
  double forgetting = 1.0;
};

struct InitConfig {
  double p_nom_kw = 0.0;
  double mu4_prior = 0.784;   // Italian-climate averages
  double mu5_prior = -1.344;
  double l0 = 0.01;           // initial covariance / weight scale
  double noise_var = 1e4;     // r, kW^2
  double forgetting = 1.0;
};

// Initial physical guess: mu1 = P_nom/1000, eta2/eta3 at the centers of their
// typical ranges, cloud parameters from the climate priors.
EkfState init_n5(const InitConfig& cfg);
EkfState init_n6(const InitConfig& cfg);  // appends mu6(0) = mu2(0)*mu4(0)
RlsState init_l(const InitConfig& cfg);   // theta(0) = theta_n5(mu(0)), V(0) = l0*I

ParamsN5 params_n5(const Eigen::VectorXd& mu);
ParamsN6 params_n6(const Eigen::VectorXd& mu);

// Regression image of the current estimate.
ThetaVector theta_of(ModelVariant variant, const Eigen::VectorXd& estimate);

// One EKF measurement update. Throws EstimationFault when the innovation
// variance H R H^T + r is not positive.
void ekf_step(EkfState& state, ModelVariant variant, const Regressor& phi, double measured_kw);

// Standard RLS update; the denominator 1 + phi^T V phi stays >= 1 for PSD V.
void rls_step(RlsState& state, const Eigen::VectorXd& phi, double measured);

struct EstimationRun {
  ModelVariant variant = ModelVariant::N5;
  Eigen::VectorXd initial;
  std::vector<Eigen::VectorXd> estimates;  // estimate after processing index k
  std::vector<double> innovations;         // NaN where the sample was skipped
  int skipped = 0;

  // Estimate available once index k has been processed; k = -1 gives the
  // initial guess.
  const Eigen::VectorXd& estimate_at(int k) const;
  ThetaVector theta_at(int k) const;
};

// Runs one estimator step per daylight sample in time order. Samples carrying
// NaN are skipped and counted; the estimate for that index repeats the
// previous one so that index bookkeeping stays aligned with the calendar.
EstimationRun run_estimation(ModelVariant variant, const TimeSeries& data,
                             const DaylightCalendar& calendar, const InitConfig& cfg);

// Same, but starting from an explicit state (used by the simulation protocol,
// which seeds the physical parameters at a fraction of the true values).
EstimationRun run_estimation_ekf(ModelVariant variant, const TimeSeries& data,
                                 const DaylightCalendar& calendar, EkfState state);
EstimationRun run_estimation_rls(const TimeSeries& data, const DaylightCalendar& calendar,
                                 RlsState state);

// Estimate-trajectory export: k, day, TOD, parameter entries, innovation.
void write_trajectory_csv(const EstimationRun& run, const DaylightCalendar& calendar,
                          const std::string& path);

}  // namespace pvcast
