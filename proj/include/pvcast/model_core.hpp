#pragma once

#include <cmath>

#include <Eigen/Dense>

namespace pvcast {

inline constexpr int kThetaSize = 11;

// Regression image theta and monomial regressor phi of the combined plant
// model, P = phi^T(I0, T, N) * theta(mu). The component order is the wire
// order every consumer of these vectors relies on:
//   phi = [I0, I0*N, I0*N^2, I0^2, I0^2*N, I0^2*N^2, I0^2*N^3, I0^2*N^4,
//          T*I0, T*I0*N, T*I0*N^2]
using ThetaVector = Eigen::Matrix<double, kThetaSize, 1>;
using Regressor = Eigen::Matrix<double, kThetaSize, 1>;

// Minimal physical parameterization: plant gain mu1, quadratic irradiance
// correction mu2, temperature coupling mu3, cloud cover factor shape mu4/mu5.
struct ParamsN5 {
  double mu1 = 0.0;  // kW per W/m^2
  double mu2 = 0.0;  // kW per (W/m^2)^2
  double mu3 = 0.0;  // kW per (W/m^2 * degC)
  double mu4 = 0.0;
  double mu5 = 0.0;
};

// Mildly overparameterized variant: mu6 surrogates the product mu2*mu4 and is
// treated as an independent parameter.
struct ParamsN6 {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double mu3 = 0.0;
  double mu4 = 0.0;
  double mu5 = 0.0;
  double mu6 = 0.0;
};

// Typical ranges of the correction ratios eta2 = mu2/mu1 and eta3 = mu3/mu1
// across PV technologies; used for initialization and consistency checks.
inline constexpr double kEta2Lo = -2.5e-4;
inline constexpr double kEta2Hi = -1.9e-5;
inline constexpr double kEta3Lo = -4.8e-3;
inline constexpr double kEta3Hi = -1.7e-3;

// C(N) = 1 + mu4*N + mu5*N^2. May exceed 1 under light cloudiness when
// mu4 > 0; values are reported raw, without clamping.
double cloud_cover_factor(double cloud_cover, double mu4, double mu5);

// PVUSA plant equation: P = mu1*I + mu2*I^2 + mu3*I*T (I in W/m^2, P in kW).
double pvusa_power(double irradiance, double temp_c, double mu1, double mu2, double mu3);

// I(N) = C(N) * I0.
double effective_irradiance(double clear_sky, double cloud_cover, double mu4, double mu5);

// Combined model: PVUSA evaluated at the cloud-corrected irradiance.
double combined_power(double clear_sky, double temp_c, double cloud_cover, const ParamsN5& p);

Regressor regressor(double clear_sky, double temp_c, double cloud_cover);

ThetaVector theta_n5(const ParamsN5& p);
ThetaVector theta_n6(const ParamsN6& p);

// Analytic partials d(theta_i)/d(mu_j).
Eigen::Matrix<double, kThetaSize, 5> theta_jacobian_n5(const ParamsN5& p);
Eigen::Matrix<double, kThetaSize, 6> theta_jacobian_n6(const ParamsN6& p);

inline double eta2(const ParamsN5& p) { return p.mu2 / p.mu1; }
inline double eta3(const ParamsN5& p) { return p.mu3 / p.mu1; }

// Overparameterization consistency indicator |mu6 - mu2*mu4| (reported only).
inline double n6_consistency_gap(const ParamsN6& p) {
  return std::abs(p.mu6 - p.mu2 * p.mu4);
}

}  // namespace pvcast
