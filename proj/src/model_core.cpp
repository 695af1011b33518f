#include "pvcast/model_core.hpp"

#include <stdexcept>

namespace pvcast {

double cloud_cover_factor(double cloud_cover, double mu4, double mu5) {
  if (cloud_cover < 0.0 || cloud_cover > 1.0) {
    throw std::domain_error("cloud cover outside [0, 1]");
  }
  return 1.0 + mu4 * cloud_cover + mu5 * cloud_cover * cloud_cover;
}

double pvusa_power(double irradiance, double temp_c, double mu1, double mu2, double mu3) {
  return mu1 * irradiance + mu2 * irradiance * irradiance + mu3 * irradiance * temp_c;
}

double effective_irradiance(double clear_sky, double cloud_cover, double mu4, double mu5) {
  return cloud_cover_factor(cloud_cover, mu4, mu5) * clear_sky;
}

double combined_power(double clear_sky, double temp_c, double cloud_cover, const ParamsN5& p) {
  const double irr = effective_irradiance(clear_sky, cloud_cover, p.mu4, p.mu5);
  return pvusa_power(irr, temp_c, p.mu1, p.mu2, p.mu3);
}

Regressor regressor(double clear_sky, double temp_c, double cloud_cover) {
  const double i0 = clear_sky;
  const double n = cloud_cover;
  const double n2 = n * n;
  const double i2 = i0 * i0;
  Regressor phi;
  phi << i0, i0 * n, i0 * n2,                                  //
      i2, i2 * n, i2 * n2, i2 * n2 * n, i2 * n2 * n2,          //
      temp_c * i0, temp_c * i0 * n, temp_c * i0 * n2;
  return phi;
}

ThetaVector theta_n5(const ParamsN5& p) {
  ThetaVector theta;
  theta << p.mu1, p.mu1 * p.mu4, p.mu1 * p.mu5,                         //
      p.mu2, 2.0 * p.mu2 * p.mu4,                                       //
      p.mu2 * p.mu4 * p.mu4 + 2.0 * p.mu2 * p.mu5,                      //
      2.0 * p.mu2 * p.mu4 * p.mu5, p.mu2 * p.mu5 * p.mu5,               //
      p.mu3, p.mu3 * p.mu4, p.mu3 * p.mu5;
  return theta;
}

ThetaVector theta_n6(const ParamsN6& p) {
  ThetaVector theta;
  theta << p.mu1, p.mu1 * p.mu4, p.mu1 * p.mu5,                         //
      p.mu2, 2.0 * p.mu6,                                               //
      p.mu4 * p.mu6 + 2.0 * p.mu2 * p.mu5,                              //
      2.0 * p.mu5 * p.mu6, p.mu2 * p.mu5 * p.mu5,                       //
      p.mu3, p.mu3 * p.mu4, p.mu3 * p.mu5;
  return theta;
}

Eigen::Matrix<double, kThetaSize, 5> theta_jacobian_n5(const ParamsN5& p) {
  Eigen::Matrix<double, kThetaSize, 5> jac = Eigen::Matrix<double, kThetaSize, 5>::Zero();
  // columns: d/dmu1 .. d/dmu5
  jac(0, 0) = 1.0;
  jac(1, 0) = p.mu4;
  jac(1, 3) = p.mu1;
  jac(2, 0) = p.mu5;
  jac(2, 4) = p.mu1;
  jac(3, 1) = 1.0;
  jac(4, 1) = 2.0 * p.mu4;
  jac(4, 3) = 2.0 * p.mu2;
  jac(5, 1) = p.mu4 * p.mu4 + 2.0 * p.mu5;
  jac(5, 3) = 2.0 * p.mu2 * p.mu4;
  jac(5, 4) = 2.0 * p.mu2;
  jac(6, 1) = 2.0 * p.mu4 * p.mu5;
  jac(6, 3) = 2.0 * p.mu2 * p.mu5;
  jac(6, 4) = 2.0 * p.mu2 * p.mu4;
  jac(7, 1) = p.mu5 * p.mu5;
  jac(7, 4) = 2.0 * p.mu2 * p.mu5;
  jac(8, 2) = 1.0;
  jac(9, 2) = p.mu4;
  jac(9, 3) = p.mu3;
  jac(10, 2) = p.mu5;
  jac(10, 4) = p.mu3;
  return jac;
}

Eigen::Matrix<double, kThetaSize, 6> theta_jacobian_n6(const ParamsN6& p) {
  Eigen::Matrix<double, kThetaSize, 6> jac = Eigen::Matrix<double, kThetaSize, 6>::Zero();
  jac(0, 0) = 1.0;
  jac(1, 0) = p.mu4;
  jac(1, 3) = p.mu1;
  jac(2, 0) = p.mu5;
  jac(2, 4) = p.mu1;
  jac(3, 1) = 1.0;
  jac(4, 5) = 2.0;
  jac(5, 1) = 2.0 * p.mu5;
  jac(5, 3) = p.mu6;
  jac(5, 4) = 2.0 * p.mu2;
  jac(5, 5) = p.mu4;
  jac(6, 4) = 2.0 * p.mu6;
  jac(6, 5) = 2.0 * p.mu5;
  jac(7, 1) = p.mu5 * p.mu5;
  jac(7, 4) = 2.0 * p.mu2 * p.mu5;
  jac(8, 2) = 1.0;
  jac(9, 2) = p.mu4;
  jac(9, 3) = p.mu3;
  jac(10, 2) = p.mu5;
  jac(10, 4) = p.mu3;
  return jac;
}

}  // namespace pvcast
