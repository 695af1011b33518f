#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "pvcast/model_core.hpp"

using namespace pvcast;

namespace {

const ParamsN5 kTrue{0.92, -1.237e-4, -2.99e-3, -0.3, -0.25};

ParamsN5 random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ParamsN5 p;
  p.mu1 = 0.2 + 1.6 * u(rng);
  p.mu2 = -3e-4 + 2.8e-4 * u(rng);
  p.mu3 = -6e-3 + 5e-3 * u(rng);
  p.mu4 = -1.5 + 3.0 * u(rng);
  p.mu5 = -2.0 + 2.0 * u(rng);
  return p;
}

}  // namespace

TEST_SUITE("model_core") {

TEST_CASE("cloud cover factor") {
  CHECK(cloud_cover_factor(0.0, -0.3, -0.25) == 1.0);
  CHECK(cloud_cover_factor(1.0, -0.3, -0.25) == doctest::Approx(0.45).epsilon(1e-12));
  // slightly cloudy skies can push the factor above one when mu4 > 0
  CHECK(cloud_cover_factor(0.2, 0.784, -1.344) > 1.0);
  CHECK_THROWS_AS(cloud_cover_factor(-0.1, 0, 0), std::domain_error);
  CHECK_THROWS_AS(cloud_cover_factor(1.1, 0, 0), std::domain_error);
}

TEST_CASE("pvusa power") {
  CHECK(pvusa_power(0.0, 25.0, kTrue.mu1, kTrue.mu2, kTrue.mu3) == 0.0);
  CHECK(pvusa_power(1000.0, 25.0, kTrue.mu1, kTrue.mu2, kTrue.mu3) ==
        doctest::Approx(721.55).epsilon(1e-12));

  // gain/correction form: P = mu1 * (1 + eta2*I + eta3*T) * I
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ui(0.0, 1100.0);
  std::uniform_real_distribution<double> ut(-10.0, 45.0);
  for (int i = 0; i < 200; ++i) {
    const ParamsN5 p = random_params(rng);
    const double irr = ui(rng);
    const double t = ut(rng);
    const double direct = pvusa_power(irr, t, p.mu1, p.mu2, p.mu3);
    const double factored = p.mu1 * (1.0 + eta2(p) * irr + eta3(p) * t) * irr;
    CHECK(direct == doctest::Approx(factored).epsilon(1e-10));
  }
}

TEST_CASE("effective irradiance") {
  CHECK(effective_irradiance(312.0, 0.0, kTrue.mu4, kTrue.mu5) == 312.0);
  CHECK(effective_irradiance(0.0, 0.7, kTrue.mu4, kTrue.mu5) == 0.0);
  CHECK(effective_irradiance(800.0, 0.5, kTrue.mu4, kTrue.mu5) ==
        doctest::Approx(630.0).epsilon(1e-12));
}

TEST_CASE("combined power chains the two stages") {
  CHECK(combined_power(0.0, 20.0, 0.5, kTrue) == 0.0);
  const double irr = effective_irradiance(800.0, 0.5, kTrue.mu4, kTrue.mu5);
  CHECK(combined_power(800.0, 20.0, 0.5, kTrue) ==
        doctest::Approx(pvusa_power(irr, 20.0, kTrue.mu1, kTrue.mu2, kTrue.mu3)).epsilon(1e-12));
}

TEST_CASE("regressor monomials") {
  const Regressor e = regressor(1.0, 0.0, 0.0);
  for (int i = 0; i < kThetaSize; ++i) {
    CHECK(e(i) == ((i == 0 || i == 3) ? 1.0 : 0.0));
  }
  CHECK(regressor(0.0, 17.0, 0.8).isZero(0.0));

  const double i0 = 2.0, t = 3.0, n = 0.5;
  const Regressor phi = regressor(i0, t, n);
  CHECK(phi(0) == i0);
  CHECK(phi(1) == i0 * n);
  CHECK(phi(2) == i0 * n * n);
  CHECK(phi(3) == i0 * i0);
  CHECK(phi(4) == i0 * i0 * n);
  CHECK(phi(5) == i0 * i0 * n * n);
  CHECK(phi(6) == i0 * i0 * n * n * n);
  CHECK(phi(7) == i0 * i0 * n * n * n * n);
  CHECK(phi(8) == t * i0);
  CHECK(phi(9) == t * i0 * n);
  CHECK(phi(10) == t * i0 * n * n);
}

TEST_CASE("theta maps") {
  SUBCASE("unit gain maps to the first basis vector") {
    const ThetaVector theta = theta_n5({1.0, 0.0, 0.0, 0.0, 0.0});
    for (int i = 0; i < kThetaSize; ++i) CHECK(theta(i) == (i == 0 ? 1.0 : 0.0));
  }
  SUBCASE("surrogate consistency: mu6 = mu2*mu4 reproduces the minimal map") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
      const ParamsN5 p = random_params(rng);
      const ParamsN6 q{p.mu1, p.mu2, p.mu3, p.mu4, p.mu5, p.mu2 * p.mu4};
      const ThetaVector a = theta_n5(p);
      const ThetaVector b = theta_n6(q);
      for (int j = 0; j < kThetaSize; ++j) {
        CHECK(a(j) == doctest::Approx(b(j)).epsilon(1e-15));
      }
    }
  }
  SUBCASE("frozen expansion at the reference parameters") {
    const ThetaVector theta = theta_n5(kTrue);
    const double expected[kThetaSize] = {
        0.92, -0.276, -0.23, -1.237e-4, 7.422e-5, 5.0717e-5, -1.8555e-5, -7.73125e-6,
        -2.99e-3, 8.97e-4, 7.475e-4};
    for (int i = 0; i < kThetaSize; ++i) {
      CHECK(theta(i) == doctest::Approx(expected[i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("regression-form identity") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> ui(0.0, 1100.0);
  std::uniform_real_distribution<double> ut(-10.0, 45.0);
  std::uniform_real_distribution<double> un(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const ParamsN5 p = random_params(rng);
    const double i0 = ui(rng);
    const double t = ut(rng);
    const double n = un(rng);
    const double via_theta = regressor(i0, t, n).dot(theta_n5(p));
    const double direct = combined_power(i0, t, n, p);
    CHECK(std::abs(via_theta - direct) <= 1e-9 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("combined power vanishes without irradiance") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ut(-10.0, 45.0);
  std::uniform_real_distribution<double> un(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const ParamsN5 p = random_params(rng);
    CHECK(combined_power(0.0, ut(rng), un(rng), p) == 0.0);
  }
}

namespace {

// Central finite differences of theta(mu), step per the cube-root-of-epsilon
// rule scaled to the parameter magnitude.
template <typename ThetaFn>
void check_jacobian(const Eigen::VectorXd& mu, const Eigen::MatrixXd& jac, ThetaFn theta_fn,
                    double tol) {
  const double base_step = std::cbrt(std::numeric_limits<double>::epsilon());
  for (int j = 0; j < mu.size(); ++j) {
    const double step = base_step * std::max(1.0, std::abs(mu(j)));
    Eigen::VectorXd hi = mu, lo = mu;
    hi(j) += step;
    lo(j) -= step;
    const ThetaVector dth = (theta_fn(hi) - theta_fn(lo)) / (2.0 * step);
    for (int i = 0; i < kThetaSize; ++i) {
      const double scale = std::max({1e-12, std::abs(dth(i)), std::abs(jac(i, j))});
      CHECK(std::abs(jac(i, j) - dth(i)) / scale <= tol);
    }
  }
}

}  // namespace

TEST_CASE("jacobians") {
  SUBCASE("trivial entries") {
    const auto j5 = theta_jacobian_n5(kTrue);
    CHECK(j5(0, 0) == 1.0);
    CHECK(j5(0, 3) == 0.0);
    const auto j6 = theta_jacobian_n6({0.92, -1.237e-4, -2.99e-3, -0.3, -0.25, 3.711e-5});
    CHECK(j6(4, 5) == 2.0);
    CHECK(j6(4, 1) == 0.0);
  }
  SUBCASE("finite differences at the reference parameters") {
    Eigen::VectorXd mu(5);
    mu << kTrue.mu1, kTrue.mu2, kTrue.mu3, kTrue.mu4, kTrue.mu5;
    check_jacobian(mu, theta_jacobian_n5(kTrue),
                   [](const Eigen::VectorXd& m) {
                     return theta_n5({m(0), m(1), m(2), m(3), m(4)});
                   },
                   1e-6);
  }
  SUBCASE("finite differences at random points") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 50; ++rep) {
      const ParamsN5 p = random_params(rng);
      Eigen::VectorXd mu(5);
      mu << p.mu1, p.mu2, p.mu3, p.mu4, p.mu5;
      check_jacobian(mu, theta_jacobian_n5(p),
                     [](const Eigen::VectorXd& m) {
                       return theta_n5({m(0), m(1), m(2), m(3), m(4)});
                     },
                     1e-5);

      const ParamsN6 q{p.mu1, p.mu2, p.mu3, p.mu4, p.mu5, 0.5 * p.mu2 * p.mu4};
      Eigen::VectorXd mu6(6);
      mu6 << p.mu1, p.mu2, p.mu3, p.mu4, p.mu5, q.mu6;
      check_jacobian(mu6, theta_jacobian_n6(q),
                     [](const Eigen::VectorXd& m) {
                       return theta_n6({m(0), m(1), m(2), m(3), m(4), m(5)});
                     },
                     1e-5);
    }
  }
}

TEST_CASE("consistency indicators") {
  const ParamsN6 q{0.92, -1.237e-4, -2.99e-3, -0.3, -0.25, -1.237e-4 * -0.3};
  CHECK(n6_consistency_gap(q) == doctest::Approx(0.0));
  CHECK(eta2(kTrue) == doctest::Approx(-1.3445652e-4).epsilon(1e-6));
  CHECK(eta3(kTrue) == doctest::Approx(-3.25e-3).epsilon(1e-6));
}

}  // TEST_SUITE
