#include <cmath>

#include "doctest.h"
#include "errors.hpp"
#include "spdc.hpp"
#include "witness.hpp"

using namespace eyewit;

TEST_CASE("heralded state with perfect heralding") {
  const double g = 0.3;
  const double q = std::tanh(g) * std::tanh(g);
  FockOperator rho = heralded_state(g, 1.0, 32);
  CHECK(trace_real(rho) == doctest::Approx(1.0).epsilon(1e-9));
  // no vacuum component: the herald fired
  CHECK(std::abs(rho.entries(0, 0)) < 1e-14);
  // conditional geometric: p(n) = (1-q) q^(n-1) for n >= 1
  for (int n = 1; n <= 6; ++n)
    CHECK(rho.entries(n, n).real() ==
          doctest::Approx((1.0 - q) * std::pow(q, n - 1)).epsilon(1e-12));
}

TEST_CASE("heralded state with partial heralding keeps unit trace") {
  FockOperator rho = heralded_state(0.4, 0.6, 48);
  CHECK(trace_real(rho) == doctest::Approx(1.0).epsilon(1e-9));
  for (int n = 0; n < 48; ++n) CHECK(rho.entries(n, n).real() >= -1e-14);
  CHECK_THROWS_AS(heralded_state(2.5, 1.0, 8), TruncationError);
}

TEST_CASE("transmission loss on the heralded diagonal matches the channel") {
  const double g = 0.35, eta_h = 0.7, eta_t = 0.62;
  const int dim = 48;
  Eigen::VectorXd fast = heralded_diag_after_loss(g, eta_h, eta_t, dim);
  FockOperator slow = loss_channel(heralded_state(g, eta_h, dim), eta_t);
  for (int n = 0; n < dim; ++n)
    CHECK(std::abs(fast(n) - slow.entries(n, n).real()) < 1e-11);
}

TEST_CASE("experiment state is a valid two-mode density matrix") {
  ExperimentParams p;
  p.g = 0.25;
  TwoModeState rho = experiment_state(p, 24, true);
  CHECK(trace_real(rho) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK((rho.entries - rho.entries.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("thermal witness kernel agrees with the number-basis mixture") {
  // the closed form must match summing the split thermal distribution
  // against the dressed sigma observables, an entirely independent route
  ExperimentParams p;
  for (double nbar : {0.1, 0.5}) {
    const int dim = 48;
    Eigen::VectorXd pth(dim);
    const double q = nbar / (1.0 + nbar);
    for (int n = 0; n < dim; ++n) pth(n) = std::pow(q, n) / (1.0 + nbar);
    Matrix sa = displaced_sigma_elements(p.detector_a(), p.alpha_phys(), dim - 1);
    Matrix sb = displaced_sigma_elements(p.detector_b(), p.beta_phys(), dim - 1);
    double direct = block_mixture_expectation(sa, sb, pth, p.T);
    double closed = w_thermal_closed_form(nbar, p);
    CHECK(closed == doctest::Approx(direct).epsilon(1e-6));
  }
}

TEST_CASE("closed form and Fock pipeline agree on the expected witness") {
  for (double g : {0.1, 0.3}) {
    for (double T : {0.3, 0.5, 0.8}) {
      ExperimentParams p;
      p.g = g;
      p.T = T;
      double a = expected_w_closed_form(p);
      double b = expected_w_fock(p, 80);
      CHECK(std::abs(a - b) <= 1e-6 * std::abs(a));
    }
  }
}

TEST_CASE("reflectivity override feeds the closed form") {
  ExperimentParams p;
  p.T = 0.4;
  double by_default = expected_w_closed_form(p);  // R = 1 - T = 0.6
  p.R_override = 0.6;
  CHECK(expected_w_closed_form(p) == doctest::Approx(by_default));
  p.R_override = 0.2;
  CHECK(expected_w_closed_form(p) != doctest::Approx(by_default));
}

TEST_CASE("parameter validation") {
  ExperimentParams p;
  p.eta_t = 1.4;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  ExperimentParams p2;
  p2.theta_b = 5;
  CHECK_THROWS_AS(w_thermal_closed_form(0.2, p2), ConfigError);
}

TEST_CASE("default displacement amplitudes") {
  ExperimentParams p;
  CHECK(p.beta_phys() == doctest::Approx(std::sqrt(7.0 / 0.08)));
  CHECK(p.alpha_phys() == doctest::Approx(1.0 / std::sqrt(0.8)));
  p.alpha = 2.0;
  p.beta = 3.0;
  CHECK(p.alpha_phys() == 2.0);
  CHECK(p.beta_phys() == 3.0);
}
