#include <chrono>
#include <cmath>
#include <random>

#include "bounds.hpp"
#include "doctest.h"
#include "errors.hpp"

using namespace eyewit;

TEST_CASE("calibration amplitudes for the threshold-seven detector") {
  auto t0 = std::chrono::steady_clock::now();
  CalibrationSet c = find_calibration_amplitudes(DetectorSpec{7, 1.0});
  auto t1 = std::chrono::steady_clock::now();
  CHECK(std::abs(c.beta0 - 2.7789293261037) < 1e-6);
  CHECK(std::abs(c.beta1 - 2.0866836580889) < 1e-6);
  CHECK(std::abs(c.beta2 - 2.6457513110646) < 1e-6);  // sqrt(7)
  CHECK(std::chrono::duration<double>(t1 - t0).count() < 1.0);
}

TEST_CASE("calibration crossings really cross with the right side conditions") {
  DetectorSpec det{7, 1.0};
  CalibrationSet c = find_calibration_amplitudes(det);
  auto p = [&](double b, int n) { return displaced_no_click_prob(det, b, n); };
  CHECK(std::abs(p(c.beta0, 0) - p(c.beta0, 2)) < 1e-7);
  CHECK(std::abs(p(c.beta1, 1) - p(c.beta1, 2)) < 1e-7);
  CHECK(std::abs(p(c.beta2, 0) - p(c.beta2, 1)) < 1e-7);
  for (int n = 2; n <= 8; ++n) CHECK(p(c.beta0, n) <= p(c.beta0, 1) + 1e-9);
  CHECK(p(c.beta1, 0) >= p(c.beta1, 1));
  for (int n = 3; n <= 8; ++n) CHECK(p(c.beta1, n) <= p(c.beta1, 1) + 1e-9);
  for (int n = 2; n <= 8; ++n) {
    CHECK(p(c.beta2, n) < p(c.beta2, 0));
    CHECK(p(c.beta2, n) <= p(c.beta2, 3) + 1e-9);
  }
}

TEST_CASE("calibration requires a threshold of at least two") {
  CHECK_THROWS_AS(find_calibration_amplitudes(DetectorSpec{1, 1.0}),
                  CalibrationError);
}

namespace {

TwoModeState diag_product_state(const Eigen::MatrixXd& q) {
  const int d = int(q.rows());
  Matrix rho = Matrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) rho(a * d + b, a * d + b) = q(a, b);
  return TwoModeState{std::move(rho), d};
}

}  // namespace

TEST_CASE("dense and diagonal probability pipelines agree") {
  const int d = 6;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd q(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) q(a, b) = u(rng);
  q /= q.sum();
  DetectorSpec da{1, 1.0}, db{7, 1.0};
  CalibrationSet c = find_calibration_amplitudes(db);
  MeasuredProbabilities dense =
      measure_probabilities(diag_product_state(q), da, db, c);
  MeasuredProbabilities diag = measure_probabilities_diag(q, da, db, c);
  CHECK(dense.p_ab_pp_b0 == doctest::Approx(diag.p_ab_pp_b0).epsilon(1e-11));
  CHECK(dense.p_ab_mp_b0 == doctest::Approx(diag.p_ab_mp_b0).epsilon(1e-11));
  CHECK(dense.p_ab_pp_b1 == doctest::Approx(diag.p_ab_pp_b1).epsilon(1e-11));
  CHECK(dense.p_ab_mp_b1 == doctest::Approx(diag.p_ab_mp_b1).epsilon(1e-11));
  CHECK(dense.p_a_plus == doctest::Approx(diag.p_a_plus).epsilon(1e-11));
  CHECK(dense.p_b_plus_b2 == doctest::Approx(diag.p_b_plus_b2).epsilon(1e-11));
}

TEST_CASE("probability bounds dominate the true qubit populations") {
  const int d = 6;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DetectorSpec da{1, 1.0}, db{7, 1.0};
  CalibrationSet c = find_calibration_amplitudes(db);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd q(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) q(a, b) = u(rng);
    q /= q.sum();
    TwoModeState rho = diag_product_state(q);
    MeasuredProbabilities m = measure_probabilities(rho, da, db, c);
    PijBounds bound = bound_pij(m, db, c);
    PijBounds truth = true_pij(rho);
    CHECK(bound.p00 >= truth.p00 - 1e-10);
    CHECK(bound.p01 >= truth.p01 - 1e-10);
    CHECK(bound.p10 >= truth.p10 - 1e-10);
    CHECK(bound.p11 >= truth.p11 - 1e-10);
    CHECK(bound_p_star_B(m, db, c) >= multi_photon_prob(rho, Mode::B) - 1e-10);
  }
}

TEST_CASE("degenerate calibration denominators are rejected") {
  DetectorSpec db{7, 1.0};
  CalibrationSet c = find_calibration_amplitudes(db);
  CalibrationSet broken = c;
  broken.beta0 = c.beta2;  // P0 = P1 there, denominator collapses
  MeasuredProbabilities m;
  m.p_a_plus = 0.5;
  CHECK_THROWS_AS(bound_pij(m, db, broken), DegenerateBoundError);
}

TEST_CASE("qubit and full bounds compose") {
  WitnessElements w;
  w.w00_00 = -0.2;
  w.w01_01 = 0.1;
  w.w10_10 = 0.1;
  w.w11_11 = -0.3;
  w.w01_10 = 0.45;
  w.w11_20 = 0.05;
  w.w11_02 = 0.07;
  PijBounds p{0.4, 0.2, 0.2, 0.1};
  double q = w_ppt_qubit(w, p);
  CHECK(q == doctest::Approx(-0.2 * 0.4 + 0.1 * 0.2 + 0.1 * 0.2 - 0.3 * 0.1 +
                             2.0 * 0.45 * std::sqrt(0.4 * 0.1)));
  double full = w_ppt_full(q, p.p11, 0.01, 0.02, w.w11_20, w.w11_02);
  CHECK(full == doctest::Approx(q +
                                2.0 * std::sqrt(0.1) *
                                    (0.05 * std::sqrt(0.01) +
                                     0.07 * std::sqrt(0.02)) +
                                0.03));
}

TEST_CASE("full report wires the pieces together") {
  // heavily vacuum-weighted product state: no entanglement, so the margin
  // must be nonpositive
  const int d = 4;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(d, d);
  q(0, 0) = 0.7;
  q(1, 0) = 0.1;
  q(0, 1) = 0.1;
  q(1, 1) = 0.1;  // product of independent margins? close enough to separable
  q(0, 0) += 0.0;
  // make it exactly a product distribution to be safe
  Eigen::VectorXd pa(d), pb(d);
  pa << 0.8, 0.2, 0.0, 0.0;
  pb << 0.75, 0.25, 0.0, 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) q(a, b) = pa(a) * pb(b);
  TwoModeState rho = diag_product_state(q);
  DetectorSpec da{1, 1.0}, db{7, 1.0};
  CalibrationSet c = find_calibration_amplitudes(db);
  SigmaObservable sa = sigma_observable(da, 1.0, d);
  SigmaObservable sb = sigma_observable(db, std::sqrt(7.0), d);
  WitnessReport r = delta_w(rho, sa, sb, c);
  CHECK(r.delta_w <= 1e-10);
  CHECK(r.delta_w == doctest::Approx(r.expected_w - r.w_ppt));
  CHECK(r.p_a_star == doctest::Approx(multi_photon_prob(rho, Mode::A)));
}
