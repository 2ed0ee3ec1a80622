#include <cmath>

#include "detector.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "fock.hpp"

using namespace eyewit;

TEST_CASE("no-click probability, binomial route edge cases") {
  DetectorSpec det{3, 0.4};
  CHECK(no_click_prob_fock(det, 0) == 1.0);
  CHECK(no_click_prob_fock(det, 2) == 1.0);  // below threshold, cannot click
  CHECK(no_click_prob_fock(DetectorSpec{1, 1.0}, 1) == doctest::Approx(0.0));
}

TEST_CASE("derivative formula equals the binomial sum") {
  for (int theta : {1, 2, 7, 10}) {
    for (double eta : {0.05, 0.08, 0.5, 0.8, 1.0}) {
      DetectorSpec det{theta, eta};
      for (int n = 0; n <= 20; ++n) {
        double a = no_click_prob_fock(det, n);
        double b = no_click_prob_fock_derivative(det, n);
        CHECK(std::abs(a - b) <= 1e-12);
      }
    }
  }
}

TEST_CASE("not-seen POVM diagonal") {
  DetectorSpec det{2, 0.3};
  FockOperator p = povm_ns_operator(det, 6);
  for (int n = 0; n < 6; ++n)
    CHECK(p.entries(n, n).real() ==
          doctest::Approx(no_click_prob_fock(det, n)).epsilon(1e-15));
  CHECK(p.entries(2, 3) == Complex(0.0));
}

TEST_CASE("seen probability for coherent pulses") {
  DetectorSpec eye = eye_detector();
  CHECK(seen_prob_coherent(eye, 0.0) == 0.0);
  // pinned value at the v_z crossing point nbar = theta/eta
  CHECK(std::abs(seen_prob_coherent(eye, 87.5) - 0.550288944151301) < 1e-12);
  // direct-sum and continued-fraction branches agree across the switch
  for (double nbar : {370.0, 380.0, 620.0}) {
    double lo = seen_prob_coherent(eye, nbar);
    CHECK(lo >= 0.0);
    CHECK(lo <= 1.0);
  }
  double below = seen_prob_coherent(eye, 29.5 / eye.eta);
  double above = seen_prob_coherent(eye, 30.5 / eye.eta);
  CHECK(above > below);
}

TEST_CASE("seen probability is monotone in nbar") {
  DetectorSpec eye = eye_detector();
  double prev = -1.0;
  for (double nbar = 0.0; nbar <= 300.0; nbar += 5.0) {
    double p = seen_prob_coherent(eye, nbar);
    CHECK(p >= prev);
    prev = p;
  }
}

TEST_CASE("half-seen crossing for the eye model") {
  DetectorSpec eye = eye_detector();
  double lo = 60.0, hi = 120.0;
  CHECK(seen_prob_coherent(eye, lo) < 0.5);
  CHECK(seen_prob_coherent(eye, hi) > 0.5);
  while (hi - lo > 1e-10) {
    double m = 0.5 * (lo + hi);
    (seen_prob_coherent(eye, m) < 0.5 ? lo : hi) = m;
  }
  CHECK(std::abs(0.5 * (lo + hi) - 83.370463431872) < 1e-8);
}

TEST_CASE("displaced Fock no-click probabilities, pinned values") {
  DetectorSpec det{7, 1.0};
  // beta = 2, vacuum input: Poisson CDF(6; 4)
  CHECK(std::abs(displaced_no_click_prob(det, 2.0, 0) - 0.8893260215974264) <
        1e-12);
  CHECK(std::abs(displaced_no_click_prob(det, 1.5, 3) - 0.5470938885221731) <
        1e-12);
}

TEST_CASE("displaced no-click probability matches explicit conjugation") {
  DetectorSpec det{2, 0.65};
  const Complex beta(1.1, 0.4);
  const int dim = 48;
  FockOperator d = displacement_matrix(beta, dim);
  FockOperator pns = povm_ns_operator(det, dim);
  Matrix m = d.entries.adjoint() * pns.entries * d.entries;
  for (int n = 0; n < 4; ++n)
    CHECK(std::abs(displaced_no_click_prob(det, beta, n) - m(n, n).real()) <
          1e-10);
}

TEST_CASE("displaced sigma elements match explicit conjugation") {
  DetectorSpec det{3, 0.8};
  const Complex gamma(0.9, -0.2);
  const int dim = 56;
  FockOperator d = displacement_matrix(gamma, dim);
  FockOperator pns = povm_ns_operator(det, dim);
  Matrix sigma_full = d.entries.adjoint() *
                      (2.0 * pns.entries - Matrix::Identity(dim, dim)) *
                      d.entries;
  Matrix s = displaced_sigma_elements(det, gamma, 4);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j)
      CHECK(std::abs(s(i, j) - sigma_full(i, j)) < 1e-10);
}

TEST_CASE("bloch vector at zero displacement is the z axis form") {
  BlochVector v = bloch_vector(DetectorSpec{7, 0.08}, 0.0);
  CHECK(v.x == 0.0);
  CHECK(v.y == 0.0);
  CHECK(std::abs(v.z) < 1e-15);
  CHECK(v.offset == doctest::Approx(1.0));
  BlochVector v1 = bloch_vector(DetectorSpec{1, 1.0}, 0.0);
  CHECK(v1.z == doctest::Approx(1.0));  // vacuum never clicks, |1> always does
  CHECK(v1.offset == doctest::Approx(0.0));
}

TEST_CASE("bloch vector phase behavior") {
  DetectorSpec det{1, 0.08};
  const double a = std::sqrt(12.5);
  BlochVector v0 = bloch_vector(det, a);
  double vxy0 = std::hypot(v0.x, v0.y);
  for (double phi : {0.4, 1.3, 2.9}) {
    BlochVector v = bloch_vector(det, a * std::exp(Complex(0.0, phi)));
    CHECK(v.z == doctest::Approx(v0.z).epsilon(1e-10));
    CHECK(std::hypot(v.x, v.y) == doctest::Approx(vxy0).epsilon(1e-10));
    CHECK(v.offset == doctest::Approx(v0.offset).epsilon(1e-10));
  }
}

TEST_CASE("v_z crosses zero where click and no-click balance") {
  // the balance point sits at |alpha|^2 = theta/eta for this model
  DetectorSpec d1{1, 0.08};
  CHECK(std::abs(bloch_vector(d1, std::sqrt(12.5)).z) < 1e-6);
  DetectorSpec d7{7, 0.08};
  CHECK(std::abs(bloch_vector(d7, std::sqrt(87.5)).z) < 1e-6);
  CHECK(bloch_vector(d7, std::sqrt(80.0)).z >
        bloch_vector(d7, std::sqrt(95.0)).z);
}
