#ifndef EYEWIT_DETECTOR_HPP
#define EYEWIT_DETECTOR_HPP

#include "fock.hpp"

namespace eyewit {

/// Threshold detector: reports "click"/"seen" iff at least theta photons
/// survive the efficiency-eta loss. The eye is (theta=7, eta=0.08).
struct DetectorSpec {
  int theta = 1;
  double eta = 1.0;
};

inline DetectorSpec eye_detector() { return DetectorSpec{7, 0.08}; }

/// P(no click | n photons), binomial form:
/// sum_{m<theta} C(n,m) eta^m (1-eta)^(n-m).
double no_click_prob_fock(const DetectorSpec& det, int n);

/// Same quantity through the closed derivative formula
/// (eta^theta/(theta-1)!) d^{theta-1}/d(1-eta)^{theta-1} (1-eta)^n/eta,
/// evaluated with exact Taylor-jet differentiation. Independent of the
/// binomial route; the two must agree to machine precision.
double no_click_prob_fock_derivative(const DetectorSpec& det, int n);

/// Diagonal POVM element P_ns; P_s = I - P_ns.
FockOperator povm_ns_operator(const DetectorSpec& det, int dim);

/// Probability to see a coherent pulse of mean photon number nbar:
/// 1 - PoissonCDF(theta-1; eta*nbar).
double seen_prob_coherent(const DetectorSpec& det, double nbar);

/// P(+1 | beta, |n>) = <n| D(beta)^dag P_ns D(beta) |n>, through the exact
/// normal-ordered kernel (no auxiliary truncation).
double displaced_no_click_prob(const DetectorSpec& det, Complex beta, int n);

/// Matrix elements S_{k,k'} = <k| D(gamma)^dag (2 P_ns - 1) D(gamma) |k'>
/// for k,k' <= nmax, through the same exact kernel.
Matrix displaced_sigma_elements(const DetectorSpec& det, Complex gamma,
                                int nmax);

/// Qubit restriction of M = D(alpha)^dag (2 P_ns - 1) D(alpha) to
/// span{|0>,|1>}, decomposed as M = offset*I + v . sigma.
struct BlochVector {
  double x = 0, y = 0, z = 0;
  double offset = 0;
  double norm() const;
};

BlochVector bloch_vector(const DetectorSpec& det, Complex alpha);

}  // namespace eyewit

#endif
