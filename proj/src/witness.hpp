#ifndef EYEWIT_WITNESS_HPP
#define EYEWIT_WITNESS_HPP

#include "detector.hpp"
#include "fock.hpp"

namespace eyewit {

/// +-1-valued displaced threshold observable
/// sigma = D(alpha)^dag (2 P_ns - 1) D(alpha).
struct SigmaObservable {
  FockOperator op;
  DetectorSpec det;
  Complex alpha;
  int dim() const { return op.dim(); }
};

/// Builds sigma at truncation dim. The elements come from the exact
/// displaced kernel, so small-dim restrictions are exact.
SigmaObservable sigma_observable(const DetectorSpec& det, Complex alpha, int dim);

/// The witness elements consumed by the PPT bounds.
struct WitnessElements {
  Complex w00_00, w01_01, w10_10, w11_11;  // <ij|W|ij>
  Complex w01_10;                          // <01|W|10>
  Complex w11_20, w11_02;                  // coherence-leakage terms
};

/// Phase-randomized witness: W = avg_phi U_phi^2 (sigma_A x sigma_B) U_phi^2.
/// The average is exact block masking: <ij|W|kl> = sigmaA_ik sigmaB_jl when
/// i+j = k+l, else 0.
struct WitnessMatrix {
  FockOperator op;  // two-mode, (mode_dim^2)^2 entries
  int mode_dim = 0;
  WitnessElements elements;
};

WitnessMatrix witness_matrix(const SigmaObservable& sig_a,
                             const SigmaObservable& sig_b);

/// Same block masking applied to raw single-mode matrices (lets tests inject
/// ideal qubit observables directly).
WitnessMatrix witness_matrix_raw(const Matrix& sigma_a, const Matrix& sigma_b);

double witness_expectation(const WitnessMatrix& w, const TwoModeState& rho);

WitnessElements witness_elements_from(const Matrix& sigma_a, const Matrix& sigma_b);

/// tr(W rho) for rho = sum_n p_n BS(T)|n,0><n,0|BS^dag (mode B transmitted,
/// as in split_single_mode), contracted block by
/// block; algebraically identical to witness_expectation on the assembled
/// density matrix but never materializes it. sigma matrices must cover
/// indices up to p.size()-1.
double block_mixture_expectation(const Matrix& sigma_a, const Matrix& sigma_b,
                                 const Eigen::VectorXd& p, double T);

}  // namespace eyewit

#endif
