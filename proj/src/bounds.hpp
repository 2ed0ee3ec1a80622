#ifndef EYEWIT_BOUNDS_HPP
#define EYEWIT_BOUNDS_HPP

#include <optional>

#include "witness.hpp"

namespace eyewit {

/// Calibration amplitudes (unit-efficiency detector, threshold det.theta)
/// and the probability upper bounds derived from them.
struct CalibrationSet {
  double beta0 = 0;  // P(+1|b,|0>) = P(+1|b,|2>)
  double beta1 = 0;  // P(+1|b,|1>) = P(+1|b,|2>), side conditions below
  double beta2 = 0;  // P(+1|b,|0>) = P(+1|b,|1>)
};

struct CalibrationOptions {
  double bracket_lo = 0.5;
  double bracket_hi = 6.0;
  double root_tol = 1e-9;
  int n_check = 10;  // side conditions verified for photon numbers up to this
};

/// Solves the three crossing equations by scan + bisection. Among the roots
/// of each equation, the first (smallest) one satisfying the side conditions
/// needed for the probability bounds is returned.
CalibrationSet find_calibration_amplitudes(const DetectorSpec& det,
                                           const CalibrationOptions& opt = {});

/// The "measured" joint no-click/not-seen statistics at the calibration
/// settings, simulated exactly from a two-mode state. A is measured without
/// displacement; B with displacement beta0/beta1/beta2.
struct MeasuredProbabilities {
  double p_ab_pp_b0 = 0;  // P_AB(+1+1 | 0 beta0)
  double p_ab_mp_b0 = 0;  // P_AB(-1+1 | 0 beta0)
  double p_ab_pp_b1 = 0;
  double p_ab_mp_b1 = 0;
  double p_a_plus = 0;    // P_A(+1 | 0)
  double p_b_plus_b2 = 0; // P_B(+1 | beta2)
};

MeasuredProbabilities measure_probabilities(const TwoModeState& rho,
                                            const DetectorSpec& det_a,
                                            const DetectorSpec& det_b,
                                            const CalibrationSet& calib);

/// Same statistics from a joint photon-number distribution q(n_a, n_b)
/// (valid whenever the A-side measurement is undisplaced, which makes the
/// joint probabilities diagonal-only).
MeasuredProbabilities measure_probabilities_diag(const Eigen::MatrixXd& q,
                                                 const DetectorSpec& det_a,
                                                 const DetectorSpec& det_b,
                                                 const CalibrationSet& calib);

/// Upper bounds on the qubit-block photon statistics. Convention here:
/// p_ij = P(i photons in A, j photons in B).
struct PijBounds {
  double p00 = 0, p01 = 0, p10 = 0, p11 = 0;
};

PijBounds bound_pij(const MeasuredProbabilities& meas, const DetectorSpec& det_b,
                    const CalibrationSet& calib);

/// Upper bound on the B-mode multi-photon probability p(n_B >= 2).
double bound_p_star_B(const MeasuredProbabilities& meas, const DetectorSpec& det_b,
                      const CalibrationSet& calib);

/// Qubit PPT bound: sum_ij <ij|W|ij> p_ij + 2 |<01|W|10>| sqrt(p00 p11).
double w_ppt_qubit(const WitnessElements& w, const PijBounds& p);

/// Dimension-independent bound: adds the coherence-leakage term and p*.
double w_ppt_full(double w_qubit, double p11, double p_a_star, double p_b_star,
                  Complex w11_20, Complex w11_02);

/// Exact p(n_A >= 2) / p(n_B >= 2) / qubit-block diagonals of a state
/// (the "oracle mode" inputs and the truth values for bound validation).
double multi_photon_prob(const TwoModeState& rho, Mode mode);
PijBounds true_pij(const TwoModeState& rho);

/// Full pipeline: <W>, the bounds, W_PPT and Delta W for a given state and a
/// pair of unit-efficiency sigma observables. p_a_star defaults to the exact
/// value from rho; pass a measured value to override.
struct WitnessReport {
  double expected_w = 0;
  double w_ppt = 0;
  double delta_w = 0;
  PijBounds pij;
  double p_a_star = 0, p_b_star = 0;
};

WitnessReport delta_w(const TwoModeState& rho, const SigmaObservable& sig_a,
                      const SigmaObservable& sig_b, const CalibrationSet& calib,
                      std::optional<double> p_a_star_override = {});

}  // namespace eyewit

#endif
