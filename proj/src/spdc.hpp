#ifndef EYEWIT_SPDC_HPP
#define EYEWIT_SPDC_HPP

#include "detector.hpp"
#include "fock.hpp"

namespace eyewit {

/// Heralded-SPDC experiment parameters. alpha/beta <= 0 select the standard
/// displacement choices beta = sqrt(theta_b/eta_b), alpha = 1/sqrt(eta_a).
struct ExperimentParams {
  double g = 0.1;       // squeezing parameter, T_g = tanh g
  double eta_h = 1.0;   // heralding efficiency (R_h = 1 - eta_h)
  double eta_t = 0.9;   // source-to-detector transmission
  double T = 0.5;       // beamsplitter transmission
  double eta_a = 0.8;   // photon-detector efficiency (mode A)
  double eta_b = 0.08;  // eye efficiency (mode B)
  int theta_a = 1;
  int theta_b = 7;
  double alpha = -1.0;  // physical displacement amplitudes (real, positive)
  double beta = -1.0;
  double R_override = -1.0;  // reflectivity in the closed form; < 0 -> 1 - T

  double alpha_phys() const;
  double beta_phys() const;
  double reflectivity() const { return R_override >= 0.0 ? R_override : 1.0 - T; }
  DetectorSpec detector_a() const { return DetectorSpec{theta_a, eta_a}; }
  DetectorSpec detector_b() const { return DetectorSpec{theta_b, eta_b}; }
  void validate() const;
};

/// Heralded single-photon state: a normalized difference of two thermal
/// states (diagonal). Trace is 1 up to truncation.
FockOperator heralded_state(double g, double eta_h, int dim,
                            double tail_tol = kTailTol);

/// Diagonal of the heralded state after transmission loss eta_t, via the
/// thermal-loss identity nbar -> eta_t nbar (closed form, no Kraus sums).
Eigen::VectorXd heralded_diag_after_loss(double g, double eta_h, double eta_t,
                                         int dim);

/// Full two-mode experimental state. With apply_arm_losses the detector
/// inefficiencies are pushed into the state (measure with unit-efficiency
/// observables at effective amplitudes); without, the state stops after the
/// beamsplitter and the dressed (theta, eta) POVMs carry the losses.
TwoModeState experiment_state(const ExperimentParams& p, int dim,
                              bool apply_arm_losses);

/// Closed-form thermal-state witness kernel W^th(nbar): the 6th-order
/// (theta_b - 1 = 6) derivative in x = 1 - eta_b, taken by jet arithmetic.
/// Only theta_b = 7 is supported, matching the printed formula.
double w_thermal_closed_form(double nbar, const ExperimentParams& p);

/// Closed-form <W>: thermal-difference combination of W^th at the two
/// (transmission-scaled) mean photon numbers.
double expected_w_closed_form(const ExperimentParams& p);

/// Fock-numeric <W> at single-mode truncation dim: heralded diagonal,
/// beamsplitter blocks, dressed sigma observables, contracted block by
/// block. Independent of the jet route.
double expected_w_fock(const ExperimentParams& p, int dim);

}  // namespace eyewit

#endif
