#include "spdc.hpp"

#include <cmath>

#include "errors.hpp"
#include "jet.hpp"
#include "witness.hpp"

namespace eyewit {

double ExperimentParams::alpha_phys() const {
  return alpha > 0.0 ? alpha : 1.0 / std::sqrt(eta_a);
}

double ExperimentParams::beta_phys() const {
  return beta > 0.0 ? beta : std::sqrt(double(theta_b) / eta_b);
}

void ExperimentParams::validate() const {
  auto in01 = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!(g >= 0.0)) throw ConfigError("params: g >= 0 required");
  if (!in01(eta_h) || !in01(eta_t) || !in01(T) || !in01(eta_a) || !in01(eta_b))
    throw ConfigError("params: efficiencies must lie in [0,1]");
  if (theta_a < 1 || theta_b < 1) throw ConfigError("params: thresholds >= 1");
}

namespace {

struct ThermalMix {
  double prefactor;   // overall normalization A
  double weight2;     // relative weight B of the subtracted thermal
  double nbar1, nbar2;
};

ThermalMix heralded_mix(double g, double eta_h) {
  if (g <= 0.0) throw ConfigError("heralded state: g > 0 required");
  const double tg = std::tanh(g);
  const double tg2 = tg * tg;
  const double rh = 1.0 - eta_h;
  const double rh2 = rh * rh;
  ThermalMix m;
  m.nbar1 = tg2 / (1.0 - tg2);
  m.nbar2 = rh2 * tg2 / (1.0 - rh2 * tg2);
  m.prefactor = (1.0 - rh2 * tg2) / (tg2 * (1.0 - rh2));
  m.weight2 = (1.0 - tg2) / (1.0 - rh2 * tg2);
  return m;
}

double geometric_entry(double nbar, int n) {
  const double q = nbar / (1.0 + nbar);
  return (n == 0 && q == 0.0) ? 1.0 : std::pow(q, n) / (1.0 + nbar);
}

}  // namespace

FockOperator heralded_state(double g, double eta_h, int dim, double tail_tol) {
  if (eta_h <= 0.0 || eta_h > 1.0)
    throw ConfigError("heralded state: eta_h in (0,1] required");
  ThermalMix m = heralded_mix(g, eta_h);
  Matrix rho = Matrix::Zero(dim, dim);
  double trace = 0.0;
  for (int n = 0; n < dim; ++n) {
    double v = m.prefactor * (geometric_entry(m.nbar1, n) -
                              m.weight2 * geometric_entry(m.nbar2, n));
    rho(n, n) = v;
    trace += v;
  }
  if (trace < 1.0 - tail_tol)
    throw TruncationError("heralded_state: retained probability " +
                          std::to_string(trace) + " below 1 - tail_tol");
  return FockOperator{std::move(rho), true};
}

Eigen::VectorXd heralded_diag_after_loss(double g, double eta_h, double eta_t,
                                         int dim) {
  ThermalMix m = heralded_mix(g, eta_h);
  Eigen::VectorXd p(dim);
  for (int n = 0; n < dim; ++n)
    p(n) = m.prefactor * (geometric_entry(eta_t * m.nbar1, n) -
                          m.weight2 * geometric_entry(eta_t * m.nbar2, n));
  return p;
}

TwoModeState experiment_state(const ExperimentParams& p, int dim,
                              bool apply_arm_losses) {
  p.validate();
  FockOperator src = heralded_state(p.g, p.eta_h, dim);
  src = loss_channel(src, p.eta_t);
  TwoModeState rho = split_single_mode(src, p.T);
  if (apply_arm_losses) {
    rho = loss_channel(rho, Mode::A, p.eta_a);
    rho = loss_channel(rho, Mode::B, p.eta_b);
  }
  return rho;
}

double w_thermal_closed_form(double nbar, const ExperimentParams& p) {
  if (nbar < 0.0) throw std::invalid_argument("w_thermal_closed_form: nbar >= 0");
  if (p.theta_b != 7)
    throw ConfigError("w_thermal_closed_form: printed formula fixes theta_b = 7");
  const int order = p.theta_b - 1;
  const double eta_a = p.eta_a, eta_b = p.eta_b;
  const double al = p.alpha_phys(), be = p.beta_phys();
  const double R = p.reflectivity(), T = p.T;

  const Jet x = Jet::variable(order, 1.0 - eta_b);
  const Jet etab = 1.0 - x;

  // joint term: 4 e^{-eta_a a^2 - eta_b b^2 + nbar |a eta_a sqrt(R) + b eta_b sqrt(T)|^2 / den} / den
  const Jet den_joint = nbar * (eta_a * R + etab * T) + 1.0;
  const Jet den_joint_inv = den_joint.reciprocal();
  const Jet amp = etab * (be * std::sqrt(T)) + al * eta_a * std::sqrt(R);
  const Jet expo =
      (-(eta_a * al * al)) + (-(al * 0.0)) + (etab * (-(be * be))) +
      nbar * (amp * amp) * den_joint_inv;
  const Jet term_joint = 4.0 * expo.exp() * den_joint_inv;

  // A-only term is constant in eta_b
  const double den_a = eta_a * nbar * R + 1.0;
  const double term_a = 2.0 * std::exp(-eta_a * al * al / den_a) / den_a;

  const Jet den_b = etab * (nbar * T) + 1.0;
  const Jet den_b_inv = den_b.reciprocal();
  const Jet term_b = 2.0 * (etab * (-(be * be)) * den_b_inv).exp() * den_b_inv;

  const Jet bracket =
      (term_joint - term_b + (1.0 - term_a)) * etab.reciprocal();
  // (eta_b^7 / 6!) d^6/dx^6 == eta_b^7 * coeff_6
  return std::pow(eta_b, p.theta_b) * bracket[order];
}

double expected_w_closed_form(const ExperimentParams& p) {
  p.validate();
  ThermalMix m = heralded_mix(p.g, p.eta_h);
  const double w1 = w_thermal_closed_form(p.eta_t * m.nbar1, p);
  const double w2 = w_thermal_closed_form(p.eta_t * m.nbar2, p);
  return m.prefactor * (w1 - m.weight2 * w2);
}

double expected_w_fock(const ExperimentParams& p, int dim) {
  p.validate();
  Eigen::VectorXd pn = heralded_diag_after_loss(p.g, p.eta_h, p.eta_t, dim);
  Matrix sig_a =
      displaced_sigma_elements(p.detector_a(), p.alpha_phys(), dim - 1);
  Matrix sig_b =
      displaced_sigma_elements(p.detector_b(), p.beta_phys(), dim - 1);
  return block_mixture_expectation(sig_a, sig_b, pn, p.T);
}

}  // namespace eyewit
