#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "errors.hpp"

namespace eyewit {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// all sign-change roots of f on [lo, hi], by scan + bisection
std::vector<double> bracket_roots(const std::function<double(double)>& f,
                                  double lo, double hi, double tol) {
  const int n_scan = 600;
  std::vector<double> roots;
  double x_prev = lo, f_prev = f(lo);
  for (int i = 1; i <= n_scan; ++i) {
    double x = lo + (hi - lo) * double(i) / n_scan;
    double fx = f(x);
    if (f_prev == 0.0) {
      roots.push_back(x_prev);
    } else if (f_prev * fx < 0.0) {
      double a = x_prev, b = x, fa = f_prev;
      while (b - a > tol) {
        double m = 0.5 * (a + b), fm = f(m);
        if (fa * fm <= 0.0) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    x_prev = x;
    f_prev = fx;
  }
  return roots;
}

}  // namespace

CalibrationSet find_calibration_amplitudes(const DetectorSpec& det,
                                           const CalibrationOptions& opt) {
  if (det.theta < 2)
    throw CalibrationError("calibration: theta >= 2 required for the crossings");
  auto prob = [&](double beta, int n) {
    return displaced_no_click_prob(det, beta, n);
  };
  auto solve = [&](int na, int nb, const std::function<bool(double)>& side_ok,
                   const char* name) {
    auto f = [&](double b) { return prob(b, na) - prob(b, nb); };
    for (double r : bracket_roots(f, opt.bracket_lo, opt.bracket_hi, opt.root_tol))
      if (side_ok(r)) return r;
    throw CalibrationError(std::string("calibration: no valid root for ") + name);
  };

  CalibrationSet c;
  // beta0: P0 = P2, and |1> must dominate every n >= 2 curve
  c.beta0 = solve(0, 2,
                  [&](double b) {
                    double p1 = prob(b, 1);
                    for (int n = 2; n <= opt.n_check; ++n)
                      if (prob(b, n) > p1) return false;
                    return true;
                  },
                  "beta0");
  // beta1: P1 = P2 with P(n>=3) <= P1 and P0 >= P1 (the bound needs |0> on top)
  c.beta1 = solve(1, 2,
                  [&](double b) {
                    double p0 = prob(b, 0), p1 = prob(b, 1);
                    if (p0 < p1) return false;
                    for (int n = 3; n <= opt.n_check; ++n)
                      if (prob(b, n) > p1) return false;
                    return true;
                  },
                  "beta1");
  // beta2: P0 = P1 with P(n>=2) < P0 and |3> the largest multi-photon curve
  c.beta2 = solve(0, 1,
                  [&](double b) {
                    double p0 = prob(b, 0), p3 = prob(b, 3);
                    for (int n = 2; n <= opt.n_check; ++n) {
                      double pn = prob(b, n);
                      if (pn >= p0 || pn > p3) return false;
                    }
                    return true;
                  },
                  "beta2");
  return c;
}

namespace {

// tr[(X_A x Y_B) rho] with X diagonal (undisplaced A measurement)
double joint_prob_diag_a(const TwoModeState& rho, const Eigen::VectorXd& xa,
                         const Matrix& yb) {
  const int d = rho.mode_dim;
  Complex t = 0.0;
  for (int a = 0; a < d; ++a) {
    if (xa(a) == 0.0) continue;
    for (int b = 0; b < d; ++b)
      for (int bp = 0; bp < d; ++bp)
        t += xa(a) * yb(b, bp) * rho.entries(a * d + bp, a * d + b);
  }
  return t.real();
}

Matrix displaced_ns_elements(const DetectorSpec& det, double beta, int nmax) {
  Matrix s = displaced_sigma_elements(det, beta, nmax);
  return 0.5 * (s + Matrix::Identity(nmax + 1, nmax + 1));
}

}  // namespace

MeasuredProbabilities measure_probabilities(const TwoModeState& rho,
                                            const DetectorSpec& det_a,
                                            const DetectorSpec& det_b,
                                            const CalibrationSet& calib) {
  const int d = rho.mode_dim;
  Eigen::VectorXd ns_a(d), click_a(d), one(d);
  for (int n = 0; n < d; ++n) {
    ns_a(n) = no_click_prob_fock(det_a, n);
    click_a(n) = 1.0 - ns_a(n);
    one(n) = 1.0;
  }
  Matrix nb0 = displaced_ns_elements(det_b, calib.beta0, d - 1);
  Matrix nb1 = displaced_ns_elements(det_b, calib.beta1, d - 1);
  Matrix nb2 = displaced_ns_elements(det_b, calib.beta2, d - 1);
  Matrix id = Matrix::Identity(d, d);

  MeasuredProbabilities m;
  m.p_ab_pp_b0 = joint_prob_diag_a(rho, ns_a, nb0);
  m.p_ab_mp_b0 = joint_prob_diag_a(rho, click_a, nb0);
  m.p_ab_pp_b1 = joint_prob_diag_a(rho, ns_a, nb1);
  m.p_ab_mp_b1 = joint_prob_diag_a(rho, click_a, nb1);
  m.p_a_plus = joint_prob_diag_a(rho, ns_a, id);
  m.p_b_plus_b2 = joint_prob_diag_a(rho, one, nb2);
  return m;
}

MeasuredProbabilities measure_probabilities_diag(const Eigen::MatrixXd& q,
                                                 const DetectorSpec& det_a,
                                                 const DetectorSpec& det_b,
                                                 const CalibrationSet& calib) {
  const int da = int(q.rows()), db = int(q.cols());
  Eigen::VectorXd ns_a(da);
  for (int n = 0; n < da; ++n) ns_a(n) = no_click_prob_fock(det_a, n);
  Eigen::VectorXd pb0(db), pb1(db), pb2(db);
  for (int n = 0; n < db; ++n) {
    pb0(n) = displaced_no_click_prob(det_b, calib.beta0, n);
    pb1(n) = displaced_no_click_prob(det_b, calib.beta1, n);
    pb2(n) = displaced_no_click_prob(det_b, calib.beta2, n);
  }
  MeasuredProbabilities m;
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) {
      const double w = q(a, b);
      if (w == 0.0) continue;
      m.p_ab_pp_b0 += w * ns_a(a) * pb0(b);
      m.p_ab_mp_b0 += w * (1.0 - ns_a(a)) * pb0(b);
      m.p_ab_pp_b1 += w * ns_a(a) * pb1(b);
      m.p_ab_mp_b1 += w * (1.0 - ns_a(a)) * pb1(b);
      m.p_a_plus += w * ns_a(a);
      m.p_b_plus_b2 += w * pb2(b);
    }
  return m;
}

PijBounds bound_pij(const MeasuredProbabilities& meas, const DetectorSpec& det_b,
                    const CalibrationSet& calib) {
  auto prob = [&](double beta, int n) {
    return displaced_no_click_prob(det_b, beta, n);
  };
  const double p0_b0 = prob(calib.beta0, 0), p1_b0 = prob(calib.beta0, 1);
  const double p0_b1 = prob(calib.beta1, 0), p1_b1 = prob(calib.beta1, 1);
  // At beta0 the |1> curve is on top (P0 - P1 < 0); at beta1 the |0> curve is
  // (P1 - P0 < 0). Both ratios are still the upper bounds: dividing the
  // defining inequality by the negative coefficient flips it the right way.
  const double den0 = p0_b0 - p1_b0;
  const double den1 = p1_b1 - p0_b1;
  if (std::abs(den0) < 1e-6 || std::abs(den1) < 1e-6)
    throw DegenerateBoundError("bound_pij: calibration denominator below 1e-6");
  PijBounds p;
  p.p00 = clamp01((meas.p_ab_pp_b0 - p1_b0 * meas.p_a_plus) / den0);
  p.p10 = clamp01((meas.p_ab_mp_b0 - p1_b0 * (1.0 - meas.p_a_plus)) / den0);
  p.p01 = clamp01((meas.p_ab_pp_b1 - p0_b1 * meas.p_a_plus) / den1);
  p.p11 = clamp01((meas.p_ab_mp_b1 - p0_b1 * (1.0 - meas.p_a_plus)) / den1);
  return p;
}

double bound_p_star_B(const MeasuredProbabilities& meas, const DetectorSpec& det_b,
                      const CalibrationSet& calib) {
  const double p0 = displaced_no_click_prob(det_b, calib.beta2, 0);
  const double p3 = displaced_no_click_prob(det_b, calib.beta2, 3);
  const double den = p3 - p0;
  if (std::abs(den) < 1e-6)
    throw DegenerateBoundError("bound_p_star_B: denominator below 1e-6");
  return clamp01((meas.p_b_plus_b2 - p0) / den);
}

double w_ppt_qubit(const WitnessElements& w, const PijBounds& p) {
  double v = w.w00_00.real() * p.p00 + w.w01_01.real() * p.p01 +
             w.w10_10.real() * p.p10 + w.w11_11.real() * p.p11;
  v += 2.0 * std::abs(w.w01_10) * std::sqrt(clamp01(p.p00) * clamp01(p.p11));
  return v;
}

double w_ppt_full(double w_qubit, double p11, double p_a_star, double p_b_star,
                  Complex w11_20, Complex w11_02) {
  const double ps = clamp01(p_a_star) + clamp01(p_b_star);
  return w_qubit +
         2.0 * std::sqrt(clamp01(p11)) *
             (std::abs(w11_20) * std::sqrt(clamp01(p_a_star)) +
              std::abs(w11_02) * std::sqrt(clamp01(p_b_star))) +
         ps;
}

double multi_photon_prob(const TwoModeState& rho, Mode mode) {
  const int d = rho.mode_dim;
  double p = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      int rel = (mode == Mode::A) ? a : b;
      if (rel >= 2) p += rho.entries(a * d + b, a * d + b).real();
    }
  return p;
}

PijBounds true_pij(const TwoModeState& rho) {
  const int d = rho.mode_dim;
  PijBounds p;
  p.p00 = rho.entries(0, 0).real();
  if (d >= 2) {
    p.p01 = rho.entries(1, 1).real();
    p.p10 = rho.entries(d, d).real();
    p.p11 = rho.entries(d + 1, d + 1).real();
  }
  return p;
}

WitnessReport delta_w(const TwoModeState& rho, const SigmaObservable& sig_a,
                      const SigmaObservable& sig_b, const CalibrationSet& calib,
                      std::optional<double> p_a_star_override) {
  WitnessMatrix w = witness_matrix(sig_a, sig_b);
  if (w.mode_dim != rho.mode_dim)
    throw DimensionError("delta_w: sigma/state dimension mismatch");
  WitnessReport r;
  r.expected_w = witness_expectation(w, rho);
  MeasuredProbabilities meas =
      measure_probabilities(rho, sig_a.det, sig_b.det, calib);
  r.pij = bound_pij(meas, sig_b.det, calib);
  r.p_b_star = bound_p_star_B(meas, sig_b.det, calib);
  r.p_a_star = p_a_star_override ? *p_a_star_override
                                 : multi_photon_prob(rho, Mode::A);
  const double wq = w_ppt_qubit(w.elements, r.pij);
  r.w_ppt = w_ppt_full(wq, r.pij.p11, r.p_a_star, r.p_b_star,
                       w.elements.w11_20, w.elements.w11_02);
  r.delta_w = r.expected_w - r.w_ppt;
  return r;
}

}  // namespace eyewit
