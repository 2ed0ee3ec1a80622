#include "mc.hpp"

#include <cmath>
#include <vector>

#include "errors.hpp"
#include "mathutil.hpp"
#include "witness.hpp"

namespace eyewit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr int kMaxHeraldAttempts = 1 << 22;

// largest geometric draw reachable by 53-bit inversion, used to size tables
int geometric_support(double q) {
  if (q <= 0.0) return 0;
  return int(std::floor(53.0 * std::log(2.0) / -std::log(q))) + 2;
}

}  // namespace

EventRng::EventRng(std::uint64_t seed, std::uint64_t event)
    : key_(splitmix64(splitmix64(seed) ^ (event * 0xd1342543de82ef95ULL))) {}

std::uint64_t EventRng::next_u64() { return splitmix64(key_ ^ counter_++); }

double EventRng::next_double() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

int EventRng::geometric(double q) {
  if (q <= 0.0) return 0;
  double u = next_double();
  if (u <= 0.0) u = 0x1.0p-53;
  return int(std::floor(std::log(u) / std::log(q)));
}

int EventRng::binomial(int n, double p) {
  int k = 0;
  for (int i = 0; i < n; ++i)
    if (next_double() < p) ++k;
  return k;
}

int sample_heralded_count(const ExperimentParams& p, EventRng& rng) {
  const double tg = std::tanh(p.g);
  const double q = tg * tg;
  // herald acceptance 1 - R_h^{2n}, matching the analytic thermal-difference
  const double rh2 = (1.0 - p.eta_h) * (1.0 - p.eta_h);
  if (p.eta_h == 1.0) {
    // every n >= 1 heralds; sample the conditional geometric directly
    return rng.binomial(1 + rng.geometric(q), p.eta_t);
  }
  for (int attempt = 0; attempt < kMaxHeraldAttempts; ++attempt) {
    int n = rng.geometric(q);
    double accept = 1.0 - std::pow(rh2, n);
    if (n > 0 && rng.next_double() < accept)
      return rng.binomial(n, p.eta_t);
  }
  throw PostSelectionError(
      "sample_heralded_count: herald acceptance stalled (g too small?)");
}

McEstimate estimate_witness(const McConfig& cfg) {
  const ExperimentParams& p = cfg.params;
  p.validate();
  if (cfg.n_samples == 0)
    throw ConfigError("estimate_witness: n_samples >= 1 required");

  const double tg = std::tanh(p.g);
  const int nmax = geometric_support(tg * tg);
  Matrix sig_a = displaced_sigma_elements(p.detector_a(), p.alpha_phys(), nmax);
  Matrix sig_b = displaced_sigma_elements(p.detector_b(), p.beta_phys(), nmax);

  // exact conditional witness value per pre-split photon number
  std::vector<double> w_table(size_t(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) {
    Complex v = 0.0;
    for (int k = 0; k <= n; ++k) {
      double ck = split_amplitude(k, n, p.T);
      for (int kp = 0; kp <= n; ++kp)
        v += ck * split_amplitude(kp, n, p.T) * sig_a(n - k, n - kp) *
             sig_b(k, kp);
    }
    w_table[size_t(n)] = v.real();
  }

  double sum = 0.0, sumsq = 0.0;
  for (std::uint64_t e = 0; e < cfg.n_samples; ++e) {
    EventRng rng(cfg.seed, e);
    int n = sample_heralded_count(p, rng);
    double w = w_table[size_t(std::min(n, nmax))];
    sum += w;
    sumsq += w * w;
  }
  McEstimate est;
  est.n_samples = cfg.n_samples;
  est.value = sum / double(cfg.n_samples);
  double var = sumsq / double(cfg.n_samples) - est.value * est.value;
  est.std_err = std::sqrt(std::max(var, 0.0) / double(cfg.n_samples));
  return est;
}

McMeasured estimate_measured_probabilities(const McConfig& cfg,
                                           const CalibrationSet& calib) {
  const ExperimentParams& p = cfg.params;
  p.validate();
  if (cfg.n_samples == 0)
    throw ConfigError("estimate_measured_probabilities: n_samples >= 1 required");

  const double tg = std::tanh(p.g);
  const int nmax = geometric_support(tg * tg);
  // arm losses are folded into the count draws, so the observables are
  // unit-efficiency: A undisplaced (no-click iff k_A < theta_a), B displaced
  // at the calibration amplitudes
  const DetectorSpec unit_b{p.theta_b, 1.0};
  std::vector<double> pb0(size_t(nmax) + 1), pb1(size_t(nmax) + 1),
      pb2(size_t(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) {
    pb0[size_t(n)] = displaced_no_click_prob(unit_b, calib.beta0, n);
    pb1[size_t(n)] = displaced_no_click_prob(unit_b, calib.beta1, n);
    pb2[size_t(n)] = displaced_no_click_prob(unit_b, calib.beta2, n);
  }

  double s[6] = {0, 0, 0, 0, 0, 0}, s2[6] = {0, 0, 0, 0, 0, 0};
  for (std::uint64_t e = 0; e < cfg.n_samples; ++e) {
    EventRng rng(cfg.seed, e);
    int n = std::min(sample_heralded_count(p, rng), nmax);
    int kb = rng.binomial(n, p.T);
    int ka = rng.binomial(n - kb, p.eta_a);
    kb = rng.binomial(kb, p.eta_b);
    const double nsa = ka < p.theta_a ? 1.0 : 0.0;
    const double x[6] = {nsa * pb0[size_t(kb)],
                         (1.0 - nsa) * pb0[size_t(kb)],
                         nsa * pb1[size_t(kb)],
                         (1.0 - nsa) * pb1[size_t(kb)],
                         nsa,
                         pb2[size_t(kb)]};
    for (int i = 0; i < 6; ++i) {
      s[i] += x[i];
      s2[i] += x[i] * x[i];
    }
  }
  McMeasured out;
  out.n_samples = cfg.n_samples;
  double* mean[6] = {&out.mean.p_ab_pp_b0, &out.mean.p_ab_mp_b0,
                     &out.mean.p_ab_pp_b1, &out.mean.p_ab_mp_b1,
                     &out.mean.p_a_plus, &out.mean.p_b_plus_b2};
  double* serr[6] = {&out.std_err.p_ab_pp_b0, &out.std_err.p_ab_mp_b0,
                     &out.std_err.p_ab_pp_b1, &out.std_err.p_ab_mp_b1,
                     &out.std_err.p_a_plus, &out.std_err.p_b_plus_b2};
  for (int i = 0; i < 6; ++i) {
    *mean[i] = s[i] / double(cfg.n_samples);
    double var = s2[i] / double(cfg.n_samples) - (*mean[i]) * (*mean[i]);
    *serr[i] = std::sqrt(std::max(var, 0.0) / double(cfg.n_samples));
  }
  return out;
}

}  // namespace eyewit
