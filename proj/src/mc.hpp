#ifndef EYEWIT_MC_HPP
#define EYEWIT_MC_HPP

#include <cstdint>

#include "bounds.hpp"
#include "spdc.hpp"

namespace eyewit {

/// Monte Carlo settings. Results depend only on (seed, params, n_samples):
/// every event draws from its own counter-indexed stream, so shard counts or
/// evaluation order cannot change the outcome.
struct McConfig {
  ExperimentParams params;
  std::uint64_t n_samples = 100000;
  std::uint64_t seed = 12345;
};

struct McEstimate {
  double value = 0;
  double std_err = 0;
  std::uint64_t n_samples = 0;
};

/// Counter-based RNG: splitmix64 over (seed, event, draw counter).
class EventRng {
 public:
  EventRng(std::uint64_t seed, std::uint64_t event);
  std::uint64_t next_u64();
  double next_double();           // uniform [0,1)
  int geometric(double q);        // P(n) = (1-q) q^n
  int binomial(int n, double p);  // n Bernoulli trials

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// One heralded event: photon number arriving at the beamsplitter, i.e. the
/// pair number thinned by eta_t, post-selected on the herald firing.
/// Throws PostSelectionError when the herald acceptance stalls.
int sample_heralded_count(const ExperimentParams& p, EventRng& rng);

/// <W> estimate. Each event contributes the exact conditional witness value
/// for its pre-split photon number, so the only sampling noise is in the
/// source distribution itself and within-block coherences are kept.
McEstimate estimate_witness(const McConfig& cfg);

/// Sampled version of the calibration-setting statistics. Here the event is
/// the post-beamsplitter count pair (n_A, n_B); the A-side measurement is
/// undisplaced, so the diagonal estimator is unbiased.
struct McMeasured {
  MeasuredProbabilities mean;
  MeasuredProbabilities std_err;
  std::uint64_t n_samples = 0;
};

McMeasured estimate_measured_probabilities(const McConfig& cfg,
                                           const CalibrationSet& calib);

}  // namespace eyewit

#endif
