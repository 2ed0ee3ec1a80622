#ifndef EYEWIT_RUNNER_HPP
#define EYEWIT_RUNNER_HPP

#include <map>
#include <ostream>
#include <string>

#include "bounds.hpp"
#include "spdc.hpp"

namespace eyewit {

/// Flat key=value configuration. Values are kept as strings; typed getters
/// throw ConfigError on parse failure. Later set() calls win, which is how
/// command-line flags override file entries.
class RunConfig {
 public:
  static RunConfig from_file(const std::string& path);
  static RunConfig from_string(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;

  ExperimentParams experiment_params() const;
  DetectorSpec detector() const;  // keys theta/eta, default (7, 0.08)
  int dim() const { return get_int("dim", 32); }

 private:
  std::map<std::string, std::string> kv_;
};

/// Subcommands; each writes one CSV (single header row, %.17g values).
void cmd_eye_curve(const RunConfig& cfg, std::ostream& out);
void cmd_calibrate(const RunConfig& cfg, std::ostream& out);
void cmd_sweep(const RunConfig& cfg, std::ostream& out);
void cmd_validate(const RunConfig& cfg, std::ostream& out);
void cmd_bloch(const RunConfig& cfg, std::ostream& out);

/// Dispatch by name; throws ConfigError for unknown commands.
void run_command(const std::string& name, const RunConfig& cfg,
                 std::ostream& out);

/// %.17g rendering used for every CSV value.
std::string csv_number(double v);

/// One Delta-W evaluation in the effective (loss-absorbed) picture at
/// beamsplitter transmission T and squeezing g, all other parameters from p.
WitnessReport sweep_point(const ExperimentParams& p, double T, double g,
                          int dim, const CalibrationSet& calib);

/// Golden-section maximization of Delta W over g in [g_lo, g_hi].
double optimize_g(const ExperimentParams& p, double T, int dim,
                  const CalibrationSet& calib, double g_lo, double g_hi,
                  double tol);

}  // namespace eyewit

#endif
