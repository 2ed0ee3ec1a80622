#include <cmath>
#include <sstream>

#include "detector.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "runner.hpp"

using namespace eyewit;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.size() && line.back() == ',') cells.push_back("");
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string run(const char* name, const RunConfig& cfg) {
  std::ostringstream out;
  run_command(name, cfg, out);
  return out.str();
}

}  // namespace

TEST_CASE("config parsing: comments, blanks, overrides, errors") {
  RunConfig cfg = RunConfig::from_string(
      "# comment\n"
      "g = 0.25\n"
      "\n"
      "theta_b=7   # trailing comment\n"
      "eta_b = 0.08\n");
  CHECK(cfg.get_double("g", 0.0) == 0.25);
  CHECK(cfg.get_int("theta_b", 0) == 7);
  CHECK(cfg.get_double("missing", 1.5) == 1.5);
  cfg.set("g", "0.5");  // later set wins, like a CLI flag
  CHECK(cfg.get_double("g", 0.0) == 0.5);
  CHECK_THROWS_AS(RunConfig::from_string("not a pair\n"), ConfigError);
  cfg.set("g", "abc");
  CHECK_THROWS_AS(cfg.get_double("g", 0.0), ConfigError);
}

TEST_CASE("experiment params come from config keys") {
  RunConfig cfg = RunConfig::from_string("g=0.2\nT=0.4\neta_a=0.9\n");
  ExperimentParams p = cfg.experiment_params();
  CHECK(p.g == 0.2);
  CHECK(p.T == 0.4);
  CHECK(p.eta_a == 0.9);
  CHECK(p.theta_b == 7);  // untouched defaults survive
}

TEST_CASE("csv numbers carry full precision") {
  CHECK(csv_number(0.0) == "0");
  CHECK(csv_number(0.1) == "0.10000000000000001");
  CHECK(csv_number(87.5) == "87.5");
}

TEST_CASE("eye-curve output contract") {
  RunConfig cfg;
  cfg.set("nbar_stop", "100");
  cfg.set("nbar_step", "2.5");
  std::string text = run("eye-curve", cfg);
  auto rows = parse_csv(text);
  CHECK(rows[0].size() == 2);
  CHECK(rows[0][0] == "nbar");
  CHECK(rows[0][1] == "p_seen");
  CHECK(rows[1][0] == "0");
  CHECK(rows[1][1] == "0");
  double prev = -1.0;
  for (size_t i = 1; i < rows.size(); ++i) {
    double p = std::stod(rows[i][1]);
    CHECK(p >= prev);
    prev = p;
  }
  // the 87.5 row reuses the same code path as the scalar API
  bool found = false;
  for (size_t i = 1; i < rows.size(); ++i)
    if (rows[i][0] == "87.5") {
      found = true;
      double p = std::stod(rows[i][1]);
      CHECK(std::abs(p - seen_prob_coherent(eye_detector(), 87.5)) <= 1e-12);
    }
  CHECK(found);
}

TEST_CASE("calibrate output lists amplitudes then curves") {
  RunConfig cfg;
  cfg.set("beta_start", "2.0");
  cfg.set("beta_stop", "2.2");
  cfg.set("beta_step", "0.1");
  cfg.set("curve_nmax", "2");
  auto rows = parse_csv(run("calibrate", cfg));
  CHECK(rows[0] == std::vector<std::string>{"name", "amplitude", "n",
                                            "p_no_click"});
  CHECK(rows[1][0] == "beta0");
  CHECK(rows[2][0] == "beta1");
  CHECK(rows[3][0] == "beta2");
  CHECK(std::abs(std::stod(rows[1][1]) - 2.7789293261037) < 1e-6);
  CHECK(rows[4][0] == "curve");
  CHECK(rows.size() == 4 + 3 * 3);
}

TEST_CASE("bloch output matches the scalar routine") {
  RunConfig cfg;
  cfg.set("alpha_stop", "1.0");
  cfg.set("alpha_step", "0.5");
  cfg.set("theta", "1");
  auto rows = parse_csv(run("bloch", cfg));
  CHECK(rows[0] == std::vector<std::string>{"amplitude", "v_x", "v_y", "v_z",
                                            "offset"});
  BlochVector v = bloch_vector(DetectorSpec{1, 0.08}, 0.5);
  CHECK(std::stod(rows[2][1]) == doctest::Approx(v.x));
  CHECK(std::stod(rows[2][3]) == doctest::Approx(v.z));
}

TEST_CASE("validate output is seeded and self-consistent") {
  RunConfig cfg;
  cfg.set("n_samples", "20000");
  cfg.set("seed", "9");
  cfg.set("g", "0.3");
  std::string a = run("validate", cfg);
  std::string b = run("validate", cfg);
  CHECK(a == b);  // identical seed, identical bytes
  auto rows = parse_csv(a);
  CHECK(rows[0] == std::vector<std::string>{"quantity", "analytic",
                                            "mc_estimate", "std_err", "z"});
  REQUIRE(rows.size() == 8);
  for (size_t i = 1; i < rows.size(); ++i) {
    double z = std::stod(rows[i][4]);
    CHECK(std::abs(z) < 5.0);
  }
  cfg.set("seed", "10");
  CHECK(run("validate", cfg) != a);
}

TEST_CASE("sweep limits carry no entanglement margin") {
  ExperimentParams p;
  CalibrationSet c = find_calibration_amplitudes(DetectorSpec{7, 1.0});
  CHECK(sweep_point(p, 0.0, 0.2, 48, c).delta_w <= 1e-10);
  CHECK(sweep_point(p, 1.0, 0.2, 48, c).delta_w <= 1e-10);
  CHECK(sweep_point(p, 0.5, 0.2, 48, c).delta_w > 0.0);
}

TEST_CASE("sweep point equals the dense-state pipeline") {
  ExperimentParams p;
  p.g = 0.2;
  p.T = 0.5;
  CalibrationSet c = find_calibration_amplitudes(DetectorSpec{7, 1.0});
  WitnessReport fast = sweep_point(p, p.T, p.g, 32, c);
  TwoModeState rho = experiment_state(p, 32, true);
  SigmaObservable sa = sigma_observable(DetectorSpec{p.theta_a, 1.0},
                                        p.alpha_phys() * std::sqrt(p.eta_a), 32);
  SigmaObservable sb = sigma_observable(DetectorSpec{p.theta_b, 1.0},
                                        p.beta_phys() * std::sqrt(p.eta_b), 32);
  WitnessReport dense = delta_w(rho, sa, sb, c);
  CHECK(fast.expected_w == doctest::Approx(dense.expected_w).epsilon(1e-9));
  CHECK(fast.w_ppt == doctest::Approx(dense.w_ppt).epsilon(1e-9));
  CHECK(fast.delta_w == doctest::Approx(dense.delta_w).epsilon(1e-8));
}

TEST_CASE("golden-section squeezing optimum is stable") {
  ExperimentParams p;
  CalibrationSet c = find_calibration_amplitudes(DetectorSpec{7, 1.0});
  double g1 = optimize_g(p, 0.5, 48, c, 1e-3, 1.0, 1e-5);
  double g2 = optimize_g(p, 0.5, 48, c, 1e-3, 1.0, 1e-6);
  CHECK(std::abs(g1 - g2) < 1e-4);
}

TEST_CASE("unknown commands and bad grids fail loudly") {
  RunConfig cfg;
  std::ostringstream sink;
  CHECK_THROWS_AS(run_command("nonsense", cfg, sink), ConfigError);
  cfg.set("nbar_step", "-1");
  CHECK_THROWS_AS(run_command("eye-curve", cfg, sink), ConfigError);
}
