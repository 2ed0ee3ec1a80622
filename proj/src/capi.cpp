#include "eyewit.h"

#include <fstream>
#include <iostream>
#include <string>

#include "bounds.hpp"
#include "detector.hpp"
#include "errors.hpp"
#include "runner.hpp"
#include "spdc.hpp"

using namespace eyewit;

struct ew_config {
  RunConfig cfg;
};

namespace {

thread_local std::string g_detail;

void set_detail(const char* cls, const std::string& what) {
  g_detail = std::string(cls) + ": " + what;
}

// maps the exception hierarchy onto stable C codes
int translate_current() {
  try {
    throw;
  } catch (const ConfigError& e) {
    set_detail("ConfigError", e.what());
    return EW_ERR_CONFIG;
  } catch (const DimensionError& e) {
    set_detail("DimensionError", e.what());
    return EW_ERR_DIMENSION;
  } catch (const TruncationError& e) {
    set_detail("TruncationError", e.what());
    return EW_ERR_TRUNCATION;
  } catch (const CalibrationError& e) {
    set_detail("CalibrationError", e.what());
    return EW_ERR_CALIBRATION;
  } catch (const DegenerateBoundError& e) {
    set_detail("DegenerateBoundError", e.what());
    return EW_ERR_DEGENERATE_BOUND;
  } catch (const PostSelectionError& e) {
    set_detail("PostSelectionError", e.what());
    return EW_ERR_POST_SELECTION;
  } catch (const std::invalid_argument& e) {
    set_detail("InvalidArgument", e.what());
    return EW_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_detail("RuntimeError", e.what());
    return EW_ERR_RUNTIME;
  } catch (...) {
    set_detail("RuntimeError", "unknown exception");
    return EW_ERR_RUNTIME;
  }
}

template <typename F>
int guarded(F&& f) {
  try {
    f();
    return EW_OK;
  } catch (...) {
    return translate_current();
  }
}

}  // namespace

extern "C" {

ew_config* ew_config_new(void) { return new (std::nothrow) ew_config(); }

void ew_config_free(ew_config* cfg) { delete cfg; }

int ew_config_load(ew_config* cfg, const char* path) {
  if (!cfg || !path) {
    set_detail("InvalidArgument", "ew_config_load: null argument");
    return EW_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    RunConfig loaded = RunConfig::from_file(path);
    cfg->cfg = loaded;
  });
}

int ew_config_set(ew_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) {
    set_detail("InvalidArgument", "ew_config_set: null argument");
    return EW_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { cfg->cfg.set(key, value); });
}

int ew_run(const ew_config* cfg, const char* command, const char* out_path) {
  if (!cfg || !command) {
    set_detail("InvalidArgument", "ew_run: null argument");
    return EW_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    if (!out_path || std::string(out_path) == "-") {
      run_command(command, cfg->cfg, std::cout);
      return;
    }
    std::ofstream out(out_path);
    if (!out) throw ConfigError(std::string("cannot open output: ") + out_path);
    run_command(command, cfg->cfg, out);
    if (!out) throw ConfigError(std::string("write failed: ") + out_path);
  });
}

int ew_no_click_prob_fock(int theta, double eta, int n, double* out) {
  if (!out) return EW_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = no_click_prob_fock(DetectorSpec{theta, eta}, n); });
}

int ew_seen_prob_coherent(int theta, double eta, double nbar, double* out) {
  if (!out) return EW_ERR_INVALID_ARGUMENT;
  return guarded(
      [&] { *out = seen_prob_coherent(DetectorSpec{theta, eta}, nbar); });
}

int ew_calibrate(int theta, double* beta0, double* beta1, double* beta2) {
  if (!beta0 || !beta1 || !beta2) return EW_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    CalibrationSet c = find_calibration_amplitudes(DetectorSpec{theta, 1.0});
    *beta0 = c.beta0;
    *beta1 = c.beta1;
    *beta2 = c.beta2;
  });
}

int ew_expected_witness(const ew_config* cfg, double* out) {
  if (!cfg || !out) return EW_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = expected_w_closed_form(cfg->cfg.experiment_params()); });
}

const char* ew_error_detail(void) { return g_detail.c_str(); }

}  // extern "C"
