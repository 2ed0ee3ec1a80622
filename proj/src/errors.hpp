#ifndef EYEWIT_ERRORS_HPP
#define EYEWIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eyewit {

// Truncated Fock space lost too much weight for the requested operation.
struct TruncationError : std::runtime_error {
  explicit TruncationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : std::runtime_error {
  explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

// No usable crossing (or a side condition failed) while solving for a
// calibration amplitude.
struct CalibrationError : std::runtime_error {
  explicit CalibrationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A probability-bound denominator is too close to zero to divide by.
struct DegenerateBoundError : std::runtime_error {
  explicit DegenerateBoundError(const std::string& msg) : std::runtime_error(msg) {}
};

// Monte Carlo run ended with zero post-selected events.
struct PostSelectionError : std::runtime_error {
  explicit PostSelectionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace eyewit

#endif
