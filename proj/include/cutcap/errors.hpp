#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace cutcap {

// Exit-code mapping used by the CLI: validation 1, numerical 2, io 3.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct degenerate_geometry_error : validation_error {
  using validation_error::validation_error;
};

struct excluded_alpha_error : validation_error {
  explicit excluded_alpha_error(double alpha, const std::string& what)
      : validation_error(what), alpha(alpha) {}
  double alpha;
};

struct truncation_error : validation_error {
  explicit truncation_error(const std::string& what, double tail)
      : validation_error(what), tail_fraction(tail) {}
  double tail_fraction;
};

struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what,
                           double partial = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), partial_estimate(partial) {}
  double partial_estimate;
};

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cutcap
