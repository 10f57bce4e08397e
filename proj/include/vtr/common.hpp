#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace vtr {

// Error taxonomy. The CLI maps these onto process exit codes:
//   usage/config problems -> 1, data-quality breaches -> 2, numeric failures -> 3.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataQualityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_finite(double v) { return std::isfinite(v); }

}  // namespace vtr
