#pragma once

#include <stdexcept>
#include <string>

namespace phasefit {

/// Invalid user-supplied data (mismatched lengths, negative radii, bad bounds).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A potential layer with q_i >= k^2: the solver only supports kappa_i^2 > 0.
class RegimeError : public std::domain_error {
 public:
  RegimeError(std::string msg, int layer, double layer_value)
      : std::domain_error(std::move(msg)), layer_(layer), layer_value_(layer_value) {}
  int layer() const { return layer_; }
  double layer_value() const { return layer_value_; }

 private:
  int layer_;
  double layer_value_;
};

/// Diameter normalization impossible: every pooled minimizer has zero norm.
class DegeneratePoolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phasefit
