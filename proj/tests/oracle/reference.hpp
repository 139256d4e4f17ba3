#pragma once

// Independent reference implementations used only by tests. Everything here
// goes through GSL (Bessel functions, ODE integration) or plain quadrature,
// deliberately sharing no code with the library paths it checks.

#include <functional>

#include "phasefit/forward.hpp"
#include "phasefit/potential.hpp"

namespace oracle {

/// Riccati-Bessel values via GSL's spherical Bessel functions:
/// j_l(x) = x jl(x), n_l(x) = x yl(x); derivatives from the recurrence
/// identity applied to GSL values.
struct RiccatiRef {
  double j, jp, n, np;
};
RiccatiRef riccati(int l, double x);

/// Phase shift by integrating the variable-phase equation
///   delta'(r) = -(q(r)/k) [cos(delta) j_l(kr) - sin(delta) n_l(kr)]^2
/// from 0 to the support end with an adaptive RK8 stepper, mapped into
/// (-pi/2, pi/2]. Throws on integrator failure.
double variable_phase_shift(const phasefit::PotentialConfig& p, double k, int l,
                            double eps = 1e-12);

/// |a - b| modulo pi, for comparing principal-value shifts.
double mod_pi_gap(double a, double b);

/// Adaptive Simpson quadrature to tolerance tol on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

/// Distance oracle: sqrt(4 pi * quadrature of (p - q)^2 r^2).
double distance_by_quadrature(const phasefit::PotentialConfig& p,
                              const phasefit::PotentialConfig& q);

}  // namespace oracle
