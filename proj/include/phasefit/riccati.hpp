#pragma once

#include <vector>

namespace phasefit {

// Riccati-Bessel functions
//
//   j_l(x) = sqrt(pi x / 2) J_{l+1/2}(x),   j_0(x) = sin(x),  j_l ~  sin(x - l pi/2)
//   n_l(x) = sqrt(pi x / 2) N_{l+1/2}(x),   n_0(x) = -cos(x), n_l ~ -cos(x - l pi/2)
//
// with Wronskian j_l n_l' - j_l' n_l = 1. Both functions satisfy the
// three-term recurrence f_{l+1} = (2l+1)/x f_l - f_{l-1} and the derivative
// identity f_l' = f_{l-1} - (l/x) f_l.

/// Scalar result. When the true value is too small for a double (l >> x),
/// both value and derivative are returned as 0 and `underflow` is set; a
/// genuine pair can never have both members zero (the Wronskian forbids it),
/// so the zero pair doubles as the flag. No code path yields NaN.
struct RiccatiValue {
  double value = 0.0;
  double derivative = 0.0;
  bool underflow = false;
};

/// One row element of a batched evaluation.
struct RiccatiPair {
  double value_j = 0.0;
  double value_n = 0.0;
  double deriv_j = 0.0;
  double deriv_n = 0.0;
  int order = 0;
  double argument = 0.0;
};

/// (value, derivative) * 2^exp2. Keeps l >> x and l << x regimes exactly
/// representable where plain doubles would under- or overflow.
struct ScaledPair {
  double value = 0.0;
  double derivative = 0.0;
  int exp2 = 0;
};

/// j_l(x) and its derivative. Throws std::domain_error for x <= 0 or l < 0.
RiccatiValue riccati_j(int l, double x);

/// n_l(x) and its derivative. Same contract; overflow (the n_l counterpart
/// of the j_l underflow regime) saturates to +-infinity, never NaN.
RiccatiValue riccati_n(int l, double x);

/// Batched pairs for l = 0..l_max at fixed argument.
std::vector<RiccatiPair> riccati_row(int l_max, double x);

/// Scaled rows for l = 0..l_max; the form consumed by the transfer-matrix
/// solver. j[l] and n[l] each carry their own base-2 exponent.
void riccati_rows_scaled(int l_max, double x, std::vector<ScaledPair>& j_out,
                         std::vector<ScaledPair>& n_out);

}  // namespace phasefit
