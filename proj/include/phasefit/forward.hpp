#pragma once

#include <vector>

#include "phasefit/potential.hpp"
#include "phasefit/riccati.hpp"

namespace phasefit {

/// Interface-matching matrix propagating the solution coefficients (A, B)
/// across a layer boundary: (A', B') = scale * [a11 a12; a21 a22] (A, B).
/// det(a) = kappa_prev * kappa_next (Wronskian identity).
struct TransferMatrix {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
  double scale = 1.0;  // 1 / kappa_next
};

/// Phase shifts delta(k, l) for l = 0..cutoff at fixed wave number k.
struct PhaseShiftSet {
  double k = 0.0;
  std::vector<double> shifts;
  int cutoff = 0;  // == shifts.size() - 1
};

/// Entries of the matching matrix at radius r between local wave numbers
/// kappa_prev (inside) and kappa_next (outside). All arguments positive.
TransferMatrix transfer_matrix(int l, double kappa_prev, double kappa_next, double r);

/// Phase shift of p at wave number k, partial wave l, by the transfer-matrix
/// recursion x_{i+1} = (a21 + a22 x_i) / (a11 + a12 x_i) run in homogeneous
/// (A, B) form, delta = -arctan(x_final) in (-pi/2, pi/2]. Requires
/// kappa_i^2 = k^2 - q_i > 0 on every positive-width layer (RegimeError
/// otherwise, carrying the offending layer).
double phase_shift(const PotentialConfig& p, double k, int l);

/// Shifts for exactly l = 0..l_max.
PhaseShiftSet phase_shifts(const PotentialConfig& p, double k, int l_max);

/// Shifts up to the automatic cutoff (see shift_count).
PhaseShiftSet phase_shifts(const PotentialConfig& p, double k);

/// Automatic cutoff N: scan l upward until three consecutive shifts satisfy
/// |delta(k,l)| < 1e-7 |delta(k,0)| and return one less than the index of
/// the third; capped at l_cap. Zero delta(k,0) returns 0.
int shift_count(const PotentialConfig& p, double k, int l_cap = 128);

/// Precomputed per-(p, k) state for evaluating many partial waves: caches
/// the scaled Riccati rows on both sides of every effective interface.
class ShiftEvaluator {
 public:
  ShiftEvaluator(const PotentialConfig& p, double k, int l_max);
  double shift(int l) const;
  int l_max() const { return l_max_; }
  double k() const { return k_; }

 private:
  struct InterfaceRows {
    double kappa_in = 0.0, kappa_out = 0.0;
    std::vector<ScaledPair> j_in, n_in, j_out, n_out;
  };
  std::vector<InterfaceRows> interfaces_;
  int l_max_;
  double k_;
};

}  // namespace phasefit
