#pragma once

#include <vector>

#include "phasefit/rng.hpp"

namespace phasefit {

/// Piecewise-constant spherically symmetric potential: q(r) = values[i] on
/// [radii[i-1], radii[i]) with radii[-1] = 0, and q = 0 for r >= radii.back().
/// Radii are nondecreasing; zero-width layers are legal and inert.
struct PotentialConfig {
  std::vector<double> radii;
  std::vector<double> values;

  int layer_count() const { return static_cast<int>(radii.size()); }
  double support() const { return radii.empty() ? 0.0 : radii.back(); }
};

/// Search box: layer count bound M, support bound R, value bounds.
struct AdmissibleSet {
  double R = 3.0;
  int M = 8;
  double q_low = -5.0;
  double q_high = 5.0;
};

/// Validate and build a configuration. With sort_unsorted the radii are
/// sorted ascending and the values carried along; otherwise unsorted radii
/// are a validation error.
PotentialConfig make_potential(std::vector<double> radii, std::vector<double> values,
                               bool sort_unsorted = false);

/// Throws ValidationError unless the box is consistent (R > 0, M >= 1,
/// q_low < q_high).
void validate(const AdmissibleSet& adm);

/// Pointwise evaluation.
double potential_at(const PotentialConfig& p, double r);

/// Draw M radii uniform on [0, R] (sorted ascending) and M values uniform on
/// [q_low, q_high]; 2M draws from the stream in that order.
PotentialConfig sample_uniform(const AdmissibleSet& adm, RngStream& rng);

/// L2 distance in R^3 between the two radial profiles:
/// sqrt(4 pi integral (p - q)^2 r^2 dr), evaluated exactly from the merged
/// breakpoint list via closed-form shell integrals.
double distance(const PotentialConfig& p, const PotentialConfig& q);

/// distance(p, 0).
double l2_norm(const PotentialConfig& p);

enum class MergeDirection { down, up };

/// Fuse one adjacent pair of layers, keeping the outer value:
///   down at i (2 <= i <= m+1): layers i-1 and i become one layer with value
///     v_i; i = m+1 addresses the zero exterior, dropping layer m entirely.
///   up at i (1 <= i <= m): layer i is absorbed into its outer neighbour,
///     which keeps that neighbour's value (zero when i = m).
/// Indices are 1-based layer numbers. Throws ValidationError when out of
/// range.
PotentialConfig merge_layers(const PotentialConfig& p, int i, MergeDirection dir);

/// The complementary fusion keeping the inner value: layer i's value spreads
/// outward over layer i+1 (1 <= i <= m). For i = m the support extends to
/// support_end. Used by the reduction step's upward adjustments.
PotentialConfig merge_keeping_inner(const PotentialConfig& p, int i, double support_end);

}  // namespace phasefit
