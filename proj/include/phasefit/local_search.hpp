#pragma once

#include <functional>
#include <vector>

#include "phasefit/objective.hpp"
#include "phasefit/potential.hpp"

namespace phasefit {

/// Tuning for the local phase. eps_r gates the layer-reduction step; the
/// remaining fields drive the line search and the Powell-style loop.
struct LocalParams {
  double eps_r = 0.1;
  double line_tol = 1e-6;
  double powell_ftol = 1e-8;
  int max_powell_iters = 200;
};

/// A point in the (r_1..r_m, q_1..q_m) coordinate space with its cached
/// objective value.
struct SearchPoint {
  std::vector<double> coords;
  double value = 0.0;
};

/// Per-coordinate box bounds.
struct Box {
  std::vector<double> lo, hi;
};

using VectorFn = std::function<double(const std::vector<double>&)>;
/// Optional in-place coordinate canonicalization applied after accepted
/// moves; must not change the objective value.
using CanonFn = std::function<void(std::vector<double>&)>;
using ConfigFn = std::function<double(const PotentialConfig&)>;

/// Coordinate layout helpers for potential configurations.
Box search_box(const AdmissibleSet& adm, int layer_count);
std::vector<double> encode_config(const PotentialConfig& p);
PotentialConfig decode_config(const std::vector<double>& coords);
/// Pair-sorts the radii half of the coordinate vector, values carried along.
CanonFn config_canonicalizer();

/// Minimize f on the segment {origin + t * direction} clipped to the box:
/// coarse scan, then golden-section refinement of the best bracket down to
/// width line_tol. Returns the best point evaluated (origin and both segment
/// endpoints included), so the result never exceeds f(origin).
SearchPoint line_minimize(const VectorFn& f, const SearchPoint& origin,
                          std::vector<double> direction, const Box& box, double line_tol,
                          const CanonFn& canon = nullptr);

/// Derivative-free minimization over the box: per outer iteration, axis line
/// searches from the start point rank the directions, a sequential pass
/// follows them in that order, and a final search runs along the composite
/// displacement; stops on the fractional-decrease rule
/// 2|f0 - f1| <= powell_ftol (|f0| + |f1| + 1e-25).
SearchPoint basic_powell(const VectorFn& f, SearchPoint start, const Box& box,
                         const LocalParams& params, const CanonFn& canon = nullptr);

/// Configuration with its cached objective value.
struct ScoredConfig {
  PotentialConfig config;
  double value = 0.0;
};

/// Greedy layer reduction: evaluate every adjacent-pair fusion (keeping the
/// outer value, i = 2..m+1 against the zero exterior; keeping the inner
/// value, i = 1..m extending to the box radius) and apply the cheapest one
/// while its |delta phi| <= eps_r * phi(current); repeats until no fusion
/// qualifies or one layer remains.
ScoredConfig reduce(const ConfigFn& f, const PotentialConfig& start, double eps_r,
                    const AdmissibleSet& adm);

/// The full local phase: reduce, Powell in the reduced subspace, reduce
/// again. The result never exceeds f(start); if the trailing reduction
/// worsens past the entry value the less-reduced intermediate (or the start
/// itself) is returned instead.
ScoredConfig lmm(const ConfigFn& f, const PotentialConfig& start, const AdmissibleSet& adm,
                 const LocalParams& params);

}  // namespace phasefit
