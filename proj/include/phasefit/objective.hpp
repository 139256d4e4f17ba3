#pragma once

#include <cstdint>

#include "phasefit/forward.hpp"
#include "phasefit/potential.hpp"

namespace phasefit {

/// Uniform relative noise on target shifts: each shift is perturbed by
/// (0.5 - z) * h * delta_max with z ~ U[0,1] and delta_max the largest
/// magnitude among the clean shifts.
struct NoiseSpec {
  double h = 0.0;
  std::uint64_t seed = 0;
};

PhaseShiftSet add_noise(const PhaseShiftSet& targets, const NoiseSpec& spec);

/// Fixed-energy identification problem: target shifts, the search box, and
/// the best-fit functional
///   phi(q) = sum_l |delta(k,l) - target_l|^2 / sum_l |target_l|^2
/// summed over l = 0..N (include_l0, the default) or l = 1..N. Candidate
/// shifts are always evaluated over exactly the target's l-range.
class InverseProblem {
 public:
  InverseProblem(PhaseShiftSet targets, AdmissibleSet adm, bool include_l0 = true);

  double phi(const PotentialConfig& p) const;

  double k() const { return targets_.k; }
  const PhaseShiftSet& targets() const { return targets_; }
  const AdmissibleSet& admissible() const { return adm_; }
  bool include_l0() const { return include_l0_; }

 private:
  PhaseShiftSet targets_;
  AdmissibleSet adm_;
  bool include_l0_;
  double denom_;
};

}  // namespace phasefit
