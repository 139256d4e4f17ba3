#include "phasefit/objective.hpp"

#include <cmath>

#include "phasefit/errors.hpp"
#include "phasefit/rng.hpp"

namespace phasefit {

PhaseShiftSet add_noise(const PhaseShiftSet& targets, const NoiseSpec& spec) {
  if (spec.h == 0.0) return targets;
  double delta_max = 0.0;
  for (double d : targets.shifts) delta_max = std::max(delta_max, std::abs(d));
  PhaseShiftSet out = targets;
  RngStream rng(spec.seed);
  for (double& d : out.shifts) {
    const double z = rng.uniform();
    d += (0.5 - z) * spec.h * delta_max;
  }
  return out;
}

InverseProblem::InverseProblem(PhaseShiftSet targets, AdmissibleSet adm, bool include_l0)
    : targets_(std::move(targets)), adm_(adm), include_l0_(include_l0) {
  validate(adm_);
  if (targets_.shifts.empty()) throw ValidationError("inverse problem: empty target shifts");
  if (!(targets_.k > 0.0)) throw ValidationError("inverse problem: target k must be positive");
  denom_ = 0.0;
  for (std::size_t l = include_l0_ ? 0 : 1; l < targets_.shifts.size(); ++l)
    denom_ += targets_.shifts[l] * targets_.shifts[l];
  if (!(denom_ > 0.0))
    throw ValidationError("inverse problem: target shifts have zero norm on the summation range");
}

double InverseProblem::phi(const PotentialConfig& p) const {
  ShiftEvaluator ev(p, targets_.k, targets_.cutoff);
  double num = 0.0;
  for (std::size_t l = include_l0_ ? 0 : 1; l < targets_.shifts.size(); ++l) {
    const double diff = ev.shift(static_cast<int>(l)) - targets_.shifts[l];
    num += diff * diff;
  }
  return num / denom_;
}

}  // namespace phasefit
