#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phasefit/local_search.hpp"
#include "phasefit/objective.hpp"

namespace phasefit {

/// Batched-random-search tuning. Derived counts: n_red = ceil(gamma L)
/// points proceed to local searches per iteration, n_min = ceil(nu * n_red)
/// of the pooled minimizers form the minimizing set.
struct IrrsParams {
  int L = 5000;
  double gamma = 0.01;
  double nu = 0.1;
  double beta = 0.95;
  double epsilon = 0.01;
  int j_max = 6;
  std::uint64_t seed = 0;

  int reduced_count() const;
  int minimizing_count() const;
};

/// The retained lowest-phi minimizers with the normalized diameter
/// D = max_{i,j} distance(p_i, p_j) / d_av.
struct MinimizingSet {
  std::vector<ScoredConfig> members;  // sorted by phi ascending
  double diameter = 0.0;
  double d_av = 0.0;
};

enum class Verdict { stable, unstable, iteration_capped };

std::string to_string(Verdict v);

struct IterationRecord {
  int j = 0;
  double diameter = 0.0;
  double d_av = 0.0;
  std::vector<ScoredConfig> s_min;
};

/// Full run history plus the overall best minimizer.
struct StabilityReport {
  ScoredConfig best;
  std::vector<IterationRecord> iterations;
  Verdict verdict = Verdict::iteration_capped;
  /// Objective value of the planted configuration, when one was supplied.
  bool has_planted = false;
  double planted_phi = 0.0;
};

/// The count lowest-value points of the batch; ties keep batch order.
std::vector<ScoredConfig> reduced_sample(const std::vector<ScoredConfig>& batch, int count);

/// Minimizing set of the candidate pool: the n_min lowest-phi members, with
/// d_av the mean norm over all candidates passed. Throws DegeneratePoolError
/// when every candidate has zero norm.
MinimizingSet diameter(const std::vector<ScoredConfig>& candidates, int n_min);

struct IrrsOptions {
  int workers = 0;  // 0 = hardware concurrency
  /// Optional extra start injected into the first iteration's local-search
  /// slate (diagnostic; its raw phi is recorded in the report).
  const PotentialConfig* planted = nullptr;
};

/// Iterative reduced random search: per iteration, sample L uniform
/// configurations, keep the n_red best, run the local phase on each, pool
/// with the previous iteration's minimizers, and stop on the three-branch
/// diameter criterion (D <= epsilon: stable; D not shrinking by beta:
/// unstable; j_max reached: iteration-capped). Deterministic for a fixed
/// seed, independent of worker count.
StabilityReport irrs(const InverseProblem& prob, const IrrsParams& params,
                     const LocalParams& local, const IrrsOptions& opts = {});

}  // namespace phasefit
