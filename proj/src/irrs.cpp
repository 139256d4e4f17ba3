#include "phasefit/irrs.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "phasefit/errors.hpp"
#include "phasefit/rng.hpp"

namespace phasefit {

namespace {

constexpr std::uint64_t kSampleDomain = 0x5a4d50ULL;

// Static slot assignment: result i depends only on body(i), so the outcome
// is identical for any worker count.
void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<std::size_t> order_by_value(const std::vector<ScoredConfig>& points) {
  std::vector<std::size_t> idx(points.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return points[a].value < points[b].value;
  });
  return idx;
}

}  // namespace

int IrrsParams::reduced_count() const {
  return static_cast<int>(std::ceil(gamma * static_cast<double>(L)));
}

int IrrsParams::minimizing_count() const {
  return static_cast<int>(std::ceil(nu * static_cast<double>(reduced_count())));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::unstable: return "unstable";
    case Verdict::iteration_capped: return "iteration-capped";
  }
  return "unknown";
}

std::vector<ScoredConfig> reduced_sample(const std::vector<ScoredConfig>& batch, int count) {
  if (batch.empty()) throw ValidationError("reduced_sample: empty batch");
  count = std::min<int>(count, static_cast<int>(batch.size()));
  const auto idx = order_by_value(batch);
  std::vector<ScoredConfig> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(batch[idx[static_cast<std::size_t>(i)]]);
  return out;
}

MinimizingSet diameter(const std::vector<ScoredConfig>& candidates, int n_min) {
  if (static_cast<int>(candidates.size()) < n_min)
    throw ValidationError("diameter: fewer candidates than the requested set size");
  MinimizingSet set;
  double norm_sum = 0.0;
  for (const auto& c : candidates) norm_sum += l2_norm(c.config);
  set.d_av = norm_sum / static_cast<double>(candidates.size());
  if (!(set.d_av > 0.0)) throw DegeneratePoolError("diameter: zero average norm in the pool");
  set.members = reduced_sample(candidates, n_min);
  double dmax = 0.0;
  for (std::size_t i = 0; i < set.members.size(); ++i)
    for (std::size_t j = i + 1; j < set.members.size(); ++j)
      dmax = std::max(dmax, distance(set.members[i].config, set.members[j].config));
  set.diameter = dmax / set.d_av;
  return set;
}

StabilityReport irrs(const InverseProblem& prob, const IrrsParams& params,
                     const LocalParams& local, const IrrsOptions& opts) {
  if (params.L < 1 || params.j_max < 1) throw ValidationError("irrs: L and j_max must be >= 1");
  if (!(params.gamma > 0.0 && params.gamma < 1.0) || !(params.nu > 0.0 && params.nu < 1.0) ||
      !(params.beta > 0.0 && params.beta < 1.0))
    throw ValidationError("irrs: gamma, nu, beta must lie in (0, 1)");
  if (!(params.epsilon > 0.0)) throw ValidationError("irrs: epsilon must be positive");
  const AdmissibleSet& adm = prob.admissible();
  validate(adm);
  const int n_red = params.reduced_count();
  const int n_min = params.minimizing_count();

  auto f = [&prob](const PotentialConfig& p) { return prob.phi(p); };

  StabilityReport report;
  report.best.value = std::numeric_limits<double>::infinity();
  double d_prev = std::numeric_limits<double>::infinity();
  std::vector<ScoredConfig> h_prev;  // previous iteration's minimizers

  for (int j = 1; j <= params.j_max; ++j) {
    // batch of L uniform trial configurations, one substream per iteration
    RngStream rng(params.seed, kSampleDomain, static_cast<std::uint64_t>(j));
    std::vector<PotentialConfig> batch(static_cast<std::size_t>(params.L));
    for (auto& p : batch) p = sample_uniform(adm, rng);

    std::vector<ScoredConfig> scored(batch.size());
    parallel_for(params.L, opts.workers, [&](int i) {
      auto& s = scored[static_cast<std::size_t>(i)];
      s.config = std::move(batch[static_cast<std::size_t>(i)]);
      s.value = f(s.config);
    });

    std::vector<ScoredConfig> starts = reduced_sample(scored, n_red);
    if (j == 1 && opts.planted != nullptr) {
      report.has_planted = true;
      report.planted_phi = f(*opts.planted);
      starts.push_back({*opts.planted, report.planted_phi});
    }

    std::vector<ScoredConfig> h_min(starts.size());
    parallel_for(static_cast<int>(starts.size()), opts.workers, [&](int i) {
      h_min[static_cast<std::size_t>(i)] =
          lmm(f, starts[static_cast<std::size_t>(i)].config, adm, local);
    });

    for (const auto& minimizer : h_min)
      if (minimizer.value < report.best.value) report.best = minimizer;

    // pool the two most recent iterations, keep the n_red best for the
    // normalization average and the n_min best as the minimizing set
    std::vector<ScoredConfig> pool = h_min;
    pool.insert(pool.end(), h_prev.begin(), h_prev.end());
    const MinimizingSet ms = diameter(reduced_sample(pool, n_red), n_min);

    report.iterations.push_back({j, ms.diameter, ms.d_av, ms.members});

    if (ms.diameter <= params.epsilon) {
      report.verdict = Verdict::stable;
      return report;
    }
    if (ms.diameter > params.beta * d_prev) {
      report.verdict = Verdict::unstable;
      return report;
    }
    d_prev = ms.diameter;
    h_prev = std::move(h_min);
  }
  report.verdict = Verdict::iteration_capped;
  return report;
}

}  // namespace phasefit
