#include "phasefit/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phasefit/errors.hpp"

namespace phasefit {

PotentialConfig make_potential(std::vector<double> radii, std::vector<double> values,
                               bool sort_unsorted) {
  if (radii.size() != values.size())
    throw ValidationError("potential: radii and values must have equal lengths");
  if (radii.empty()) throw ValidationError("potential: at least one layer required");
  for (double r : radii)
    if (!(r >= 0.0)) throw ValidationError("potential: radii must be nonnegative");

  const bool sorted = std::is_sorted(radii.begin(), radii.end());
  if (!sorted) {
    if (!sort_unsorted) throw ValidationError("potential: radii must be nondecreasing");
    std::vector<std::pair<double, double>> layers(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) layers[i] = {radii[i], values[i]};
    std::stable_sort(layers.begin(), layers.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < layers.size(); ++i) {
      radii[i] = layers[i].first;
      values[i] = layers[i].second;
    }
  }
  return PotentialConfig{std::move(radii), std::move(values)};
}

void validate(const AdmissibleSet& adm) {
  if (!(adm.R > 0.0)) throw ValidationError("admissible set: R must be positive");
  if (adm.M < 1) throw ValidationError("admissible set: M must be >= 1");
  if (!(adm.q_low < adm.q_high)) throw ValidationError("admissible set: q_low must be < q_high");
}

double potential_at(const PotentialConfig& p, double r) {
  // first layer whose right edge lies strictly beyond r
  auto it = std::upper_bound(p.radii.begin(), p.radii.end(), r);
  if (it == p.radii.end()) return 0.0;
  return p.values[static_cast<std::size_t>(it - p.radii.begin())];
}

PotentialConfig sample_uniform(const AdmissibleSet& adm, RngStream& rng) {
  validate(adm);
  std::vector<double> radii(static_cast<std::size_t>(adm.M));
  std::vector<double> values(static_cast<std::size_t>(adm.M));
  for (auto& r : radii) r = rng.uniform(0.0, adm.R);
  for (auto& q : values) q = rng.uniform(adm.q_low, adm.q_high);
  std::sort(radii.begin(), radii.end());
  return PotentialConfig{std::move(radii), std::move(values)};
}

double distance(const PotentialConfig& p, const PotentialConfig& q) {
  std::vector<double> cuts;
  cuts.reserve(p.radii.size() + q.radii.size());
  cuts.insert(cuts.end(), p.radii.begin(), p.radii.end());
  cuts.insert(cuts.end(), q.radii.begin(), q.radii.end());
  std::sort(cuts.begin(), cuts.end());
  double sum = 0.0;
  double prev = 0.0;
  for (double r : cuts) {
    if (r > prev) {
      const double mid = 0.5 * (prev + r);
      const double dq = potential_at(p, mid) - potential_at(q, mid);
      sum += dq * dq * (r * r * r - prev * prev * prev);
      prev = r;
    }
  }
  return std::sqrt(4.0 * std::numbers::pi / 3.0 * sum);
}

double l2_norm(const PotentialConfig& p) {
  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < p.radii.size(); ++i) {
    const double r = p.radii[i];
    if (r > prev) {
      sum += p.values[i] * p.values[i] * (r * r * r - prev * prev * prev);
      prev = r;
    }
  }
  return std::sqrt(4.0 * std::numbers::pi / 3.0 * sum);
}

PotentialConfig merge_layers(const PotentialConfig& p, int i, MergeDirection dir) {
  const int m = p.layer_count();
  // up at i fuses the same pair as down at i+1 and keeps the same (outer) value
  const int j = dir == MergeDirection::down ? i : i + 1;
  if (j < 2 || j > m + 1) throw ValidationError("merge_layers: layer index out of range");
  PotentialConfig out = p;
  // drop layer j-1; its span is taken over by layer j (the zero exterior when j = m+1)
  out.radii.erase(out.radii.begin() + (j - 2));
  out.values.erase(out.values.begin() + (j - 2));
  return out;
}

PotentialConfig merge_keeping_inner(const PotentialConfig& p, int i, double support_end) {
  const int m = p.layer_count();
  if (i < 1 || i > m) throw ValidationError("merge_keeping_inner: layer index out of range");
  PotentialConfig out = p;
  if (i == m) {
    // spread v_m over the exterior layer up to support_end
    out.radii[static_cast<std::size_t>(m - 1)] = std::max(support_end, out.radii.back());
    return out;
  }
  // remove the interface r_i and the outer value v_{i+1}
  out.radii.erase(out.radii.begin() + (i - 1));
  out.values.erase(out.values.begin() + i);
  return out;
}

}  // namespace phasefit
