#include "phasefit/local_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "phasefit/errors.hpp"

namespace phasefit {

namespace {

constexpr int kScanPoints = 17;  // coarse samples bracketing the golden section
constexpr double kGolden = 0.6180339887498949;

std::vector<double> at_t(const SearchPoint& origin, const std::vector<double>& dir, double t,
                         const Box& box) {
  std::vector<double> x = origin.coords;
  for (std::size_t i = 0; i < x.size(); ++i) {
    // clamp away rounding dust; t is already restricted to the feasible interval
    x[i] = std::clamp(x[i] + t * dir[i], box.lo[i], box.hi[i]);
  }
  return x;
}

}  // namespace

Box search_box(const AdmissibleSet& adm, int layer_count) {
  validate(adm);
  const auto m = static_cast<std::size_t>(layer_count);
  Box box;
  box.lo.assign(2 * m, 0.0);
  box.hi.assign(2 * m, adm.R);
  for (std::size_t i = m; i < 2 * m; ++i) {
    box.lo[i] = adm.q_low;
    box.hi[i] = adm.q_high;
  }
  return box;
}

std::vector<double> encode_config(const PotentialConfig& p) {
  std::vector<double> coords;
  coords.reserve(2 * p.radii.size());
  coords.insert(coords.end(), p.radii.begin(), p.radii.end());
  coords.insert(coords.end(), p.values.begin(), p.values.end());
  return coords;
}

PotentialConfig decode_config(const std::vector<double>& coords) {
  const std::size_t m = coords.size() / 2;
  std::vector<double> radii(coords.begin(), coords.begin() + static_cast<long>(m));
  std::vector<double> values(coords.begin() + static_cast<long>(m), coords.end());
  return make_potential(std::move(radii), std::move(values), /*sort_unsorted=*/true);
}

CanonFn config_canonicalizer() {
  return [](std::vector<double>& coords) {
    const std::size_t m = coords.size() / 2;
    std::vector<std::pair<double, double>> layers(m);
    for (std::size_t i = 0; i < m; ++i) layers[i] = {coords[i], coords[m + i]};
    std::stable_sort(layers.begin(), layers.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < m; ++i) {
      coords[i] = layers[i].first;
      coords[m + i] = layers[i].second;
    }
  };
}

SearchPoint line_minimize(const VectorFn& f, const SearchPoint& origin,
                          std::vector<double> direction, const Box& box, double line_tol,
                          const CanonFn& canon) {
  double norm = 0.0;
  for (double d : direction) norm += d * d;
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) return origin;
  for (double& d : direction) d /= norm;

  // feasible t-interval from the box (origin is feasible, so 0 is inside)
  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < direction.size(); ++i) {
    const double d = direction[i];
    if (d == 0.0) continue;
    const double a = (box.lo[i] - origin.coords[i]) / d;
    const double b = (box.hi[i] - origin.coords[i]) / d;
    t_lo = std::max(t_lo, std::min(a, b));
    t_hi = std::min(t_hi, std::max(a, b));
  }
  t_lo = std::min(t_lo, 0.0);
  t_hi = std::max(t_hi, 0.0);
  if (!(t_hi - t_lo > line_tol)) return origin;

  double best_t = 0.0;
  double best_v = origin.value;
  auto eval = [&](double t) {
    const double v = f(at_t(origin, direction, t, box));
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
    return v;
  };

  // coarse scan, then bracket the best sample
  std::vector<double> grid(kScanPoints);
  std::vector<double> gv(kScanPoints);
  std::size_t ibest = 0;
  for (int i = 0; i < kScanPoints; ++i) {
    grid[static_cast<std::size_t>(i)] = t_lo + (t_hi - t_lo) * i / (kScanPoints - 1);
    gv[static_cast<std::size_t>(i)] = eval(grid[static_cast<std::size_t>(i)]);
    if (gv[static_cast<std::size_t>(i)] < gv[ibest]) ibest = static_cast<std::size_t>(i);
  }
  double a = grid[ibest == 0 ? 0 : ibest - 1];
  double b = grid[std::min<std::size_t>(ibest + 1, kScanPoints - 1)];

  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > line_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = eval(d);
    }
  }

  if (best_t == 0.0) return origin;
  SearchPoint out{at_t(origin, direction, best_t, box), best_v};
  if (canon) canon(out.coords);
  return out;
}

SearchPoint basic_powell(const VectorFn& f, SearchPoint start, const Box& box,
                         const LocalParams& params, const CanonFn& canon) {
  const std::size_t dim = start.coords.size();
  SearchPoint cur = std::move(start);
  for (int iter = 0; iter < params.max_powell_iters; ++iter) {
    const SearchPoint q0 = cur;

    // independent axis minimizations from q0 rank the directions
    std::vector<double> trial_value(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<double> u(dim, 0.0);
      u[i] = 1.0;
      trial_value[i] = line_minimize(f, q0, std::move(u), box, params.line_tol, canon).value;
    }
    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return trial_value[a] < trial_value[b]; });

    // sequential pass in ranked order
    SearchPoint seq = q0;
    for (std::size_t i : order) {
      std::vector<double> u(dim, 0.0);
      u[i] = 1.0;
      seq = line_minimize(f, seq, std::move(u), box, params.line_tol, canon);
    }

    // composite direction from the iteration's total displacement
    std::vector<double> v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = seq.coords[i] - q0.coords[i];
    SearchPoint comp = line_minimize(f, q0, std::move(v), box, params.line_tol, canon);
    cur = comp.value <= seq.value ? comp : seq;

    const double f0 = q0.value;
    const double f1 = cur.value;
    if (2.0 * std::abs(f0 - f1) <= params.powell_ftol * (std::abs(f0) + std::abs(f1) + 1e-25))
      break;
  }
  return cur;
}

ScoredConfig reduce(const ConfigFn& f, const PotentialConfig& start, double eps_r,
                    const AdmissibleSet& adm) {
  ScoredConfig cur{start, f(start)};
  while (cur.config.layer_count() > 1) {
    const int m = cur.config.layer_count();
    double best_cost = std::numeric_limits<double>::infinity();
    ScoredConfig best;
    auto consider = [&](PotentialConfig cand) {
      const double v = f(cand);
      const double cost = std::abs(cur.value - v);
      if (cost < best_cost) {
        best_cost = cost;
        best = {std::move(cand), v};
      }
    };
    // downward adjustments: the fused pair keeps the outer value
    for (int i = 2; i <= m + 1; ++i) consider(merge_layers(cur.config, i, MergeDirection::down));
    // upward adjustments: the fused pair keeps the inner value; skip the
    // no-op case where the last layer already reaches the box radius
    for (int i = 1; i <= m; ++i) {
      if (i == m && cur.config.radii.back() >= adm.R) continue;
      consider(merge_keeping_inner(cur.config, i, adm.R));
    }
    if (best_cost <= eps_r * cur.value)
      cur = std::move(best);
    else
      break;
  }
  return cur;
}

ScoredConfig lmm(const ConfigFn& f, const PotentialConfig& start, const AdmissibleSet& adm,
                 const LocalParams& params) {
  const double phi0 = f(start);

  const ScoredConfig reduced = reduce(f, start, params.eps_r, adm);

  const Box box = search_box(adm, reduced.config.layer_count());
  SearchPoint sp{encode_config(reduced.config), reduced.value};
  sp = basic_powell([&f](const std::vector<double>& x) { return f(decode_config(x)); }, std::move(sp),
                    box, params, config_canonicalizer());
  const ScoredConfig polished{decode_config(sp.coords), sp.value};

  const ScoredConfig final_reduced = reduce(f, polished.config, params.eps_r, adm);

  if (final_reduced.value <= phi0) return final_reduced;
  if (polished.value <= phi0) return polished;
  return {start, phi0};
}

}  // namespace phasefit
