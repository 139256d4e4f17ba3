#include "phasefit/forward.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phasefit/errors.hpp"

namespace phasefit {

namespace {

struct Interface {
  double r;
  double kappa_in, kappa_out;
};

// Effective interfaces of p at wave number k: zero-width layers are skipped,
// equal-kappa interfaces drop out (their matrix is exactly kappa * I, so the
// recursion is bitwise invariant under splitting a layer), the exterior has
// kappa = k. Validates kappa^2 > 0 on positive-width layers.
std::vector<Interface> build_interfaces(const PotentialConfig& p, double k) {
  if (!(k > 0.0)) throw std::domain_error("phase_shift: k must be positive");
  std::vector<Interface> out;
  double prev_r = 0.0;
  double prev_kappa = -1.0;
  auto emit = [&out](double r, double kin, double kout) {
    if (kin != kout) out.push_back({r, kin, kout});
  };
  for (int i = 0; i < p.layer_count(); ++i) {
    const double r = p.radii[static_cast<std::size_t>(i)];
    if (r <= prev_r) continue;  // inert layer
    const double q = p.values[static_cast<std::size_t>(i)];
    const double kap2 = k * k - q;
    if (!(kap2 > 0.0))
      throw RegimeError("phase_shift: layer " + std::to_string(i + 1) +
                            " has q >= k^2 (unsupported regime)",
                        i + 1, q);
    const double kap = std::sqrt(kap2);
    if (prev_kappa > 0.0) emit(prev_r, prev_kappa, kap);
    prev_r = r;
    prev_kappa = kap;
  }
  if (prev_kappa > 0.0) emit(prev_r, prev_kappa, k);
  return out;
}

struct ScaledEntry {
  double m;
  long e;
};

// a = [a11 a12; a21 a22] assembled from scaled rows; each entry keeps its own
// base-2 exponent (the value/derivative pairs on one side share one).
struct ScaledMatrix {
  ScaledEntry a11, a12, a21, a22;
};

// Products are grouped so that an interface with equal kappa on both sides
// collapses to exactly kappa * I (a12 = a21 = 0, a11 == a22 bitwise): the
// recursion is then exactly invariant under splitting a layer in two.
ScaledMatrix assemble(double kin, double kout, const ScaledPair& jin, const ScaledPair& nin,
                      const ScaledPair& jout, const ScaledPair& nout) {
  ScaledMatrix a;
  a.a11 = {kout * (jin.value * nout.derivative) - kin * (jin.derivative * nout.value),
           static_cast<long>(jin.exp2) + nout.exp2};
  a.a12 = {kout * (nin.value * nout.derivative) - kin * (nin.derivative * nout.value),
           static_cast<long>(nin.exp2) + nout.exp2};
  a.a21 = {kin * (jin.derivative * jout.value) - kout * (jin.value * jout.derivative),
           static_cast<long>(jin.exp2) + jout.exp2};
  a.a22 = {kin * (nin.derivative * jout.value) - kout * (nin.value * jout.derivative),
           static_cast<long>(nin.exp2) + jout.exp2};
  return a;
}

// Apply a to the homogeneous state and renormalize; only the ratio B/A is
// observable, so the common scale (including the 1/kappa prefactor) drops.
void apply(const ScaledMatrix& a, double& A, double& B) {
  long emax = a.a11.e;
  emax = std::max(emax, a.a12.e);
  emax = std::max(emax, a.a21.e);
  emax = std::max(emax, a.a22.e);
  auto aligned = [emax](const ScaledEntry& s) {
    const long d = s.e - emax;
    return d < -2000 ? 0.0 : std::ldexp(s.m, static_cast<int>(d));
  };
  const double nA = aligned(a.a11) * A + aligned(a.a12) * B;
  const double nB = aligned(a.a21) * A + aligned(a.a22) * B;
  const double norm = std::max(std::abs(nA), std::abs(nB));
  if (!(norm > 0.0)) {  // unreachable for det != 0; keep the state NaN-free
    A = 1.0;
    B = 0.0;
    return;
  }
  A = nA / norm;
  B = nB / norm;
}

double principal(double A, double B) {
  double d = std::atan2(-B, A);
  if (d > std::numbers::pi / 2) d -= std::numbers::pi;
  if (d <= -std::numbers::pi / 2) d += std::numbers::pi;
  return d;
}

constexpr double kTailFactor = 1e-7;
constexpr int kTailRun = 3;

}  // namespace

ShiftEvaluator::ShiftEvaluator(const PotentialConfig& p, double k, int l_max)
    : l_max_(l_max), k_(k) {
  const auto ifaces = build_interfaces(p, k);
  interfaces_.reserve(ifaces.size());
  for (const auto& f : ifaces) {
    InterfaceRows rows;
    rows.kappa_in = f.kappa_in;
    rows.kappa_out = f.kappa_out;
    riccati_rows_scaled(l_max, f.kappa_in * f.r, rows.j_in, rows.n_in);
    riccati_rows_scaled(l_max, f.kappa_out * f.r, rows.j_out, rows.n_out);
    interfaces_.push_back(std::move(rows));
  }
}

double ShiftEvaluator::shift(int l) const {
  double A = 1.0, B = 0.0;  // x_1 = B_1/A_1 = 0 (regularity at the origin)
  const auto idx = static_cast<std::size_t>(l);
  for (const auto& f : interfaces_) {
    const ScaledMatrix a =
        assemble(f.kappa_in, f.kappa_out, f.j_in[idx], f.n_in[idx], f.j_out[idx], f.n_out[idx]);
    apply(a, A, B);
  }
  return principal(A, B);
}

TransferMatrix transfer_matrix(int l, double kappa_prev, double kappa_next, double r) {
  if (!(kappa_prev > 0.0) || !(kappa_next > 0.0) || !(r > 0.0))
    throw std::domain_error("transfer_matrix: arguments must be positive");
  std::vector<ScaledPair> jin, nin, jout, nout;
  riccati_rows_scaled(l, kappa_prev * r, jin, nin);
  riccati_rows_scaled(l, kappa_next * r, jout, nout);
  const auto idx = static_cast<std::size_t>(l);
  const ScaledMatrix a = assemble(kappa_prev, kappa_next, jin[idx], nin[idx], jout[idx], nout[idx]);
  auto to_double = [](const ScaledEntry& s) {
    if (s.e > 2000) return s.m > 0 ? HUGE_VAL : (s.m < 0 ? -HUGE_VAL : 0.0);
    if (s.e < -2000) return 0.0;
    return std::ldexp(s.m, static_cast<int>(s.e));
  };
  return TransferMatrix{to_double(a.a11), to_double(a.a12), to_double(a.a21), to_double(a.a22),
                        1.0 / kappa_next};
}

double phase_shift(const PotentialConfig& p, double k, int l) {
  if (l < 0) throw std::domain_error("phase_shift: l must be nonnegative");
  return ShiftEvaluator(p, k, l).shift(l);
}

PhaseShiftSet phase_shifts(const PotentialConfig& p, double k, int l_max) {
  if (l_max < 0) throw std::domain_error("phase_shifts: l_max must be nonnegative");
  ShiftEvaluator ev(p, k, l_max);
  PhaseShiftSet set;
  set.k = k;
  set.cutoff = l_max;
  set.shifts.resize(static_cast<std::size_t>(l_max) + 1);
  for (int l = 0; l <= l_max; ++l) set.shifts[static_cast<std::size_t>(l)] = ev.shift(l);
  return set;
}

namespace {

// Shared sweep for shift_count / automatic phase_shifts: number of leading
// shifts to keep before the tail |delta| < 1e-7 |delta(k,0)| sets in.
int tail_cutoff(const std::vector<double>& shifts) {
  const double d0 = std::abs(shifts[0]);
  if (d0 == 0.0) return 0;
  const double threshold = kTailFactor * d0;
  int run = 0;
  for (std::size_t l = 1; l < shifts.size(); ++l) {
    if (std::abs(shifts[l]) < threshold) {
      if (++run == kTailRun) return static_cast<int>(l) - 1;
    } else {
      run = 0;
    }
  }
  return static_cast<int>(shifts.size()) - 1;
}

}  // namespace

int shift_count(const PotentialConfig& p, double k, int l_cap) {
  return tail_cutoff(phase_shifts(p, k, l_cap).shifts);
}

PhaseShiftSet phase_shifts(const PotentialConfig& p, double k) {
  // re-evaluate at the found cutoff so the result is bitwise identical to a
  // later evaluation over the same l-range (the row recurrence depends on
  // the requested l_max)
  const int n = tail_cutoff(phase_shifts(p, k, 128).shifts);
  return phase_shifts(p, k, n);
}

}  // namespace phasefit
