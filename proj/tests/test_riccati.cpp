#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracle/reference.hpp"
#include "phasefit/riccati.hpp"

using namespace phasefit;

namespace {

// log grid over [1e-3, 100], endpoints included
std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    xs[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return xs;
}

}  // namespace

TEST_CASE("closed forms at l = 0 and l = 1") {
  const double x = std::numbers::pi / 2;
  auto j0 = riccati_j(0, x);
  CHECK(j0.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(j0.derivative == doctest::Approx(0.0).epsilon(1e-14));

  auto n0 = riccati_n(0, std::numbers::pi);
  CHECK(n0.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(n0.derivative) < 1e-14);

  // j_1(x) = sin x / x - cos x, n_1(x) = -cos x / x - sin x
  auto j1 = riccati_j(1, 1.0);
  CHECK(j1.value == doctest::Approx(std::sin(1.0) - std::cos(1.0)).epsilon(1e-14));
  CHECK(j1.derivative == doctest::Approx(std::cos(1.0)).epsilon(1e-14));
  auto n1 = riccati_n(1, 1.0);
  CHECK(n1.value == doctest::Approx(-std::cos(1.0) - std::sin(1.0)).epsilon(1e-14));
  CHECK(n1.derivative == doctest::Approx(std::sin(1.0)).epsilon(1e-14));
}

TEST_CASE("frozen high-precision anchors") {
  // mpmath, 60 significant digits
  auto j = riccati_j(15, 27.0);
  CHECK(j.value == doctest::Approx(1.0904130602550243).epsilon(1e-13));
  CHECK(j.derivative == doctest::Approx(-0.15348810622524364).epsilon(1e-12));

  auto n = riccati_n(20, 5.0);
  CHECK(n.value == doctest::Approx(-4633975701.5287717).epsilon(1e-13));
  CHECK(n.derivative == doctest::Approx(17931114349.398524).epsilon(1e-13));

  auto j32 = riccati_j(32, 27.0);
  CHECK(j32.value == doctest::Approx(0.058670850911340009).epsilon(1e-12));
  CHECK(j32.derivative == doctest::Approx(0.042448240549803048).epsilon(1e-12));
  auto n32 = riccati_n(32, 27.0);
  CHECK(n32.value == doctest::Approx(-12.927124846690144).epsilon(1e-13));
  CHECK(n32.derivative == doctest::Approx(7.6914905422505021).epsilon(1e-13));
}

TEST_CASE("scaled rows reach regimes beyond double range") {
  // j_128(0.3) = 0.53255336390233273 * 2^-1071, n_128(0.3) = -0.56113343662207454 * 2^1063
  std::vector<ScaledPair> j, n;
  riccati_rows_scaled(128, 0.3, j, n);
  const double j_mant = std::ldexp(j[128].value, j[128].exp2 + 1071);
  const double n_mant = std::ldexp(n[128].value, n[128].exp2 - 1063);
  CHECK(j_mant == doctest::Approx(0.53255336390233273).epsilon(1e-11));
  CHECK(n_mant == doctest::Approx(-0.56113343662207454).epsilon(1e-11));

  // plain API: deep underflow gives the flagged zero pair, n saturates to
  // -inf; no NaN on either path
  auto jp = riccati_j(128, 0.1);
  CHECK(jp.underflow);
  CHECK(jp.value == 0.0);
  CHECK(jp.derivative == 0.0);
  auto np = riccati_n(128, 0.1);
  CHECK(std::isinf(np.value));
  CHECK(!std::isnan(np.value));
  CHECK(!std::isnan(np.derivative));
}

TEST_CASE("row consistency with scalar calls") {
  for (double x : {1.0, 2.0, 27.0}) {
    const int l_max = x > 20 ? 32 : 2;
    auto row = riccati_row(l_max, x);
    for (int l = 0; l <= l_max; ++l) {
      auto j = riccati_j(l, x);
      auto n = riccati_n(l, x);
      CHECK(row[l].value_j == doctest::Approx(j.value).epsilon(1e-12));
      CHECK(row[l].deriv_j == doctest::Approx(j.derivative).epsilon(1e-12));
      CHECK(row[l].value_n == doctest::Approx(n.value).epsilon(1e-12));
      CHECK(row[l].deriv_n == doctest::Approx(n.derivative).epsilon(1e-12));
      CHECK(row[l].order == l);
    }
  }
  auto single = riccati_row(0, 1.0);
  CHECK(single.size() == 1);
  CHECK(single[0].value_j == doctest::Approx(std::sin(1.0)));
  CHECK(single[0].value_n == doctest::Approx(-std::cos(1.0)));
  CHECK(single[0].deriv_j == doctest::Approx(std::cos(1.0)));
  CHECK(single[0].deriv_n == doctest::Approx(std::sin(1.0)));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(riccati_j(0, 0.0), std::domain_error);
  CHECK_THROWS_AS(riccati_j(0, -1.0), std::domain_error);
  CHECK_THROWS_AS(riccati_n(-1, 1.0), std::domain_error);
  std::vector<ScaledPair> j, n;
  CHECK_THROWS_AS((riccati_rows_scaled(4, -2.0, j, n)), std::domain_error);
}

TEST_CASE("Wronskian identity over the full grid") {
  for (double x : log_grid(1e-3, 100.0, 120)) {
    auto row = riccati_row(64, x);
    for (int l = 0; l <= 64; ++l) {
      const double w = row[l].value_j * row[l].deriv_n - row[l].deriv_j * row[l].value_n;
      INFO("l=", l, " x=", x);
      CHECK(std::abs(w - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("recurrence and derivative identities") {
  for (double x : log_grid(1e-3, 100.0, 80)) {
    auto row = riccati_row(64, x);
    auto guard = [](double v) { return std::abs(v) > 1e-200 && std::isfinite(v); };
    for (int l = 1; l < 64; ++l) {
      // three-term recurrence, both kinds
      const double jm = row[l - 1].value_j, j0 = row[l].value_j, jp = row[l + 1].value_j;
      if (guard(jm) && guard(j0) && guard(jp)) {
        const double lhs = jm + jp;
        const double rhs = (2.0 * l + 1.0) / x * j0;
        const double scale = std::max({std::abs(jm), std::abs(jp), std::abs(rhs)});
        INFO("j recurrence l=", l, " x=", x);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * scale);
      }
      const double nm = row[l - 1].value_n, n0 = row[l].value_n, np = row[l + 1].value_n;
      if (guard(nm) && guard(n0) && guard(np)) {
        const double lhs = nm + np;
        const double rhs = (2.0 * l + 1.0) / x * n0;
        const double scale = std::max({std::abs(nm), std::abs(np), std::abs(rhs)});
        INFO("n recurrence l=", l, " x=", x);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * scale);
      }
      // derivative identity f_l' = f_{l-1} - (l/x) f_l
      if (guard(jm) && guard(j0)) {
        const double ref = jm - static_cast<double>(l) / x * j0;
        const double scale = std::max({std::abs(jm), std::abs(j0) * l / x, std::abs(ref)});
        INFO("j derivative l=", l, " x=", x);
        CHECK(std::abs(row[l].deriv_j - ref) <= 1e-9 * scale);
      }
      if (guard(nm) && guard(n0)) {
        const double ref = nm - static_cast<double>(l) / x * n0;
        const double scale = std::max({std::abs(nm), std::abs(n0) * l / x, std::abs(ref)});
        INFO("n derivative l=", l, " x=", x);
        CHECK(std::abs(row[l].deriv_n - ref) <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("asymptotic forms at large argument") {
  // the deviation from the pure sinusoid is genuinely l(l+1)/(2x) to leading
  // order, so that term belongs in the tolerance
  for (double x : {50.0, 60.0, 75.0, 100.0}) {
    for (int l = 0; l <= 5; ++l) {
      auto j = riccati_j(l, x);
      auto n = riccati_n(l, x);
      const double tol = 1e-2 + 1.5 * l * (l + 1.0) / (2.0 * x);
      CHECK(std::abs(j.value - std::sin(x - l * std::numbers::pi / 2)) <= tol);
      CHECK(std::abs(n.value + std::cos(x - l * std::numbers::pi / 2)) <= tol);
    }
  }
}

TEST_CASE("agreement with the GSL reference") {
  for (double x : log_grid(0.05, 60.0, 40)) {
    for (int l : {0, 1, 2, 5, 10, 25}) {
      auto ref = oracle::riccati(l, x);
      auto j = riccati_j(l, x);
      auto n = riccati_n(l, x);
      if (std::abs(ref.j) > 1e-250) {
        CHECK(j.value == doctest::Approx(ref.j).epsilon(1e-10));
        CHECK(j.derivative == doctest::Approx(ref.jp).epsilon(1e-9));
      }
      if (std::abs(ref.n) < 1e250) {
        CHECK(n.value == doctest::Approx(ref.n).epsilon(1e-10));
        CHECK(n.derivative == doctest::Approx(ref.np).epsilon(1e-9));
      }
    }
  }
}
