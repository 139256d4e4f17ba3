#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracle/reference.hpp"
#include "phasefit/errors.hpp"
#include "phasefit/potential.hpp"
#include "phasefit/rng.hpp"

using namespace phasefit;

namespace {

PotentialConfig random_config(RngStream& rng, int layers, double rmax = 3.0, double qlo = -5.0,
                              double qhi = 5.0) {
  AdmissibleSet adm{rmax, layers, qlo, qhi};
  return sample_uniform(adm, rng);
}

}  // namespace

TEST_CASE("make_potential validation and sorting") {
  auto zero = make_potential({2.4}, {0.0});
  CHECK(zero.layer_count() == 1);
  CHECK(potential_at(zero, 1.0) == 0.0);

  // the 5-layer reference potential
  auto q1 = make_potential({0.3, 1.0, 1.9, 2.2, 2.4}, {4.0, 1.0, -2.0, 3.5, 1.0});
  CHECK(potential_at(q1, 0.0) == 4.0);
  CHECK(potential_at(q1, 0.5) == 1.0);
  CHECK(potential_at(q1, 1.5) == -2.0);
  CHECK(potential_at(q1, 2.0) == 3.5);
  CHECK(potential_at(q1, 2.3) == 1.0);
  CHECK(potential_at(q1, 2.4) == 0.0);
  CHECK(potential_at(q1, 10.0) == 0.0);

  auto sorted = make_potential({1.0, 0.3}, {7.0, 8.0}, /*sort_unsorted=*/true);
  CHECK(sorted.radii == std::vector<double>{0.3, 1.0});
  CHECK(sorted.values == std::vector<double>{8.0, 7.0});

  CHECK_THROWS_AS(make_potential({1.0, 0.3}, {7.0, 8.0}), ValidationError);
  CHECK_THROWS_AS(make_potential({1.0}, {1.0, 2.0}), ValidationError);
  CHECK_THROWS_AS(make_potential({-0.1}, {1.0}), ValidationError);
  CHECK_THROWS_AS(make_potential({}, {}), ValidationError);
}

TEST_CASE("sample_uniform: determinism, box membership, moments") {
  AdmissibleSet adm{3.0, 8, -5.0, 5.0};

  RngStream a(42), b(42);
  auto pa = sample_uniform(adm, a);
  auto pb = sample_uniform(adm, b);
  CHECK(pa.radii == pb.radii);
  CHECK(pa.values == pb.values);

  RngStream rng(7);
  double value_sum = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    auto p = sample_uniform(adm, rng);
    REQUIRE(p.layer_count() == 8);
    CHECK(std::is_sorted(p.radii.begin(), p.radii.end()));
    for (double r : p.radii) CHECK((r >= 0.0 && r <= adm.R));
    for (double q : p.values) {
      CHECK((q >= adm.q_low && q <= adm.q_high));
      value_sum += q;
    }
  }
  // mean of the value coordinates ~ (q_low + q_high)/2 within 3 standard errors
  const double mean = value_sum / (n * 8.0);
  const double se = (adm.q_high - adm.q_low) / std::sqrt(12.0 * n * 8.0);
  CHECK(std::abs(mean - 0.0) <= 3.0 * se);

  CHECK_THROWS_AS(sample_uniform(AdmissibleSet{3.0, 4, 0.0, 0.0}, rng), ValidationError);
}

TEST_CASE("distance: closed forms and metric properties") {
  auto ball = make_potential({1.0}, {1.0});
  auto none = make_potential({1.0}, {0.0});
  CHECK(distance(ball, ball) == 0.0);
  CHECK(distance(ball, none) ==
        doctest::Approx(std::sqrt(4.0 * std::numbers::pi / 3.0)).epsilon(1e-14));
  CHECK(l2_norm(ball) == doctest::Approx(2.0466534158929770).epsilon(1e-14));

  RngStream rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = random_config(rng, 3);
    auto q = random_config(rng, 3);
    auto r = random_config(rng, 3);
    const double dpq = distance(p, q);
    // quadrature oracle
    CHECK(dpq == doctest::Approx(oracle::distance_by_quadrature(p, q)).epsilon(1e-10));
    // symmetry is exact, triangle inequality within rounding
    CHECK(distance(q, p) == dpq);
    CHECK(dpq <= distance(p, r) + distance(r, q) + 1e-12);
    CHECK(distance(p, p) == 0.0);
  }
}

TEST_CASE("distance invariances: zero-width layers and splits") {
  RngStream rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    auto p = random_config(rng, 4);
    auto q = random_config(rng, 4);
    const double base = distance(p, q);

    // insert a zero-width layer into p
    PotentialConfig pz = p;
    pz.radii.insert(pz.radii.begin() + 2, pz.radii[1]);
    pz.values.insert(pz.values.begin() + 2, 123.0);
    CHECK(distance(pz, q) == doctest::Approx(base).epsilon(1e-12));

    // split p's second layer into two equal-valued layers
    PotentialConfig ps = p;
    const double mid = 0.5 * (ps.radii[0] + ps.radii[1]);
    ps.radii.insert(ps.radii.begin() + 1, mid);
    ps.values.insert(ps.values.begin() + 1, ps.values[1]);
    CHECK(distance(ps, q) == doctest::Approx(base).epsilon(1e-12));
    CHECK(distance(ps, p) <= 1e-12);
  }
}

TEST_CASE("merge_layers") {
  // equal adjacent values: either direction leaves the potential unchanged
  auto eq = make_potential({1.0, 2.0, 3.0}, {5.0, 5.0, 1.0});
  for (const auto& merged :
       {merge_layers(eq, 2, MergeDirection::down), merge_layers(eq, 1, MergeDirection::up)}) {
    CHECK(merged.layer_count() == 2);
    for (double r : {0.5, 1.5, 2.5, 3.5}) CHECK(potential_at(merged, r) == potential_at(eq, r));
  }

  auto two = make_potential({1.0, 2.0}, {7.0, 9.0});
  auto down2 = merge_layers(two, 2, MergeDirection::down);
  CHECK(down2.radii == std::vector<double>{2.0});
  CHECK(down2.values == std::vector<double>{9.0});

  // merging up into the virtual zero layer shrinks the support
  auto up2 = merge_layers(two, 2, MergeDirection::up);
  CHECK(up2.radii == std::vector<double>{1.0});
  CHECK(up2.values == std::vector<double>{7.0});
  auto down3 = merge_layers(two, 3, MergeDirection::down);
  CHECK(down3.radii == up2.radii);
  CHECK(down3.values == up2.values);

  CHECK_THROWS_AS(merge_layers(two, 1, MergeDirection::down), ValidationError);
  CHECK_THROWS_AS(merge_layers(two, 4, MergeDirection::down), ValidationError);
  CHECK_THROWS_AS(merge_layers(two, 3, MergeDirection::up), ValidationError);

  // keep-inner fusion: v_i spreads outward; at i = m the support extends
  auto inner = merge_keeping_inner(two, 1, 3.0);
  CHECK(inner.radii == std::vector<double>{2.0});
  CHECK(inner.values == std::vector<double>{7.0});
  auto outerm = merge_keeping_inner(two, 2, 3.0);
  CHECK(outerm.radii == std::vector<double>{1.0, 3.0});
  CHECK(outerm.values == std::vector<double>{7.0, 9.0});
}

TEST_CASE("admissible set validation") {
  CHECK_THROWS_AS(validate(AdmissibleSet{0.0, 8, -5.0, 5.0}), ValidationError);
  CHECK_THROWS_AS(validate(AdmissibleSet{3.0, 0, -5.0, 5.0}), ValidationError);
  CHECK_THROWS_AS(validate(AdmissibleSet{3.0, 8, 5.0, 5.0}), ValidationError);
  CHECK_NOTHROW(validate(AdmissibleSet{3.0, 8, -5.0, 5.0}));
}
