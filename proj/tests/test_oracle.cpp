#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "flab/oracle.hpp"

using namespace flab;

namespace {

RealPoint on_circle(const ParamPoint& p, double theta) {
  return {p.x1 + p.r * std::cos(theta), p.x2 + p.r * std::sin(theta)};
}

}  // namespace

TEST_CASE("oracle_rect_subset basics") {
  const ParamPoint p{0, 0, 0.5};
  const Rect R = make_rect(p, on_circle(p, 0.4), 1e-3, 1e-2);
  CHECK(oracle_rect_subset(R, R));
  const ParamPoint q{0.2, 0.15, 0.9};
  const Rect S = make_rect(q, on_circle(q, 3.0), 1e-3, 1e-2);
  CHECK(!oracle_rect_subset(R, S));
  CHECK_THROWS_AS(oracle_rect_subset(R, R, 2), std::invalid_argument);
}

TEST_CASE("oracle_rect_subset agreement rate with the fast check") {
  // Random near-pairs spanning subset / non-subset regimes; agreement must
  // be at least 99% with disagreements confined to dilation boundaries.
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> ux(-0.2, 0.2), ur(0.5, 1.0),
      uang(0.0, 2 * std::numbers::pi), u01(0.0, 1.0);
  const double d = std::ldexp(1.0, -6);
  long agree = 0;
  const long trials = 10000;
  for (long i = 0; i < trials; ++i) {
    const ParamPoint p{ux(rng), ux(rng), ur(rng)};
    const ParamPoint q{p.x1 + d * ux(rng), p.x2 + d * ux(rng),
                       std::min(1.0, p.r + d * ux(rng))};
    const double sig = std::min(1.0, d * (1 + 31 * u01(rng)));
    const double a1 = uang(rng);
    const double a2 = a1 + sig / p.r * (u01(rng) - 0.5);
    const Rect R1 = make_rect(p, on_circle(p, a1), d, sig);
    const Rect R2 =
        make_rect(q, on_circle(q, a2), d, sig, 1.0 + 3.0 * u01(rng));
    if (rect_subset(R1, R2) == oracle_rect_subset(R1, R2)) ++agree;
  }
  CHECK(static_cast<double>(agree) / trials >= 0.99);
}

TEST_CASE("oracle_total_multiplicity: empty and singleton") {
  CHECK(oracle_total_multiplicity({}, RealPoint{0, 0}, Scale{6}) == 0);
  const ParamPoint p{0, 0, 0.5};
  const Arc a = arc_of(p, Scale{6}, RealPoint{0.5, 0});
  const PairEntry e{p, a, arc_midpoint(a)};
  CHECK(oracle_total_multiplicity({e}, e.anchor, Scale{6}) == 1);
  CHECK(oracle_total_multiplicity({e}, RealPoint{-0.5, 0}, Scale{6}) == 0);
}

TEST_CASE("oracle_covering_count matches stride walks") {
  std::mt19937_64 rng(92);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ParamPoint> P;
  for (int i = 0; i < 300; ++i) P.push_back({u(rng), u(rng), u(rng)});
  CHECK(oracle_covering_count(P, Scale{5}) == covering_count(P, Scale{5}));
  CHECK(oracle_covering_count({}, Scale{5}) == 0);
}

TEST_CASE("oracle_dimension_slope: known dimensions") {
  // Full planar delta-grids of the unit square: log2(count) = 2k exactly.
  std::vector<int> exps{4, 5, 6, 7};
  std::vector<long> counts;
  for (int k : exps) counts.push_back((1L << k) * (1L << k));
  const SlopeFit grid = oracle_dimension_slope(exps, counts);
  CHECK(grid.slope == doctest::Approx(2.0).epsilon(0.05));
  CHECK(grid.residual < 1e-9);

  // Single point: constant count, slope 0.
  const SlopeFit point = oracle_dimension_slope(exps, {1, 1, 1, 1});
  CHECK(point.slope == doctest::Approx(0.0));

  // Rasterized circle: slope 1 +- 0.1.
  const ParamPoint p{0, 0, 0.5};
  std::vector<long> circ;
  for (int k : exps) circ.push_back(covering_count_circle(p, Scale{k}));
  const SlopeFit circle = oracle_dimension_slope(exps, circ);
  CHECK(circle.slope == doctest::Approx(1.0).epsilon(0.1));

  CHECK_THROWS_AS(oracle_dimension_slope({4, 5}, {1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle_dimension_slope({4, 5, 6}, {1, 0, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle_dimension_slope({4, 4, 4}, {1, 2, 4}),
                  std::invalid_argument);
}

TEST_CASE("oracle_cover_escape flags a deliberately broken cover") {
  const ParamPoint p{0, 0, 0.6};
  const ParamPoint q{0.22, 0.08, 0.8};
  const double delta = std::ldexp(1.0, -7);
  std::vector<Rect> cover = intersection_cover(p, q, delta);
  REQUIRE(cover.size() >= 2);
  CHECK(!oracle_cover_escape(p, q, delta, cover));
  // Dropping one crossing's rectangles must leave sampled escapes.
  std::vector<Rect> half;
  for (const Rect& r : cover)
    if (r.v.y > 0) half.push_back(r);
  REQUIRE(half.size() < cover.size());
  CHECK(oracle_cover_escape(p, q, delta, half));
  // Empty cover of a nonempty intersection is all escapes.
  CHECK(oracle_cover_escape(p, q, delta, {}));
}
