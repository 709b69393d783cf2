#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "flab/constants.hpp"
#include "flab/geom.hpp"
#include "flab/oracle.hpp"

using namespace flab;

namespace {

ParamPoint random_domain_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(-0.2, 0.2), ur(0.5, 1.0);
  return ParamPoint{ux(rng), ux(rng), ur(rng)};
}

RealPoint on_circle(const ParamPoint& p, double theta) {
  return {p.x1 + p.r * std::cos(theta), p.x2 + p.r * std::sin(theta)};
}

}  // namespace

TEST_CASE("param_distance basics") {
  const ParamPoint p{0, 0, 0.5};
  CHECK(param_distance(p, p) == 0.0);
  CHECK(param_distance(p, ParamPoint{0.3, 0, 0.5}) == doctest::Approx(0.3));
  // Independent componentwise recomputation on random pairs.
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const ParamPoint a{u(rng), u(rng), 0.5 + 0.5 * std::abs(u(rng))};
    const ParamPoint b{u(rng), u(rng), 0.5 + 0.5 * std::abs(u(rng))};
    const double dx = a.x1 - b.x1, dy = a.x2 - b.x2, dr = a.r - b.r;
    const double ref = std::sqrt(dx * dx + dy * dy + dr * dr);
    CHECK(param_distance(a, b) == doctest::Approx(ref).epsilon(1e-14));
    CHECK(param_distance(a, b) == param_distance(b, a));
  }
}

TEST_CASE("tangency basics and symmetry") {
  CHECK(tangency(ParamPoint{0, 0, 0.5}, ParamPoint{0.3, 0, 0.8}) ==
        doctest::Approx(0.0));
  CHECK(tangency(ParamPoint{0, 0, 0.5}, ParamPoint{0.2, 0, 0.5}) ==
        doctest::Approx(0.2));
  const ParamPoint p{0.1, -0.1, 0.7};
  CHECK(tangency(p, p) == 0.0);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const ParamPoint a = random_domain_point(rng);
    const ParamPoint b = random_domain_point(rng);
    CHECK(tangency(a, b) == tangency(b, a));
    CHECK(tangency(a, b) >= 0.0);
  }
}

TEST_CASE("annulus_contains examples") {
  const ParamPoint p{0, 0, 0.5};
  CHECK(annulus_contains(p, 0.01, RealPoint{0.505, 0}));
  CHECK(!annulus_contains(p, 0.01, RealPoint{0, 0}));
  CHECK(annulus_contains(p, 0.0, RealPoint{0.3, 0.4}));
}

TEST_CASE("in_domain") {
  CHECK(in_domain(ParamPoint{0, 0, 0.5}));
  CHECK(in_domain(ParamPoint{0.1, -0.2, 1.0}));
  CHECK(!in_domain(ParamPoint{0.5, 0, 0.5}));
  CHECK(!in_domain(ParamPoint{0, 0, 0.4}));
  CHECK(!in_domain(ParamPoint{0, 0, 1.5}));
}

TEST_CASE("make_rect validates invariants") {
  const ParamPoint p{0, 0, 0.5};
  const RealPoint v = on_circle(p, 0.3);
  CHECK_NOTHROW(make_rect(p, v, 1e-3, 1e-2));
  CHECK_THROWS_AS(make_rect(p, RealPoint{0, 0}, 1e-3, 1e-2),
                  std::invalid_argument);  // anchor off circle
  CHECK_THROWS_AS(make_rect(p, v, 1e-2, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(make_rect(p, v, 1e-3, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(make_rect(p, v, 1e-3, 1e-2, 0.5), std::invalid_argument);
}

TEST_CASE("rect_contains anchor and far point, conjunction oracle") {
  const ParamPoint p{0, 0, 0.5};
  const RealPoint v = on_circle(p, 1.0);
  const Rect R = make_rect(p, v, 1e-3, 1e-2);
  CHECK(rect_contains(R, v));
  CHECK(!rect_contains(R, on_circle(p, 1.0 + 10 * 1e-2 / p.r)));
  // Conjunction of the two defining predicates, evaluated independently.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double theta = 1.0 + 0.1 * u(rng);
    const double rad = p.r + 3e-3 * u(rng);
    const RealPoint w{p.x1 + rad * std::cos(theta),
                      p.x2 + rad * std::sin(theta)};
    const double dx = w.x - v.x, dy = w.y - v.y;
    const bool ann = std::abs(std::hypot(w.x - p.x1, w.y - p.x2) - p.r) <=
                     R.dilation * R.delta * (1.0 + constants::geo_tol);
    const bool ball = std::sqrt(dx * dx + dy * dy) <=
                      R.dilation * R.sigma * (1.0 + constants::geo_tol);
    CHECK(rect_contains(R, w) == (ann && ball));
  }
}

TEST_CASE("rect_dilate identity, composition, monotonicity") {
  const ParamPoint p{0.1, 0, 0.7};
  const Rect R = make_rect(p, on_circle(p, 2.0), 1e-3, 1e-2);
  const Rect R1 = rect_dilate(R, 1.0);
  CHECK(R1.dilation == R.dilation);
  const Rect R6a = rect_dilate(rect_dilate(R, 2.0), 3.0);
  const Rect R6b = rect_dilate(R, 6.0);
  CHECK(R6a.dilation == doctest::Approx(R6b.dilation));
  CHECK_THROWS_AS(rect_dilate(R, 0.5), std::invalid_argument);
  // Monotonicity of membership under dilation.
  for (const RealPoint& w : rect_sample(R)) {
    CHECK(rect_contains(R, w));
    CHECK(rect_contains(rect_dilate(R, 3.0), w));
  }
}

TEST_CASE("rect_subset trivial and nested cases") {
  const ParamPoint p{0, 0, 0.5};
  const RealPoint v = on_circle(p, 0.7);
  const Rect R = make_rect(p, v, 1e-3, 4e-2);
  CHECK(rect_subset(R, R));
  const Rect half = make_rect(p, v, 1e-3, 2e-2);
  CHECK(rect_subset(half, R));
  // Far-apart circles: not a subset; dense oracle agrees.
  const ParamPoint q{0.2, 0.1, 0.9};
  const Rect S = make_rect(q, on_circle(q, 3.0), 1e-3, 4e-2);
  CHECK(!rect_subset(R, S));
  CHECK(!oracle_rect_subset(R, S));
  CHECK(oracle_rect_subset(half, R));
}

TEST_CASE("comparable: identity, far anchors, scale mismatch") {
  const ParamPoint p{0, 0, 0.5};
  const double sigma = 1e-2;
  const Rect R = make_rect(p, on_circle(p, 0.0), 1e-3, sigma);
  CHECK(comparable(R, R, 1.0));
  const Rect far = make_rect(p, on_circle(p, 10.0 * sigma / p.r), 1e-3, sigma);
  CHECK(!comparable(R, far, 2.0));
  const Rect other = make_rect(p, on_circle(p, 0.0), 1e-3, 2 * sigma);
  CHECK_THROWS_AS(comparable(R, other, 2.0), std::invalid_argument);
}

TEST_CASE("comparable matches dense oracle on cover pairs") {
  const ParamPoint p{0, 0, 0.6};
  const ParamPoint q{0.22, 0.08, 0.8};  // crossing pair: |r-r'| < |x-x'|
  const double delta = std::ldexp(1.0, -8);
  const std::vector<Rect> cover = intersection_cover(p, q, delta);
  REQUIRE(!cover.empty());
  for (size_t i = 0; i < cover.size(); ++i)
    for (size_t j = i + 1; j < cover.size(); ++j) {
      const bool fast = comparable(cover[i], cover[j], 2.0);
      const bool dense = oracle_rect_subset(cover[i], rect_dilate(cover[j], 2.0)) ||
                         oracle_rect_subset(cover[j], rect_dilate(cover[i], 2.0));
      CHECK(fast == dense);
    }
}

TEST_CASE("intersection_scale formula") {
  const double d = std::ldexp(1.0, -10);
  CHECK(intersection_scale(1, 1, d) ==
        doctest::Approx(d / ((1 + d))));
  CHECK(intersection_scale(d, 1, d) ==
        doctest::Approx(d / std::sqrt(2 * d * (1 + d))));
  CHECK(intersection_scale(1, 1, 0) == 0.0);
}

TEST_CASE("intersection_cover transversal pair") {
  const ParamPoint p{0, 0, 0.6};
  const ParamPoint q{0.2, 0, 0.7};
  const double delta = std::ldexp(1.0, -8);
  const std::vector<Rect> cover = intersection_cover(p, q, delta);
  REQUIRE(cover.size() >= 2);
  CHECK(cover.size() <= static_cast<size_t>(constants::k_cover));
  // Each rectangle contains an analytic intersection point of the circles.
  const double d = 0.2;
  const double a = (d * d + p.r * p.r - q.r * q.r) / (2 * d);
  const double h = std::sqrt(p.r * p.r - a * a);
  const RealPoint w1{a, h}, w2{a, -h};
  bool hit1 = false, hit2 = false;
  for (const Rect& R : cover) {
    hit1 = hit1 || rect_contains(R, w1);
    hit2 = hit2 || rect_contains(R, w2);
  }
  CHECK(hit1);
  CHECK(hit2);
}

TEST_CASE("intersection_cover tangent pair scale and degenerate inputs") {
  const ParamPoint p{0, 0, 0.5};
  const ParamPoint q{0.3, 0, 0.8};  // internally tangent
  const double delta = std::ldexp(1.0, -8);
  const std::vector<Rect> cover = intersection_cover(p, q, delta);
  REQUIRE(!cover.empty());
  CHECK(cover.size() <= static_cast<size_t>(constants::k_cover));
  const double t = param_distance(p, q);
  const double want = intersection_scale(tangency(p, q), t, delta);
  for (const Rect& R : cover)
    CHECK(R.sigma >= want * (1.0 - 1e-9));  // stated scale (may stretch)
  CHECK(cover.front().sigma < 4 * std::sqrt(delta / t));

  CHECK_THROWS_WITH_AS(intersection_cover(p, p, delta), "degenerate pair",
                       std::invalid_argument);
  // Concentric with radii farther than 2*delta apart: disjoint annuli.
  CHECK(intersection_cover(ParamPoint{0, 0, 0.5}, ParamPoint{0, 0, 0.9}, delta)
            .empty());
}

TEST_CASE("intersection_cover has no sampled escapes on random pairs") {
  std::mt19937_64 rng(4);
  const double delta = std::ldexp(1.0, -7);
  int nonempty = 0;
  for (int i = 0; i < 300; ++i) {
    const ParamPoint p = random_domain_point(rng);
    const ParamPoint q = random_domain_point(rng);
    if (param_distance(p, q) < 1e-6) continue;
    const std::vector<Rect> cover = intersection_cover(p, q, delta);
    CHECK(cover.size() <= static_cast<size_t>(constants::k_cover));
    if (!cover.empty()) ++nonempty;
    CHECK(!oracle_cover_escape(p, q, delta, cover));
  }
  CHECK(nonempty > 100);
}

TEST_CASE("shared_point_rect") {
  const ParamPoint p{0, 0, 0.5};
  const RealPoint v = on_circle(p, 0.2);
  const double delta = std::ldexp(1.0, -10);
  CHECK(shared_point_rect(p, 1.0, delta, v).sigma ==
        doctest::Approx(std::sqrt(delta)));
  CHECK(shared_point_rect(p, delta, delta, v).sigma == doctest::Approx(1.0));
  CHECK_THROWS_AS(shared_point_rect(p, 0.0, delta, v), std::invalid_argument);
}

TEST_CASE("shared_point_rect sits inside every annulus of a tangent family") {
  // Circles through a common point v with t-separated parameters.
  const double delta = std::ldexp(1.0, -10);
  const double t = 0.05;
  const RealPoint v{0.5, 0.0};
  std::vector<ParamPoint> family;
  for (int i = 0; i < 4; ++i) {
    const double r = 0.5 + t * i;
    family.push_back(ParamPoint{v.x - r, 0.0, r});  // passes through v
  }
  const Rect R = shared_point_rect(family[0], t, delta, v);
  for (const ParamPoint& q : family) {
    bool ok = true;
    for (const RealPoint& w : rect_sample(R))
      ok = ok && annulus_contains(q, 64 * delta, w);
    CHECK(ok);
  }
}

TEST_CASE("intersecting dilates are nested at k_flip * C^4") {
  std::mt19937_64 rng(5);
  const double delta = std::ldexp(1.0, -8);
  int tested = 0;
  for (int i = 0; i < 400 && tested < 60; ++i) {
    const ParamPoint p = random_domain_point(rng);
    const ParamPoint q = random_domain_point(rng);
    if (param_distance(p, q) < 1e-3) continue;
    const std::vector<Rect> cover = intersection_cover(p, q, delta);
    if (cover.size() < 2) continue;
    for (const double C : {1.0, 2.0, 4.0}) {
      const Rect A = rect_dilate(cover[0], C);
      const Rect B = rect_dilate(cover[1], C);
      if (!rects_intersect(A, B)) continue;
      ++tested;
      const double big = constants::k_flip * C * C * C * C;
      CHECK(rect_subset(A, rect_dilate(cover[1], big * C)));
    }
  }
  CHECK(tested > 0);
}
