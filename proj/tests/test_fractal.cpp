#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "flab/constants.hpp"
#include "flab/fractal.hpp"

using namespace flab;

namespace {

// Full delta-grid of the unit cube restricted to a sub-box.
std::vector<ParamPoint> grid_box(Scale delta, double x_len, double y_len,
                                 double r_len) {
  const double d = delta.value();
  std::vector<ParamPoint> out;
  for (double x = d / 2; x < x_len; x += d)
    for (double y = d / 2; y < y_len; y += d)
      for (double r = d / 2; r < r_len; r += d)
        out.push_back(ParamPoint{x, y, r});
  return out;
}

}  // namespace

TEST_CASE("check_delta_s_set: singleton, segment grid, concentration") {
  const SpreadReport single =
      check_delta_s_set({ParamPoint{0.1, 0.1, 0.6}}, Scale{6}, 1.0, 1.0);
  CHECK(single.is_set);
  CHECK(single.min_C == doctest::Approx(1.0));

  // Full delta-grid of a unit segment at s=1: min_C <= 2.
  const Scale delta{6};
  std::vector<ParamPoint> seg;
  for (double x = delta.value() / 2; x < 1.0; x += delta.value())
    seg.push_back(ParamPoint{x, 0.1, 0.6});
  const SpreadReport rep = check_delta_s_set(seg, delta, 1.0, 2.0);
  CHECK(rep.is_set);
  CHECK(rep.min_C <= 2.0);

  // Concentration in a cube of side sqrt(delta) at s=1 is detected with a
  // witness near scale sqrt(delta).
  const Scale fine{8};
  const double side = std::sqrt(fine.value());
  const std::vector<ParamPoint> packed = grid_box(fine, side, side, side);
  const SpreadReport conc = check_delta_s_set(packed, fine, 1.0, 2.0);
  CHECK(!conc.is_set);
  CHECK(conc.min_C > 4.0);  // ~ delta^{-1/2} * sqrt(delta) / ... > O(1)
  CHECK(conc.witness_scale.k <= fine.k);
  CHECK(conc.witness_scale.k >= 3);

  CHECK_THROWS_AS(check_delta_s_set({}, Scale{4}, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_delta_s_set(seg, delta, 4.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("check_delta_s_set: min_C is self-consistent and monotone in s") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ParamPoint> P;
  for (int i = 0; i < 300; ++i) P.push_back({u(rng), u(rng), u(rng)});
  const SpreadReport rep = check_delta_s_set(P, Scale{6}, 0.7, 1.0);
  CHECK(check_delta_s_set(P, Scale{6}, 0.7, rep.min_C).is_set);
  // A (delta,s,C)-set is a (delta,t,C)-set for t <= s.
  const double cs = check_delta_s_set(P, Scale{6}, 0.7, 1.0).min_C;
  const double ct = check_delta_s_set(P, Scale{6}, 0.4, 1.0).min_C;
  CHECK(ct <= cs * (1 + 1e-12));
}

TEST_CASE("check_sigma_s_arcset mirrors the cube check in 1-D") {
  std::vector<std::int64_t> full;
  for (int i = 0; i < 64; ++i) full.push_back(i);
  CHECK(check_sigma_s_arcset(full, Scale{6}, 1.0, 2.0).is_set);
  // All indices packed in one dyadic block of 8: concentration at s=1.
  std::vector<std::int64_t> packed{0, 1, 2, 3, 4, 5, 6, 7};
  CHECK(!check_sigma_s_arcset(packed, Scale{6}, 1.0, 2.0).is_set);
  CHECK_THROWS_AS(check_sigma_s_arcset({}, Scale{6}, 1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("uniformize: already-uniform grid is kept whole") {
  const std::vector<ParamPoint> P = grid_box(Scale{4}, 1.0, 1.0, 1.0);
  const std::vector<ParamPoint> out = uniformize(P, 2, 2);
  CHECK(out.size() == P.size());
}

TEST_CASE("uniformize: singleton") {
  const std::vector<ParamPoint> out =
      uniformize({ParamPoint{0.3, 0.3, 0.3}}, 2, 3);
  REQUIRE(out.size() == 1);
  const BranchingProfile prof =
      branching_profile(out, {Scale{2}, Scale{4}, Scale{6}});
  for (long n : prof.counts) CHECK(n == 1);
}

TEST_CASE("uniformize: random sets, exact uniformity and mass bound") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int T = 2 + (trial % 2), m = 3 + (trial % 2);
    std::vector<ParamPoint> P;
    for (int i = 0; i < 200; ++i) P.push_back({u(rng), u(rng), u(rng)});
    const std::vector<ParamPoint> out = uniformize(P, T, m);
    const Scale delta{m * T};
    std::vector<Scale> scales;
    for (int j = 1; j <= m; ++j) scales.push_back(Scale{j * T});
    CHECK_NOTHROW(branching_profile(out, scales));
    CHECK(static_cast<double>(covering_count(out, delta)) >=
          std::pow(4.0 * T, -m) * covering_count(P, delta));
  }
}

TEST_CASE("branching_profile: full grid, error on non-uniform input") {
  const std::vector<ParamPoint> P = grid_box(Scale{2}, 1.0, 1.0, 1.0);
  const BranchingProfile prof = branching_profile(P, {Scale{1}, Scale{2}});
  REQUIRE(prof.counts.size() == 2);
  CHECK(prof.counts[0] == 8);
  CHECK(prof.counts[1] == 8);

  std::vector<ParamPoint> bad = P;
  bad.push_back(ParamPoint{1.1, 0.1, 0.1});  // lonely extra coarse cube
  CHECK_THROWS_WITH_AS(branching_profile(bad, {Scale{1}, Scale{2}}),
                       "branching_profile: non-uniform at scale 2^-1",
                       std::runtime_error);
  CHECK_THROWS_AS(branching_profile({}, {Scale{1}}), std::invalid_argument);
}

TEST_CASE("gen_cantor_params: spread, cardinality, determinism") {
  const Scale delta{8};
  for (double s : {0.25, 0.5, 1.0}) {
    const std::vector<ParamPoint> P = gen_cantor_params(s, delta, 7);
    REQUIRE(!P.empty());
    const SpreadReport rep = check_delta_s_set(P, delta, s, constants::k_gen);
    CHECK(rep.is_set);
    // Nonempty (delta,s,C)-set cardinality lower bound.  The factor 2 covers
    // the single-occupancy convention of the spread check (cubes holding one
    // delta-cube never constrain, so min_C can undershoot by one constraint).
    CHECK(static_cast<double>(covering_count(P, delta)) >=
          std::pow(delta.value(), -s) / (2.0 * rep.min_C));
    // Deterministic in the seed.
    const std::vector<ParamPoint> Q = gen_cantor_params(s, delta, 7);
    REQUIRE(Q.size() == P.size());
    for (size_t i = 0; i < P.size(); ++i) {
      CHECK(P[i].x1 == Q[i].x1);
      CHECK(P[i].r == Q[i].r);
    }
  }
  // s = 1: arithmetic-progression-like, full density across [1/2, 1).
  CHECK(gen_cantor_params(1.0, delta, 3).size() == 128);
  // s near 0: O(1) cardinality.
  CHECK(gen_cantor_params(0.0, delta, 3).size() <= 2);
  CHECK_THROWS_AS(gen_cantor_params(1.5, delta, 3), std::invalid_argument);
}

TEST_CASE("gen_cantor_arcs: spread fibers, constant M, determinism") {
  const ParamPoint p{0.05, -0.02, 0.7};
  const Scale delta{8};
  for (double t : {0.5, 1.0}) {
    const std::vector<Arc> f1 = gen_cantor_arcs(p, t, delta, 5);
    const std::vector<Arc> f2 =
        gen_cantor_arcs(ParamPoint{-0.1, 0.0, 0.55}, t, delta, 9);
    CHECK(f1.size() == f2.size());  // M depends only on (s, delta)
    std::vector<std::int64_t> idx;
    for (const Arc& a : f1) idx.push_back(a.index);
    CHECK(check_sigma_s_arcset(idx, delta, t, constants::k_gen).is_set);
    const std::vector<Arc> f3 = gen_cantor_arcs(p, t, delta, 5);
    REQUIRE(f3.size() == f1.size());
    for (size_t i = 0; i < f1.size(); ++i) CHECK(f1[i].index == f3[i].index);
  }
  CHECK(gen_cantor_arcs(p, 0.0, delta, 5).size() <= 2);
}

TEST_CASE("invert_line known images and sample-point oracle") {
  const ParamPoint c1 = invert_line(1, 0, 0.5);  // x = 1/2 -> circle((1,0),1)
  CHECK(c1.x1 == doctest::Approx(1.0));
  CHECK(c1.x2 == doctest::Approx(0.0));
  CHECK(c1.r == doctest::Approx(1.0));
  const ParamPoint c2 = invert_line(1, 0, 1.0);  // x = 1 -> circle((1/2,0),1/2)
  CHECK(c2.x1 == doctest::Approx(0.5));
  CHECK(c2.r == doctest::Approx(0.5));

  // Five line samples mapped through z -> 1/z land on the returned circle.
  auto check_samples = [](double a, double b, double c) {
    const ParamPoint img = invert_line(a, b, c);
    for (double t : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
      // Line point: c*(a,b) + t*(-b,a).
      const double x = c * a - t * b, y = c * b + t * a;
      const double n2 = x * x + y * y;
      const double ix = x / n2, iy = -y / n2;
      CHECK(std::hypot(ix - img.x1, iy - img.x2) ==
            doctest::Approx(img.r).epsilon(1e-12));
    }
    // Image passes through the origin.
    CHECK(std::hypot(img.x1, img.x2) == doctest::Approx(img.r));
  };
  check_samples(1, 0, 0.5);
  check_samples(0, 1, 2.0);
  check_samples(std::sqrt(0.5), std::sqrt(0.5), -1.3);

  // Rotating the line rotates the image circle.
  const double phi = 0.37;
  const ParamPoint base = invert_line(1, 0, 0.8);
  const ParamPoint rot =
      invert_line(std::cos(phi), std::sin(phi), 0.8);
  CHECK(rot.r == doctest::Approx(base.r));
  CHECK(rot.x1 == doctest::Approx(base.x1 * std::cos(phi) +
                                  base.x2 * std::sin(phi)));

  CHECK_THROWS_AS(invert_line(1, 0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(invert_line(2, 0, 1.0), std::invalid_argument);
}
