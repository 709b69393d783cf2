#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flab/dyadic.hpp"
#include "flab/geom.hpp"

namespace flab {

// Result of a non-concentration (spread) check.  When is_set is false the
// witness cube at witness_scale violates  count <= C * r^s * total.
struct SpreadReport {
  bool is_set = true;
  std::optional<DyadicCube> witness_cube;
  Scale witness_scale{0};
  double min_C = 1.0;
};

struct BranchingProfile {
  std::vector<Scale> scales;
  std::vector<long> counts;
};

// Checks the dyadic-cube spread condition: for every dyadic r in [delta,1]
// and every r-cube Q hit by P,  |P cap Q|_delta <= C * r^s * |P|_delta.
// Cubes holding a single delta-cube never constrain (a singleton is a
// spread set with min_C = 1); the cube check implies the ball version up to
// a factor 3^d from adjacent cubes.
SpreadReport check_delta_s_set(const std::vector<ParamPoint>& P, Scale delta,
                               double s, double C);

// Same condition for a fiber of sigma-arcs on one circle, using dyadic
// blocks of arc indices as the one-dimensional cubes.
SpreadReport check_sigma_s_arcset(const std::vector<std::int64_t>& arc_indices,
                                  Scale sigma, double s, double C);

// Extracts a {2^{-jT}}_{j=1..m}-uniform subset by coarse-to-fine
// pigeonholing of branching counts into dyadic bands; the output satisfies
// |P'|_delta >= (4T)^{-m} |P|_delta with delta = 2^{-mT} (asserted).
std::vector<ParamPoint> uniformize(const std::vector<ParamPoint>& P, int T,
                                   int m);

// Constant branching numbers of a uniform set; throws naming the first
// scale whose counts are not constant.
BranchingProfile branching_profile(const std::vector<ParamPoint>& P,
                                   const std::vector<Scale>& scales);

// Deterministic Cantor-type generator in the r-coordinate: branching
// ceil(2^{2s}) per two-bit level, centers jittered below delta/4 by seed.
std::vector<ParamPoint> gen_cantor_params(double s, Scale delta,
                                          std::uint64_t seed);

// Fiber generator: a spread set of delta-level arcs on S(p) of a cardinality
// M that depends only on (s, delta).
std::vector<Arc> gen_cantor_arcs(const ParamPoint& p, double s, Scale delta,
                                 std::uint64_t seed);

// Image of the line {ax + by = c} (a^2+b^2 = 1, c != 0) under complex
// inversion z -> 1/z: a circle through the origin.
ParamPoint invert_line(double a, double b, double c);

}  // namespace flab
