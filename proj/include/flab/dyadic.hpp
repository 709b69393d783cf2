#pragma once

#include <cstdint>
#include <vector>

#include "flab/geom.hpp"

namespace flab {

// A dyadic scale 2^{-k}, k >= 0.
struct Scale {
  int k = 0;
  double value() const;
  friend bool operator==(const Scale& a, const Scale& b) { return a.k == b.k; }
  friend bool operator!=(const Scale& a, const Scale& b) { return a.k != b.k; }
};

// Smallest dyadic 2^{-k} >= s (non-dyadic scale arithmetic rounds up).
Scale scale_round_up(double s);

// Half-open dyadic cube [ix,ix+1) x [iy,iy+1) x [ir,ir+1) times 2^{-k}.
struct DyadicCube {
  int k = 0;
  std::int64_t ix = 0, iy = 0, ir = 0;
  friend bool operator==(const DyadicCube& a, const DyadicCube& b) {
    return a.k == b.k && a.ix == b.ix && a.iy == b.iy && a.ir == b.ir;
  }
};

DyadicCube cube_of(const ParamPoint& p, Scale delta);
bool cube_contains(const DyadicCube& Q, const ParamPoint& p);
DyadicCube cube_parent(const DyadicCube& Q, Scale coarser);
ParamPoint cube_center(const DyadicCube& Q);

// Hashable key for cube indices (valid for |index| < 2^20 per axis, k < 64).
std::uint64_t cube_key(const DyadicCube& Q);

// Number of distinct delta-cubes hit by a set of parameter points.
long covering_count(const std::vector<ParamPoint>& points, Scale delta);
// Planar variant (squares in R^2).
long covering_count_planar(const std::vector<RealPoint>& points, Scale delta);

// Number of planar delta-squares met by the circle S(p), via traversal at
// angular step <= delta/(4r).  Within a factor 2 of the delta/64-step walk.
long covering_count_circle(const ParamPoint& p, Scale delta);

// Half-open dyadic arc of S(p): angles [index*2*pi*sigma, (index+1)*2*pi*sigma),
// measured counterclockwise from the positive x-axis.
struct Arc {
  ParamPoint circle;
  int level = 0;           // sigma = 2^{-level}
  std::int64_t index = 0;  // in [0, 2^level)
  friend bool operator==(const Arc& a, const Arc& b) {
    return a.level == b.level && a.index == b.index;
  }
};

std::vector<Arc> arcs(const ParamPoint& p, Scale sigma);
Arc arc_of(const ParamPoint& p, Scale sigma, const RealPoint& w);
RealPoint arc_midpoint(const Arc& a);

// True iff the ray from center(bp) through w falls in the arc's angular
// interval.  w = center rejected.
bool cone_contains(const ParamPoint& bp, const Arc& a, const RealPoint& w);

// The unique Sigma-arc of the parent cube's center circle whose cone
// contains the child arc's midpoint.  The skeleton parent relation is
// "cube_of(p) nests in bp AND parent_arc matches".
Arc parent_arc(const Arc& child, const DyadicCube& bp, Scale Sigma);

}  // namespace flab
