#pragma once

#include <vector>

#include "flab/constants.hpp"

namespace flab {

struct RealPoint {
  double x = 0.0;
  double y = 0.0;
};

// A circle S(p) with center (x1,x2) and radius r, identified with the point
// (x1,x2,r) of parameter space.  The reference domain keeps centers within
// 1/4 of the origin and radii in [1/2,1].
struct ParamPoint {
  double x1 = 0.0;
  double x2 = 0.0;
  double r = 1.0;

  RealPoint center() const { return {x1, x2}; }
};

// Deterministic grid resolution used by sampled containment predicates.
struct SamplingSpec {
  int n_angular = 64;
  int n_radial = 8;
};

// Curvilinear rectangle R^delta_sigma(p,v) = S^delta(p) cap B(v,sigma),
// together with its dilation C (the C-dilate is R^{C delta}_{C sigma}).
struct Rect {
  ParamPoint p;
  RealPoint v;       // anchor, lies on S(p) up to geo_tol
  double delta = 0;  // thickness
  double sigma = 0;  // diameter scale, delta <= sigma <= 1
  double dilation = 1.0;
};

// Validates the Rect invariants (anchor on circle, delta <= sigma <= 1,
// dilation >= 1) and returns the rectangle.  Throws std::invalid_argument.
Rect make_rect(const ParamPoint& p, const RealPoint& v, double delta,
               double sigma, double dilation = 1.0);

double param_distance(const ParamPoint& p, const ParamPoint& q);

// Tangency parameter  || |x-x'| - |r-r'| ||.  Zero exactly for internally
// tangent pairs; pairs in the reference domain are never externally tangent.
double tangency(const ParamPoint& p, const ParamPoint& q);

bool in_domain(const ParamPoint& p);

// dist(w, S(p)) <= delta.
bool annulus_contains(const ParamPoint& p, double delta, const RealPoint& w);

// Membership in the dilation-scaled rectangle: annulus condition at
// dilation*delta and |w - v| <= dilation*sigma.  `slack` loosens both
// thresholds multiplicatively (used by sampled subset tests).
bool rect_contains(const Rect& R, const RealPoint& w, double slack = 1.0);

Rect rect_dilate(const Rect& R, double C);  // C >= 1, multiplies dilation

// Deterministic member-point grid of R: angular window around the anchor
// crossed with radial offsets, filtered to actual members.
std::vector<RealPoint> rect_sample(const Rect& R, const SamplingSpec& spec = {});

// One-sided sampled containment: every grid member of R1 lies in R2.
bool rect_subset(const Rect& R1, const Rect& R2, const SamplingSpec& spec = {});

// Sampled overlap test with a center-distance prefilter.
bool rects_intersect(const Rect& R1, const Rect& R2,
                     const SamplingSpec& spec = {});

// One-sided comparability criterion at dilation C; requires matching
// (delta, sigma) and throws std::invalid_argument otherwise.
bool comparable(const Rect& R1, const Rect& R2, double C,
                const SamplingSpec& spec = {});

// delta / sqrt((lambda+delta) * (t+delta)): the diameter scale at which the
// intersection of two delta-annuli at tangency lambda and distance t is
// covered by boundedly many rectangles.
double intersection_scale(double lambda, double t, double delta);

// Covers S^delta(p) cap S^delta(q) by at most k_cover rectangles of scale
// intersection_scale(tangency, distance, delta), anchored on S(p).
// Transversal pairs get one rectangle per analytic intersection point;
// near-tangent pairs get anchors spread along the tangency arcs.  Identical
// circles -> std::invalid_argument("degenerate pair"); disjoint annuli ->
// empty list.
std::vector<Rect> intersection_cover(const ParamPoint& p, const ParamPoint& q,
                                     double delta);

// R^delta_Sigma(p, v) with Sigma = sqrt(delta/t): the rectangle around a
// point shared by a t-separated tangent family.  t <= 0 rejected; v must lie
// on S(p) up to geo_tol.
Rect shared_point_rect(const ParamPoint& p, double t, double delta,
                       const RealPoint& v);

}  // namespace flab
