#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flab/dyadic.hpp"
#include "flab/geom.hpp"

namespace flab {

// A pairwise C-incomparable family at shared (delta, sigma).
struct RectFamily {
  std::vector<Rect> rects;
  double incomparability = 1.0;
};

// Left/right-hand sides of an extraction bound.
struct BoundReport {
  int delta_exp = 0;
  long lhs = 0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs when rhs > 0
};

// Greedy maximal pairwise C-incomparable subfamily: scan in input order,
// keep a rectangle iff it is C-incomparable with every kept one.  Every
// discarded rectangle is C-comparable to a survivor.  Requires shared
// (delta, sigma); the output family is re-verified pairwise (up to 10^4
// rectangles) before returning.
RectFamily max_incomparable_subset(const std::vector<Rect>& rects, double C,
                                   const SamplingSpec& sampling = {});

// Density bound: every rectangle of the family must lie in dilate(big, A)
// (checked via rect_subset; violations rejected).  lhs = family size,
// rhs = A^10.
BoundReport density_check(const RectFamily& fam, const Rect& big, double A,
                          const SamplingSpec& sampling = {});

// delta^{-k_w*eps} * [ (W*B/(m*n))^{3/4} + W/m + B/n ].
double wolff_rhs(long W_size, long B_size, long m, long n, Scale delta,
                 double eps);

// delta^{-eta} * [ (W*B/(m*n))^{3/4}*(X*Y)^{1/2} + (W/m)*X*Y + (B/n)*X*Y ].
// Degenerates to the wolff_rhs bracket at X = Y = 1.
double thm4_rhs(long W_size, long B_size, long m, long n, long X_lambda,
                long Y_lambda, Scale delta, double eta);

// Two tangent circle families on opposite sides of a flat window: lambda/delta
// circles tangent to the x-axis from above (radii stepped by delta above 1)
// and lambda/delta circles tangent to y = -lambda from above (radii stepped by
// delta above 1/2).  Every cross pair has tangency in [lambda, 2*lambda] and
// meets transversally near the origin; rects holds one
// (delta, delta/sqrt(lambda))-rectangle per pair, anchored at the crossing
// point, all inside dilate(window, k_window).
struct Ex1Family {
  std::vector<ParamPoint> W;
  std::vector<ParamPoint> B;
  std::vector<Rect> rects;  // one per (i, j) pair, index i * N + j
  Rect window;              // the (lambda, sqrt(lambda)) target rectangle
};

// Requires delta <= lambda <= 1/4 and lambda/delta >= 4.
Ex1Family gen_example_ex1(Scale delta, Scale lambda);

// Experiment scenario (parsed from flat key=value config files).
struct ScenarioSpec {
  std::string generator;        // "ex1", "bipartite", "cantor", "grid", "inversion"
  std::vector<int> delta_exps;  // delta = 2^{-exp}
  int lambda_exp = 2;
  double eps = 0.0;
  double eta = 0.0;
  long m = 1;
  long n = 1;
  std::uint64_t seed = 0;
};

// For each delta: build a (W, B) circle split, enumerate candidate
// rectangles (intersection covers of cross pairs in the tangency band, or
// the ex1 pair rectangles), keep those of type >= (m, n), extract a maximal
// incomparable subfamily, and compare against the bound right-hand side.
std::vector<BoundReport> tangency_experiment(const ScenarioSpec& scenario);

}  // namespace flab
