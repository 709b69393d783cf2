#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flab/configs.hpp"
#include "flab/dyadic.hpp"
#include "flab/geom.hpp"

namespace flab {

// One configuration pair (p, v): a circle and an arc on it, with the arc
// midpoint cached as the pair's planar anchor.
struct PairEntry {
  ParamPoint p;
  Arc v;
  RealPoint anchor;
};

std::vector<PairEntry> pairs_of(const Configuration& omega);
std::vector<PairEntry> pairs_of(const Configuration& omega, const PairSubset& G);

// Tangency/distance band around a query pair.
struct NeighborhoodSpec {
  Scale lambda{0};
  Scale t{0};
  double rho_lambda = 1.0;
  double rho_t = 1.0;
};

// Count of pairs whose anchor lies within delta of w (cardinality
// convention for separated pair sets).
long total_multiplicity(const std::vector<PairEntry>& omega_set,
                        const RealPoint& w, Scale delta);

// Indices of G whose base circle satisfies both band conditions relative to
// omega's base circle.  The tangency lower bound is dropped (one-sided mode)
// when lambda <= rho_lambda * delta.
std::vector<int> neighborhood(const std::vector<PairEntry>& G,
                              const PairEntry& omega,
                              const NeighborhoodSpec& spec, Scale delta);

// Partial multiplicity: counts (delta,sigma)-skeleton pairs of G inside the
// neighborhood whose C-dilated rectangles meet the C-dilate of omega's
// rectangle, at sigma = round_up_dyadic(delta / sqrt(lambda * t)).
long partial_multiplicity(const std::vector<PairEntry>& G,
                          const PairEntry& omega, Scale delta,
                          const NeighborhoodSpec& spec, double C,
                          const SamplingSpec& sampling = {});

struct MultCell {
  int lambda_exp = 0;
  int t_exp = 0;
  long count = 0;
};

struct MultiplicityReport {
  long total = 0;          // total multiplicity at 2*delta
  std::vector<MultCell> cells;
  long sum_partial = 0;    // includes the degenerate diagonal cell
  long slack = 0;          // same-circle arc collisions (documented)
  bool holds_strict = false;  // total <= sum_partial
  bool holds = false;         // total <= sum_partial + slack (the contract)
};

// Dyadic decomposition of the total multiplicity over a delta^{-eps}-dense
// grid of (lambda, t) bands; partial counts use dilation C (>= k_dec).
// Same-circle pairs are handled by a directly counted degenerate cell at
// lambda = t = delta; the contract inequality is asserted.
MultiplicityReport decompose_total(const std::vector<PairEntry>& G,
                                   const PairEntry& omega, Scale delta,
                                   double eps, double C,
                                   const SamplingSpec& sampling = {});

// Skeleton-parent sandwich: m(parent, C/A) <= m(omega, C) <= m(parent, A*C)
// for the (delta,sigma)-skeleton parent of omega.  Requires C >= A >= 1.
bool parent_transfer_check(const std::vector<PairEntry>& G,
                           const PairEntry& omega, Scale delta,
                           const NeighborhoodSpec& spec, double C, double A,
                           const SamplingSpec& sampling = {});

bool is_almost_bipartite(const std::vector<ParamPoint>& W,
                         const std::vector<ParamPoint>& B, Scale delta,
                         Scale t, double eps);

struct TypeSpec {
  std::vector<ParamPoint> W;
  std::vector<ParamPoint> B;
  double eps = 0.0;
  bool restricted = false;
  std::optional<Scale> lambda;  // restricted mode tangency band
  std::optional<Scale> sigma;   // fiber arc level (restricted mode)
  std::vector<std::vector<std::int64_t>> fibersW;
  std::vector<std::vector<std::int64_t>> fibersB;
};

// Unrestricted: (m, n) = how many circles of W (resp. B) contain R inside
// their delta^{1-eps}-annulus.  Restricted: greedy witness selection over the
// tangency-band + fiber-union clauses; a documented lower bound on (m, n).
std::pair<long, long> rect_type(const Rect& R, const TypeSpec& spec,
                                Scale delta, const SamplingSpec& sampling = {});

}  // namespace flab
