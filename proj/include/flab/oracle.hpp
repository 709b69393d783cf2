#pragma once

#include <vector>

#include "flab/dyadic.hpp"
#include "flab/geom.hpp"
#include "flab/multiplicity.hpp"

namespace flab {

// Brute-force reference implementations used by tests.  These never call the
// operations they check: membership predicates, skeleton grouping, and cube
// indexing are re-coded here with separate arithmetic (explicit squared
// distances, set- instead of hash-based grouping, double loops).

// Dense one-sided containment check at `multiplier` times the default
// sampling resolution (multiplier >= 4).
bool oracle_rect_subset(const Rect& R1, const Rect& R2, int multiplier = 16);

// Exact double-loop count of pairs with |anchor - w| <= delta.
long oracle_total_multiplicity(const std::vector<PairEntry>& omega_set,
                               const RealPoint& w, Scale delta);

// Partial multiplicity recomputed from scratch: skeleton grouping by sorted
// unique keys, band predicates and rectangle intersection re-coded.
long oracle_partial_multiplicity(const std::vector<PairEntry>& G,
                                 const PairEntry& omega, Scale delta,
                                 const NeighborhoodSpec& spec, double C,
                                 const SamplingSpec& sampling = {});

// Distinct delta-cube count via an ordered set of index triples.
long oracle_covering_count(const std::vector<ParamPoint>& points, Scale delta);

// True iff some point of S^delta(p) cap S^delta(q), scanned at angular and
// radial step delta/8 inside the conservative analytic angle windows, lies
// in no rectangle of `cover` (an escape).  Used to verify intersection_cover.
bool oracle_cover_escape(const ParamPoint& p, const ParamPoint& q,
                         double delta, const std::vector<Rect>& cover);

struct SlopeFit {
  double slope = 0.0;     // of log2(count) against the scale exponent
  double residual = 0.0;  // root-mean-square residual of the fit
};

// Least-squares fit of log2(count) vs delta exponent; needs >= 3 scales and
// positive counts.
SlopeFit oracle_dimension_slope(const std::vector<int>& delta_exps,
                                const std::vector<long>& counts);

}  // namespace flab
