#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flab/dyadic.hpp"
#include "flab/fractal.hpp"
#include "flab/geom.hpp"

namespace flab {

// A (delta, sigma, s, C, M)-configuration: a spread set of circle parameters
// where each circle carries a spread fiber of exactly M sigma-level arcs.
struct Configuration {
  Scale delta{8};
  Scale sigma{8};
  double s = 1.0;
  double C = 1.0;
  long M = 1;
  std::vector<ParamPoint> support;
  std::vector<std::vector<std::int64_t>> fibers;  // sorted arc indices

  long pair_count() const;
};

struct ValidationReport {
  bool ok = true;
  std::string detail;            // first violation, names the offending part
  SpreadReport support_report;   // spread of the support
  double worst_fiber_C = 1.0;    // max fiber min_C
};

ValidationReport validate(const Configuration& omega);

// A subset G of the configuration's pairs: selected arc indices per support
// index (parallel to Configuration::support).
using PairSubset = std::vector<std::vector<std::int64_t>>;

long subset_size(const PairSubset& G);
PairSubset full_subset(const Configuration& omega);

// Refinement principle: given |G| >= c * |Omega|, keep the circles with
// |G(p)| >= c*M/2 and trim their fibers to exactly ceil(c*M/2) arcs
// (ascending arc index).  The output is a (delta,sigma,s,2C/c)-configuration
// with |Omega'| >= (c^2/4)|Omega|; both postconditions are asserted.
Configuration refine(const Configuration& omega, const PairSubset& G, double c);

// Parent pair of the skeleton: a Delta-cube plus a Sigma-arc on the cube's
// center circle.
struct SkeletonPair {
  DyadicCube cube;
  Arc arc;
};

// Child pair reference: (support index, arc index).
struct ChildRef {
  int point = 0;
  std::int64_t arc = 0;
};

struct SkeletonMap {
  Scale Delta{0};
  Scale Sigma{0};
  std::vector<SkeletonPair> parents;
  std::vector<std::vector<ChildRef>> members;  // fiber products, partition
};

// (Delta,Sigma)-skeleton of a configuration; requires
// delta <= Delta <= Sigma and sigma <= Sigma.
SkeletonMap skeleton(const Configuration& omega, Scale Delta, Scale Sigma);

struct RegularizedSkeleton {
  PairSubset G;           // surviving child pairs
  Configuration skel;     // the skeleton as a configuration at (Delta,Sigma)
  SkeletonMap map;        // restricted to survivors
  long M_Sigma = 0;       // constant skeleton fiber size
  int j0 = 0;             // surviving fiber-product size band [2^{j0-1}, 2^{j0})
  double measured_C = 0;  // spread constant of the skeleton configuration
};

// Three-step pigeonhole: (i) band cubes by population and keep the dominant
// band; (ii) band parent pairs by fiber-product size, keep the dominant band
// per cube, then the dominant band j0 across cubes; (iii) trim skeleton
// fibers to the minimum surviving size.  Asserts the retained-mass bound
// |G| >= (log2(1/delta))^{-k_polylog} |Omega|.
RegularizedSkeleton regularized_skeleton(const Configuration& omega,
                                         Scale Delta, Scale Sigma);

// Serialization: `<base>.csv` holds one row per pair with header
// `x1,x2,r,arc_level,arc_index`; `<base>.meta` is a key=value sidecar with
// delta_exp, sigma_exp, s, C, M.  Round-trips exactly (17-digit decimals).
void save_configuration(const std::string& path_base,
                        const Configuration& omega);
Configuration load_configuration(const std::string& path_base);

}  // namespace flab
