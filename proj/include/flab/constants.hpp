#pragma once

// Frozen absolute constants used across the library.  Values marked
// "calibrated" were fixed once by the calibration sweeps in
// tests/test_calibration.cpp and must only change together with a rerun of
// those sweeps.
namespace flab::constants {

// Relative tolerance for geometric membership predicates.
inline constexpr double geo_tol = 1e-12;

// Maximum number of rectangles returned by intersection_cover.
inline constexpr int k_cover = 32;

// Dilation applied to each cover rectangle (calibrated).
inline constexpr double k_cover_dilate = 4.0;

// Anchor spacing of cover rectangles, in units of sigma (calibrated).
inline constexpr double k_cover_spacing = 1.0;

// "Intersecting dilates are nested" multiplier: if C-dilates of two
// rectangles at the same scales intersect, one is contained in the
// k_flip * C^4 dilate of the other (calibrated).
inline constexpr double k_flip = 4.0;

// Duality multiplier: R1 inside C*R2 implies R2 inside k_dual * C^5 * R1,
// and comparability is transitive with the same growth (calibrated).
inline constexpr double k_dual = 4.0;

// Cone interval multiplier: a child arc sits inside the parent cone
// interval extended to length k_cone * Sigma (calibrated).
inline constexpr double k_cone = 16.0;

// Spread constant budget for generated Cantor-type sets.
inline constexpr double k_gen = 16.0;

// Polylog exponent for the regularized-skeleton mass guarantee.
inline constexpr int k_polylog = 6;

// Dilation used by the multiplicity decomposition partial counts.
inline constexpr double k_dec = 8.0;

// Spread-constant growth when passing from a set to its coarse cube centers
// under two-sided occupancy (every coarse cube holds between m and 2m fine
// cubes): the centers form a spread set with constant <= k_l9 * C.
inline constexpr double k_l9 = 4.0;

// Exponent multiplier in the tangency bound prefactor delta^{-k_w * eps}.
inline constexpr double k_w = 10.0;

// Default dilation constant for incomparability extraction.
inline constexpr double incomparability = 100.0;

// Extraction constant used by the desk-scale tangent-family experiment
// (calibrated; at lambda/delta <= 64 every pair of generated rectangles is
// 100-comparable for capacity reasons, so the quadratic growth law is only
// visible at a smaller dilation).
inline constexpr double ex1_incomparability = 2.0;

// Fraction of (lambda/delta)^2 the tangent-family extraction must reach.
inline constexpr double c_ex1 = 0.05;

// Dilation of the target rectangle that must contain all example anchors.
inline constexpr double k_window = 4.0;

// Dilation used by the skeleton-transfer sandwich check (calibrated).
inline constexpr double a_cal = 4.0;

}  // namespace flab::constants
