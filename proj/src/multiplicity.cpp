#include "flab/multiplicity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "flab/constants.hpp"

namespace flab {

namespace {

bool within(double x, double lo, double hi) {
  const double tol = 1.0 + constants::geo_tol;
  return x <= hi * tol && x * tol >= lo;
}

// Skeleton of a pair list at (delta, sigma): parent cube center circles with
// sigma-arc buckets, deduplicated.
std::vector<PairEntry> pair_skeleton(const std::vector<PairEntry>& G,
                                     Scale delta, Scale sigma) {
  std::map<std::pair<std::uint64_t, std::int64_t>, PairEntry> groups;
  for (const PairEntry& e : G) {
    const DyadicCube q = cube_of(e.p, delta);
    const ParamPoint pc = cube_center(q);
    const Arc big = arc_of(pc, sigma, e.anchor);
    auto key = std::make_pair(cube_key(q), big.index);
    if (!groups.count(key))
      groups.emplace(key, PairEntry{pc, big, arc_midpoint(big)});
  }
  std::vector<PairEntry> out;
  out.reserve(groups.size());
  for (auto& [k, e] : groups) out.push_back(e);
  return out;
}

Scale partial_sigma(Scale delta, const NeighborhoodSpec& spec) {
  const double raw =
      delta.value() / std::sqrt(spec.lambda.value() * spec.t.value());
  return scale_round_up(std::min(1.0, std::max(delta.value(), raw)));
}

// Core partial count against an explicit query rectangle/base circle.
long partial_count(const std::vector<PairEntry>& G, const ParamPoint& base,
                   const Rect& query, Scale delta,
                   const NeighborhoodSpec& spec, double C,
                   const SamplingSpec& sampling) {
  if (C < 1.0) throw std::invalid_argument("partial_multiplicity: C >= 1");
  const Scale sigma = partial_sigma(delta, spec);
  const Rect qC = rect_dilate(query, C);

  const double lam = spec.lambda.value(), tt = spec.t.value();
  const bool one_sided = lam <= spec.rho_lambda * delta.value();

  long count = 0;
  for (const PairEntry& e : pair_skeleton(G, delta, sigma)) {
    const double dl = tangency(base, e.p);
    const double dt = param_distance(base, e.p);
    if (one_sided ? dl > spec.rho_lambda * lam * (1 + constants::geo_tol)
                  : !within(dl, lam / spec.rho_lambda, spec.rho_lambda * lam))
      continue;
    if (!within(dt, tt / spec.rho_t, spec.rho_t * tt)) continue;
    const Rect r{e.p, e.anchor, delta.value(), sigma.value(), C};
    if (rects_intersect(qC, r, sampling)) ++count;
  }
  return count;
}

Rect pair_rect(const PairEntry& omega, Scale delta, Scale sigma) {
  return Rect{omega.p, omega.anchor, delta.value(), sigma.value(), 1.0};
}

}  // namespace

std::vector<PairEntry> pairs_of(const Configuration& omega) {
  return pairs_of(omega, omega.fibers);
}

std::vector<PairEntry> pairs_of(const Configuration& omega,
                                const PairSubset& G) {
  std::vector<PairEntry> out;
  for (size_t i = 0; i < omega.support.size() && i < G.size(); ++i) {
    for (std::int64_t a : G[i]) {
      const Arc arc{omega.support[i], omega.sigma.k, a};
      out.push_back(PairEntry{omega.support[i], arc, arc_midpoint(arc)});
    }
  }
  return out;
}

long total_multiplicity(const std::vector<PairEntry>& omega_set,
                        const RealPoint& w, Scale delta) {
  const double d = delta.value();
  long count = 0;
  for (const PairEntry& e : omega_set) {
    if (std::hypot(w.x - e.anchor.x, w.y - e.anchor.y) <=
        d * (1.0 + constants::geo_tol))
      ++count;
  }
  return count;
}

std::vector<int> neighborhood(const std::vector<PairEntry>& G,
                              const PairEntry& omega,
                              const NeighborhoodSpec& spec, Scale delta) {
  const double lam = spec.lambda.value(), tt = spec.t.value();
  const bool one_sided = lam <= spec.rho_lambda * delta.value();
  std::vector<int> out;
  for (size_t i = 0; i < G.size(); ++i) {
    const double dl = tangency(omega.p, G[i].p);
    const double dt = param_distance(omega.p, G[i].p);
    if (one_sided ? dl > spec.rho_lambda * lam * (1 + constants::geo_tol)
                  : !within(dl, lam / spec.rho_lambda, spec.rho_lambda * lam))
      continue;
    if (!within(dt, tt / spec.rho_t, spec.rho_t * tt)) continue;
    out.push_back(static_cast<int>(i));
  }
  return out;
}

long partial_multiplicity(const std::vector<PairEntry>& G,
                          const PairEntry& omega, Scale delta,
                          const NeighborhoodSpec& spec, double C,
                          const SamplingSpec& sampling) {
  const Scale sigma = partial_sigma(delta, spec);
  return partial_count(G, omega.p, pair_rect(omega, delta, sigma), delta, spec,
                       C, sampling);
}

MultiplicityReport decompose_total(const std::vector<PairEntry>& G,
                                   const PairEntry& omega, Scale delta,
                                   double eps, double C,
                                   const SamplingSpec& sampling) {
  if (delta.k < 1)
    throw std::invalid_argument("decompose_total: delta must be < 1");
  MultiplicityReport rep;
  const double d = delta.value();
  rep.total = total_multiplicity(G, omega.anchor, Scale{delta.k - 1});

  // Grid of dyadic exponents at ratio 2^{T_grid} <= delta^{-eps}.
  const int T_grid =
      std::max(1, static_cast<int>(std::floor(eps * delta.k)));
  std::vector<int> exps;
  for (int e = delta.k; e > 0; e -= T_grid) exps.push_back(e);
  exps.push_back(0);
  std::sort(exps.begin(), exps.end());  // coarse (0) ... fine (delta.k)
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());

  // Band half-width: wide enough that consecutive grid values tile and that
  // tangency (<= sqrt(2) * distance) pairs land in the lambda = t cells.
  const double rho =
      std::max(std::pow(d, -eps), 2.0 * std::exp2(T_grid));

  // Degenerate diagonal cell: pairs at base distance <= rho*delta (including
  // same-circle pairs and omega itself), counted directly.
  long diag = 0;
  long near_ball = 0;  // anchors within 2*delta of omega on near circles
  std::map<std::uint64_t, long> far_circle_hits;
  for (const PairEntry& e : G) {
    const double dt = param_distance(omega.p, e.p);
    if (dt <= rho * d * (1 + constants::geo_tol)) {
      ++diag;
      continue;
    }
    if (std::hypot(e.anchor.x - omega.anchor.x, e.anchor.y - omega.anchor.y) <=
        2.0 * d * (1.0 + constants::geo_tol))
      far_circle_hits[cube_key(cube_of(e.p, delta))] += 1;
  }
  (void)near_ball;
  rep.cells.push_back(MultCell{delta.k, delta.k, diag});
  rep.sum_partial = diag;

  // Same-circle arc collisions on far circles: distinct delta-arcs of one
  // circle inside B(anchor, 2*delta) collapse to a single skeleton pair, so
  // they can be undercounted by the partial cells; documented as slack.
  for (const auto& [key, hits] : far_circle_hits)
    rep.slack += std::max<long>(0, hits - 1);

  for (int te : exps) {
    if (te >= delta.k) continue;  // diagonal handled above
    for (int le : exps) {
      if (le < te) continue;  // lambda <= t only
      if (le >= delta.k && te >= delta.k) continue;
      NeighborhoodSpec spec{Scale{le}, Scale{te}, rho, rho};
      const long c = partial_multiplicity(G, omega, delta, spec, C, sampling);
      rep.cells.push_back(MultCell{le, te, c});
      rep.sum_partial += c;
    }
  }

  rep.holds_strict = rep.total <= rep.sum_partial;
  rep.holds = rep.total <= rep.sum_partial + rep.slack;
  if (!rep.holds)
    throw std::logic_error("decompose_total: decomposition inequality violated");
  return rep;
}

bool parent_transfer_check(const std::vector<PairEntry>& G,
                           const PairEntry& omega, Scale delta,
                           const NeighborhoodSpec& spec, double C, double A,
                           const SamplingSpec& sampling) {
  if (A < 1.0 || C < A)
    throw std::invalid_argument("parent_transfer_check: requires C >= A >= 1");
  const Scale sigma = partial_sigma(delta, spec);

  // Skeleton parent of omega at (delta, sigma).
  const DyadicCube q = cube_of(omega.p, delta);
  const ParamPoint pc = cube_center(q);
  const Arc big = arc_of(pc, sigma, omega.anchor);
  const PairEntry parent{pc, big, arc_midpoint(big)};

  const long m_omega = partial_count(
      G, omega.p, pair_rect(omega, delta, sigma), delta, spec, C, sampling);
  const long m_lo = partial_count(G, parent.p, pair_rect(parent, delta, sigma),
                                  delta, spec, C / A, sampling);
  const long m_hi = partial_count(G, parent.p, pair_rect(parent, delta, sigma),
                                  delta, spec, A * C, sampling);
  return m_lo <= m_omega && m_omega <= m_hi;
}

bool is_almost_bipartite(const std::vector<ParamPoint>& W,
                         const std::vector<ParamPoint>& B, Scale delta,
                         Scale t, double eps) {
  const double d = delta.value();
  const double tv = t.value();
  const double tol = 1.0 + constants::geo_tol;
  auto separated = [&](const std::vector<ParamPoint>& S) {
    for (size_t i = 0; i < S.size(); ++i)
      for (size_t j = i + 1; j < S.size(); ++j)
        if (param_distance(S[i], S[j]) * tol < d) return false;
    return true;
  };
  if (!separated(W) || !separated(B)) return false;
  if (W.empty() || B.empty()) return false;
  double min_cross = 1e300, diam = 0;
  std::vector<ParamPoint> all = W;
  all.insert(all.end(), B.begin(), B.end());
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j)
      diam = std::max(diam, param_distance(all[i], all[j]));
  for (const ParamPoint& w : W)
    for (const ParamPoint& b : B)
      min_cross = std::min(min_cross, param_distance(w, b));
  return min_cross * tol >= std::pow(d, eps) * tv &&
         diam <= std::pow(d, -eps) * tv * tol;
}

namespace {

// R inside the thickness-delta annulus of p, decided on R's sample grid.
bool annulus_subset(const Rect& R, const ParamPoint& p, double thickness,
                    const SamplingSpec& sampling) {
  for (const RealPoint& w : rect_sample(R, sampling))
    if (!annulus_contains(p, thickness * (1.0 + 1e-9), w)) return false;
  return true;
}

// R inside the dilated union of fiber rectangles of p.
bool fiber_union_subset(const Rect& R, const ParamPoint& p,
                        const std::vector<std::int64_t>& fiber, Scale delta,
                        Scale sigma, double dilation,
                        const SamplingSpec& sampling) {
  std::vector<Rect> rects;
  rects.reserve(fiber.size());
  for (std::int64_t a : fiber) {
    const Arc arc{p, sigma.k, a};
    rects.push_back(
        Rect{p, arc_midpoint(arc), delta.value(), sigma.value(), dilation});
  }
  for (const RealPoint& w : rect_sample(R, sampling)) {
    bool in_any = false;
    for (const Rect& r : rects)
      if (rect_contains(r, w, 1.0 + 1e-9)) {
        in_any = true;
        break;
      }
    if (!in_any) return false;
  }
  return true;
}

}  // namespace

std::pair<long, long> rect_type(const Rect& R, const TypeSpec& spec,
                                Scale delta, const SamplingSpec& sampling) {
  const double d = delta.value();
  if (!spec.restricted) {
    const double thickness = std::pow(d, 1.0 - spec.eps);
    long m = 0, n = 0;
    for (const ParamPoint& p : spec.W)
      if (annulus_subset(R, p, thickness, sampling)) ++m;
    for (const ParamPoint& q : spec.B)
      if (annulus_subset(R, q, thickness, sampling)) ++n;
    return {m, n};
  }

  if (!spec.lambda || !spec.sigma || spec.fibersW.size() != spec.W.size() ||
      spec.fibersB.size() != spec.B.size())
    throw std::invalid_argument("rect_type: restricted mode requires lambda and fibers");

  const double lam = spec.lambda->value();
  const double dil = std::max(1.0, std::pow(d, -spec.eps));
  const Scale sigma = *spec.sigma;

  std::vector<char> inW(spec.W.size()), inB(spec.B.size());
  for (size_t i = 0; i < spec.W.size(); ++i)
    inW[i] = fiber_union_subset(R, spec.W[i], spec.fibersW[i], delta, sigma,
                                dil, sampling);
  for (size_t j = 0; j < spec.B.size(); ++j)
    inB[j] = fiber_union_subset(R, spec.B[j], spec.fibersB[j], delta, sigma,
                                dil, sampling);

  std::vector<long> counts;
  for (size_t i = 0; i < spec.W.size(); ++i) {
    if (!inW[i]) continue;
    long n = 0;
    for (size_t j = 0; j < spec.B.size(); ++j) {
      if (!inB[j]) continue;
      const double dl = tangency(spec.W[i], spec.B[j]);
      if (dl >= std::pow(d, spec.eps) * lam / (1 + constants::geo_tol) &&
          dl <= std::pow(d, -spec.eps) * lam * (1 + constants::geo_tol))
        ++n;
    }
    if (n > 0) counts.push_back(n);
  }
  if (counts.empty()) return {0, 0};
  std::sort(counts.rbegin(), counts.rend());
  // Greedy witness set: descending partner counts; pick the prefix length m
  // maximizing m * counts[m-1] (ties toward larger m).
  size_t best = 1;
  for (size_t mm = 1; mm <= counts.size(); ++mm)
    if (static_cast<double>(mm) * counts[mm - 1] >=
        static_cast<double>(best) * counts[best - 1])
      best = mm;
  return {static_cast<long>(best), counts[best - 1]};
}

}  // namespace flab
