#include "flab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <tuple>

#include "flab/constants.hpp"

namespace flab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double dist2d(double ax, double ay, double bx, double by) {
  const double dx = ax - bx, dy = ay - by;
  return std::sqrt(dx * dx + dy * dy);
}

// Distance of w to the circle S(p).
double circle_gap(const ParamPoint& p, const RealPoint& w) {
  return std::abs(dist2d(w.x, w.y, p.x1, p.x2) - p.r);
}

// Membership in the dilated rectangle, threshold structure mirroring the
// documented predicate (relative slack on both clauses).
bool o_rect_contains(const Rect& R, const RealPoint& w, double slack) {
  const double cd = R.dilation * R.delta, cs = R.dilation * R.sigma;
  const double tol = slack * (1.0 + constants::geo_tol);
  if (circle_gap(R.p, w) > cd * tol + 1e-300) return false;
  return dist2d(w.x, w.y, R.v.x, R.v.y) <= cs * tol + 1e-300;
}

// The documented sample grid of R (angular window x radial offsets plus the
// anchor), re-coded.
std::vector<RealPoint> o_rect_sample(const Rect& R, int na, int nr) {
  const double cd = R.dilation * R.delta, cs = R.dilation * R.sigma;
  const double rin = std::max(R.p.r - cd, 1e-9);
  const double halfw = std::min(kPi, kPi * (cs + 2.0 * cd) / (2.0 * rin));
  const double theta_v = std::atan2(R.v.y - R.p.x2, R.v.x - R.p.x1);
  na = std::max(na, 2);
  nr = std::max(nr, 2);
  std::vector<RealPoint> out;
  for (int i = 0; i < na; ++i) {
    const double theta = theta_v + halfw * (2.0 * i / (na - 1) - 1.0);
    for (int j = 0; j < nr; ++j) {
      const double u = cd * (2.0 * j / (nr - 1) - 1.0);
      const RealPoint w{R.p.x1 + (R.p.r + u) * std::cos(theta),
                        R.p.x2 + (R.p.r + u) * std::sin(theta)};
      if (dist2d(w.x, w.y, R.v.x, R.v.y) <= cs) out.push_back(w);
    }
  }
  out.push_back(R.v);
  return out;
}

bool o_rects_intersect(const Rect& A, const Rect& B, const SamplingSpec& s) {
  if (dist2d(A.v.x, A.v.y, B.v.x, B.v.y) >
      A.dilation * A.sigma + B.dilation * B.sigma)
    return false;
  for (const RealPoint& w : o_rect_sample(A, s.n_angular, s.n_radial))
    if (o_rect_contains(B, w, 1.0 + 1e-9)) return true;
  for (const RealPoint& w : o_rect_sample(B, s.n_angular, s.n_radial))
    if (o_rect_contains(A, w, 1.0 + 1e-9)) return true;
  return false;
}

double o_tangency(const ParamPoint& p, const ParamPoint& q) {
  return std::abs(dist2d(p.x1, p.x2, q.x1, q.x2) - std::abs(p.r - q.r));
}

double o_distance(const ParamPoint& p, const ParamPoint& q) {
  const double a = p.x1 - q.x1, b = p.x2 - q.x2, c = p.r - q.r;
  return std::sqrt(a * a + b * b + c * c);
}

bool o_within(double x, double lo, double hi) {
  const double tol = 1.0 + constants::geo_tol;
  return x <= hi * tol && x * tol >= lo;
}

int o_round_up_exp(double s) {
  int k = 0;
  while (k < 60 && std::ldexp(1.0, -(k + 1)) >= s) ++k;
  return k;
}

std::int64_t o_floor_idx(double x, double inv) {
  return static_cast<std::int64_t>(std::floor(x * inv));
}

std::int64_t o_angle_bucket(const ParamPoint& c, const RealPoint& w, int k) {
  double a = std::atan2(w.y - c.x2, w.x - c.x1);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  const double width = kTwoPi * std::ldexp(1.0, -k);
  std::int64_t idx = static_cast<std::int64_t>(std::floor(a / width));
  const std::int64_t n = std::int64_t{1} << k;
  if (idx < 0) idx = 0;
  if (idx >= n) idx = n - 1;
  return idx;
}

}  // namespace

bool oracle_rect_subset(const Rect& R1, const Rect& R2, int multiplier) {
  if (multiplier < 4)
    throw std::invalid_argument("oracle_rect_subset: multiplier >= 4 required");
  const SamplingSpec base;
  for (const RealPoint& w :
       o_rect_sample(R1, base.n_angular * multiplier, base.n_radial * multiplier))
    if (!o_rect_contains(R2, w, 1.0 + 1e-9)) return false;
  return true;
}

long oracle_total_multiplicity(const std::vector<PairEntry>& omega_set,
                               const RealPoint& w, Scale delta) {
  const double lim = delta.value() * (1.0 + constants::geo_tol);
  const double lim2 = lim * lim;
  long count = 0;
  for (const PairEntry& e : omega_set) {
    const double dx = w.x - e.anchor.x, dy = w.y - e.anchor.y;
    if (dx * dx + dy * dy <= lim2) ++count;
  }
  return count;
}

long oracle_partial_multiplicity(const std::vector<PairEntry>& G,
                                 const PairEntry& omega, Scale delta,
                                 const NeighborhoodSpec& spec, double C,
                                 const SamplingSpec& sampling) {
  if (C < 1.0)
    throw std::invalid_argument("oracle_partial_multiplicity: C >= 1");
  const double d = delta.value();
  const double raw = d / std::sqrt(spec.lambda.value() * spec.t.value());
  const int sig_k = o_round_up_exp(std::min(1.0, std::max(d, raw)));
  const double sig = std::ldexp(1.0, -sig_k);

  // Skeleton: distinct (delta-cube, sigma-arc-of-anchor) pairs, grouping by
  // an ordered set of index tuples.
  const double inv = std::ldexp(1.0, delta.k);
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>>
      keys;
  for (const PairEntry& e : G) {
    const std::int64_t ix = o_floor_idx(e.p.x1, inv);
    const std::int64_t iy = o_floor_idx(e.p.x2, inv);
    const std::int64_t ir = o_floor_idx(e.p.r, inv);
    const ParamPoint pc{(ix + 0.5) * d, (iy + 0.5) * d, (ir + 0.5) * d};
    keys.insert({ix, iy, ir, o_angle_bucket(pc, e.anchor, sig_k)});
  }

  const double lam = spec.lambda.value(), tt = spec.t.value();
  const bool one_sided = lam <= spec.rho_lambda * d;
  const Rect q{omega.p, omega.anchor, d, sig, C};

  long count = 0;
  for (const auto& [ix, iy, ir, ai] : keys) {
    const ParamPoint pc{(ix + 0.5) * d, (iy + 0.5) * d, (ir + 0.5) * d};
    const double dl = o_tangency(omega.p, pc);
    const double dt = o_distance(omega.p, pc);
    if (one_sided ? dl > spec.rho_lambda * lam * (1 + constants::geo_tol)
                  : !o_within(dl, lam / spec.rho_lambda, spec.rho_lambda * lam))
      continue;
    if (!o_within(dt, tt / spec.rho_t, spec.rho_t * tt)) continue;
    const double mid = (ai + 0.5) * kTwoPi * sig;
    const RealPoint anchor{pc.x1 + pc.r * std::cos(mid),
                           pc.x2 + pc.r * std::sin(mid)};
    const Rect r{pc, anchor, d, sig, C};
    if (o_rects_intersect(q, r, sampling)) ++count;
  }
  return count;
}

long oracle_covering_count(const std::vector<ParamPoint>& points, Scale delta) {
  const double inv = std::ldexp(1.0, delta.k);
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> seen;
  for (const ParamPoint& p : points)
    seen.insert({o_floor_idx(p.x1, inv), o_floor_idx(p.x2, inv),
                 o_floor_idx(p.r, inv)});
  return static_cast<long>(seen.size());
}

bool oracle_cover_escape(const ParamPoint& p, const ParamPoint& q,
                         double delta, const std::vector<Rect>& cover) {
  const double d = dist2d(p.x1, p.x2, q.x1, q.x2);
  struct Window {
    double lo, hi;
  };
  std::vector<Window> windows;
  if (d < 1e-12) {
    if (std::abs(p.r - q.r) > 2.0 * delta) return false;
    windows.push_back({0.0, kTwoPi});
  } else {
    // Points of both annuli satisfy |g(theta) - r_q| <= 2*delta where
    // g(theta) = |c_p + r_p e^{i theta} - c_q| (conservative superset).
    const double glo = std::max(q.r - 2.0 * delta, 0.0);
    const double ghi = q.r + 2.0 * delta;
    const double chi = (p.r * p.r + d * d - glo * glo) / (2.0 * p.r * d);
    const double clo = (p.r * p.r + d * d - ghi * ghi) / (2.0 * p.r * d);
    if (clo > 1.0 || chi < -1.0) return false;
    const double pad = delta / (8.0 * p.r);  // one scan step of margin
    const double phi_lo =
        std::max(0.0, std::acos(std::clamp(chi, -1.0, 1.0)) - pad);
    const double phi_hi =
        std::min(kPi, std::acos(std::clamp(clo, -1.0, 1.0)) + pad);
    const double theta0 = std::atan2(q.x2 - p.x2, q.x1 - p.x1);
    windows.push_back({theta0 + phi_lo, theta0 + phi_hi});
    if (phi_lo > 0.0) windows.push_back({theta0 - phi_hi, theta0 - phi_lo});
  }

  const double astep = delta / (8.0 * p.r);
  for (const Window& win : windows) {
    const long n = std::max<long>(1, std::lround(std::ceil((win.hi - win.lo) / astep)));
    for (long i = 0; i <= n; ++i) {
      const double theta = win.lo + (win.hi - win.lo) * i / n;
      const double c = std::cos(theta), s = std::sin(theta);
      for (int j = -8; j <= 8; ++j) {
        const double u = delta * j / 8.0;
        const RealPoint w{p.x1 + (p.r + u) * c, p.x2 + (p.r + u) * s};
        if (circle_gap(q, w) > delta) continue;  // not in the q-annulus
        bool covered = false;
        for (const Rect& r : cover)
          if (o_rect_contains(r, w, 1.0)) {
            covered = true;
            break;
          }
        if (!covered) return true;
      }
    }
  }
  return false;
}

SlopeFit oracle_dimension_slope(const std::vector<int>& delta_exps,
                                const std::vector<long>& counts) {
  if (delta_exps.size() != counts.size() || delta_exps.size() < 3)
    throw std::invalid_argument("oracle_dimension_slope: need >= 3 scales");
  const size_t n = delta_exps.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    if (counts[i] < 1)
      throw std::invalid_argument("oracle_dimension_slope: counts must be >= 1");
    const double x = delta_exps[i], y = std::log2(static_cast<double>(counts[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0)
    throw std::invalid_argument("oracle_dimension_slope: degenerate exponents");
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.slope * sx) / n;
  double rss = 0;
  for (size_t i = 0; i < n; ++i) {
    const double e = std::log2(static_cast<double>(counts[i])) -
                     (fit.slope * delta_exps[i] + intercept);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

}  // namespace flab
