#include "flab/geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace flab {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

// Relative comparison a <= b with geo_tol headroom.
bool leq_tol(double a, double b, double slack) {
  return a <= b * slack * (1.0 + constants::geo_tol) + 1e-300;
}

}  // namespace

Rect make_rect(const ParamPoint& p, const RealPoint& v, double delta,
               double sigma, double dilation) {
  if (p.r <= 0) throw std::invalid_argument("rect: radius must be positive");
  if (!(delta > 0) || !(sigma > 0))
    throw std::invalid_argument("rect: scales must be positive");
  if (delta > sigma * (1.0 + constants::geo_tol) || sigma > 1.0 + constants::geo_tol)
    throw std::invalid_argument("rect: requires delta <= sigma <= 1");
  if (dilation < 1.0) throw std::invalid_argument("rect: dilation must be >= 1");
  const double d = std::hypot(v.x - p.x1, v.y - p.x2);
  if (std::abs(d - p.r) > constants::geo_tol * p.r + 1e-15)
    throw std::invalid_argument("rect: anchor is not on the circle");
  return Rect{p, v, delta, sigma, dilation};
}

double param_distance(const ParamPoint& p, const ParamPoint& q) {
  return std::sqrt(sq(p.x1 - q.x1) + sq(p.x2 - q.x2) + sq(p.r - q.r));
}

double tangency(const ParamPoint& p, const ParamPoint& q) {
  const double dc = std::hypot(p.x1 - q.x1, p.x2 - q.x2);
  return std::abs(dc - std::abs(p.r - q.r));
}

bool in_domain(const ParamPoint& p) {
  return std::hypot(p.x1, p.x2) <= 0.25 && p.r >= 0.5 && p.r <= 1.0;
}

bool annulus_contains(const ParamPoint& p, double delta, const RealPoint& w) {
  if (delta < 0) throw std::invalid_argument("annulus_contains: delta < 0");
  const double d = std::hypot(w.x - p.x1, w.y - p.x2);
  return std::abs(d - p.r) <= delta * (1.0 + constants::geo_tol) + 1e-300;
}

bool rect_contains(const Rect& R, const RealPoint& w, double slack) {
  const double cdelta = R.dilation * R.delta;
  const double csigma = R.dilation * R.sigma;
  const double d = std::hypot(w.x - R.p.x1, w.y - R.p.x2);
  if (!leq_tol(std::abs(d - R.p.r), cdelta, slack)) return false;
  return leq_tol(std::hypot(w.x - R.v.x, w.y - R.v.y), csigma, slack);
}

Rect rect_dilate(const Rect& R, double C) {
  if (C < 1.0) throw std::invalid_argument("rect_dilate: C must be >= 1");
  Rect out = R;
  out.dilation *= C;
  return out;
}

std::vector<RealPoint> rect_sample(const Rect& R, const SamplingSpec& spec) {
  const double cdelta = R.dilation * R.delta;
  const double csigma = R.dilation * R.sigma;
  const double rin = std::max(R.p.r - cdelta, 1e-9);
  // Angular half-width guaranteed to cover the anchor ball: for points at
  // radius >= rin, a chord of length L subtends an angle <= pi*L/(2*rin).
  const double halfw =
      std::min(kPi, kPi * (csigma + 2.0 * cdelta) / (2.0 * rin));
  const double theta_v = std::atan2(R.v.y - R.p.x2, R.v.x - R.p.x1);

  std::vector<RealPoint> out;
  out.reserve(static_cast<size_t>(spec.n_angular) * spec.n_radial + 1);
  const int na = std::max(spec.n_angular, 2);
  const int nr = std::max(spec.n_radial, 2);
  for (int i = 0; i < na; ++i) {
    const double theta = theta_v + halfw * (2.0 * i / (na - 1) - 1.0);
    const double c = std::cos(theta), s = std::sin(theta);
    for (int j = 0; j < nr; ++j) {
      const double u = cdelta * (2.0 * j / (nr - 1) - 1.0);
      const RealPoint w{R.p.x1 + (R.p.r + u) * c, R.p.x2 + (R.p.r + u) * s};
      if (std::hypot(w.x - R.v.x, w.y - R.v.y) <= csigma) out.push_back(w);
    }
  }
  // The anchor itself is always a member.
  out.push_back(R.v);
  return out;
}

bool rect_subset(const Rect& R1, const Rect& R2, const SamplingSpec& spec) {
  // Containment is decided with a hair of slack so that exactly-coincident
  // boundaries (e.g. R1 == R2) are not rejected by rounding noise.
  for (const RealPoint& w : rect_sample(R1, spec)) {
    if (!rect_contains(R2, w, 1.0 + 1e-9)) return false;
  }
  return true;
}

bool rects_intersect(const Rect& R1, const Rect& R2, const SamplingSpec& spec) {
  const double reach =
      R1.dilation * R1.sigma + R2.dilation * R2.sigma;
  if (std::hypot(R1.v.x - R2.v.x, R1.v.y - R2.v.y) > reach) return false;
  for (const RealPoint& w : rect_sample(R1, spec)) {
    if (rect_contains(R2, w, 1.0 + 1e-9)) return true;
  }
  for (const RealPoint& w : rect_sample(R2, spec)) {
    if (rect_contains(R1, w, 1.0 + 1e-9)) return true;
  }
  return false;
}

bool comparable(const Rect& R1, const Rect& R2, double C,
                const SamplingSpec& spec) {
  if (R1.delta != R2.delta || R1.sigma != R2.sigma)
    throw std::invalid_argument("comparable: rectangles must share (delta, sigma)");
  if (C < 1.0) throw std::invalid_argument("comparable: C must be >= 1");
  return rect_subset(R1, rect_dilate(R2, C), spec) ||
         rect_subset(R2, rect_dilate(R1, C), spec);
}

double intersection_scale(double lambda, double t, double delta) {
  if (lambda < 0 || t < 0 || delta < 0)
    throw std::invalid_argument("intersection_scale: arguments must be >= 0");
  return delta / std::sqrt((lambda + delta) * (t + delta));
}

std::vector<Rect> intersection_cover(const ParamPoint& p, const ParamPoint& q,
                                     double delta) {
  const double t = param_distance(p, q);
  if (t < constants::geo_tol) throw std::invalid_argument("degenerate pair");
  const double lam = tangency(p, q);
  // Rectangles must satisfy delta <= sigma; for far transversal pairs the
  // formula can dip a hair below delta, so clamp.
  const double sigma =
      std::min(1.0, std::max(delta, intersection_scale(lam, t, delta)));

  const double d = std::hypot(p.x1 - q.x1, p.x2 - q.x2);

  // Angular windows on S(p) (measured from the direction of q's center)
  // where the annuli can meet: points of S^delta(p) within delta of S(q)
  // have |g(theta) - r_q| <= 2*delta for g(theta) = |c_p + r_p e^{i theta} - c_q|.
  struct Window {
    double lo, hi;  // absolute angles, hi >= lo
  };
  std::vector<Window> windows;
  std::vector<double> transversal_anchors;  // exact crossing angles

  if (d < constants::geo_tol) {
    // Concentric circles: the annuli meet iff the radii differ by <= 2*delta,
    // and then they meet along the whole ring.
    if (std::abs(p.r - q.r) > 2.0 * delta) return {};
    windows.push_back({-kPi, kPi});
  } else {
    const double glo = std::max(q.r - 2.0 * delta, 0.0);
    const double ghi = q.r + 2.0 * delta;
    // g^2 = r_p^2 + d^2 - 2 r_p d cos(phi); cos(phi) decreasing in g.
    const double chi = (sq(p.r) + sq(d) - sq(glo)) / (2.0 * p.r * d);
    const double clo = (sq(p.r) + sq(d) - sq(ghi)) / (2.0 * p.r * d);
    if (clo > 1.0 || chi < -1.0) return {};  // annuli disjoint
    const double phi_lo = std::acos(std::clamp(chi, -1.0, 1.0));
    const double phi_hi = std::acos(std::clamp(clo, -1.0, 1.0));
    const double theta0 = std::atan2(q.x2 - p.x2, q.x1 - p.x1);

    if (lam > delta && std::abs(p.r - q.r) <= d && d <= p.r + q.r) {
      // Transversal regime with genuine crossings: anchor exactly there.
      const double cphi = (sq(p.r) + sq(d) - sq(q.r)) / (2.0 * p.r * d);
      const double phi = std::acos(std::clamp(cphi, -1.0, 1.0));
      transversal_anchors.push_back(theta0 + phi);
      if (phi > 1e-12) transversal_anchors.push_back(theta0 - phi);
    } else {
      // Near-tangency (or annulus-only overlap): cover the window arcs.
      if (phi_lo < 1e-12) {
        windows.push_back({theta0 - phi_hi, theta0 + phi_hi});
      } else if (phi_hi > kPi - 1e-12) {
        windows.push_back({theta0 + phi_lo, theta0 + 2.0 * kPi - phi_lo});
      } else {
        windows.push_back({theta0 + phi_lo, theta0 + phi_hi});
        windows.push_back({theta0 - phi_hi, theta0 - phi_lo});
      }
    }
  }

  std::vector<double> anchors = transversal_anchors;
  if (!windows.empty()) {
    // Spread anchors along each window at chord spacing ~ k_cover_spacing*sigma.
    double total = 0;
    for (const Window& w : windows) total += w.hi - w.lo;
    const double base_step = constants::k_cover_spacing * sigma / p.r;
    long needed = 0;
    for (const Window& w : windows)
      needed += static_cast<long>(std::ceil((w.hi - w.lo) / base_step)) + 1;
    // Never exceed the budget: widen spacing (and the rectangles, below) if
    // the windows are long relative to sigma.
    const double stretch =
        needed > constants::k_cover ? static_cast<double>(needed) / constants::k_cover
                                    : 1.0;
    const double step = base_step * stretch;
    for (const Window& w : windows) {
      const int n = std::max(1, static_cast<int>(std::ceil((w.hi - w.lo) / step)));
      for (int i = 0; i <= n; ++i)
        anchors.push_back(w.lo + (w.hi - w.lo) * i / n);
    }
  }

  double dil = constants::k_cover_dilate;
  if (static_cast<long>(anchors.size()) > constants::k_cover) {
    anchors.resize(constants::k_cover);  // defensive; stretch keeps us under
  }
  // If spacing was stretched, grow the rectangles to keep the union covering.
  if (!windows.empty()) {
    double total = 0;
    for (const Window& w : windows) total += w.hi - w.lo;
    const double per_anchor = total / std::max<size_t>(anchors.size(), 1) * p.r;
    dil = std::max(dil, constants::k_cover_dilate * per_anchor / sigma);
  }

  std::vector<Rect> out;
  out.reserve(anchors.size());
  for (double theta : anchors) {
    const RealPoint v{p.x1 + p.r * std::cos(theta), p.x2 + p.r * std::sin(theta)};
    out.push_back(Rect{p, v, delta, sigma, dil});
  }
  return out;
}

Rect shared_point_rect(const ParamPoint& p, double t, double delta,
                       const RealPoint& v) {
  if (t <= 0) throw std::invalid_argument("shared_point_rect: t must be > 0");
  if (delta <= 0) throw std::invalid_argument("shared_point_rect: delta must be > 0");
  const double sigma = std::min(1.0, std::sqrt(delta / t));
  return make_rect(p, v, delta, sigma, 1.0);
}

}  // namespace flab
