#include "flab/dyadic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

namespace flab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Angle of w seen from c, normalized to [0, 2*pi).
double angle_from(const RealPoint& c, const RealPoint& w) {
  const double dx = w.x - c.x, dy = w.y - c.y;
  if (dx == 0.0 && dy == 0.0)
    throw std::invalid_argument("angle undefined at the circle center");
  double a = std::atan2(dy, dx);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

std::int64_t angle_bucket(double angle, int k) {
  const double width = kTwoPi * std::ldexp(1.0, -k);
  const std::int64_t n = std::int64_t{1} << k;
  std::int64_t idx = static_cast<std::int64_t>(std::floor(angle / width));
  if (idx < 0) idx = 0;
  if (idx >= n) idx = n - 1;  // guard against angle == 2*pi rounding
  return idx;
}

std::uint64_t key2d(std::int64_t ix, std::int64_t iy) {
  const std::uint64_t a = static_cast<std::uint64_t>(ix + (1 << 30));
  const std::uint64_t b = static_cast<std::uint64_t>(iy + (1 << 30));
  return (a << 32) | (b & 0xffffffffu);
}
}  // namespace

double Scale::value() const { return std::ldexp(1.0, -k); }

Scale scale_round_up(double s) {
  if (!(s > 0.0) || s > 1.0)
    throw std::invalid_argument("scale_round_up: requires 0 < s <= 1");
  int k = static_cast<int>(std::floor(-std::log2(s)));
  while (std::ldexp(1.0, -k) < s) --k;
  while (k + 1 >= 0 && std::ldexp(1.0, -(k + 1)) >= s) ++k;
  if (k < 0) k = 0;
  return Scale{k};
}

DyadicCube cube_of(const ParamPoint& p, Scale delta) {
  const double inv = std::ldexp(1.0, delta.k);
  return DyadicCube{delta.k, static_cast<std::int64_t>(std::floor(p.x1 * inv)),
                    static_cast<std::int64_t>(std::floor(p.x2 * inv)),
                    static_cast<std::int64_t>(std::floor(p.r * inv))};
}

bool cube_contains(const DyadicCube& Q, const ParamPoint& p) {
  const DyadicCube at = cube_of(p, Scale{Q.k});
  return at == Q;
}

DyadicCube cube_parent(const DyadicCube& Q, Scale coarser) {
  if (coarser.k > Q.k)
    throw std::invalid_argument("cube_parent: parent scale must be coarser");
  const int shift = Q.k - coarser.k;
  // Arithmetic right shift floors toward -inf for negative indices.
  return DyadicCube{coarser.k, Q.ix >> shift, Q.iy >> shift, Q.ir >> shift};
}

ParamPoint cube_center(const DyadicCube& Q) {
  const double side = std::ldexp(1.0, -Q.k);
  return ParamPoint{(Q.ix + 0.5) * side, (Q.iy + 0.5) * side,
                    (Q.ir + 0.5) * side};
}

std::uint64_t cube_key(const DyadicCube& Q) {
  const std::uint64_t a = static_cast<std::uint64_t>(Q.ix + (1 << 20));
  const std::uint64_t b = static_cast<std::uint64_t>(Q.iy + (1 << 20));
  const std::uint64_t c = static_cast<std::uint64_t>(Q.ir + (1 << 20));
  return (a << 42) ^ (b << 21) ^ c;
}

long covering_count(const std::vector<ParamPoint>& points, Scale delta) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(points.size() * 2);
  for (const ParamPoint& p : points) seen.insert(cube_key(cube_of(p, delta)));
  return static_cast<long>(seen.size());
}

long covering_count_planar(const std::vector<RealPoint>& points, Scale delta) {
  const double inv = std::ldexp(1.0, delta.k);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(points.size() * 2);
  for (const RealPoint& w : points)
    seen.insert(key2d(static_cast<std::int64_t>(std::floor(w.x * inv)),
                      static_cast<std::int64_t>(std::floor(w.y * inv))));
  return static_cast<long>(seen.size());
}

long covering_count_circle(const ParamPoint& p, Scale delta) {
  const double d = delta.value();
  const double step = d / (4.0 * p.r);
  const double inv = 1.0 / d;
  std::unordered_set<std::uint64_t> seen;
  const long n = static_cast<long>(std::ceil(kTwoPi / step));
  seen.reserve(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double theta = kTwoPi * i / n;
    const double x = p.x1 + p.r * std::cos(theta);
    const double y = p.x2 + p.r * std::sin(theta);
    seen.insert(key2d(static_cast<std::int64_t>(std::floor(x * inv)),
                      static_cast<std::int64_t>(std::floor(y * inv))));
  }
  return static_cast<long>(seen.size());
}

std::vector<Arc> arcs(const ParamPoint& p, Scale sigma) {
  if (sigma.k > 24) throw std::invalid_argument("arcs: level too fine");
  const std::int64_t n = std::int64_t{1} << sigma.k;
  std::vector<Arc> out;
  out.reserve(static_cast<size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) out.push_back(Arc{p, sigma.k, i});
  return out;
}

Arc arc_of(const ParamPoint& p, Scale sigma, const RealPoint& w) {
  return Arc{p, sigma.k, angle_bucket(angle_from(p.center(), w), sigma.k)};
}

RealPoint arc_midpoint(const Arc& a) {
  const double width = kTwoPi * std::ldexp(1.0, -a.level);
  const double theta = (a.index + 0.5) * width;
  return RealPoint{a.circle.x1 + a.circle.r * std::cos(theta),
                   a.circle.x2 + a.circle.r * std::sin(theta)};
}

bool cone_contains(const ParamPoint& bp, const Arc& a, const RealPoint& w) {
  const double angle = angle_from(bp.center(), w);
  return angle_bucket(angle, a.level) == a.index;
}

Arc parent_arc(const Arc& child, const DyadicCube& bp, Scale Sigma) {
  if (Sigma.k > child.level)
    throw std::invalid_argument("parent_arc: Sigma must be >= child scale");
  const ParamPoint pc = cube_center(bp);
  return arc_of(pc, Sigma, arc_midpoint(child));
}

}  // namespace flab
