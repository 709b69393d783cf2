#include "flab/tangency_lab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "flab/constants.hpp"
#include "flab/multiplicity.hpp"

namespace flab {

namespace {

// Hash key of the anchor cell at grid size `cell`.
std::pair<std::int64_t, std::int64_t> anchor_cell(const RealPoint& v,
                                                  double cell) {
  return {static_cast<std::int64_t>(std::floor(v.x / cell)),
          static_cast<std::int64_t>(std::floor(v.y / cell))};
}

// comparable(R1, R2, C) implies |v1 - v2| <= C * sigma, so anchors farther
// apart than that are incomparable without sampling.
bool maybe_comparable(const Rect& a, const Rect& b, double C) {
  const double reach = C * a.sigma * (1.0 + 1e-9);
  return std::hypot(a.v.x - b.v.x, a.v.y - b.v.y) <= reach;
}

}  // namespace

RectFamily max_incomparable_subset(const std::vector<Rect>& rects, double C,
                                   const SamplingSpec& sampling) {
  if (C < 1.0)
    throw std::invalid_argument("max_incomparable_subset: C >= 1 required");
  RectFamily fam;
  fam.incomparability = C;
  if (rects.empty()) return fam;
  const double d0 = rects.front().delta, s0 = rects.front().sigma;
  for (const Rect& r : rects)
    if (r.delta != d0 || r.sigma != s0)
      throw std::invalid_argument(
          "max_incomparable_subset: rects must share (delta, sigma)");

  const double cell = std::max(C * s0, 1e-12);
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<int>> grid;
  for (const Rect& r : rects) {
    const auto [cx, cy] = anchor_cell(r.v, cell);
    bool clashes = false;
    for (std::int64_t dx = -1; dx <= 1 && !clashes; ++dx)
      for (std::int64_t dy = -1; dy <= 1 && !clashes; ++dy) {
        auto it = grid.find({cx + dx, cy + dy});
        if (it == grid.end()) continue;
        for (int k : it->second)
          if (maybe_comparable(r, fam.rects[k], C) &&
              comparable(r, fam.rects[k], C, sampling)) {
            clashes = true;
            break;
          }
      }
    if (!clashes) {
      grid[{cx, cy}].push_back(static_cast<int>(fam.rects.size()));
      fam.rects.push_back(r);
    }
  }

  if (fam.rects.size() <= 10000) {
    for (size_t i = 0; i < fam.rects.size(); ++i)
      for (size_t j = i + 1; j < fam.rects.size(); ++j)
        if (maybe_comparable(fam.rects[i], fam.rects[j], C) &&
            comparable(fam.rects[i], fam.rects[j], C, sampling))
          throw std::logic_error(
              "max_incomparable_subset: survivors not pairwise incomparable");
  }
  return fam;
}

BoundReport density_check(const RectFamily& fam, const Rect& big, double A,
                          const SamplingSpec& sampling) {
  if (A < 1.0) throw std::invalid_argument("density_check: A >= 1 required");
  const Rect bigA = rect_dilate(big, A);
  for (const Rect& r : fam.rects)
    if (!rect_subset(r, bigA, sampling))
      throw std::invalid_argument(
          "density_check: family member escapes dilate(big, A)");
  BoundReport rep;
  rep.lhs = static_cast<long>(fam.rects.size());
  rep.rhs = std::pow(A, 10.0);
  rep.ratio = rep.rhs > 0 ? rep.lhs / rep.rhs : 0.0;
  return rep;
}

double wolff_rhs(long W_size, long B_size, long m, long n, Scale delta,
                 double eps) {
  if (W_size < 1 || B_size < 1 || m < 1 || n < 1 || m > W_size || n > B_size)
    throw std::invalid_argument("wolff_rhs: need 1 <= m <= |W|, 1 <= n <= |B|");
  const double w = static_cast<double>(W_size), b = static_cast<double>(B_size);
  const double bracket =
      std::pow(w * b / (static_cast<double>(m) * n), 0.75) + w / m + b / n;
  return std::pow(delta.value(), -constants::k_w * eps) * bracket;
}

double thm4_rhs(long W_size, long B_size, long m, long n, long X_lambda,
                long Y_lambda, Scale delta, double eta) {
  if (W_size < 1 || B_size < 1 || m < 1 || n < 1 || m > W_size || n > B_size)
    throw std::invalid_argument("thm4_rhs: need 1 <= m <= |W|, 1 <= n <= |B|");
  if (X_lambda < 1 || Y_lambda < 1)
    throw std::invalid_argument("thm4_rhs: X_lambda, Y_lambda >= 1 required");
  const double w = static_cast<double>(W_size), b = static_cast<double>(B_size);
  const double xy = static_cast<double>(X_lambda) * Y_lambda;
  const double bracket =
      std::pow(w * b / (static_cast<double>(m) * n), 0.75) * std::sqrt(xy) +
      (w / m) * xy + (b / n) * xy;
  return std::pow(delta.value(), -eta) * bracket;
}

namespace {

// Transversal intersection points of two circles (requires |r1-r2| < d < r1+r2).
std::pair<RealPoint, RealPoint> circle_crossings(const ParamPoint& p,
                                                 const ParamPoint& q) {
  const double dx = q.x1 - p.x1, dy = q.x2 - p.x2;
  const double d = std::hypot(dx, dy);
  if (d <= std::abs(p.r - q.r) || d >= p.r + q.r)
    throw std::invalid_argument("circle_crossings: circles do not cross");
  const double a = (d * d + p.r * p.r - q.r * q.r) / (2.0 * d);
  const double h = std::sqrt(std::max(0.0, p.r * p.r - a * a));
  const double bx = p.x1 + a * dx / d, by = p.x2 + a * dy / d;
  const double px = -dy / d, py = dx / d;
  return {RealPoint{bx + h * px, by + h * py},
          RealPoint{bx - h * px, by - h * py}};
}

RealPoint closest_circle_point(const ParamPoint& p, const RealPoint& w) {
  const double dx = w.x - p.x1, dy = w.y - p.x2;
  const double d = std::hypot(dx, dy);
  if (d < 1e-300) return {p.x1 + p.r, p.x2};
  return {p.x1 + p.r * dx / d, p.x2 + p.r * dy / d};
}

}  // namespace

Ex1Family gen_example_ex1(Scale delta, Scale lambda) {
  if (lambda.k < 2 || delta.k < lambda.k)
    throw std::invalid_argument("gen_example_ex1: need delta <= lambda <= 1/4");
  const long N = 1L << (delta.k - lambda.k);  // lambda / delta
  if (N < 4)
    throw std::invalid_argument("gen_example_ex1: lambda/delta >= 4 required");
  const double d = delta.value(), lam = lambda.value();
  const double sqlam = std::sqrt(lam);
  const double sig = d / sqlam;  // rectangle diameter scale

  Ex1Family fam;
  fam.W.reserve(N);
  fam.B.reserve(N);
  // W_i tangent to the x-axis from above at x = i*sig; radii step by delta so
  // consecutive circles separate by one thickness inside the window.
  // B_j tangent to y = -lambda from above at x = j*sig.  Every (i, j) pair
  // then has tangency || |c-c'| - |r-r'| || on the order of lambda and
  // crosses transversally inside the window.
  for (long i = 0; i < N; ++i) {
    const double r = 1.0 + i * d;
    fam.W.push_back(ParamPoint{i * sig, r, r});
  }
  for (long j = 0; j < N; ++j) {
    const double r = 0.5 + j * d;
    fam.B.push_back(ParamPoint{j * sig, r - lam, r});
  }

  const double x_mid = 0.5 * (N - 1) * sig;  // window center abscissa
  const ParamPoint flat{0.0, 1000.0, 1000.0};
  fam.window = make_rect(flat, closest_circle_point(flat, {x_mid, 0.0}), lam,
                         std::min(1.0, sqlam));

  const RealPoint target{x_mid, 0.0};
  fam.rects.reserve(static_cast<size_t>(N) * N);
  for (long i = 0; i < N; ++i)
    for (long j = 0; j < N; ++j) {
      const auto [u, v] = circle_crossings(fam.W[i], fam.B[j]);
      const double du = std::hypot(u.x - target.x, u.y - target.y);
      const double dv = std::hypot(v.x - target.x, v.y - target.y);
      fam.rects.push_back(make_rect(fam.W[i], du <= dv ? u : v, d, sig));
    }
  return fam;
}

namespace {

// Random domain circles split alternately into W and B.
void gen_bipartite(std::uint64_t seed, long count, std::vector<ParamPoint>* W,
                   std::vector<ParamPoint>* B) {
  std::mt19937_64 rng(seed * 0x2545f4914f6cdd1dULL + 11);
  std::uniform_real_distribution<double> ux(-0.25, 0.25), ur(0.5, 1.0);
  for (long i = 0; i < count; ++i) {
    const ParamPoint p{ux(rng), ux(rng), ur(rng)};
    (i % 2 == 0 ? W : B)->push_back(p);
  }
}

}  // namespace

std::vector<BoundReport> tangency_experiment(const ScenarioSpec& scenario) {
  if (scenario.generator != "ex1" && scenario.generator != "bipartite")
    throw std::invalid_argument("tangency_experiment: generator must be ex1 or bipartite (got '" +
                                scenario.generator + "')");
  if (scenario.delta_exps.empty())
    throw std::invalid_argument("tangency_experiment: delta_exps is empty");
  if (scenario.m < 1 || scenario.n < 1)
    throw std::invalid_argument("tangency_experiment: m, n >= 1 required");
  if (scenario.lambda_exp < 2)
    throw std::invalid_argument("tangency_experiment: lambda_exp >= 2 required");

  std::vector<BoundReport> out;
  for (int ke : scenario.delta_exps) {
    if (ke <= scenario.lambda_exp)
      throw std::invalid_argument("tangency_experiment: delta_exps must exceed lambda_exp");
    const Scale delta{ke};
    const Scale lambda{scenario.lambda_exp};

    std::vector<ParamPoint> W, B;
    std::vector<Rect> candidates;
    double extraction_C = constants::incomparability;
    if (scenario.generator == "ex1") {
      Ex1Family fam = gen_example_ex1(delta, lambda);
      W = fam.W;
      B = fam.B;
      candidates = fam.rects;
      extraction_C = constants::ex1_incomparability;
    } else {
      gen_bipartite(scenario.seed, 2L << std::min(ke / 2 + 2, 7), &W, &B);
      const double lam = lambda.value();
      for (const ParamPoint& p : W)
        for (const ParamPoint& q : B) {
          const double dl = tangency(p, q);
          if (dl < lam / 2 || dl > 2 * lam) continue;
          for (const Rect& r : intersection_cover(p, q, delta.value()))
            candidates.push_back(make_rect(
                r.p, r.v, r.delta, scale_round_up(r.sigma).value()));
        }
      // Covers of different pairs share delta but can differ in sigma; after
      // dyadic rounding, keep the dominant sigma so extraction is well posed.
      std::map<double, long> by_sigma;
      for (const Rect& r : candidates) by_sigma[r.sigma]++;
      double best_sigma = 0;
      long best_n = -1;
      for (auto& [s, c] : by_sigma)
        if (c > best_n) best_sigma = s, best_n = c;
      std::vector<Rect> kept;
      for (const Rect& r : candidates)
        if (r.sigma == best_sigma) kept.push_back(r);
      candidates.swap(kept);
    }

    // Type filter.
    TypeSpec tspec;
    tspec.W = W;
    tspec.B = B;
    tspec.eps = scenario.eps;
    std::vector<Rect> typed;
    for (const Rect& r : candidates) {
      auto [mm, nn] = rect_type(r, tspec, delta);
      if (mm >= scenario.m && nn >= scenario.n) typed.push_back(r);
    }

    RectFamily fam = max_incomparable_subset(typed, extraction_C);

    BoundReport rep;
    rep.delta_exp = ke;
    rep.lhs = static_cast<long>(fam.rects.size());
    if (scenario.generator == "ex1") {
      const long ratio = 1L << (ke - scenario.lambda_exp);
      rep.rhs = thm4_rhs(static_cast<long>(W.size()), static_cast<long>(B.size()),
                         scenario.m, scenario.n, 1, ratio, delta, scenario.eta);
    } else {
      rep.rhs = wolff_rhs(std::max<long>(1, static_cast<long>(W.size())),
                          std::max<long>(1, static_cast<long>(B.size())),
                          scenario.m, scenario.n, delta, scenario.eps);
    }
    rep.ratio = rep.rhs > 0 ? rep.lhs / rep.rhs : 0.0;
    out.push_back(rep);
  }
  return out;
}

}  // namespace flab
