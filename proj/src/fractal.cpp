#include "flab/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "flab/constants.hpp"

namespace flab {

namespace {

// Aggregates delta-cube counts per coarser cube.
std::map<std::uint64_t, std::pair<DyadicCube, long>> group_counts(
    const std::vector<DyadicCube>& delta_cubes, Scale r) {
  std::map<std::uint64_t, std::pair<DyadicCube, long>> groups;
  for (const DyadicCube& q : delta_cubes) {
    const DyadicCube parent = cube_parent(q, r);
    auto& slot = groups[cube_key(parent)];
    slot.first = parent;
    slot.second += 1;
  }
  return groups;
}

std::vector<DyadicCube> distinct_cubes(const std::vector<ParamPoint>& P,
                                       Scale delta) {
  std::map<std::uint64_t, DyadicCube> seen;
  for (const ParamPoint& p : P) {
    const DyadicCube q = cube_of(p, delta);
    seen.emplace(cube_key(q), q);
  }
  std::vector<DyadicCube> out;
  out.reserve(seen.size());
  for (auto& [k, q] : seen) out.push_back(q);
  return out;
}

}  // namespace

SpreadReport check_delta_s_set(const std::vector<ParamPoint>& P, Scale delta,
                               double s, double C) {
  if (P.empty()) throw std::invalid_argument("check_delta_s_set: empty set");
  if (s < 0 || s > 3)
    throw std::invalid_argument("check_delta_s_set: s outside [0,3]");
  const std::vector<DyadicCube> cubes = distinct_cubes(P, delta);
  const double total = static_cast<double>(cubes.size());

  SpreadReport rep;
  rep.min_C = 1.0;
  for (int k = delta.k; k >= 0; --k) {
    const Scale r{k};
    for (const auto& [key, slot] : group_counts(cubes, r)) {
      const long count = slot.second;
      if (count < 2) continue;  // single-cube occupancy never constrains
      const double need = count / (std::pow(r.value(), s) * total);
      if (need > rep.min_C) {
        rep.min_C = need;
        rep.witness_cube = slot.first;
        rep.witness_scale = r;
      }
    }
  }
  rep.is_set = rep.min_C <= C * (1.0 + constants::geo_tol);
  return rep;
}

SpreadReport check_sigma_s_arcset(const std::vector<std::int64_t>& arc_indices,
                                  Scale sigma, double s, double C) {
  if (arc_indices.empty())
    throw std::invalid_argument("check_sigma_s_arcset: empty fiber");
  std::vector<std::int64_t> idx = arc_indices;
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  const double total = static_cast<double>(idx.size());

  SpreadReport rep;
  rep.min_C = 1.0;
  for (int j = sigma.k; j >= 0; --j) {
    const int shift = sigma.k - j;
    std::unordered_map<std::int64_t, long> buckets;
    for (std::int64_t i : idx) buckets[i >> shift] += 1;
    const double rv = std::ldexp(1.0, -j);
    for (const auto& [bucket, count] : buckets) {
      if (count < 2) continue;
      const double need = count / (std::pow(rv, s) * total);
      if (need > rep.min_C) {
        rep.min_C = need;
        rep.witness_cube = DyadicCube{j, bucket, 0, 0};
        rep.witness_scale = Scale{j};
      }
    }
  }
  rep.is_set = rep.min_C <= C * (1.0 + constants::geo_tol);
  return rep;
}

std::vector<ParamPoint> uniformize(const std::vector<ParamPoint>& P, int T,
                                   int m) {
  if (T < 1 || m < 1) throw std::invalid_argument("uniformize: T, m >= 1");
  const Scale delta{m * T};
  if (P.empty()) return {};

  // Work on distinct delta-cubes; points are restored at the end.
  std::vector<DyadicCube> alive = distinct_cubes(P, delta);
  const long initial = static_cast<long>(alive.size());

  // Fine to coarse: each step discards whole subtrees rooted at the fine
  // scale, so the constant branching established at finer scales survives.
  for (int j = m; j >= 1; --j) {
    const Scale fine{j * T};
    const Scale coarse{(j - 1) * T};

    // parent key -> (child key -> delta-mass), deterministic order.
    std::map<std::uint64_t, std::map<std::uint64_t, long>> tree;
    for (const DyadicCube& q : alive) {
      tree[cube_key(cube_parent(q, coarse))][cube_key(cube_parent(q, fine))] += 1;
    }

    // Pigeonhole parents into dyadic bands of their branching count and pick
    // the band retaining the most delta-mass (after trimming each parent to
    // the band's lower bound of children, keeping the heaviest children).
    const int max_band = 3 * T + 1;
    std::vector<long> band_mass(static_cast<size_t>(max_band) + 1, 0);
    for (const auto& [pk, children] : tree) {
      const long n = static_cast<long>(children.size());
      const int band = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
      std::vector<long> masses;
      masses.reserve(children.size());
      for (const auto& [ck, mass] : children) masses.push_back(mass);
      std::sort(masses.rbegin(), masses.rend());
      const long keep = 1L << band;
      long kept_mass = 0;
      for (long i = 0; i < keep && i < static_cast<long>(masses.size()); ++i)
        kept_mass += masses[i];
      band_mass[static_cast<size_t>(band)] += kept_mass;
    }
    int best_band = 0;
    for (int b = 1; b <= max_band; ++b)
      if (band_mass[static_cast<size_t>(b)] > band_mass[static_cast<size_t>(best_band)])
        best_band = b;  // ties: lowest band index wins

    // Keep parents of the winning band and their heaviest 2^band children.
    std::unordered_map<std::uint64_t, bool> child_kept;
    for (const auto& [pk, children] : tree) {
      const long n = static_cast<long>(children.size());
      const int band = static_cast<int>(std::floor(std::log2(static_cast<double>(n))));
      if (band != best_band) continue;
      std::vector<std::pair<long, std::uint64_t>> ranked;  // (-mass, key)
      ranked.reserve(children.size());
      for (const auto& [ck, mass] : children) ranked.push_back({-mass, ck});
      std::sort(ranked.begin(), ranked.end());
      const long keep = 1L << band;
      for (long i = 0; i < keep && i < static_cast<long>(ranked.size()); ++i)
        child_kept[ranked[static_cast<size_t>(i)].second] = true;
    }

    std::vector<DyadicCube> next;
    next.reserve(alive.size());
    for (const DyadicCube& q : alive)
      if (child_kept.count(cube_key(cube_parent(q, fine)))) next.push_back(q);
    alive = std::move(next);
  }

  // Restore original points inside surviving delta-cubes.
  std::unordered_map<std::uint64_t, bool> alive_keys;
  for (const DyadicCube& q : alive) alive_keys[cube_key(q)] = true;
  std::vector<ParamPoint> out;
  for (const ParamPoint& p : P)
    if (alive_keys.count(cube_key(cube_of(p, delta)))) out.push_back(p);

  // Contract: exact uniformity and the (4T)^{-m} mass bound.
  std::vector<Scale> scales;
  for (int j = 1; j <= m; ++j) scales.push_back(Scale{j * T});
  branching_profile(out, scales);  // throws if not uniform
  const double bound = std::pow(4.0 * T, -m) * initial;
  if (static_cast<double>(alive.size()) < bound)
    throw std::logic_error("uniformize: mass bound violated");
  return out;
}

BranchingProfile branching_profile(const std::vector<ParamPoint>& P,
                                   const std::vector<Scale>& scales) {
  if (P.empty()) throw std::invalid_argument("branching_profile: empty set");
  BranchingProfile prof;
  Scale prev{0};
  for (const Scale& sc : scales) {
    if (sc.k <= prev.k && !(prev.k == 0 && sc.k == 0))
      throw std::invalid_argument("branching_profile: scales must refine");
    std::map<std::uint64_t, std::map<std::uint64_t, bool>> tree;
    for (const ParamPoint& p : P) {
      const DyadicCube q = cube_of(p, sc);
      tree[cube_key(cube_of(p, prev))][cube_key(q)] = true;
    }
    long n = -1;
    for (const auto& [pk, children] : tree) {
      const long c = static_cast<long>(children.size());
      if (n < 0) n = c;
      if (c != n)
        throw std::runtime_error("branching_profile: non-uniform at scale 2^-" +
                                 std::to_string(sc.k));
    }
    prof.scales.push_back(sc);
    prof.counts.push_back(n);
    prev = sc;
  }
  return prof;
}

namespace {

// Recursive selector: subdivide [lo, lo+2^{bits}) in chunks of up to two
// bits, spreading a fixed leaf budget evenly over a seed-rotated subset of
// cells at every level.  Produces exactly `budget` leaves.
void cantor_indices(std::int64_t lo, int bits, long budget,
                    std::mt19937_64& rng, std::vector<std::int64_t>& out) {
  if (bits == 0) {
    out.push_back(lo);
    return;
  }
  const int chunk = bits >= 2 ? 2 : 1;
  const int n = 1 << chunk;
  int b = static_cast<int>(
      std::ceil(std::pow(static_cast<double>(budget),
                         static_cast<double>(chunk) / bits) -
                1e-9));
  b = std::clamp(b, 1, n);
  b = static_cast<int>(std::min<long>(b, budget));
  const int rot = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  const long base = budget / b;
  const long extra = budget % b;
  for (int j = 0; j < b; ++j) {
    const long child_budget = base + (j < extra ? 1 : 0);
    const int cell = (j * n / b + rot) % n;
    cantor_indices(lo + (static_cast<std::int64_t>(cell) << (bits - chunk)),
                   bits - chunk, child_budget, rng, out);
  }
}

long cantor_budget(double s, int bits) {
  return static_cast<long>(
      std::ceil(std::exp2(bits * s) * (1.0 - 1e-12)));
}

}  // namespace

std::vector<ParamPoint> gen_cantor_params(double s, Scale delta,
                                          std::uint64_t seed) {
  if (s < 0.0 || s > 1.0)
    throw std::invalid_argument("gen_cantor_params: requires 0 <= s <= 1");
  const int bits = delta.k - 1;  // r ranges over [1/2, 1), length 2^{-1}
  if (bits < 0) throw std::invalid_argument("gen_cantor_params: delta too coarse");
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  std::vector<std::int64_t> cells;
  cantor_indices(0, bits, cantor_budget(s, bits), rng, cells);
  std::sort(cells.begin(), cells.end());

  const double d = delta.value();
  std::vector<ParamPoint> out;
  out.reserve(cells.size());
  std::uniform_real_distribution<double> jit(-0.2, 0.2);
  for (std::int64_t c : cells) {
    const double r = 0.5 + (static_cast<double>(c) + 0.5) * d;
    out.push_back(ParamPoint{jit(rng) * d, jit(rng) * d, r});
  }
  return out;
}

std::vector<Arc> gen_cantor_arcs(const ParamPoint& p, double s, Scale delta,
                                 std::uint64_t seed) {
  if (s < 0.0 || s > 1.0)
    throw std::invalid_argument("gen_cantor_arcs: requires 0 <= s <= 1");
  std::mt19937_64 rng(seed * 0xbf58476d1ce4e5b9ULL + 3);
  std::vector<std::int64_t> cells;
  cantor_indices(0, delta.k, cantor_budget(s, delta.k), rng, cells);
  std::sort(cells.begin(), cells.end());
  std::vector<Arc> out;
  out.reserve(cells.size());
  for (std::int64_t c : cells) out.push_back(Arc{p, delta.k, c});
  return out;
}

ParamPoint invert_line(double a, double b, double c) {
  if (std::abs(a * a + b * b - 1.0) > 1e-9)
    throw std::invalid_argument("invert_line: (a,b) must be normalized");
  if (std::abs(c) <= constants::geo_tol)
    throw std::invalid_argument("invert_line: c = 0 maps to a line");
  return ParamPoint{a / (2.0 * c), -b / (2.0 * c), 1.0 / (2.0 * std::abs(c))};
}

}  // namespace flab
