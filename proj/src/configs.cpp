#include "flab/configs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "flab/constants.hpp"
#include "flab/io.hpp"

namespace flab {

long Configuration::pair_count() const {
  long n = 0;
  for (const auto& f : fibers) n += static_cast<long>(f.size());
  return n;
}

ValidationReport validate(const Configuration& omega) {
  ValidationReport rep;
  if (omega.support.empty()) {
    rep.ok = false;
    rep.detail = "empty support";
    return rep;
  }
  if (omega.support.size() != omega.fibers.size()) {
    rep.ok = false;
    rep.detail = "support/fiber size mismatch";
    return rep;
  }
  if (omega.sigma.k > omega.delta.k) {
    rep.ok = false;
    rep.detail = "requires sigma >= delta is violated (sigma coarser than delta expected)";
  }
  const std::int64_t n_arcs = std::int64_t{1} << omega.sigma.k;
  for (size_t i = 0; i < omega.fibers.size(); ++i) {
    const auto& f = omega.fibers[i];
    if (static_cast<long>(f.size()) != omega.M) {
      rep.ok = false;
      rep.detail = "fiber size != M at circle " + std::to_string(i);
      return rep;
    }
    for (std::int64_t a : f) {
      if (a < 0 || a >= n_arcs) {
        rep.ok = false;
        rep.detail = "arc index out of range at circle " + std::to_string(i);
        return rep;
      }
    }
  }
  rep.support_report =
      check_delta_s_set(omega.support, omega.delta, omega.s, omega.C);
  if (!rep.support_report.is_set) {
    rep.ok = false;
    rep.detail = "support spread constant exceeds C";
    return rep;
  }
  for (size_t i = 0; i < omega.fibers.size(); ++i) {
    const SpreadReport fr =
        check_sigma_s_arcset(omega.fibers[i], omega.sigma, omega.s, omega.C);
    rep.worst_fiber_C = std::max(rep.worst_fiber_C, fr.min_C);
    if (!fr.is_set) {
      rep.ok = false;
      rep.detail = "fiber spread constant exceeds C at circle " + std::to_string(i);
      return rep;
    }
  }
  return rep;
}

long subset_size(const PairSubset& G) {
  long n = 0;
  for (const auto& g : G) n += static_cast<long>(g.size());
  return n;
}

PairSubset full_subset(const Configuration& omega) { return omega.fibers; }

Configuration refine(const Configuration& omega, const PairSubset& G,
                     double c) {
  if (!(c > 0.0) || c > 1.0)
    throw std::invalid_argument("refine: c must be in (0,1]");
  if (G.size() != omega.support.size())
    throw std::invalid_argument("refine: subset shape mismatch");
  const long total = static_cast<long>(omega.support.size()) * omega.M;
  const long g_size = subset_size(G);
  if (static_cast<double>(g_size) < c * total * (1.0 - constants::geo_tol))
    throw std::invalid_argument("refine: |G| < c|Omega|");

  const double threshold = c * omega.M / 2.0;
  const long keepM = static_cast<long>(std::ceil(threshold - constants::geo_tol));

  Configuration out;
  out.delta = omega.delta;
  out.sigma = omega.sigma;
  out.s = omega.s;
  out.C = 2.0 * omega.C / c;
  out.M = std::max<long>(keepM, 1);
  for (size_t i = 0; i < omega.support.size(); ++i) {
    std::vector<std::int64_t> g = G[i];
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    if (static_cast<double>(g.size()) < threshold - constants::geo_tol) continue;
    g.resize(static_cast<size_t>(out.M));  // ascending arc index kept
    out.support.push_back(omega.support[i]);
    out.fibers.push_back(std::move(g));
  }

  // Postconditions of the refinement principle.
  const ValidationReport rep = validate(out);
  if (!rep.ok)
    throw std::logic_error("refine: output fails validation: " + rep.detail);
  const double kept = static_cast<double>(out.pair_count());
  if (kept < (c * c / 4.0) * total * (1.0 - 1e-9))
    throw std::logic_error("refine: retained mass below (c^2/4)|Omega|");
  return out;
}

SkeletonMap skeleton(const Configuration& omega, Scale Delta, Scale Sigma) {
  if (Delta.k > omega.delta.k)
    throw std::invalid_argument("skeleton: requires delta <= Delta");
  if (Sigma.k > omega.sigma.k)
    throw std::invalid_argument("skeleton: requires sigma <= Sigma");
  if (Sigma.k > Delta.k)
    throw std::invalid_argument("skeleton: requires Delta <= Sigma");

  SkeletonMap out;
  out.Delta = Delta;
  out.Sigma = Sigma;
  // Deterministic grouping: (cube key, arc index) -> members.
  std::map<std::pair<std::uint64_t, std::int64_t>,
           std::pair<SkeletonPair, std::vector<ChildRef>>>
      groups;
  for (size_t i = 0; i < omega.support.size(); ++i) {
    const ParamPoint& p = omega.support[i];
    const DyadicCube big = cube_parent(cube_of(p, omega.delta), Delta);
    for (std::int64_t a : omega.fibers[i]) {
      const Arc child{p, omega.sigma.k, a};
      const Arc parent = parent_arc(child, big, Sigma);
      auto& slot = groups[{cube_key(big), parent.index}];
      slot.first = SkeletonPair{big, parent};
      slot.second.push_back(ChildRef{static_cast<int>(i), a});
    }
  }
  for (auto& [key, slot] : groups) {
    out.parents.push_back(slot.first);
    out.members.push_back(std::move(slot.second));
  }
  return out;
}

RegularizedSkeleton regularized_skeleton(const Configuration& omega,
                                         Scale Delta, Scale Sigma) {
  const SkeletonMap full = skeleton(omega, Delta, Sigma);
  const long total_pairs = omega.pair_count();

  // Step (i): band cubes by their delta-cube population and keep the band
  // with the largest retained pair mass (ties: lowest band).
  std::map<std::uint64_t, long> cube_pop;   // distinct support cubes per big cube
  std::map<std::uint64_t, long> cube_mass;  // pairs per big cube
  {
    std::map<std::uint64_t, std::map<std::uint64_t, bool>> fine;
    for (size_t i = 0; i < omega.support.size(); ++i) {
      const DyadicCube q = cube_of(omega.support[i], omega.delta);
      const std::uint64_t big = cube_key(cube_parent(q, Delta));
      fine[big][cube_key(q)] = true;
      cube_mass[big] += static_cast<long>(omega.fibers[i].size());
    }
    for (const auto& [big, kids] : fine)
      cube_pop[big] = static_cast<long>(kids.size());
  }
  std::map<int, long> band_mass;
  for (const auto& [big, pop] : cube_pop) {
    const int band = static_cast<int>(std::floor(std::log2(static_cast<double>(pop)))) + 1;
    band_mass[band] += cube_mass[big];
  }
  int best_i = band_mass.begin()->first;
  for (const auto& [band, mass] : band_mass)
    if (mass > band_mass[best_i]) best_i = band;
  std::map<std::uint64_t, bool> cube_kept;
  for (const auto& [big, pop] : cube_pop) {
    const int band = static_cast<int>(std::floor(std::log2(static_cast<double>(pop)))) + 1;
    if (band == best_i) cube_kept[big] = true;
  }

  // Step (ii): band parent pairs by fiber-product size; dominant band per
  // cube, then dominant band j0 across cubes.
  auto size_band = [](size_t n) {
    return static_cast<int>(std::floor(std::log2(static_cast<double>(n)))) + 1;
  };
  std::map<std::uint64_t, std::map<int, long>> per_cube_bands;
  for (size_t g = 0; g < full.parents.size(); ++g) {
    const std::uint64_t big = cube_key(full.parents[g].cube);
    if (!cube_kept.count(big)) continue;
    per_cube_bands[big][size_band(full.members[g].size())] +=
        static_cast<long>(full.members[g].size());
  }
  std::map<std::uint64_t, int> cube_band;  // dominant j per cube
  std::map<int, long> j_mass;
  for (const auto& [big, bands] : per_cube_bands) {
    int best = bands.begin()->first;
    for (const auto& [j, mass] : bands)
      if (mass > bands.at(best)) best = j;
    cube_band[big] = best;
    j_mass[best] += bands.at(best);
  }
  int j0 = j_mass.begin()->first;
  for (const auto& [j, mass] : j_mass)
    if (mass > j_mass[j0]) j0 = j;

  // Surviving parent pairs: kept cube, cube's dominant band == j0, pair in band j0.
  std::map<std::uint64_t, std::vector<size_t>> survivors;  // big cube -> group ids
  for (size_t g = 0; g < full.parents.size(); ++g) {
    const std::uint64_t big = cube_key(full.parents[g].cube);
    auto it = cube_band.find(big);
    if (it == cube_band.end() || it->second != j0) continue;
    if (size_band(full.members[g].size()) != j0) continue;
    survivors[big].push_back(g);
  }

  // Step (iii): constant skeleton fiber size M_Sigma (ascending arc index).
  long M_Sigma = 0;
  for (const auto& [big, groups] : survivors) {
    const long n = static_cast<long>(groups.size());
    M_Sigma = (M_Sigma == 0) ? n : std::min(M_Sigma, n);
  }
  if (M_Sigma == 0)
    throw std::logic_error("regularized_skeleton: empty survivor set");

  RegularizedSkeleton out;
  out.M_Sigma = M_Sigma;
  out.j0 = j0;
  out.map.Delta = Delta;
  out.map.Sigma = Sigma;
  out.G.assign(omega.support.size(), {});
  out.skel.delta = Delta;
  out.skel.sigma = Sigma;
  out.skel.s = omega.s;
  out.skel.M = M_Sigma;

  for (const auto& [big, groups] : survivors) {
    std::vector<size_t> sorted = groups;
    std::sort(sorted.begin(), sorted.end(), [&](size_t a, size_t b) {
      return full.parents[a].arc.index < full.parents[b].arc.index;
    });
    sorted.resize(static_cast<size_t>(M_Sigma));
    std::vector<std::int64_t> fiber;
    for (size_t g : sorted) {
      fiber.push_back(full.parents[g].arc.index);
      out.map.parents.push_back(full.parents[g]);
      out.map.members.push_back(full.members[g]);
      for (const ChildRef& c : full.members[g])
        out.G[static_cast<size_t>(c.point)].push_back(c.arc);
    }
    out.skel.support.push_back(cube_center(full.parents[sorted[0]].cube));
    out.skel.fibers.push_back(std::move(fiber));
  }
  for (auto& g : out.G) std::sort(g.begin(), g.end());

  // Measured spread constant of the skeleton configuration.
  out.skel.C = check_delta_s_set(out.skel.support, Delta, out.skel.s, 1.0).min_C;
  for (const auto& f : out.skel.fibers)
    out.skel.C = std::max(out.skel.C,
                          check_sigma_s_arcset(f, Sigma, out.skel.s, 1.0).min_C);
  out.measured_C = out.skel.C;

  // Retained-mass guarantee (polylog slack).
  const double logs = std::max(1.0, static_cast<double>(omega.delta.k));
  const double bound =
      std::pow(logs, -constants::k_polylog) * static_cast<double>(total_pairs);
  if (static_cast<double>(subset_size(out.G)) < bound)
    throw std::logic_error("regularized_skeleton: retained mass below polylog bound");
  return out;
}

void save_configuration(const std::string& path_base,
                        const Configuration& omega) {
  std::vector<std::vector<std::string>> rows;
  for (size_t i = 0; i < omega.support.size(); ++i) {
    const ParamPoint& p = omega.support[i];
    for (std::int64_t a : omega.fibers[i]) {
      rows.push_back({io::fmt(p.x1), io::fmt(p.x2), io::fmt(p.r),
                      std::to_string(omega.sigma.k), std::to_string(a)});
    }
  }
  io::write_csv(path_base + ".csv", "x1,x2,r,arc_level,arc_index", rows);
  std::ofstream meta(path_base + ".meta", std::ios::binary);
  if (!meta) throw std::runtime_error("save_configuration: cannot open " +
                                      path_base + ".meta");
  meta << "delta_exp=" << omega.delta.k << "\n"
       << "sigma_exp=" << omega.sigma.k << "\n"
       << "s=" << io::fmt(omega.s) << "\n"
       << "C=" << io::fmt(omega.C) << "\n"
       << "M=" << omega.M << "\n";
}

Configuration load_configuration(const std::string& path_base) {
  const auto meta = io::parse_config_file(path_base + ".meta");
  io::require_keys(meta, {"delta_exp", "sigma_exp", "s", "C", "M"});
  Configuration omega;
  omega.delta = Scale{static_cast<int>(io::get_long(meta, "delta_exp", 0))};
  omega.sigma = Scale{static_cast<int>(io::get_long(meta, "sigma_exp", 0))};
  omega.s = io::get_double(meta, "s", 1.0);
  omega.C = io::get_double(meta, "C", 1.0);
  omega.M = io::get_long(meta, "M", 1);

  std::ifstream in(path_base + ".csv", std::ios::binary);
  if (!in) throw std::runtime_error("load_configuration: cannot open " +
                                    path_base + ".csv");
  std::string line;
  if (!std::getline(in, line) || line != "x1,x2,r,arc_level,arc_index")
    throw std::runtime_error("load_configuration: bad header in " + path_base);
  std::map<std::string, size_t> index;  // "x1,x2,r" -> support slot
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string x1, x2, r, lvl, idx;
    if (!std::getline(ss, x1, ',') || !std::getline(ss, x2, ',') ||
        !std::getline(ss, r, ',') || !std::getline(ss, lvl, ',') ||
        !std::getline(ss, idx, ','))
      throw std::runtime_error("load_configuration: bad row: " + line);
    if (std::stoi(lvl) != omega.sigma.k)
      throw std::runtime_error("load_configuration: arc_level != sigma_exp");
    const std::string key = x1 + "," + x2 + "," + r;
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, omega.support.size()).first;
      omega.support.push_back(
          ParamPoint{std::stod(x1), std::stod(x2), std::stod(r)});
      omega.fibers.emplace_back();
    }
    omega.fibers[it->second].push_back(std::stoll(idx));
  }
  for (auto& f : omega.fibers) std::sort(f.begin(), f.end());
  return omega;
}

}  // namespace flab
