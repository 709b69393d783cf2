#include "flab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "flab/configs.hpp"
#include "flab/constants.hpp"
#include "flab/dyadic.hpp"
#include "flab/fractal.hpp"
#include "flab/io.hpp"
#include "flab/multiplicity.hpp"
#include "flab/oracle.hpp"
#include "flab/tangency_lab.hpp"

namespace flab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Cfg = std::map<std::string, std::string>;
using Row = std::vector<std::string>;

std::uint64_t pick_seed(const Cfg& cfg, std::optional<std::uint64_t> seed) {
  if (seed) return *seed;
  return static_cast<std::uint64_t>(io::get_long(cfg, "seed", 0));
}

// Runs fn(i) for i in [0, n) on up to `jobs` workers.
void parallel_for(long n, int jobs, const std::function<void(long)>& fn) {
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (jobs == 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

// Sample points along the arcs of a fiber at angular step delta/(4r).
void rasterize_arc(const Arc& a, double delta, std::vector<RealPoint>* out) {
  const ParamPoint& p = a.circle;
  const double width = kTwoPi * std::ldexp(1.0, -a.level);
  const double lo = a.index * width;
  const long n =
      std::max<long>(2, static_cast<long>(std::ceil(width / (delta / (4.0 * p.r)))));
  for (long i = 0; i <= n; ++i) {
    const double theta = lo + width * i / n;
    out->push_back(
        {p.x1 + p.r * std::cos(theta), p.x2 + p.r * std::sin(theta)});
  }
}

struct BuiltConfig {
  std::vector<ParamPoint> support;
  std::vector<std::vector<Arc>> fibers;
  long M = 0;
};

// Shared generator for the dimension experiments: circle family plus one
// arc fiber per circle.
BuiltConfig build_family(const std::string& generator, double s, double t,
                         Scale delta, std::uint64_t seed) {
  BuiltConfig out;
  if (generator == "cantor") {
    out.support = gen_cantor_params(s, delta, seed);
    for (size_t i = 0; i < out.support.size(); ++i)
      out.fibers.push_back(
          gen_cantor_arcs(out.support[i], t, delta, seed + 101 * (i + 1)));
  } else if (generator == "grid") {
    const long nr = 1L << std::max(0, delta.k - 1);  // radii across [1/2, 1)
    const double d = delta.value();
    for (long i = 0; i < nr; ++i)
      out.support.push_back(ParamPoint{0.0, 0.0, 0.5 + (i + 0.5) * d});
    for (const ParamPoint& p : out.support) out.fibers.push_back(arcs(p, delta));
  } else if (generator == "inversion") {
    // Lines x = c with c drawn from the r-coordinates of a Cantor family,
    // mapped through complex inversion to circles through the origin.
    for (const ParamPoint& q : gen_cantor_params(s, delta, seed))
      out.support.push_back(invert_line(1.0, 0.0, q.r));
    for (size_t i = 0; i < out.support.size(); ++i)
      out.fibers.push_back(
          gen_cantor_arcs(out.support[i], t, delta, seed + 101 * (i + 1)));
  } else {
    throw std::invalid_argument(
        "config: generator must be cantor, grid or inversion (got '" +
        generator + "')");
  }
  out.M = out.fibers.empty() ? 0 : static_cast<long>(out.fibers.front().size());
  return out;
}

}  // namespace

void cmd_furstenberg(const Cfg& cfg, const std::string& out_dir,
                     std::optional<std::uint64_t> seed_opt, int jobs) {
  io::require_keys(cfg, {"generator", "delta_exps", "s", "t", "kappa", "seed"});
  const std::string generator = io::get_string(cfg, "generator", "cantor");
  const std::vector<int> exps = io::get_int_list(cfg, "delta_exps");
  if (exps.size() < 3)
    throw std::invalid_argument("config: delta_exps needs >= 3 scales");
  const double s = io::get_double(cfg, "s", 0.5);
  const double t = io::get_double(cfg, "t", 0.5);
  const double kappa = io::get_double(cfg, "kappa", s + t);
  if (s < 0 || s > 1 || t < 0 || t > 1)
    throw std::invalid_argument("config: s, t must lie in [0,1]");
  const std::uint64_t seed = pick_seed(cfg, seed_opt);
  const std::string hash = io::scenario_hash(cfg);

  struct PerScale {
    long count = 0;
    double bound = 0;
  };
  std::vector<PerScale> results(exps.size());
  parallel_for(static_cast<long>(exps.size()), jobs, [&](long i) {
    const Scale delta{exps[i]};
    const BuiltConfig fam = build_family(generator, s, t, delta, seed);
    std::vector<RealPoint> raster;
    for (const auto& fiber : fam.fibers)
      for (const Arc& a : fiber) rasterize_arc(a, delta.value(), &raster);
    results[i].count = covering_count_planar(raster, delta);
    results[i].bound = std::pow(delta.value(), kappa - s) * fam.M;
  });

  std::vector<Row> rows;
  std::vector<int> sorted_exps = exps;
  std::vector<long> counts;
  for (size_t i = 0; i < exps.size(); ++i) {
    counts.push_back(results[i].count);
    const double ratio =
        results[i].bound > 0 ? results[i].count / results[i].bound : 0.0;
    rows.push_back({std::to_string(exps[i]), std::to_string(results[i].count),
                    io::fmt(results[i].bound), io::fmt(ratio), hash});
  }
  io::write_csv(out_dir + "/furstenberg.csv",
                "delta_exp,count,bound,ratio,scenario", rows);

  const SlopeFit fit = oracle_dimension_slope(sorted_exps, counts);
  io::write_csv(out_dir + "/slope.csv", "slope,residual,target,scenario",
                {{io::fmt(fit.slope), io::fmt(fit.residual), io::fmt(s + t),
                  hash}});
  const std::string plot = io::write_plot_script(
      out_dir, "furstenberg.csv", "delta_exp", {"count", "bound"});
  io::write_manifest(out_dir, "furstenberg", cfg, seed,
                     {"furstenberg.csv", "slope.csv", plot});
}

void cmd_ex1(const Cfg& cfg, const std::string& out_dir,
             std::optional<std::uint64_t> seed_opt, int jobs) {
  io::require_keys(cfg, {"delta_exps", "lambda_exp", "seed"});
  const std::vector<int> exps = io::get_int_list(cfg, "delta_exps");
  const int lambda_exp = static_cast<int>(io::get_long(cfg, "lambda_exp", 4));
  if (exps.empty())
    throw std::invalid_argument("config: delta_exps is required");
  const std::uint64_t seed = pick_seed(cfg, seed_opt);
  const std::string hash = io::scenario_hash(cfg);

  std::vector<Row> rows(exps.size());
  parallel_for(static_cast<long>(exps.size()), jobs, [&](long i) {
    const int ke = exps[i];
    const Scale delta{ke};
    const Scale lambda{lambda_exp};
    const Ex1Family fam = gen_example_ex1(delta, lambda);
    const long N = 1L << (ke - lambda_exp);
    const RectFamily extracted =
        max_incomparable_subset(fam.rects, constants::ex1_incomparability);
    const RectFamily at100 =
        max_incomparable_subset(fam.rects, constants::incomparability);
    const double rhs = constants::c_ex1 * static_cast<double>(N) * N;
    const long lhs = static_cast<long>(extracted.rects.size());
    rows[i] = {std::to_string(ke), std::to_string(lhs), io::fmt(rhs),
               io::fmt(rhs > 0 ? lhs / rhs : 0.0),
               std::to_string(at100.rects.size()), hash};
  });
  io::write_csv(out_dir + "/ex1.csv",
                "delta_exp,lhs,rhs,ratio,lhs_at_100,scenario", rows);
  const std::string plot =
      io::write_plot_script(out_dir, "ex1.csv", "delta_exp", {"lhs", "rhs"});
  io::write_manifest(out_dir, "ex1", cfg, seed, {"ex1.csv", plot});
}

void cmd_tangency(const Cfg& cfg, const std::string& out_dir,
                  std::optional<std::uint64_t> seed_opt, int jobs) {
  io::require_keys(cfg, {"generator", "delta_exps", "lambda_exp", "eps", "eta",
                         "m", "n", "seed"});
  ScenarioSpec sc;
  sc.generator = io::get_string(cfg, "generator", "ex1");
  sc.delta_exps = io::get_int_list(cfg, "delta_exps");
  sc.lambda_exp = static_cast<int>(io::get_long(cfg, "lambda_exp", 2));
  sc.eps = io::get_double(cfg, "eps", 0.0);
  sc.eta = io::get_double(cfg, "eta", 0.0);
  sc.m = io::get_long(cfg, "m", 1);
  sc.n = io::get_long(cfg, "n", 1);
  sc.seed = pick_seed(cfg, seed_opt);
  (void)jobs;
  const std::string hash = io::scenario_hash(cfg);

  std::vector<Row> rows;
  for (const BoundReport& rep : tangency_experiment(sc))
    rows.push_back({std::to_string(rep.delta_exp), std::to_string(rep.lhs),
                    io::fmt(rep.rhs), io::fmt(rep.ratio), hash});
  io::write_csv(out_dir + "/tangency.csv", "delta_exp,lhs,rhs,ratio,scenario",
                rows);
  const std::string plot = io::write_plot_script(out_dir, "tangency.csv",
                                                 "delta_exp", {"lhs", "rhs"});
  io::write_manifest(out_dir, "tangency", cfg, sc.seed, {"tangency.csv", plot});
}

void cmd_uniformize(const Cfg& cfg, const std::string& out_dir,
                    std::optional<std::uint64_t> seed_opt, int jobs) {
  io::require_keys(cfg, {"count", "T", "m", "seed"});
  const long count = io::get_long(cfg, "count", 512);
  const int T = static_cast<int>(io::get_long(cfg, "T", 2));
  const int m = static_cast<int>(io::get_long(cfg, "m", 3));
  const std::uint64_t seed = pick_seed(cfg, seed_opt);
  (void)jobs;
  const std::string hash = io::scenario_hash(cfg);

  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ParamPoint> P;
  P.reserve(count);
  for (long i = 0; i < count; ++i) P.push_back({u(rng), u(rng), u(rng)});

  const std::vector<ParamPoint> out = uniformize(P, T, m);
  std::vector<Scale> scales;
  for (int j = 1; j <= m; ++j) scales.push_back(Scale{j * T});
  const BranchingProfile prof = branching_profile(out, scales);

  std::vector<Row> prows, in_rows, out_rows;
  for (size_t i = 0; i < prof.scales.size(); ++i)
    prows.push_back({std::to_string(prof.scales[i].k),
                     std::to_string(prof.counts[i]), hash});
  for (const ParamPoint& p : P)
    in_rows.push_back({io::fmt(p.x1), io::fmt(p.x2), io::fmt(p.r)});
  for (const ParamPoint& p : out)
    out_rows.push_back({io::fmt(p.x1), io::fmt(p.x2), io::fmt(p.r)});
  io::write_csv(out_dir + "/profile.csv", "scale_exp,count,scenario", prows);
  io::write_csv(out_dir + "/points_in.csv", "x1,x2,r", in_rows);
  io::write_csv(out_dir + "/points_out.csv", "x1,x2,r", out_rows);
  io::write_manifest(out_dir, "uniformize", cfg, seed,
                     {"profile.csv", "points_in.csv", "points_out.csv"});
}

void cmd_validate(const Cfg& cfg, const std::string& out_dir,
                  std::optional<std::uint64_t> seed_opt, int jobs) {
  io::require_keys(cfg, {"delta_exp", "s", "t", "C", "eps", "seed"});
  const int ke = static_cast<int>(io::get_long(cfg, "delta_exp", 6));
  const double s = io::get_double(cfg, "s", 0.5);
  const double t = io::get_double(cfg, "t", 0.5);
  const double C = io::get_double(cfg, "C", constants::k_gen);
  const double eps = io::get_double(cfg, "eps", 0.25);
  const std::uint64_t seed = pick_seed(cfg, seed_opt);
  (void)jobs;
  const std::string hash = io::scenario_hash(cfg);

  const Scale delta{ke};
  Configuration omega;
  omega.delta = delta;
  omega.sigma = delta;
  omega.s = s;
  omega.C = C;
  omega.support = gen_cantor_params(s, delta, seed);
  for (size_t i = 0; i < omega.support.size(); ++i) {
    std::vector<std::int64_t> fiber;
    for (const Arc& a :
         gen_cantor_arcs(omega.support[i], t, delta, seed + 101 * (i + 1)))
      fiber.push_back(a.index);
    std::sort(fiber.begin(), fiber.end());
    omega.fibers.push_back(fiber);
  }
  omega.M = omega.fibers.empty() ? 0 : static_cast<long>(omega.fibers[0].size());

  const ValidationReport rep = validate(omega);
  io::write_csv(
      out_dir + "/validate.csv", "ok,detail,min_C,worst_fiber_C,scenario",
      {{rep.ok ? "1" : "0", rep.detail.empty() ? "-" : rep.detail,
        io::fmt(rep.support_report.min_C), io::fmt(rep.worst_fiber_C), hash}});

  // Multiplicity decomposition at the first pair, serialized as cell rows
  // plus a total summary row.
  std::vector<Row> mrows;
  const std::vector<PairEntry> pairs = pairs_of(omega);
  if (!pairs.empty()) {
    const MultiplicityReport mrep =
        decompose_total(pairs, pairs.front(), delta, eps, constants::k_dec);
    for (const MultCell& cell : mrep.cells)
      mrows.push_back({"0", std::to_string(cell.lambda_exp),
                       std::to_string(cell.t_exp), std::to_string(cell.count),
                       hash});
    mrows.push_back({"0", "total", "total", std::to_string(mrep.total), hash});
  }
  io::write_csv(out_dir + "/multiplicity.csv",
                "omega_id,lambda_exp,t_exp,count,scenario", mrows);
  save_configuration(out_dir + "/config", omega);
  io::write_manifest(
      out_dir, "validate", cfg, seed,
      {"validate.csv", "multiplicity.csv", "config.csv", "config.meta"});
}

void cmd_oracle_diff(const Cfg& cfg, const std::string& out_dir,
                     std::optional<std::uint64_t> seed_opt, int jobs) {
  io::require_keys(cfg, {"trials", "delta_exp", "seed"});
  const long trials = io::get_long(cfg, "trials", 200);
  const int ke = static_cast<int>(io::get_long(cfg, "delta_exp", 6));
  const std::uint64_t seed = pick_seed(cfg, seed_opt);
  (void)jobs;
  const std::string hash = io::scenario_hash(cfg);

  std::mt19937_64 rng(seed * 0x94d049bb133111ebULL + 5);
  std::uniform_real_distribution<double> ux(-0.2, 0.2), ur(0.5, 1.0),
      uang(0.0, kTwoPi), usig(0.0, 1.0);
  const double d = Scale{ke}.value();

  long agree = 0;
  std::vector<Row> diff_rows;
  for (long i = 0; i < trials; ++i) {
    const ParamPoint p{ux(rng), ux(rng), ur(rng)};
    const ParamPoint q{p.x1 + d * ux(rng), p.x2 + d * ux(rng),
                       std::min(1.0, p.r + d * ux(rng))};
    const double sig = std::min(1.0, d * (1 + 63 * usig(rng)));
    const double a1 = uang(rng);
    const RealPoint v1{p.x1 + p.r * std::cos(a1), p.x2 + p.r * std::sin(a1)};
    const double a2 = a1 + sig / p.r * (usig(rng) - 0.5);
    const RealPoint v2{q.x1 + q.r * std::cos(a2), q.x2 + q.r * std::sin(a2)};
    const Rect R1 = make_rect(p, v1, d, sig);
    const Rect R2 = make_rect(q, v2, d, sig, 1 + 3 * usig(rng));
    const bool core = rect_subset(R1, R2);
    const bool dense = oracle_rect_subset(R1, R2);
    if (core == dense) {
      ++agree;
    } else {
      diff_rows.push_back({std::to_string(i), core ? "1" : "0",
                           dense ? "1" : "0", hash});
    }
  }
  io::write_csv(out_dir + "/oracle_diff.csv", "trial,core,oracle,scenario",
                diff_rows);
  io::write_csv(out_dir + "/oracle_summary.csv",
                "trials,agreements,rate,scenario",
                {{std::to_string(trials), std::to_string(agree),
                  io::fmt(static_cast<double>(agree) / trials), hash}});
  io::write_manifest(out_dir, "oracle_diff", cfg, seed,
                     {"oracle_diff.csv", "oracle_summary.csv"});
}

}  // namespace flab
