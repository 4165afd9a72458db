#include "nehari/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "CLI11.hpp"
#include "nehari/config.hpp"
#include "nehari/error.hpp"
#include "nehari/format.hpp"
#include "nehari/snapshot.hpp"
#include "nehari/sweep.hpp"

namespace nehari {

namespace {

// Flags shared by every subcommand that reads a config.
struct Overrides {
  std::string config;
  std::optional<double> alpha, mu, p, q, gamma3, gamma4, lambda, R, grading;
  std::optional<int> M;
  std::optional<std::string> b_form;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "INI config file")->check(CLI::ExistingFile);
    app->add_option("--alpha", alpha);
    app->add_option("--mu", mu);
    app->add_option("--p", p);
    app->add_option("--q", q);
    app->add_option("--gamma3", gamma3);
    app->add_option("--gamma4", gamma4);
    app->add_option("--b-form", b_form)->check(CLI::IsMember({"decaying", "constant"}));
    app->add_option("--lambda", lambda);
    app->add_option("--R", R);
    app->add_option("--M", M);
    app->add_option("--grading", grading);
    app->add_option("--seed", seed);
  }

  RunConfig resolve() const {
    RunConfig c = config.empty() ? RunConfig{} : load_config(config);
    auto& pp = c.params;
    if (alpha) pp.alpha = *alpha;
    if (mu) pp.mu = *mu;
    if (p) pp.p = *p;
    if (q) pp.q = *q;
    if (gamma3) pp.gamma3 = *gamma3;
    if (gamma4) pp.gamma4 = *gamma4;
    if (b_form) pp.b_form = b_form_from_string(*b_form);
    if (lambda) pp.lambda = *lambda;
    if (R) c.grid.R = *R;
    if (M) c.grid.M = *M;
    if (grading) c.grid.grading = *grading;
    if (seed) c.seed = *seed;
    check_config(c);
    return c;
  }
};

struct Setup {
  RunConfig cfg;
  DiscretizationPtr disc;
};

Setup setup(const Overrides& o) {
  Setup s;
  s.cfg = o.resolve();
  ValidatedParams vp = validate(s.cfg.params);
  if (s.cfg.grid.kind != GridSpec::Kind::Radial)
    throw Error(ErrorCode::UnsupportedGrid, "this command needs grid.kind = radial");
  s.disc = make_discretization(build_grid(s.cfg.grid, vp.dim()), vp);
  return s;
}

std::string out_path(const RunConfig& c, const std::string& given, const std::string& name) {
  if (!given.empty()) return given;
  return (std::filesystem::path(c.output_dir) / name).string();
}

Snapshot make_snapshot(const RunConfig& c, const GridFunction& u) {
  return Snapshot{c.params, c.grid, u.values, std::nullopt};
}

// ---------------------------------------------------------------- validate

int cmd_validate(const Overrides& o, std::ostream& out) {
  const RunConfig c = o.resolve();
  const ValidatedParams vp = validate(c.params);
  const auto& w = vp.window();
  const auto& pw = vp.potential_windows();
  const auto fc = fibering_constants(vp.p(), vp.q());
  out << "valid\n";
  out << "exponent window: (" << fmt17(w.lower) << ", " << fmt17(w.upper) << ")\n";
  out << "gamma3 window: (" << fmt17(pw.gamma3_lower) << ", " << fmt17(pw.gamma3_upper) << ")\n";
  out << "gamma4 lower bound: " << fmt17(pw.gamma4_lower) << '\n';
  out << "C_pq = " << fmt17(fc.c_pq) << '\n';
  out << "C_tilde_pq = " << fmt17(fc.c_tilde_pq) << '\n';
  out << "ratio = " << fmt17(fc.ratio) << '\n';
  return 0;
}

// ---------------------------------------------------------------- fibering

int cmd_fibering(const std::vector<double>& triple, double p, double q,
                 std::optional<double> lambda, std::ostream& out) {
  if (!(q > 0.0 && q < 1.0))
    throw Error(ErrorCode::SingularExponentViolation, "q must lie in (0, 1)");
  if (!(p > 1.0)) throw Error(ErrorCode::ExponentWindowViolation, "p must exceed 1");
  const ReducedTriple tr{triple[0], triple[1], triple[2]};
  if (!(tr.E > 0.0)) throw Error(ErrorCode::NotInPositiveCone, "E must be positive");
  const FiberingReport r = fibering_report(tr, lambda.value_or(0.0), p, q);
  out << "t_n = " << fmt17(r.t_n) << '\n';
  out << "t_e = " << fmt17(r.t_e) << '\n';
  out << "Lambda_n = " << fmt17(r.lambda_n) << '\n';
  out << "Lambda_e = " << fmt17(r.lambda_e) << '\n';
  out << "ratio = " << fmt17(fibering_constants(p, q).ratio) << '\n';
  if (lambda) {
    out << "roots = " << to_string(r.roots.kind) << '\n';
    if (r.roots.kind != RootsResult::Kind::NoRoot) {
      out << "t_plus = " << fmt17(r.roots.t_plus) << '\n';
      out << "t_minus = " << fmt17(r.roots.t_minus) << '\n';
      out << "phi2_plus = " << fmt17(r.roots.phi2_plus) << '\n';
      out << "phi2_minus = " << fmt17(r.roots.phi2_minus) << '\n';
    }
    out << "branch_at_1 = " << to_string(r.branch) << '\n';
  }
  return 0;
}

// ------------------------------------------------------------- lambda-star

void print_estimate(const ExtremalEstimate& est, std::ostream& out) {
  out << "lambda_star = " << fmt17(est.lambda_star) << '\n';
  out << "lambda_sub = " << fmt17(est.lambda_sub) << '\n';
  out << "ratio = " << fmt17(est.ratio) << '\n';
  out << "family_best = " << to_string(est.sweep.best_profile.family)
      << " sigma=" << fmt6(est.sweep.best_profile.sigma)
      << " beta=" << fmt6(est.sweep.best_profile.beta) << " Lambda_n="
      << fmt17(est.sweep.best_value) << '\n';
  out << "descent_iterations = " << est.descent.iterations << '\n';
}

int cmd_lambda_star(const Overrides& o, const std::string& trace, const std::string& snapshot,
                    std::ostream& out) {
  const Setup s = setup(o);
  const ExtremalEstimate est = estimate_lambda_star(*s.disc);
  print_estimate(est, out);
  if (!trace.empty()) {
    std::ofstream f(trace);
    if (!f) throw Error(ErrorCode::ConfigError, "cannot write " + trace);
    write_trace_csv(f, est);
  }
  if (!snapshot.empty()) write_snapshot(snapshot, make_snapshot(s.cfg, est.minimizer));
  return 0;
}

// ------------------------------------------------------------------- solve

void print_result(const SolveResult& r, std::ostream& out) {
  const std::string b = r.branch == Branch::Nplus ? "plus" : "minus";
  out << b << ".energy = " << fmt17(r.energy) << '\n';
  out << b << ".residual = " << fmt17(r.residual) << '\n';
  out << b << ".norm = " << fmt17(r.norm) << '\n';
  out << b << ".phi2 = " << fmt17(r.phi2) << '\n';
  out << b << ".t = " << fmt17(r.t_projection) << '\n';
  out << b << ".floored_fraction = " << fmt17(r.floored_fraction) << '\n';
  out << b << ".iterations = " << r.iterations << " + " << r.newton_iterations << " newton\n";
  out << b << ".classified = " << to_string(r.classified) << '\n';
  out << b << ".converged = " << (r.converged ? "yes" : "no") << '\n';
}

int cmd_solve(const Overrides& o, std::optional<double> frac, const std::string& branch,
              const std::string& snapshot_dir, std::ostream& out, std::ostream& err) {
  const Setup s = setup(o);
  const ExtremalEstimate est = estimate_lambda_star(*s.disc);
  double lambda;
  if (frac)
    lambda = *frac * est.lambda_star;
  else if (s.cfg.params.lambda)
    lambda = *s.cfg.params.lambda;
  else
    lambda = 0.5 * est.lambda_star;
  if (!(lambda > 0.0)) throw Error(ErrorCode::ConfigError, "lambda must be positive");
  out << "lambda_star = " << fmt17(est.lambda_star) << '\n';
  out << "lambda = " << fmt17(lambda) << '\n';

  const auto fallbacks = default_fallback_rays(*s.disc);
  std::vector<SolveResult> results;
  if (branch != "minus")
    results.push_back(minimize_on_branch(*s.disc, lambda, Branch::Nplus, est.minimizer,
                                         s.cfg.solver, fallbacks));
  if (branch != "plus")
    results.push_back(minimize_on_branch(*s.disc, lambda, Branch::Nminus, est.minimizer,
                                         s.cfg.solver, fallbacks));
  bool ok = true;
  for (const auto& r : results) {
    print_result(r, out);
    ok = ok && r.converged;
    if (!snapshot_dir.empty()) {
      std::filesystem::create_directories(snapshot_dir);
      Snapshot snap = make_snapshot(s.cfg, r.solution);
      snap.solve = SolveInfo{lambda, to_string(r.branch), r.energy, r.residual,
                             r.iterations + r.newton_iterations};
      const std::string name = r.branch == Branch::Nplus ? "solution_plus.json" : "solution_minus.json";
      write_snapshot((std::filesystem::path(snapshot_dir) / name).string(), snap);
    }
  }
  if (results.size() == 2) {
    std::vector<double> diff(s.disc->size());
    for (std::size_t i = 0; i < diff.size(); ++i)
      diff[i] = results[0].solution.values[i] - results[1].solution.values[i];
    out << "separation = "
        << fmt17(std::sqrt(norm_sq(*s.disc, diff)) / std::max(results[0].norm, results[1].norm))
        << '\n';
  }
  if (!ok) {
    err << "error: " << error_name(ErrorCode::NoConvergence)
        << ": weak residual above tolerance or wrong branch\n";
    return 1;
  }
  return 0;
}

// ------------------------------------------------------------------- sweep

int cmd_sweep(const Overrides& o, const std::string& csv, std::optional<int> points,
              std::optional<std::string> spacing, std::optional<double> lo,
              std::optional<double> hi, std::ostream& out) {
  Setup s = setup(o);
  if (points) s.cfg.sweep.points = *points;
  if (spacing) s.cfg.sweep.spacing = *spacing;
  if (lo) s.cfg.sweep.lo_frac = *lo;
  if (hi) s.cfg.sweep.hi_frac = *hi;
  check_config(s.cfg);

  const ExtremalEstimate est = estimate_lambda_star(*s.disc);
  const auto& sw = s.cfg.sweep;
  const std::vector<double> grid =
      sw.spacing == "linear"
          ? linear_lambda_grid(sw.lo_frac * est.lambda_star, sw.hi_frac * est.lambda_star, sw.points)
          : default_lambda_grid(est.lambda_star, sw.points);
  const auto rows = run_sweep(*s.disc, grid, est.minimizer, s.cfg.solver);

  const std::string path = out_path(s.cfg, csv, "sweep.csv");
  {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::ConfigError, "cannot write " + path);
    write_sweep_csv(f, rows);
  }
  int converged = 0;
  for (const auto& r : rows) converged += r.converged_plus && r.converged_minus;
  out << "lambda_star = " << fmt17(est.lambda_star) << '\n';
  out << "rows = " << rows.size() << " (" << converged << " fully converged)\n";
  out << "csv = " << path << '\n';
  try {
    const auto sc = sign_change_locator(rows, est.lambda_star, est.ratio);
    out << "sign_change: crossings=" << sc.crossings << " lambda_hat=" << fmt17(sc.lambda_hat)
        << " predicted=" << fmt17(sc.predicted) << " within_cell=" << (sc.within_cell ? "yes" : "no")
        << '\n';
  } catch (const Error& e) {
    out << "sign_change: none in window (" << e.name() << ")\n";
  }
  return 0;
}

// ------------------------------------------------------------- cross-check

int cmd_cross_check(const Overrides& o, double L, int m, double sigma, std::ostream& out) {
  const RunConfig c = o.resolve();
  const ValidatedParams vp = validate(c.params);
  if (vp.dim() != 3) throw Error(ErrorCode::UnsupportedDimension, "cross-check is N = 3 only");
  const ProfileSpec gauss{ProfileFamily::Gaussian, sigma, 1.0};

  const auto radial = make_discretization(build_grid(c.grid, 3), vp);
  const double b_radial = steinweiss_B_radial(*radial, sample_profile(gauss, radial->grid_ptr()).values);
  out << "B_radial = " << fmt17(b_radial) << " (M=" << c.grid.M << ", R=" << fmt6(c.grid.R) << ")\n";

  double prev_gap = -1.0;
  for (int mm = std::max(8, m - 8); mm <= m; mm += 4) {
    const auto cart = make_discretization(build_cartesian_grid(L, mm), vp);
    const double b_direct =
        steinweiss_B_direct(*cart, sample_profile(gauss, cart->grid_ptr()).values);
    const double gap = std::abs(b_direct - b_radial) / b_radial;
    out << "B_direct(m=" << mm << ") = " << fmt17(b_direct) << " rel_gap = " << fmt6(gap) << '\n';
    prev_gap = gap;
  }
  out << "agreement_2pct = " << (prev_gap <= 0.02 ? "yes" : "no") << '\n';
  return 0;
}

// -------------------------------------------------------------- invariants

struct Check {
  std::string name;
  bool ok = true;
  std::string detail;
};

// Coarse scan in log t, then Brent on the offset from the best scan point so
// the tolerance is absolute in log t even when t is huge.
double scan_max(const std::function<double(double)>& f, double* at) {
  constexpr double lo = -300.0, step = 0.05;
  double best_s = lo, best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 12000; ++k) {
    const double s = lo + step * k;
    const double v = f(std::exp(s));
    if (v > best) {
      best = v;
      best_s = s;
    }
  }
  auto neg = [&](double ds) { return -f(std::exp(best_s + ds)); };
  const auto r = boost::math::tools::brent_find_minima(neg, -step, step, 50);
  if (at) *at = std::exp(best_s + r.first);
  return -r.second;
}

int cmd_invariants(const Overrides& o, int samples, bool corrupt_cpq, std::ostream& out,
                   std::ostream& err) {
  const Setup s = setup(o);
  std::mt19937_64 rng(s.cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) { return lo * std::pow(hi / lo, unit(rng)); };
  auto draw_pq = [&](double& p, double& q) {
    q = 0.05 + 0.9 * unit(rng);
    p = 1.05 + 3.0 * unit(rng);
  };
  auto draw_triple = [&] {
    return ReducedTriple{log_uniform(1e-3, 1e3), log_uniform(1e-3, 1e3), log_uniform(1e-3, 1e3)};
  };
  auto worse = [](Check& c, double err_value, double tol, const std::string& what) {
    if (!(err_value <= tol) && c.ok) {
      c.ok = false;
      c.detail = what + " error " + fmt6(err_value) + " > " + fmt6(tol);
    }
  };

  std::vector<Check> checks;

  {  // Closed forms against numeric maximization of Q_n, with the harness's C_pq.
    Check c{"lambda_n_closed_form", true, ""};
    for (int k = 0; k < samples; ++k) {
      double p, q;
      draw_pq(p, q);
      const ReducedTriple tr = draw_triple();
      double cpq = fibering_constants(p, q).c_pq;
      if (corrupt_cpq) cpq *= 1.01;
      const double k1 = (2 * p - q) / (2 * p - 2), k2 = (2 - q) / (2 * p - 2);
      const double closed = cpq * std::pow(tr.E, k1) / (tr.A * std::pow(tr.B, k2));
      const double tn = t_max_n(tr, p, q);
      double at = 0.0;
      const double numeric = scan_max([&](double t) { return q_n(t, tr, p, q); }, &at);
      worse(c, std::abs(closed - numeric) / numeric, 1e-8, "Lambda_n");
      worse(c, std::abs(at - tn) / tn, 1e-6, "t_n");
    }
    checks.push_back(c);
  }
  {
    Check c{"rayleigh_identity", true, ""};
    for (int k = 0; k < samples * 10; ++k) {
      double p, q;
      draw_pq(p, q);
      const ReducedTriple tr = draw_triple();
      const double t = t_max_n(tr, p, q) * log_uniform(0.1, 10.0);
      const double lhs = q_n(t, tr, p, q) - q_e(t, tr, p, q);
      const double rhs = (t / q) * q_e_prime(t, tr, p, q);
      const double scale =
          (std::pow(t, 2.0 - q) * tr.E + std::pow(t, 2.0 * p - q) * tr.B) / tr.A;
      worse(c, std::abs(lhs - rhs) / scale, 1e-10, "Q_n - Q_e - (t/q) Q_e'");
    }
    checks.push_back(c);
  }
  {
    Check c{"constant_ratio", true, ""};
    for (int k = 0; k < samples; ++k) {
      double p, q;
      draw_pq(p, q);
      const auto fc = fibering_constants(p, q);
      if (!(fc.ratio > 0.0 && fc.ratio < 1.0) && c.ok) {
        c.ok = false;
        c.detail = "ratio outside (0,1)";
      }
      const ReducedTriple tr = draw_triple();
      worse(c, std::abs(lambda_e(tr, p, q) / lambda_n(tr, p, q) - fc.ratio) / fc.ratio, 1e-12,
            "Lambda_e / Lambda_n");
      worse(c, std::abs(fc.c_tilde_pq / fc.c_pq - fc.ratio) / fc.ratio, 1e-12, "C_tilde / C");
    }
    checks.push_back(c);
  }
  {
    Check c{"two_root_structure", true, ""};
    for (int k = 0; k < samples; ++k) {
      double p, q;
      draw_pq(p, q);
      const ReducedTriple tr = draw_triple();
      const double ln = lambda_n(tr, p, q);
      const double tn = t_max_n(tr, p, q);
      const RootsResult r = nehari_roots(tr, 0.5 * ln, p, q);
      const bool good = r.kind == RootsResult::Kind::TwoRoots && r.t_plus < tn && tn < r.t_minus &&
                        r.phi2_plus > 0.0 && r.phi2_minus < 0.0;
      if (!good && c.ok) {
        c.ok = false;
        c.detail = "root ordering or phi'' signs violated";
      }
      const DegenerateReport dr =
          degenerate_relations_check(normalize_at_tangency(tr, p, q), p, q);
      worse(c, std::max(dr.residual_A, dr.residual_B), 1e-10, "degenerate relations");
    }
    checks.push_back(c);
  }
  {  // Grid-level homogeneities on the configured discretization.
    Check c{"discrete_homogeneity", true, ""};
    const Discretization& d = *s.disc;
    const double p = d.params().p(), q = d.params().q();
    const GridFunction u = sample_profile({ProfileFamily::Gaussian, 1.0, 1.0}, d.grid_ptr());
    const ReducedTriple base = reduced_triple(d, u.values);
    for (double sc : {0.3, 2.5}) {
      std::vector<double> v = u.values;
      for (double& x : v) x *= sc;
      const ReducedTriple t = reduced_triple(d, v);
      const ReducedTriple want = base.scaled(sc, p, q);
      worse(c, std::abs(t.E - want.E) / want.E, 1e-12, "E(su)");
      worse(c, std::abs(t.A - want.A) / want.A, 1e-12, "A(su)");
      worse(c, std::abs(t.B - want.B) / want.B, 1e-12, "B(su)");
      worse(c, std::abs(lambda_n(t, p, q) - lambda_n(base, p, q)) / lambda_n(base, p, q), 1e-12,
            "Lambda_n(su)");
    }
    checks.push_back(c);
  }

  bool all = true;
  for (const auto& c : checks) {
    out << (c.ok ? "PASS " : "FAIL ") << c.name;
    if (!c.ok) out << " (" << c.detail << ")";
    out << '\n';
    all = all && c.ok;
  }
  if (!all) {
    for (const auto& c : checks)
      if (!c.ok) err << "invariant failed: " << c.name << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nehari-manifold laboratory for a singular Stein-Weiss problem", "nehari"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Overrides ov_validate, ov_lstar, ov_solve, ov_sweep, ov_cross, ov_inv;

  auto* validate_cmd = app.add_subcommand("validate", "check a configuration against the hypotheses");
  ov_validate.attach(validate_cmd);

  std::vector<double> triple;
  double fib_p = 2.0, fib_q = 0.5;
  std::optional<double> fib_lambda;
  auto* fib = app.add_subcommand("fibering", "closed-form fibering quantities for one triple");
  fib->add_option("--triple", triple, "E,A,B")->required()->delimiter(',')->expected(3);
  fib->add_option("--p", fib_p);
  fib->add_option("--q", fib_q);
  fib->add_option("--lambda", fib_lambda);

  std::string trace, lstar_snapshot;
  auto* lstar = app.add_subcommand("lambda-star", "estimate lambda* and lambda_*");
  ov_lstar.attach(lstar);
  lstar->add_option("--trace", trace, "CSV trace of the family sweep and descent");
  lstar->add_option("--snapshot", lstar_snapshot, "write the minimizer snapshot (JSON)");

  std::optional<double> frac;
  std::string branch = "both", snapshot_dir;
  auto* solve = app.add_subcommand("solve", "solve on the Nehari branches for one lambda");
  ov_solve.attach(solve);
  solve->add_option("--lambda-frac", frac, "lambda as a fraction of the estimated lambda*");
  solve->add_option("--branch", branch)->check(CLI::IsMember({"plus", "minus", "both"}));
  solve->add_option("--snapshot-dir", snapshot_dir, "directory for solution snapshots");

  std::string csv;
  std::optional<int> points;
  std::optional<std::string> spacing;
  std::optional<double> lo, hi;
  auto* sweep = app.add_subcommand("sweep", "lambda sweep written as CSV");
  ov_sweep.attach(sweep);
  sweep->add_option("--out", csv, "CSV path (default: output.dir/sweep.csv)");
  sweep->add_option("--points", points);
  sweep->add_option("--spacing", spacing)->check(CLI::IsMember({"default", "linear"}));
  sweep->add_option("--lo-frac", lo);
  sweep->add_option("--hi-frac", hi);

  double cross_L = 3.0, cross_sigma = 1.0;
  int cross_m = 20;
  auto* cross = app.add_subcommand("cross-check", "radial vs direct Stein-Weiss engines");
  ov_cross.attach(cross);
  cross->add_option("--L", cross_L);
  cross->add_option("--m", cross_m)->check(CLI::Range(8, 24));
  cross->add_option("--sigma", cross_sigma);

  int samples = 1000;
  bool corrupt = false;
  auto* inv = app.add_subcommand("invariants", "randomized invariant harness");
  ov_inv.attach(inv);
  inv->add_option("--samples", samples)->check(CLI::PositiveNumber);
  inv->add_flag("--corrupt-cpq", corrupt, "test hook: perturb C_pq by 1%");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*validate_cmd) return cmd_validate(ov_validate, out);
    if (*fib) return cmd_fibering(triple, fib_p, fib_q, fib_lambda, out);
    if (*lstar) return cmd_lambda_star(ov_lstar, trace, lstar_snapshot, out);
    if (*solve) return cmd_solve(ov_solve, frac, branch, snapshot_dir, out, err);
    if (*sweep) return cmd_sweep(ov_sweep, csv, points, spacing, lo, hi, out);
    if (*cross) return cmd_cross_check(ov_cross, cross_L, cross_m, cross_sigma, out);
    if (*inv) return cmd_invariants(ov_inv, samples, corrupt, out, err);
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations())
      err << "error: " << error_name(v.code) << ": " << v.message << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace nehari
