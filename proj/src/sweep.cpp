#include "nehari/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nehari/error.hpp"
#include "nehari/format.hpp"

namespace nehari {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double branch_energy(const ReducedTriple& tr, double lambda, double p, double q, Branch branch) {
  const RootsResult r = nehari_roots(tr, lambda, p, q);
  if (r.kind == RootsResult::Kind::NoRoot)
    throw Error(ErrorCode::RayMissesNehari, "lambda above Lambda_n of the reference ray");
  return phi(branch == Branch::Nplus ? r.t_plus : r.t_minus, tr, lambda, p, q);
}

}  // namespace

std::vector<SweepRow> run_sweep(const Discretization& d, const std::vector<double>& lambda_grid,
                                const GridFunction& reference, const SolveOptions& opts) {
  for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
    if (!(lambda_grid[k] > 0.0) || (k > 0 && !(lambda_grid[k] > lambda_grid[k - 1])))
      throw Error(ErrorCode::ConfigError, "lambda grid must be positive and strictly increasing");
  }
  const double p = d.params().p(), q = d.params().q();
  const ReducedTriple ref = reduced_triple(d, reference.values);
  std::vector<SweepRow> rows(lambda_grid.size());

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(rows.size()); ++k) {
    SweepRow& row = rows[k];
    row.lambda = lambda_grid[k];
    const RootsResult roots = nehari_roots(ref, row.lambda, p, q);
    row.t_plus = roots.kind == RootsResult::Kind::NoRoot ? kNaN : roots.t_plus;
    row.t_minus = roots.kind == RootsResult::Kind::NoRoot ? kNaN : roots.t_minus;
    try {
      const PairResult pr = solve_pair(d, row.lambda, reference, opts);
      row.energy_plus = pr.plus.energy;
      row.energy_minus = pr.minus.energy;
      row.norm_minus = pr.minus.norm;
      row.residual_plus = pr.plus.residual;
      row.residual_minus = pr.minus.residual;
      row.converged_plus = pr.plus.converged;
      row.converged_minus = pr.minus.converged;
    } catch (const Error&) {
      row.energy_plus = row.energy_minus = row.norm_minus = kNaN;
      row.residual_plus = row.residual_minus = kNaN;
    }
  }
  return rows;
}

std::vector<double> linear_lambda_grid(double lo, double hi, int n) {
  if (n < 2 || !(hi > lo)) throw Error(ErrorCode::ConfigError, "lambda grid needs n >= 2 and hi > lo");
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = lo + (hi - lo) * k / (n - 1);
  return g;
}

std::vector<double> default_lambda_grid(double lambda_star, int n) {
  if (n < 4) throw Error(ErrorCode::ConfigError, "default lambda grid needs n >= 4");
  const int n_lin = n / 2;
  std::vector<double> g = linear_lambda_grid(0.05 * lambda_star, 0.5 * lambda_star, n_lin);
  // Remaining points: lambda* (1 - 0.5 r^k), gaps shrinking toward lambda*.
  const int n_geo = n - n_lin;
  const double r = std::pow(1.0 / 64.0, 1.0 / n_geo);
  for (int k = 1; k <= n_geo; ++k) g.push_back(lambda_star * (1.0 - 0.5 * std::pow(r, k)));
  return g;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "lambda,energy_plus,energy_minus,t_plus,t_minus,norm_minus,residual_plus,residual_minus,"
        "converged_plus,converged_minus\n";
  for (const auto& r : rows) {
    os << fmt17(r.lambda) << ',' << fmt17(r.energy_plus) << ',' << fmt17(r.energy_minus) << ','
       << fmt17(r.t_plus) << ',' << fmt17(r.t_minus) << ',' << fmt17(r.norm_minus) << ','
       << fmt17(r.residual_plus) << ',' << fmt17(r.residual_minus) << ','
       << (r.converged_plus ? 1 : 0) << ',' << (r.converged_minus ? 1 : 0) << '\n';
  }
}

DerivativeCheck dJ_dlambda_check(const ReducedTriple& tr, double lambda, double p, double q,
                                 Branch branch, double rel_step) {
  if (branch != Branch::Nplus && branch != Branch::Nminus)
    throw Error(ErrorCode::ConfigError, "derivative check needs the Nplus or Nminus branch");
  DerivativeCheck c;
  c.lambda = lambda;
  const double h = rel_step * lambda;
  c.finite_difference = (branch_energy(tr, lambda + h, p, q, branch) -
                         branch_energy(tr, lambda - h, p, q, branch)) /
                        (2.0 * h);
  const RootsResult r = nehari_roots(tr, lambda, p, q);
  const double t = branch == Branch::Nplus ? r.t_plus : r.t_minus;
  c.closed_form = -std::pow(t, q) * tr.A / q;
  c.rel_error = std::abs(c.finite_difference - c.closed_form) / std::abs(c.closed_form);
  return c;
}

SignChangeReport sign_change_locator(const std::vector<SweepRow>& rows, double lambda_star,
                                     double ratio) {
  SignChangeReport rep;
  rep.predicted = ratio * lambda_star;
  std::vector<const SweepRow*> ok;
  for (const auto& r : rows) {
    if (r.converged_minus && std::isfinite(r.energy_minus))
      ok.push_back(&r);
    else
      ++rep.excluded_rows;
  }
  for (std::size_t k = 1; k < ok.size(); ++k) {
    const double e0 = ok[k - 1]->energy_minus, e1 = ok[k]->energy_minus;
    if ((e0 > 0.0 && e1 <= 0.0) || (e0 < 0.0 && e1 >= 0.0)) {
      if (rep.crossings++ == 0) {
        const double l0 = ok[k - 1]->lambda, l1 = ok[k]->lambda;
        rep.bracket_lo = l0;
        rep.bracket_hi = l1;
        rep.lambda_hat = l0 + (l1 - l0) * e0 / (e0 - e1);
      }
    }
  }
  if (rep.crossings == 0)
    throw Error(ErrorCode::NoSignChange, "energy_minus keeps one sign over the sweep window");
  rep.rel_error = std::abs(rep.lambda_hat - rep.predicted) / lambda_star;
  rep.within_cell = rep.predicted >= rep.bracket_lo && rep.predicted <= rep.bracket_hi;
  return rep;
}

EndpointReport endpoint_probe(const Discretization& d, double lambda_star,
                              const GridFunction& reference, int K, const SolveOptions& opts) {
  EndpointReport rep;
  rep.points.resize(K);
#pragma omp parallel for schedule(dynamic)
  for (int k = 1; k <= K; ++k) {
    EndpointPoint& pt = rep.points[k - 1];
    pt.k = k;
    pt.lambda = (1.0 - std::ldexp(1.0, -k)) * lambda_star;
    try {
      const PairResult pr = solve_pair(d, pt.lambda, reference, opts);
      pt.energy_plus = pr.plus.energy;
      pt.energy_minus = pr.minus.energy;
      pt.norm_minus = pr.minus.norm;
      pt.converged = pr.plus.converged && pr.minus.converged;
    } catch (const Error&) {
      pt.energy_plus = pt.energy_minus = pt.norm_minus = kNaN;
    }
  }

  std::vector<EndpointPoint> ok;
  for (const auto& pt : rep.points)
    if (pt.converged) ok.push_back(pt);
  rep.energies_decreasing = ok.size() >= 2;
  rep.increments_shrinking = ok.size() >= 3;
  rep.ground_negative = !ok.empty();
  for (std::size_t k = 0; k < ok.size(); ++k) {
    rep.ground_negative = rep.ground_negative && ok[k].energy_plus < 0.0;
    if (k == 0) continue;
    rep.energies_decreasing = rep.energies_decreasing &&
                              ok[k].energy_plus < ok[k - 1].energy_plus &&
                              ok[k].energy_minus < ok[k - 1].energy_minus;
    rep.increments_plus.push_back(std::abs(ok[k].energy_plus - ok[k - 1].energy_plus));
    rep.increments_minus.push_back(std::abs(ok[k].energy_minus - ok[k - 1].energy_minus));
  }
  for (std::size_t k = 1; k < rep.increments_plus.size(); ++k)
    rep.increments_shrinking = rep.increments_shrinking &&
                               rep.increments_plus[k] < rep.increments_plus[k - 1] &&
                               rep.increments_minus[k] < rep.increments_minus[k - 1];

  std::vector<double> norms;
  for (const auto& pt : ok) norms.push_back(pt.norm_minus);
  if (!norms.empty()) {
    std::vector<double> sorted = norms;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    rep.median_norm_minus = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    rep.no_collapse = sorted.front() >= 0.5 * rep.median_norm_minus;
  }
  return rep;
}

}  // namespace nehari
