#include "nehari/solver.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "nehari/error.hpp"

namespace nehari {

namespace {

struct State {
  std::vector<double> u;
  Evaluation ev;
  std::vector<double> grad;
  double energy = 0.0;
  double residual = 0.0;
  double floored = 0.0;
};

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double dual_norm(const Discretization& d, std::span<const double> g) {
  const auto x = d.solve_shifted(g);
  return std::sqrt(std::max(dot(g, x), 0.0));
}

State make_state(const Discretization& d, std::vector<double> u, double lambda, double floor) {
  State s;
  s.u = std::move(u);
  s.ev = evaluate(d, s.u);
  s.grad = energy_gradient(d, s.ev, s.u, lambda, floor, &s.floored);
  s.energy = energy(s.ev.triple, lambda, d.params().p(), d.params().q());
  s.residual = dual_norm(d, s.grad) / std::sqrt(s.ev.triple.E);
  return s;
}

// Projects v onto the branch; empty optional if the ray misses the Nehari set.
std::optional<std::vector<double>> try_project(const Discretization& d, std::vector<double> v,
                                               double lambda, Branch branch) {
  const double p = d.params().p(), q = d.params().q();
  const ReducedTriple tr = reduced_triple(d, v);
  const RootsResult roots = nehari_roots(tr, lambda, p, q);
  if (roots.kind != RootsResult::Kind::TwoRoots) return std::nullopt;
  const double t = branch == Branch::Nplus ? roots.t_plus : roots.t_minus;
  for (double& x : v) x *= t;
  return v;
}

// Dense Hessian of J at u (radial grids).
Eigen::MatrixXd hessian(const Discretization& d, const State& s, double lambda, double floor) {
  const std::size_t n = d.size();
  const double p = d.params().p(), q = d.params().q();
  const auto m = d.mass();
  const auto a = d.a();
  const auto b = d.b();
  const double eps = floor * *std::max_element(s.u.begin(), s.u.end());

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  std::vector<double> col(n), e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    d.apply_stiffness(e, col);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (col[i] != 0.0) H(i, j) = col[i];
  }
  std::vector<double> fp(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ui = std::max(s.u[i], eps);
    H(i, i) += lambda * (1.0 - q) * m[i] * a[i] * std::pow(ui, q - 2.0) -
               (p - 1.0) * m[i] * b[i] * std::pow(s.u[i], p - 2.0) * s.ev.potential[i];
    fp[i] = m[i] * b[i] * std::pow(s.u[i], p - 1.0);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) H(i, j) -= p * fp[i] * d.kernel_entry(i, j) * fp[j];
  return H;
}

}  // namespace

GridFunction project_to_nehari(const Discretization& d, const GridFunction& u, double lambda,
                               Branch branch) {
  if (branch != Branch::Nplus && branch != Branch::Nminus)
    throw Error(ErrorCode::ConfigError, "projection needs the Nplus or Nminus branch");
  auto v = try_project(d, u.values, lambda, branch);
  if (!v) throw Error(ErrorCode::RayMissesNehari, "lambda >= Lambda_n(u): the ray misses the Nehari set");
  return GridFunction{d.grid_ptr(), std::move(*v)};
}

std::vector<double> envelope_gradient(const Discretization& d, const GridFunction& u,
                                      double lambda, double floor) {
  const Evaluation ev = evaluate(d, u.values);
  return energy_gradient(d, ev, u.values, lambda, floor);
}

double weak_residual(const Discretization& d, std::span<const double> u, double lambda,
                     std::span<const double> source, double floor) {
  const Evaluation ev = evaluate(d, u);
  auto g = energy_gradient(d, ev, u, lambda, floor);
  if (!source.empty()) {
    if (source.size() != g.size()) throw Error(ErrorCode::LengthMismatch, "source length");
    const auto m = d.mass();
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= m[i] * source[i];
  }
  return dual_norm(d, g) / std::sqrt(ev.triple.E);
}

std::vector<GridFunction> default_fallback_rays(const Discretization& d) {
  std::vector<GridFunction> rays;
  for (const auto& fam : ExtremalOptions::default_families())
    for (double sigma : {0.5, 1.0, 2.0, 4.0}) {
      ProfileSpec spec = fam;
      spec.sigma = sigma;
      rays.push_back(sample_profile(spec, d.grid_ptr()));
    }
  return rays;
}

SolveResult minimize_on_branch(const Discretization& d, double lambda, Branch branch,
                               const GridFunction& init, const SolveOptions& opts,
                               const std::vector<GridFunction>& fallbacks) {
  if (!d.radial()) throw Error(ErrorCode::UnsupportedGrid, "the solver runs on radial grids");
  if (branch != Branch::Nplus && branch != Branch::Nminus)
    throw Error(ErrorCode::ConfigError, "solve needs the Nplus or Nminus branch");
  if (!(lambda > 0.0)) throw Error(ErrorCode::ConfigError, "lambda must be positive");
  const double p = d.params().p(), q = d.params().q();
  const auto m = d.mass();
  const auto a = d.a();

  SolveResult res;
  res.branch = branch;
  res.lambda = lambda;

  auto start = try_project(d, init.values, lambda, branch);
  for (std::size_t k = 0; !start && k < fallbacks.size(); ++k) {
    if (res.reinitializations >= opts.reinit_budget) break;
    ++res.reinitializations;
    start = try_project(d, fallbacks[k].values, lambda, branch);
  }
  if (!start)
    throw Error(ErrorCode::RayMissesNehari,
                "no sampled ray meets the Nehari set (lambda above every sampled Lambda_n)");

  State s = make_state(d, std::move(*start), lambda, opts.floor);
  res.energy_history.push_back(s.energy);

  // Sobolev-preconditioned envelope descent. The direction solves
  // (S + lambda (1-q) diag(m a u^{q-2})) d = -g; trial points are clipped to
  // at least a tenth of the current value and reprojected onto the branch.
  double step = 1.0;
  std::vector<double> shift(d.size()), trial(d.size());
  const double stop_at = opts.polish ? std::max(opts.polish_start, opts.tolerance) : opts.tolerance;
  while (res.iterations < opts.max_descent && s.residual > stop_at) {
    const double eps = opts.floor * *std::max_element(s.u.begin(), s.u.end());
    for (std::size_t i = 0; i < d.size(); ++i)
      shift[i] = lambda * (1.0 - q) * m[i] * a[i] * std::pow(std::max(s.u[i], eps), q - 2.0);
    auto dir = d.solve_shifted(s.grad, shift);
    for (double& x : dir) x = -x;

    bool accepted = false;
    for (int bt = 0; bt < 50 && !accepted; ++bt, step *= 0.5) {
      for (std::size_t i = 0; i < d.size(); ++i)
        trial[i] = std::max(s.u[i] + step * dir[i], 0.1 * s.u[i]);
      auto proj = try_project(d, trial, lambda, branch);
      if (!proj) continue;
      const ReducedTriple tr = reduced_triple(d, *proj);
      if (energy(tr, lambda, p, q) < s.energy) {
        s = make_state(d, std::move(*proj), lambda, opts.floor);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    ++res.iterations;
    res.energy_history.push_back(s.energy);
    step = std::min(1.0, 4.0 * step);
  }

  // Damped Newton on J' = 0, with branch and positivity checks; the merit is
  // the weak residual.
  if (opts.polish && s.residual > opts.polish_target) {
    for (int it = 0; it < opts.max_newton && s.residual > opts.polish_target; ++it) {
      const Eigen::MatrixXd H = hessian(d, s, lambda, opts.floor);
      const Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(s.grad.data(), s.grad.size());
      const Eigen::VectorXd delta = H.partialPivLu().solve(-g);
      if (!delta.allFinite()) break;
      bool improved = false;
      for (double damp = 1.0; damp > 1e-4 && !improved; damp *= 0.5) {
        for (std::size_t i = 0; i < d.size(); ++i)
          trial[i] = std::max(s.u[i] + damp * delta[i], 0.1 * s.u[i]);
        auto proj = try_project(d, trial, lambda, branch);
        if (!proj) continue;
        State cand = make_state(d, std::move(*proj), lambda, opts.floor);
        if (cand.residual < s.residual &&
            classify(cand.ev.triple, lambda, p, q) == branch) {
          s = std::move(cand);
          improved = true;
        }
      }
      if (!improved) break;
      ++res.newton_iterations;
    }
  }

  const ReducedTriple& tr = s.ev.triple;
  const RootsResult roots = nehari_roots(tr, lambda, p, q);
  res.t_projection = branch == Branch::Nplus ? roots.t_plus : roots.t_minus;
  res.classified = classify(tr, lambda, p, q);
  res.energy = s.energy;
  res.residual = s.residual;
  res.norm = std::sqrt(tr.E);
  res.phi2 = phi_second(1.0, tr, lambda, p, q);
  res.floored_fraction = s.floored;
  res.converged = s.residual <= opts.tolerance && res.classified == branch;
  res.solution = GridFunction{d.grid_ptr(), std::move(s.u)};
  return res;
}

PairResult solve_pair(const Discretization& d, double lambda, const GridFunction& reference,
                      const SolveOptions& opts) {
  const auto fallbacks = default_fallback_rays(d);
  PairResult out;
  out.plus = minimize_on_branch(d, lambda, Branch::Nplus, reference, opts, fallbacks);
  out.minus = minimize_on_branch(d, lambda, Branch::Nminus, reference, opts, fallbacks);
  std::vector<double> diff(d.size());
  for (std::size_t i = 0; i < diff.size(); ++i)
    diff[i] = out.plus.solution.values[i] - out.minus.solution.values[i];
  out.separation = std::sqrt(norm_sq(d, diff)) / std::max(out.plus.norm, out.minus.norm);
  out.distinct = out.separation >= 1e-3;
  return out;
}

}  // namespace nehari
