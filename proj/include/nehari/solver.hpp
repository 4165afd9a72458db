#pragma once

#include <optional>
#include <vector>

#include "nehari/extremal.hpp"

namespace nehari {

struct SolveOptions {
  double tolerance = 1e-4;        // weak residual for success
  double polish_start = 1e-3;     // residual at which Newton polishing takes over
  double polish_target = 1e-11;   // Newton stops here
  int max_descent = 2000;
  int max_newton = 40;
  int reinit_budget = 4;
  double floor = kDefaultFloor;
  bool polish = true;
};

struct SolveResult {
  GridFunction solution;
  Branch branch = Branch::NotOnNehari;  // requested branch
  Branch classified = Branch::NotOnNehari;
  double lambda = 0.0;
  double energy = 0.0;
  double t_projection = 1.0;   // t+/- of the returned function (close to 1)
  double residual = 0.0;
  double norm = 0.0;           // ||u||
  double phi2 = 0.0;           // phi''(1)
  double floored_fraction = 0.0;
  int iterations = 0;          // descent steps
  int newton_iterations = 0;
  int reinitializations = 0;
  bool converged = false;
  std::vector<double> energy_history;  // after each accepted descent step
};

/// t+(u) u or t-(u) u. RayMissesNehari when lambda >= Lambda_n(u).
GridFunction project_to_nehari(const Discretization& d, const GridFunction& u, double lambda,
                               Branch branch);

/// Nodal gradient g of J at u, with g . phi = J'(u)[phi]. At a projected u
/// this is also the gradient of the branch-reduced energy v -> J(t(v) v).
std::vector<double> envelope_gradient(const Discretization& d, const GridFunction& u,
                                      double lambda, double floor = kDefaultFloor);

/// Dual-norm defect sqrt(g^T S^{-1} g) / ||u|| of the discrete Euler-Lagrange
/// equation. `source` adds a right-hand side f (integrated against the masses).
double weak_residual(const Discretization& d, std::span<const double> u, double lambda,
                     std::span<const double> source = {}, double floor = kDefaultFloor);

/// Minimizes J over the requested branch of the Nehari set starting from the
/// ray through `init`. `fallbacks` are alternative rays tried when `init`
/// misses the Nehari set. Never throws NoConvergence: check `converged`.
SolveResult minimize_on_branch(const Discretization& d, double lambda, Branch branch,
                               const GridFunction& init, const SolveOptions& opts = {},
                               const std::vector<GridFunction>& fallbacks = {});

struct PairResult {
  SolveResult plus;
  SolveResult minus;
  double separation = 0.0;  // ||u - w|| / max(||u||, ||w||)
  bool distinct = false;    // separation >= 1e-3
};

/// Both branches from one reference profile (normally the Lambda_n minimizer).
PairResult solve_pair(const Discretization& d, double lambda, const GridFunction& reference,
                      const SolveOptions& opts = {});

/// Rays used for reinitialization: the default family lattice.
std::vector<GridFunction> default_fallback_rays(const Discretization& d);

}  // namespace nehari
