#pragma once

#include <ostream>
#include <vector>

#include "nehari/solver.hpp"

namespace nehari {

struct SweepRow {
  double lambda = 0.0;
  double energy_plus = 0.0;
  double energy_minus = 0.0;
  double t_plus = 0.0;   // fixed reference profile
  double t_minus = 0.0;  // fixed reference profile
  double norm_minus = 0.0;
  double residual_plus = 0.0;
  double residual_minus = 0.0;
  bool converged_plus = false;
  bool converged_minus = false;
};

/// One solve_pair per lambda (independent rows, run in parallel when enabled).
/// lambda_grid must be strictly increasing and positive. Failed rows are
/// recorded with converged = false and NaN data, never thrown.
std::vector<SweepRow> run_sweep(const Discretization& d, const std::vector<double>& lambda_grid,
                                const GridFunction& reference, const SolveOptions& opts = {});

/// n points linear on [lo, hi].
std::vector<double> linear_lambda_grid(double lo, double hi, int n);
/// Linear from 0.05 lambda* to 0.5 lambda*, then geometric toward lambda*.
std::vector<double> default_lambda_grid(double lambda_star, int n);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

struct DerivativeCheck {
  double lambda = 0.0;
  double finite_difference = 0.0;
  double closed_form = 0.0;  // -(t)^q A / q
  double rel_error = 0.0;
};

/// Central difference of lambda -> J(t(lambda) u) for a fixed ray against
/// the closed form -(t)^q A / q, on either branch.
DerivativeCheck dJ_dlambda_check(const ReducedTriple& tr, double lambda, double p, double q,
                                 Branch branch = Branch::Nplus, double rel_step = 1e-4);

struct SignChangeReport {
  int crossings = 0;
  double lambda_hat = 0.0;  // interpolated zero of energy_minus
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double predicted = 0.0;   // ratio * lambda*
  double rel_error = 0.0;   // |lambda_hat - predicted| / lambda*
  bool within_cell = false; // predicted lies in [bracket_lo, bracket_hi]
  int excluded_rows = 0;
};

/// Locates the sign change of energy_minus over converged rows (NoSignChange if none).
SignChangeReport sign_change_locator(const std::vector<SweepRow>& rows, double lambda_star,
                                     double ratio);

struct EndpointPoint {
  int k = 0;
  double lambda = 0.0;
  double energy_plus = 0.0;
  double energy_minus = 0.0;
  double norm_minus = 0.0;
  bool converged = false;
};

struct EndpointReport {
  std::vector<EndpointPoint> points;
  std::vector<double> increments_plus;   // |J_{k+1} - J_k|
  std::vector<double> increments_minus;
  double median_norm_minus = 0.0;
  bool energies_decreasing = false;
  bool increments_shrinking = false;
  bool no_collapse = false;              // min norm >= 0.5 median
  bool ground_negative = false;
};

/// Solves at lambda_k = (1 - 2^{-k}) lambda*, k = 1..K.
EndpointReport endpoint_probe(const Discretization& d, double lambda_star,
                              const GridFunction& reference, int K = 6,
                              const SolveOptions& opts = {});

}  // namespace nehari
