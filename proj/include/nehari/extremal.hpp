#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "nehari/fibering.hpp"

namespace nehari {

struct LatticeEntry {
  ProfileSpec profile;
  double lambda_n = 0.0;
};

struct FamilySweepResult {
  double best_value = 0.0;
  ProfileSpec best_profile;
  GridFunction best_function;
  std::vector<LatticeEntry> lattice;  // every evaluated point, in lattice order
};

/// Minimum of Lambda_n over families x scales (EmptyFamily on an empty lattice).
FamilySweepResult family_sweep(const Discretization& d, const std::vector<ProfileSpec>& families,
                               const std::vector<double>& scales);

struct DescentOptions {
  int max_iterations = 3000;
  double rel_decrease = 1e-8;  // stop when the decrease over `window` steps falls below this
  int window = 10;
  double floor = kDefaultFloor;
};

struct DescentResult {
  double value = 0.0;
  GridFunction minimizer;     // normalized to ||u|| = 1
  std::vector<double> history;  // Lambda_n after each accepted step (first entry: start)
  int iterations = 0;
  bool stalled = false;       // line search could not decrease further
};

/// Preconditioned projected gradient descent on log Lambda_n, with E = 1
/// renormalization and a fraction-to-boundary clip keeping iterates positive.
DescentResult refine_descent(const Discretization& d, const GridFunction& start,
                             const DescentOptions& opts = {});

/// Analytic gradient of log Lambda_n at u (nodal, so that g . phi is the directional derivative).
std::vector<double> log_lambda_n_gradient(const Discretization& d, std::span<const double> u,
                                          double floor = kDefaultFloor);

struct ExtremalOptions {
  std::vector<ProfileSpec> families = default_families();
  std::vector<double> scales = {0.5, 0.75, 1.0, 1.5, 2.0, 3.0};
  DescentOptions descent;
  static std::vector<ProfileSpec> default_families();
};

struct ExtremalEstimate {
  double lambda_star = 0.0;  // best Lambda_n found (an upper estimate of the infimum)
  double lambda_sub = 0.0;   // ratio * lambda_star
  double ratio = 0.0;
  GridFunction minimizer;
  FamilySweepResult sweep;
  DescentResult descent;
};

ExtremalEstimate estimate_lambda_star(const Discretization& d, const ExtremalOptions& opts = {});

/// CSV trace: family,sigma,beta,lambda_n rows then descent,<iter>,,<value> rows.
void write_trace_csv(std::ostream& os, const ExtremalEstimate& est);

}  // namespace nehari
