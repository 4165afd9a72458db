#pragma once

#include <cmath>
#include <vector>

#include "nehari/discretization.hpp"
#include "nehari/grid.hpp"
#include "nehari/params.hpp"

namespace fixture {

inline nehari::ProblemParams defaults() { return nehari::ProblemParams{}; }

inline nehari::DiscretizationPtr radial(double R = 20.0, int M = 256, double grading = 2.0,
                                        const nehari::ProblemParams& p = defaults()) {
  return nehari::make_discretization(nehari::build_radial_grid(R, M, grading, p.dim),
                                     nehari::validate(p));
}

inline nehari::DiscretizationPtr radial_unchecked(double R, int M, const nehari::ProblemParams& p) {
  return nehari::make_discretization(nehari::build_radial_grid(R, M, 2.0, p.dim),
                                     nehari::ValidatedParams::assume_valid(p));
}

inline nehari::DiscretizationPtr cartesian(double L, int m,
                                           const nehari::ProblemParams& p = defaults()) {
  return nehari::make_discretization(nehari::build_cartesian_grid(L, m), nehari::validate(p));
}

inline nehari::GridFunction gaussian(const nehari::Discretization& d, double sigma = 1.0) {
  return nehari::sample_profile({nehari::ProfileFamily::Gaussian, sigma, 1.0}, d.grid_ptr());
}

inline std::vector<double> scaled(const std::vector<double>& u, double s) {
  std::vector<double> v(u);
  for (double& x : v) x *= s;
  return v;
}

}  // namespace fixture
