#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <variant>
#include <vector>

#include "nehari/grid.hpp"
#include "nehari/params.hpp"
#include "nehari/steinweiss.hpp"

namespace nehari {

/// Everything needed to evaluate functionals on one grid for one parameter
/// set: nodal potentials, full quadrature masses, the stiffness operator of
/// the X-inner product, and the Stein-Weiss engine (built on first use).
///
/// Stiffness: piecewise-linear differences across cell interfaces with a hard
/// zero at r = R (radial) or outside the box (Cartesian), plus the V-mass term.
class Discretization {
 public:
  Discretization(GridPtr grid, ValidatedParams params);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const ValidatedParams& params() const noexcept { return params_; }
  std::size_t size() const noexcept { return mass_.size(); }
  bool radial() const noexcept { return is_radial(*grid_); }

  std::span<const double> mass() const noexcept { return mass_; }
  std::span<const double> a() const noexcept { return a_; }
  std::span<const double> b() const noexcept { return b_; }
  std::span<const double> radius() const noexcept { return node_radii(*grid_); }

  /// <u, v> in X. The quadratic form matches norm_sq exactly.
  double inner(std::span<const double> u, std::span<const double> v) const;
  void apply_stiffness(std::span<const double> u, std::span<double> out) const;

  /// Solves (S + diag(shift)) x = rhs; shift may be empty. Direct tridiagonal
  /// solve on radial grids, conjugate gradients on Cartesian grids.
  std::vector<double> solve_shifted(std::span<const double> rhs,
                                    std::span<const double> shift = {}) const;

  /// Potential w_i = sum_j G_ij m_j f_j for a nodal density f.
  std::vector<double> potential(std::span<const double> density) const;

  /// Dense kernel entry G_ij (radial grids only).
  double kernel_entry(std::size_t i, std::size_t j) const;

 private:
  void ensure_engine() const;

  GridPtr grid_;
  ValidatedParams params_;
  std::vector<double> mass_;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> vmass_;  // m_i V_i
  // Radial tridiagonal couplings: omega * c_k between nodes k and k+1, the
  // last one to the boundary value u(R) = 0.
  std::vector<double> coupling_;

  mutable std::once_flag engine_once_;
  mutable std::variant<std::monostate, SteinWeissRadial, SteinWeissDirect> engine_;
};

using DiscretizationPtr = std::shared_ptr<const Discretization>;

DiscretizationPtr make_discretization(GridPtr grid, ValidatedParams params);

}  // namespace nehari
