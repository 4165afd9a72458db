#pragma once

#include <span>
#include <vector>

#include "nehari/grid.hpp"

namespace nehari {

// Both engines represent the double-weighted interaction as a symmetric
// matrix G acting on mass-weighted densities:
//
//   w_i = sum_j G_ij m_j f_j,    B = sum_i m_i f_i w_i,
//
// where m are the full quadrature masses and f = b |u|^p. w is the nonlocal
// potential (the |x|^{-alpha} factor of the outer variable is inside w).

/// Radial engine for N = 3. Angular integration is done in closed form:
///   int_{S^2} |x - y|^{-mu} dS_y = 2 pi k_mu(r, s),
///   k_mu(r, s) = [(r+s)^{2-mu} - |r-s|^{2-mu}] / ((2-mu) r s),
/// with the logarithmic limit at mu = 2. The diagonal entry averages the lone
/// singular factor |r-s|^{2-mu} analytically over the node's cell.
class SteinWeissRadial {
 public:
  SteinWeissRadial(const RadialGrid& grid, double alpha, double mu);

  std::size_t size() const noexcept { return n_; }
  double entry(std::size_t i, std::size_t j) const noexcept { return g_[i * n_ + j]; }
  void potential(std::span<const double> mass_density, std::span<double> out) const;

 private:
  std::size_t n_;
  std::vector<double> g_;  // row-major, symmetric
};

/// Direct O(n^2) pair sum on a Cartesian grid (N = 3, m <= 24). The self-cell
/// uses the equal-volume sphere: int_{|z|<rho} |z|^{-mu} dz = 4 pi rho^{3-mu}/(3-mu).
class SteinWeissDirect {
 public:
  static constexpr int kMaxPointsPerAxis = 24;

  SteinWeissDirect(const CartesianGrid& grid, double alpha, double mu);

  std::size_t size() const noexcept { return radial_weight_.size(); }
  void potential(std::span<const double> mass_density, std::span<double> out) const;

 private:
  int m_;
  std::vector<double> radial_weight_;  // |x_i|^{-alpha}
  std::vector<double> offset_kernel_;  // |x_i - x_j|^{-mu} by lattice offset
  double self_term_;                   // 4 pi rho^{3-mu} / ((3-mu) h^3)
};

/// Angular kernel k_mu(r, s) for r != s.
double angular_kernel(double r, double s, double mu);

}  // namespace nehari
