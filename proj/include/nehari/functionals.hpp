#pragma once

#include <span>
#include <vector>

#include "nehari/discretization.hpp"

namespace nehari {

/// (E, A, B) = (||u||^2, A(u), B(u)); every fibering quantity is a function of these.
struct ReducedTriple {
  double E = 0.0;
  double A = 0.0;
  double B = 0.0;

  /// Triple of s u: (s^2 E, s^q A, s^{2p} B).
  ReducedTriple scaled(double s, double p, double q) const;
};

/// Relative floor used for the singular power u^{q-1}.
inline constexpr double kDefaultFloor = 1e-10;
/// Fraction of floored nodes above which the evaluation is floor-dominated.
inline constexpr double kSingularMassLimit = 0.01;

struct SingularAction {
  double value = 0.0;
  double floored_fraction = 0.0;  // share of nodes with u < floor * max(u)
  bool warning = false;           // floored_fraction > kSingularMassLimit
};

double norm_sq(const Discretization& d, std::span<const double> u);
double weight_a(const Discretization& d, std::span<const double> u);

/// B(u) with the engine matching the grid; the named variants insist on one.
double steinweiss_B(const Discretization& d, std::span<const double> u);
double steinweiss_B_radial(const Discretization& d, std::span<const double> u);
double steinweiss_B_direct(const Discretization& d, std::span<const double> u);

/// Nodal values of w_u(x) = int b(y) u(y)^p / (|x|^alpha |x-y|^mu |y|^alpha) dy.
std::vector<double> nonlocal_potential(const Discretization& d, std::span<const double> u);

/// H(u, phi) = int a max(u, eps)^{q-1} phi, eps = floor * max(u).
SingularAction singular_action(const Discretization& d, std::span<const double> u,
                               std::span<const double> phi, double floor = kDefaultFloor);

/// D(u, phi) = int b u^{p-1} phi w_u.
double nonlocal_action(const Discretization& d, std::span<const double> u,
                       std::span<const double> phi);

double energy(const ReducedTriple& t, double lambda, double p, double q);
double energy(const Discretization& d, std::span<const double> u, double lambda);

/// J'(u)[phi] = <u, phi> - lambda H(u, phi) - D(u, phi).
SingularAction gradient_action(const Discretization& d, std::span<const double> u,
                               std::span<const double> phi, double lambda,
                               double floor = kDefaultFloor);

/// Rejects u outside the positive cone with NotInPositiveCone.
ReducedTriple reduced_triple(const Discretization& d, std::span<const double> u);

/// One pass over u that keeps the pieces the solver reuses.
struct Evaluation {
  ReducedTriple triple;
  std::vector<double> potential;  // w_u
  std::vector<double> stiff_u;    // S u
};
Evaluation evaluate(const Discretization& d, std::span<const double> u);

/// Nodal gradient of J: g_i = (S u)_i - lambda m_i a_i max(u_i,eps)^{q-1}
/// - m_i b_i u_i^{p-1} w_i, so that g . phi = J'(u)[phi].
std::vector<double> energy_gradient(const Discretization& d, const Evaluation& ev,
                                    std::span<const double> u, double lambda,
                                    double floor = kDefaultFloor,
                                    double* floored_fraction = nullptr);

/// Share of nodes where u < floor * max(u).
double floored_fraction(std::span<const double> u, double floor = kDefaultFloor);

void require_positive_cone(std::span<const double> u);

}  // namespace nehari
