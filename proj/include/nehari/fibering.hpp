#pragma once

#include <string>
#include <vector>

#include "nehari/functionals.hpp"

namespace nehari {

// Scalar algebra of the fibering map t -> J(t u), written on a reduced
// triple (E, A, B). None of these functions touch a grid.

double phi(double t, const ReducedTriple& tr, double lambda, double p, double q);
double phi_prime(double t, const ReducedTriple& tr, double lambda, double p, double q);
double phi_second(double t, const ReducedTriple& tr, double lambda, double p, double q);

/// Q_n(t) = R_n(t u), the lambda putting t u on the Nehari set.
double q_n(double t, const ReducedTriple& tr, double p, double q);
double q_n_prime(double t, const ReducedTriple& tr, double p, double q);
/// Q_e(t) = R_e(t u), the lambda giving t u zero energy.
double q_e(double t, const ReducedTriple& tr, double p, double q);
double q_e_prime(double t, const ReducedTriple& tr, double p, double q);

/// Unique maximizers of Q_n and Q_e.
double t_max_n(const ReducedTriple& tr, double p, double q);
double t_max_e(const ReducedTriple& tr, double p, double q);

/// Lambda_n = max_t Q_n, Lambda_e = max_t Q_e (closed forms).
double lambda_n(const ReducedTriple& tr, double p, double q);
double lambda_e(const ReducedTriple& tr, double p, double q);

struct RootsResult {
  enum class Kind { TwoRoots, DoubleRoot, NoRoot };
  Kind kind = Kind::NoRoot;
  double t_plus = 0.0;   // TwoRoots: smaller root; DoubleRoot: t_n
  double t_minus = 0.0;  // TwoRoots: larger root; DoubleRoot: t_n
  double phi2_plus = 0.0;
  double phi2_minus = 0.0;
};

/// Relative band around Lambda_n treated as tangency.
inline constexpr double kDoubleRootBand = 1e-12;

/// Solutions of Q_n(t) = lambda, i.e. the Nehari points on the ray through u.
RootsResult nehari_roots(const ReducedTriple& tr, double lambda, double p, double q);

enum class Branch { Nplus, Nminus, Nzero, NotOnNehari };
const char* to_string(Branch b) noexcept;
const char* to_string(RootsResult::Kind k) noexcept;

/// Classifies t = 1 using phi'(1), phi''(1) with tolerance 1e-9 max(E, lambda A, B).
Branch classify(const ReducedTriple& tr, double lambda, double p, double q);

/// Rescales the ray so that t_n = 1, then divides the triple by E. Lambda_n
/// and t_n are invariant under the uniform division.
ReducedTriple normalize_at_tangency(const ReducedTriple& tr, double p, double q);

struct DegenerateReport {
  double lambda_n = 0.0;
  double expected_A = 0.0;  // (2p - 2) / (Lambda_n (2p - q))
  double expected_B = 0.0;  // (2 - q) / (2p - q)
  // Relative: after normalization A scales like 1 / Lambda_n and can reach 1e8.
  double residual_A = 0.0;
  double residual_B = 0.0;
};

/// Requires E = 1 and t_n = 1 (NotNormalized otherwise).
DegenerateReport degenerate_relations_check(const ReducedTriple& tr, double p, double q);

struct EquivalenceReport {
  bool nehari_sign_agrees = false;  // sign(R_n - lambda) == sign(phi'(1))
  bool energy_sign_agrees = false;  // sign(R_e - lambda) == sign(J(u))
  int samples = 0;
  int derivative_sign_agreements = 0;  // sign(dQ_n/dt) vs phi'' at lambda = Q_n(t)
  double max_d38_residual_n = 0.0;     // |Q_n' - phi''/(t^{q-1} A)| relative
  double max_d38_residual_e = 0.0;     // |Q_e' - q phi'/(t^q A)| relative
  bool all_agree() const noexcept {
    return nehari_sign_agrees && energy_sign_agrees && derivative_sign_agreements == samples;
  }
};

EquivalenceReport rayleigh_equivalences(const ReducedTriple& tr, double lambda, double p, double q,
                                        int samples = 64);

struct FiberingReport {
  ReducedTriple triple;
  double t_n = 0.0;
  double t_e = 0.0;
  double lambda_n = 0.0;
  double lambda_e = 0.0;
  RootsResult roots;
  Branch branch = Branch::NotOnNehari;
};

FiberingReport fibering_report(const ReducedTriple& tr, double lambda, double p, double q);

}  // namespace nehari
