#include "nehari/fibering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "nehari/error.hpp"
#include "nehari/params.hpp"

namespace nehari {

namespace {

void need_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::NonpositiveT, "t must be positive");
}
void need_A(const ReducedTriple& tr) {
  if (!(tr.A > 0.0)) throw Error(ErrorCode::ZeroA, "A(u) must be positive");
}
void need_B(const ReducedTriple& tr) {
  if (!(tr.B > 0.0)) throw Error(ErrorCode::ZeroB, "B(u) must be positive");
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

// Root of Q_n(e^s) = lambda in [lo, hi] (log variables).
double solve_log(const ReducedTriple& tr, double lambda, double p, double q, double lo, double hi) {
  auto g = [&](double s) { return q_n(std::exp(s), tr, p, q) - lambda; };
  std::uintmax_t iters = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      g, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  // Keep the endpoint with the smaller defect.
  const double a = bracket.first, b = bracket.second;
  return std::exp(std::abs(g(a)) <= std::abs(g(b)) ? a : b);
}

}  // namespace

double phi(double t, const ReducedTriple& tr, double lambda, double p, double q) {
  need_t(t);
  return 0.5 * t * t * tr.E - (lambda / q) * std::pow(t, q) * tr.A -
         std::pow(t, 2.0 * p) * tr.B / (2.0 * p);
}

double phi_prime(double t, const ReducedTriple& tr, double lambda, double p, double q) {
  need_t(t);
  return t * tr.E - lambda * std::pow(t, q - 1.0) * tr.A - std::pow(t, 2.0 * p - 1.0) * tr.B;
}

double phi_second(double t, const ReducedTriple& tr, double lambda, double p, double q) {
  need_t(t);
  return tr.E - (q - 1.0) * lambda * std::pow(t, q - 2.0) * tr.A -
         (2.0 * p - 1.0) * std::pow(t, 2.0 * p - 2.0) * tr.B;
}

double q_n(double t, const ReducedTriple& tr, double p, double q) {
  need_t(t);
  need_A(tr);
  return std::pow(t, 2.0 - q) * (tr.E - std::pow(t, 2.0 * p - 2.0) * tr.B) / tr.A;
}

double q_n_prime(double t, const ReducedTriple& tr, double p, double q) {
  need_t(t);
  need_A(tr);
  return std::pow(t, 1.0 - q) *
         ((2.0 - q) * tr.E - (2.0 * p - q) * std::pow(t, 2.0 * p - 2.0) * tr.B) / tr.A;
}

double q_e(double t, const ReducedTriple& tr, double p, double q) {
  need_t(t);
  need_A(tr);
  return q * std::pow(t, 2.0 - q) * (0.5 * tr.E - std::pow(t, 2.0 * p - 2.0) * tr.B / (2.0 * p)) /
         tr.A;
}

double q_e_prime(double t, const ReducedTriple& tr, double p, double q) {
  need_t(t);
  need_A(tr);
  return q * std::pow(t, 1.0 - q) *
         (0.5 * (2.0 - q) * tr.E -
          (2.0 * p - q) * std::pow(t, 2.0 * p - 2.0) * tr.B / (2.0 * p)) /
         tr.A;
}

double t_max_n(const ReducedTriple& tr, double p, double q) {
  need_B(tr);
  const double x = std::log((2.0 - q) / (2.0 * p - q)) + std::log(tr.E) - std::log(tr.B);
  return std::exp(x / (2.0 * p - 2.0));
}

double t_max_e(const ReducedTriple& tr, double p, double q) {
  return std::exp(std::log(p) / (2.0 * p - 2.0)) * t_max_n(tr, p, q);
}

double lambda_n(const ReducedTriple& tr, double p, double q) {
  need_A(tr);
  need_B(tr);
  const double k1 = (2.0 * p - q) / (2.0 * p - 2.0);
  const double k2 = (2.0 - q) / (2.0 * p - 2.0);
  const double c = fibering_constants(p, q).c_pq;
  return std::exp(std::log(c) + k1 * std::log(tr.E) - std::log(tr.A) - k2 * std::log(tr.B));
}

double lambda_e(const ReducedTriple& tr, double p, double q) {
  return fibering_constants(p, q).ratio * lambda_n(tr, p, q);
}

RootsResult nehari_roots(const ReducedTriple& tr, double lambda, double p, double q) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::ConfigError, "nehari_roots needs lambda > 0");
  const double tn = t_max_n(tr, p, q);
  const double ln = lambda_n(tr, p, q);
  RootsResult out;
  if (std::abs(lambda - ln) <= kDoubleRootBand * ln) {
    out.kind = RootsResult::Kind::DoubleRoot;
    out.t_plus = out.t_minus = tn;
    out.phi2_plus = out.phi2_minus = phi_second(tn, tr, lambda, p, q);
    return out;
  }
  if (lambda > ln) return out;

  // Q_n -> 0 as t -> 0 and -> -infinity as t -> infinity; expand in log t.
  const double sn = std::log(tn);
  double lo = sn - 1.0, hi = sn + 1.0;
  int guard = 0;
  while (q_n(std::exp(lo), tr, p, q) >= lambda) {
    lo -= 2.0 * (sn - lo);
    if (++guard > 60) throw Error(ErrorCode::RootBracketFailure, "no lower bracket for t+");
  }
  guard = 0;
  while (q_n(std::exp(hi), tr, p, q) >= lambda) {
    hi += 2.0 * (hi - sn);
    if (++guard > 60) throw Error(ErrorCode::RootBracketFailure, "no upper bracket for t-");
  }
  out.kind = RootsResult::Kind::TwoRoots;
  out.t_plus = solve_log(tr, lambda, p, q, lo, sn);
  out.t_minus = solve_log(tr, lambda, p, q, sn, hi);
  out.phi2_plus = phi_second(out.t_plus, tr, lambda, p, q);
  out.phi2_minus = phi_second(out.t_minus, tr, lambda, p, q);
  return out;
}

const char* to_string(Branch b) noexcept {
  switch (b) {
    case Branch::Nplus: return "Nplus";
    case Branch::Nminus: return "Nminus";
    case Branch::Nzero: return "Nzero";
    case Branch::NotOnNehari: return "NotOnNehari";
  }
  return "NotOnNehari";
}

const char* to_string(RootsResult::Kind k) noexcept {
  switch (k) {
    case RootsResult::Kind::TwoRoots: return "TwoRoots";
    case RootsResult::Kind::DoubleRoot: return "DoubleRoot";
    case RootsResult::Kind::NoRoot: return "NoRoot";
  }
  return "NoRoot";
}

Branch classify(const ReducedTriple& tr, double lambda, double p, double q) {
  const double tol = 1e-9 * std::max({tr.E, lambda * tr.A, tr.B});
  const double d1 = phi_prime(1.0, tr, lambda, p, q);
  const double d2 = phi_second(1.0, tr, lambda, p, q);
  if (std::abs(d1) > tol) return Branch::NotOnNehari;
  if (std::abs(d2) <= tol) return Branch::Nzero;
  return d2 > 0.0 ? Branch::Nplus : Branch::Nminus;
}

ReducedTriple normalize_at_tangency(const ReducedTriple& tr, double p, double q) {
  const ReducedTriple s = tr.scaled(t_max_n(tr, p, q), p, q);
  return {1.0, s.A / s.E, s.B / s.E};
}

DegenerateReport degenerate_relations_check(const ReducedTriple& tr, double p, double q) {
  if (std::abs(tr.E - 1.0) > 1e-12 || std::abs(t_max_n(tr, p, q) - 1.0) > 1e-10)
    throw Error(ErrorCode::NotNormalized, "triple must have E = 1 and t_n = 1");
  DegenerateReport r;
  r.lambda_n = lambda_n(tr, p, q);
  r.expected_A = (2.0 * p - 2.0) / (r.lambda_n * (2.0 * p - q));
  r.expected_B = (2.0 - q) / (2.0 * p - q);
  r.residual_A = std::abs(tr.A - r.expected_A) / r.expected_A;
  r.residual_B = std::abs(tr.B - r.expected_B) / r.expected_B;
  return r;
}

EquivalenceReport rayleigh_equivalences(const ReducedTriple& tr, double lambda, double p, double q,
                                        int samples) {
  EquivalenceReport r;
  const double rn = q_n(1.0, tr, p, q);
  const double re = q_e(1.0, tr, p, q);
  r.nehari_sign_agrees = sign(rn - lambda) == sign(phi_prime(1.0, tr, lambda, p, q));
  r.energy_sign_agrees = sign(re - lambda) == sign(phi(1.0, tr, lambda, p, q));

  // Sample t log-uniformly over two decades either side of t_n, skipping t_n.
  const double tn = t_max_n(tr, p, q);
  r.samples = samples;
  for (int k = 0; k < samples; ++k) {
    const double t = tn * std::pow(10.0, -2.0 + 4.0 * (k + 0.5) / samples);
    const double ln_t = q_n(t, tr, p, q);
    const double le_t = q_e(t, tr, p, q);
    const double dn = q_n_prime(t, tr, p, q);
    const double de = q_e_prime(t, tr, p, q);
    const double via_phi2 = phi_second(t, tr, ln_t, p, q) / (std::pow(t, q - 1.0) * tr.A);
    const double via_phi1 = q * phi_prime(t, tr, le_t, p, q) / (std::pow(t, q) * tr.A);
    if (sign(dn) == sign(via_phi2)) ++r.derivative_sign_agreements;
    const double sn = std::max({std::abs(dn), std::pow(t, 1.0 - q) * tr.E / tr.A, 1e-300});
    const double se = std::max({std::abs(de), std::pow(t, 1.0 - q) * tr.E / tr.A, 1e-300});
    r.max_d38_residual_n = std::max(r.max_d38_residual_n, std::abs(dn - via_phi2) / sn);
    r.max_d38_residual_e = std::max(r.max_d38_residual_e, std::abs(de - via_phi1) / se);
  }
  return r;
}

FiberingReport fibering_report(const ReducedTriple& tr, double lambda, double p, double q) {
  FiberingReport r;
  r.triple = tr;
  r.t_n = t_max_n(tr, p, q);
  r.t_e = t_max_e(tr, p, q);
  r.lambda_n = lambda_n(tr, p, q);
  r.lambda_e = lambda_e(tr, p, q);
  if (lambda > 0.0) {
    r.roots = nehari_roots(tr, lambda, p, q);
    r.branch = classify(tr, lambda, p, q);
  }
  return r;
}

}  // namespace nehari
