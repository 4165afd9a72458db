#include "nehari/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "nehari/error.hpp"

namespace nehari {

namespace {

void check_len(const Discretization& d, std::span<const double> u) {
  if (u.size() != d.size()) throw Error(ErrorCode::LengthMismatch, "vector does not match the grid");
}

double max_of(std::span<const double> u) {
  double m = 0.0;
  for (double v : u) m = std::max(m, v);
  return m;
}

// Density f = b u^p and its quadrature against w.
std::vector<double> density(const Discretization& d, std::span<const double> u) {
  const double p = d.params().p();
  const auto b = d.b();
  std::vector<double> f(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) f[i] = b[i] * std::pow(std::abs(u[i]), p);
  return f;
}

double pair_sum(const Discretization& d, std::span<const double> f, std::span<const double> w) {
  const auto m = d.mass();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += m[i] * f[i] * w[i];
  return s;
}

}  // namespace

ReducedTriple ReducedTriple::scaled(double s, double p, double q) const {
  return {s * s * E, std::pow(s, q) * A, std::pow(s, 2.0 * p) * B};
}

void require_positive_cone(std::span<const double> u) {
  bool any = false;
  for (double v : u) {
    if (!std::isfinite(v) || v < 0.0)
      throw Error(ErrorCode::NotInPositiveCone, "function has a negative or non-finite value");
    any = any || v > 0.0;
  }
  if (!any) throw Error(ErrorCode::NotInPositiveCone, "function is identically zero");
}

double floored_fraction(std::span<const double> u, double floor) {
  if (u.empty()) return 0.0;
  const double eps = floor * max_of(u);
  std::size_t count = 0;
  for (double v : u) count += v < eps ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(u.size());
}

double norm_sq(const Discretization& d, std::span<const double> u) {
  check_len(d, u);
  return d.inner(u, u);
}

double weight_a(const Discretization& d, std::span<const double> u) {
  check_len(d, u);
  const double q = d.params().q();
  const auto m = d.mass();
  const auto a = d.a();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += m[i] * a[i] * std::pow(std::abs(u[i]), q);
  return s;
}

std::vector<double> nonlocal_potential(const Discretization& d, std::span<const double> u) {
  check_len(d, u);
  return d.potential(density(d, u));
}

double steinweiss_B(const Discretization& d, std::span<const double> u) {
  check_len(d, u);
  const auto f = density(d, u);
  return pair_sum(d, f, d.potential(f));
}

double steinweiss_B_radial(const Discretization& d, std::span<const double> u) {
  if (!d.radial()) throw Error(ErrorCode::UnsupportedGrid, "radial engine needs a radial grid");
  return steinweiss_B(d, u);
}

double steinweiss_B_direct(const Discretization& d, std::span<const double> u) {
  if (d.radial()) throw Error(ErrorCode::UnsupportedGrid, "direct engine needs a Cartesian grid");
  return steinweiss_B(d, u);
}

SingularAction singular_action(const Discretization& d, std::span<const double> u,
                               std::span<const double> phi, double floor) {
  check_len(d, u);
  check_len(d, phi);
  const double q = d.params().q();
  const double eps = floor * max_of(u);
  const auto m = d.mass();
  const auto a = d.a();
  SingularAction out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (phi[i] == 0.0) continue;
    out.value += m[i] * a[i] * std::pow(std::max(u[i], eps), q - 1.0) * phi[i];
  }
  out.floored_fraction = floored_fraction(u, floor);
  out.warning = out.floored_fraction > kSingularMassLimit;
  return out;
}

double nonlocal_action(const Discretization& d, std::span<const double> u,
                       std::span<const double> phi) {
  check_len(d, u);
  check_len(d, phi);
  const double p = d.params().p();
  const auto w = nonlocal_potential(d, u);
  const auto m = d.mass();
  const auto b = d.b();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    s += m[i] * b[i] * std::pow(std::abs(u[i]), p - 1.0) * phi[i] * w[i];
  return s;
}

double energy(const ReducedTriple& t, double lambda, double p, double q) {
  return 0.5 * t.E - (lambda / q) * t.A - t.B / (2.0 * p);
}

double energy(const Discretization& d, std::span<const double> u, double lambda) {
  return energy(reduced_triple(d, u), lambda, d.params().p(), d.params().q());
}

SingularAction gradient_action(const Discretization& d, std::span<const double> u,
                               std::span<const double> phi, double lambda, double floor) {
  SingularAction h = singular_action(d, u, phi, floor);
  h.value = d.inner(u, phi) - lambda * h.value - nonlocal_action(d, u, phi);
  return h;
}

ReducedTriple reduced_triple(const Discretization& d, std::span<const double> u) {
  check_len(d, u);
  require_positive_cone(u);
  return {norm_sq(d, u), weight_a(d, u), steinweiss_B(d, u)};
}

Evaluation evaluate(const Discretization& d, std::span<const double> u) {
  check_len(d, u);
  require_positive_cone(u);
  Evaluation ev;
  ev.stiff_u.resize(u.size());
  d.apply_stiffness(u, ev.stiff_u);
  const auto f = density(d, u);
  ev.potential = d.potential(f);
  double e = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) e += ev.stiff_u[i] * u[i];
  ev.triple = {e, weight_a(d, u), pair_sum(d, f, ev.potential)};
  return ev;
}

std::vector<double> energy_gradient(const Discretization& d, const Evaluation& ev,
                                    std::span<const double> u, double lambda, double floor,
                                    double* floored) {
  check_len(d, u);
  const double p = d.params().p();
  const double q = d.params().q();
  const double eps = floor * max_of(u);
  const auto m = d.mass();
  const auto a = d.a();
  const auto b = d.b();
  std::vector<double> g(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double sing = lambda * a[i] * std::pow(std::max(u[i], eps), q - 1.0);
    const double nonloc = b[i] * std::pow(std::abs(u[i]), p - 1.0) * ev.potential[i];
    g[i] = ev.stiff_u[i] - m[i] * (sing + nonloc);
  }
  if (floored) *floored = floored_fraction(u, floor);
  return g;
}

}  // namespace nehari
