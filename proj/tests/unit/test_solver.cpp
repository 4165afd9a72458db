#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "nehari/error.hpp"
#include "nehari/solver.hpp"
#include "oracles.hpp"

using namespace nehari;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Setup {
  DiscretizationPtr d;
  ExtremalEstimate est;
};

const Setup& setup() {
  static const Setup s = [] {
    Setup out;
    out.d = fixture::radial(20.0, 128);
    out.est = estimate_lambda_star(*out.d);
    return out;
  }();
  return s;
}

}  // namespace

TEST_CASE("projection lands on the requested branch and is idempotent") {
  const auto& [d, est] = setup();
  const double lambda = 0.5 * est.lambda_star;
  const GridFunction u = fixture::gaussian(*d, 1.5);
  for (Branch b : {Branch::Nplus, Branch::Nminus}) {
    const GridFunction v = project_to_nehari(*d, u, lambda, b);
    const ReducedTriple t = reduced_triple(*d, v.values);
    CHECK(classify(t, lambda, 2.0, 0.5) == b);
    const GridFunction w = project_to_nehari(*d, v, lambda, b);
    for (std::size_t i = 0; i < v.size(); i += 9) CHECK(rel(w.values[i], v.values[i]) < 1e-10);
    GridFunction u3 = u;
    for (double& x : u3.values) x *= 3.0;
    const GridFunction v3 = project_to_nehari(*d, u3, lambda, b);
    for (std::size_t i = 0; i < v.size(); i += 9) CHECK(rel(v3.values[i], v.values[i]) < 1e-10);
  }
}

TEST_CASE("projection fails above Lambda_n of the ray") {
  const auto& [d, est] = setup();
  const GridFunction u = fixture::gaussian(*d);
  const double L = lambda_n(reduced_triple(*d, u.values), 2.0, 0.5);
  try {
    project_to_nehari(*d, u, 10.0 * L, Branch::Nplus);
    FAIL("expected RayMissesNehari");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RayMissesNehari);
  }
}

TEST_CASE("envelope gradient is the derivative of the branch-reduced energy") {
  const auto& [d, est] = setup();
  const double lambda = 0.5 * est.lambda_star;
  for (Branch b : {Branch::Nplus, Branch::Nminus}) {
    const GridFunction v = project_to_nehari(*d, fixture::gaussian(*d, 1.2), lambda, b);
    const auto g = envelope_gradient(*d, v, lambda);
    std::vector<double> phi(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      phi[i] = v.values[i] * std::exp(-0.3 * d->radius()[i]);
    const double fd = oracle::central_difference(
        [&](double h) {
          GridFunction w = v;
          for (std::size_t i = 0; i < w.size(); ++i) w.values[i] += h * phi[i];
          return energy(*d, project_to_nehari(*d, w, lambda, b).values, lambda);
        },
        0.0, 1e-6);
    double dir = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) dir += g[i] * phi[i];
    CHECK(std::abs(dir - fd) < 1e-5 * std::abs(fd) + 1e-9);
  }
}

TEST_CASE("weak residual of a linear problem") {
  ProblemParams p;
  p.b_form = BForm::Zero;
  auto d = fixture::radial_unchecked(12.0, 256, p);
  const auto u = fixture::gaussian(*d).values;
  std::vector<double> su(u.size());
  d->apply_stiffness(u, su);
  std::vector<double> f(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) f[i] = su[i] / d->mass()[i];
  CHECK(weak_residual(*d, u, 0.0, f) <= 1e-10);
  // At 2u the defect is S u, whose dual norm is ||u||, against ||2u||.
  CHECK(std::abs(weak_residual(*d, fixture::scaled(u, 2.0), 0.0, f) - 0.5) <= 1e-10);

  // Continuous source -u'' - 2u'/r + (1 + r^2) u for u = e^{-r^2}.
  std::vector<double> fc(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = d->radius()[i];
    fc[i] = (6.0 - 4.0 * r * r + 1.0 + r * r) * std::exp(-r * r);
  }
  const double coarse = weak_residual(*d, u, 0.0, fc);
  auto fine = fixture::radial_unchecked(12.0, 512, p);
  const auto uf = fixture::gaussian(*fine).values;
  std::vector<double> ff(uf.size());
  for (std::size_t i = 0; i < uf.size(); ++i) {
    const double r = fine->radius()[i];
    ff[i] = (7.0 - 3.0 * r * r) * std::exp(-r * r);
  }
  const double finer = weak_residual(*fine, uf, 0.0, ff);
  CHECK(coarse < 1e-3);
  CHECK(finer < coarse);
}

TEST_CASE("solve pair at half of lambda*") {
  const auto& [d, est] = setup();
  const double lambda = 0.5 * est.lambda_star;
  const PairResult pr = solve_pair(*d, lambda, est.minimizer);
  REQUIRE(pr.plus.converged);
  REQUIRE(pr.minus.converged);
  CHECK(pr.plus.classified == Branch::Nplus);
  CHECK(pr.minus.classified == Branch::Nminus);
  CHECK(pr.plus.energy < 0.0);
  CHECK(pr.plus.energy < pr.minus.energy);
  CHECK(pr.plus.residual <= 1e-4);
  CHECK(pr.minus.residual <= 1e-4);
  CHECK(pr.distinct);
  CHECK(pr.plus.solution.in_positive_cone());
  CHECK(std::abs(pr.plus.t_projection - 1.0) < 1e-8);
  CHECK(std::abs(pr.minus.t_projection - 1.0) < 1e-8);
  for (const auto* r : {&pr.plus, &pr.minus})
    for (std::size_t k = 1; k < r->energy_history.size(); ++k)
      CHECK(r->energy_history[k] <= r->energy_history[k - 1]);
  CHECK(weak_residual(*d, pr.plus.solution.values, lambda) ==
        doctest::Approx(pr.plus.residual).epsilon(1e-6));
}

TEST_CASE("solver input checks") {
  const auto& [d, est] = setup();
  const GridFunction u = fixture::gaussian(*d);
  CHECK_THROWS_AS(minimize_on_branch(*d, 0.1, Branch::Nzero, u), Error);
  CHECK_THROWS_AS(minimize_on_branch(*d, -0.1, Branch::Nplus, u), Error);
  auto cd = fixture::cartesian(3.0, 8);
  try {
    minimize_on_branch(*cd, 0.1, Branch::Nplus, fixture::gaussian(*cd));
    FAIL("expected UnsupportedGrid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedGrid);
  }
  // Above Lambda_n of every ray the solver may try, no ray reaches the Nehari set.
  const auto rays = default_fallback_rays(*d);
  const SolveOptions opts;
  double top = lambda_n(reduced_triple(*d, u.values), 2.0, 0.5);
  for (int k = 0; k < opts.reinit_budget; ++k)
    top = std::max(top, lambda_n(reduced_triple(*d, rays[k].values), 2.0, 0.5));
  try {
    minimize_on_branch(*d, 1.1 * top, Branch::Nplus, u, opts, rays);
    FAIL("expected RayMissesNehari");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RayMissesNehari);
  }
}
