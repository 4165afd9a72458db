#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "nehari/error.hpp"
#include "nehari/functionals.hpp"
#include "oracles.hpp"

using namespace nehari;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

ProblemParams constant_b() {
  ProblemParams p;
  p.b_form = BForm::Constant;
  p.b_constant = 1.0;
  return p;
}

// B for a radial profile with b = 1 and mu = 1, where the angular kernel
// collapses to 2 / max(r, s): iterated Gauss-Kronrod, split at the kink.
double b_oracle_mu1(double (*f)(double), double alpha, double R) {
  auto inner = [&](double r) {
    auto g = [&](double s) { return std::pow(s, 2.0 - alpha) * f(s) * 2.0 / std::max(r, s); };
    return oracle::integrate(g, 0.0, r) + oracle::integrate(g, r, R);
  };
  return 8.0 * pi * pi *
         oracle::integrate([&](double r) { return std::pow(r, 2.0 - alpha) * f(r) * inner(r); },
                           0.0, R);
}

}  // namespace

TEST_CASE("norm of a gaussian against quadrature of the X-norm") {
  auto d = fixture::radial(12.0, 512);
  const auto u = fixture::gaussian(*d, std::sqrt(2.0));  // e^{-r^2/2}
  const double exact = 4.0 * pi * oracle::integrate([](double r) {
    const double u = std::exp(-0.5 * r * r), du = -r * u;
    return (du * du + (1.0 + r * r) * u * u) * r * r;
  }, 0.0, 12.0);
  CHECK(rel(norm_sq(*d, u.values), exact) < 1e-5);
}

TEST_CASE("norm error shrinks under refinement") {
  double prev = 1.0;
  const double exact = 4.0 * pi * oracle::integrate([](double r) {
    const double u = std::exp(-r * r), du = -2.0 * r * u;
    return (du * du + (1.0 + r * r) * u * u) * r * r;
  }, 0.0, 10.0);
  for (int M : {64, 128, 256, 512}) {
    auto d = fixture::radial(10.0, M);
    const double err = rel(norm_sq(*d, fixture::gaussian(*d).values), exact);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("weighted singular term A against quadrature") {
  ProblemParams p;
  p.gamma3 = 1.2;
  auto d = fixture::radial(20.0, 512, 2.0, p);
  const auto u = fixture::gaussian(*d);
  const double exact = 4.0 * pi * oracle::integrate([](double r) {
    return std::pow(1.0 + r * r, -1.2) * std::exp(-0.5 * r * r) * r * r;
  }, 0.0, 20.0);
  CHECK(rel(weight_a(*d, u.values), exact) < 1e-6);

  // H needs u above the floor everywhere: on R = 6, e^{-r^2/2} >= 1.5e-8.
  auto d6 = fixture::radial(6.0, 512, 2.0, p);
  const auto u6 = fixture::gaussian(*d6, std::sqrt(2.0));
  const SingularAction h = singular_action(*d6, u6.values, u6.values);
  CHECK_FALSE(h.warning);
  CHECK(h.floored_fraction == 0.0);
  CHECK(h.value == doctest::Approx(weight_a(*d6, u6.values)).epsilon(1e-14));
  // H(u, u^2) = int a u^{q+1}
  std::vector<double> sq(u6.values);
  for (double& x : sq) x *= x;
  const double exact_h = 4.0 * pi * oracle::integrate([](double r) {
    return std::pow(1.0 + r * r, -1.2) * std::exp(-0.75 * r * r) * r * r;
  }, 0.0, 6.0);
  CHECK(rel(singular_action(*d6, u6.values, sq).value, exact_h) < 1e-6);
}

TEST_CASE("angular kernel matches the sphere integral") {
  for (double mu : {0.5, 1.0, 1.7, 2.0, 2.6})
    for (auto [r, s] : {std::pair{0.3, 1.1}, std::pair{2.0, 0.7}, std::pair{1.0, 1.05}}) {
      const double direct = 2.0 * pi * oracle::integrate([&](double t) {
        return std::pow(r * r + s * s - 2.0 * r * s * t, -0.5 * mu);
      }, -1.0, 1.0);
      CHECK(rel(2.0 * pi * angular_kernel(r, s, mu), direct) < 1e-9);
    }
}

TEST_CASE("radial Stein-Weiss term against an iterated integral") {
  auto f = [](double r) { return std::exp(-2.0 * r * r); };  // (e^{-r^2})^p, p = 2
  const double exact = b_oracle_mu1(f, 0.25, 8.0);
  double prev = 1.0;
  for (int M : {128, 256, 512}) {
    auto d = fixture::radial(8.0, M, 2.0, constant_b());
    const double err = rel(steinweiss_B(*d, fixture::gaussian(*d).values), exact);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("homogeneities of E, A, B") {
  auto d = fixture::radial(20.0, 256);
  const auto u = fixture::gaussian(*d, 1.3).values;
  const ReducedTriple t = reduced_triple(*d, u);
  for (double s : {0.3, 1.7, 4.0}) {
    const ReducedTriple ts = reduced_triple(*d, fixture::scaled(u, s));
    const ReducedTriple expect = t.scaled(s, 2.0, 0.5);
    CHECK(rel(ts.E, expect.E) < 1e-13);
    CHECK(rel(ts.A, expect.A) < 1e-13);
    CHECK(rel(ts.B, expect.B) < 1e-13);
    const auto w = nonlocal_potential(*d, u), ws = nonlocal_potential(*d, fixture::scaled(u, s));
    for (std::size_t i = 0; i < w.size(); i += 17) CHECK(rel(ws[i], s * s * w[i]) < 1e-13);
  }
}

TEST_CASE("nonlocal action reproduces B and is linear in the test function") {
  auto d = fixture::radial(20.0, 256);
  const auto u = fixture::gaussian(*d).values;
  const auto v = fixture::gaussian(*d, 0.6).values;
  const double B = steinweiss_B(*d, u);
  CHECK(rel(nonlocal_action(*d, u, u), B) < 1e-13);
  std::vector<double> comb(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) comb[i] = 2.0 * u[i] - 3.0 * v[i];
  const double lin = 2.0 * nonlocal_action(*d, u, u) - 3.0 * nonlocal_action(*d, u, v);
  CHECK(rel(nonlocal_action(*d, u, comb), lin) < 1e-12);
  // sum m f w = B with f = b u^p
  const auto w = nonlocal_potential(*d, u);
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += d->mass()[i] * d->b()[i] * u[i] * u[i] * w[i];
  CHECK(rel(s, B) < 1e-13);
  const SingularAction h1 = singular_action(*d, u, comb);
  const SingularAction hu = singular_action(*d, u, u), hv = singular_action(*d, u, v);
  CHECK(rel(h1.value, 2.0 * hu.value - 3.0 * hv.value) < 1e-12);
}

TEST_CASE("radial kernel is symmetric") {
  auto d = fixture::radial(20.0, 64);
  for (std::size_t i = 0; i < d->size(); i += 5)
    for (std::size_t j = 0; j < d->size(); j += 7)
      CHECK(d->kernel_entry(i, j) == d->kernel_entry(j, i));
}

TEST_CASE("direct engine: pairing symmetry and cubic symmetry") {
  auto d = fixture::cartesian(3.0, 12, constant_b());
  const auto& cg = std::get<CartesianGrid>(d->grid());
  std::vector<double> f(d->size()), g(d->size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& x = cg.x[i];
    f[i] = std::exp(-(x[0] - 0.3) * (x[0] - 0.3) - x[1] * x[1] - x[2] * x[2]);
    g[i] = 1.0 / (1.0 + x[0] * x[0] + 2.0 * x[1] * x[1] + x[2] * x[2]);
  }
  const auto wf = d->potential(f), wg = d->potential(g);
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    a += d->mass()[i] * g[i] * wf[i];
    b += d->mass()[i] * f[i] * wg[i];
  }
  CHECK(rel(a, b) < 1e-12);

  const auto u = fixture::gaussian(*d).values;
  const auto w = nonlocal_potential(*d, u);
  const int m = cg.m;
  for (int i = 0; i < m; i += 3)
    for (int j = 0; j < m; j += 2)
      for (int k = 0; k < m; ++k) {
        const double ref = w[cg.index(i, j, k)];
        CHECK(rel(w[cg.index(m - 1 - i, j, k)], ref) < 1e-12);
        CHECK(rel(w[cg.index(j, i, k)], ref) < 1e-12);
        CHECK(rel(w[cg.index(k, j, i)], ref) < 1e-12);
      }
}

TEST_CASE("radial and direct engines agree and the gap shrinks") {
  auto rd = fixture::radial(6.0, 512, 2.0, constant_b());
  const double br = steinweiss_B_radial(*rd, fixture::gaussian(*rd).values);
  double prev = 1.0;
  for (int m : {12, 16, 20, 24}) {
    auto cd = fixture::cartesian(3.5, m, constant_b());
    const double gap = rel(steinweiss_B_direct(*cd, fixture::gaussian(*cd).values), br);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 0.02);
}

TEST_CASE("engine and grid mismatches are reported") {
  auto rd = fixture::radial(10.0, 64);
  auto cd = fixture::cartesian(3.0, 8);
  const auto u = fixture::gaussian(*rd).values;
  const auto v = fixture::gaussian(*cd).values;
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ConfigError;
  };
  CHECK(code_of([&] { steinweiss_B_direct(*rd, u); }) == ErrorCode::UnsupportedGrid);
  CHECK(code_of([&] { steinweiss_B_radial(*cd, v); }) == ErrorCode::UnsupportedGrid);
  auto big = fixture::cartesian(3.0, 26);
  CHECK(code_of([&] { steinweiss_B(*big, fixture::gaussian(*big).values); }) ==
        ErrorCode::GridTooLarge);
  ProblemParams bad;
  bad.mu = 3.5;
  auto kd = fixture::radial_unchecked(10.0, 64, bad);
  CHECK(code_of([&] { steinweiss_B(*kd, fixture::gaussian(*kd).values); }) ==
        ErrorCode::KernelDomain);
  std::vector<double> neg(u);
  neg[4] = -1.0;
  CHECK(code_of([&] { reduced_triple(*rd, neg); }) == ErrorCode::NotInPositiveCone);
  std::vector<double> short_u(u.begin(), u.end() - 1);
  CHECK(code_of([&] { norm_sq(*rd, short_u); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("log kernel at mu = 2 is the limit of nearby exponents") {
  ProblemParams p = constant_b();
  p.mu = 2.0;
  auto d2 = fixture::radial_unchecked(10.0, 256, p);
  const double b2 = steinweiss_B(*d2, fixture::gaussian(*d2).values);
  for (double eps : {1e-4, -1e-4}) {
    p.mu = 2.0 + eps;
    auto de = fixture::radial_unchecked(10.0, 256, p);
    CHECK(rel(steinweiss_B(*de, fixture::gaussian(*de).values), b2) < 1e-3);
  }
}

TEST_CASE("singular mass warning when the floor dominates") {
  auto d = fixture::radial(20.0, 256);
  auto u = fixture::gaussian(*d).values;
  for (std::size_t i = u.size() / 2; i < u.size(); ++i) u[i] = 0.0;
  const SingularAction h = singular_action(*d, u, u);
  CHECK(h.warning);
  CHECK(h.floored_fraction >= 0.5);
  CHECK(h.floored_fraction == doctest::Approx(floored_fraction(u)));
  const auto clean = sample_profile({ProfileFamily::InversePoly, 1.0, 1.5}, d->grid_ptr()).values;
  CHECK(floored_fraction(clean) == 0.0);
}

TEST_CASE("Stein-Weiss quotient is stable under grid refinement") {
  // B(u) / ||b u^p||_r^2 with r = 2N / (2N - 2 alpha - mu) = 4/3.
  const double r = 4.0 / 3.0;
  std::vector<double> ratios;
  for (int M : {128, 256, 512}) {
    auto d = fixture::radial(20.0, M);
    const auto u = fixture::gaussian(*d).values;
    std::vector<double> f(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) f[i] = std::pow(d->b()[i] * u[i] * u[i], r);
    const double lr = std::pow(4.0 * pi * integrate(d->grid(), f), 1.0 / r);
    ratios.push_back(steinweiss_B(*d, u) / (lr * lr));
  }
  for (double q : ratios) {
    CHECK(std::isfinite(q));
    CHECK(std::abs(q / ratios.back() - 1.0) < 0.1);
  }
}

TEST_CASE("direct engine refinement increments shrink") {
  std::vector<double> b;
  for (int m : {12, 16, 20, 24}) {
    ProblemParams p = constant_b();
    auto d = fixture::cartesian(3.5, m, p);
    b.push_back(steinweiss_B_direct(*d, fixture::gaussian(*d).values));
  }
  for (std::size_t k = 2; k < b.size(); ++k)
    CHECK(std::abs(b[k] - b[k - 1]) < std::abs(b[k - 1] - b[k - 2]));
}

TEST_CASE("zero inputs and scalar examples") {
  auto d = fixture::radial(10.0, 64);
  const std::vector<double> zero(d->size(), 0.0);
  const auto u = fixture::gaussian(*d).values;
  CHECK(norm_sq(*d, zero) == 0.0);
  CHECK(weight_a(*d, zero) == 0.0);
  CHECK(steinweiss_B(*d, zero) == 0.0);
  CHECK(singular_action(*d, u, zero).value == 0.0);
  CHECK(nonlocal_action(*d, u, zero) == 0.0);
  for (double w : nonlocal_potential(*d, zero)) CHECK(w == 0.0);
  for (double w : nonlocal_potential(*d, u)) CHECK(w > 0.0);
  CHECK(energy(ReducedTriple{1, 1, 1}, 0.1, 2.0, 0.5) == doctest::Approx(0.05).epsilon(1e-15));
  const ReducedTriple t = reduced_triple(*d, u);
  CHECK(energy(t, 0.2, 2.0, 0.5) < energy(t, 0.1, 2.0, 0.5));
  // Floor inactive: an algebraic tail stays above 1e-10 max(u).
  const auto v = sample_profile({ProfileFamily::InversePoly, 1.0, 1.5}, d->grid_ptr()).values;
  const ReducedTriple tv = reduced_triple(*d, v);
  CHECK(gradient_action(*d, v, v, 0.3).value ==
        doctest::Approx(tv.E - 0.3 * tv.A - tv.B).epsilon(1e-12));
}

TEST_CASE("nodal gradient matches finite differences of J") {
  auto d = fixture::radial(20.0, 128);
  const auto u = fixture::gaussian(*d, 1.2).values;
  const double lambda = 0.4;
  const Evaluation ev = evaluate(*d, u);
  const auto g = energy_gradient(*d, ev, u, lambda);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> phi(u.size());
    const double c = 0.5 + 2.0 * U(rng);
    for (std::size_t i = 0; i < u.size(); ++i) phi[i] = std::exp(-d->radius()[i] / c) * u[i];
    auto J = [&](double h) {
      std::vector<double> v(u);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += h * phi[i];
      return energy(*d, v, lambda);
    };
    const double fd = oracle::central_difference(J, 0.0, 1e-5);
    CHECK(rel(dot(g, phi), fd) < 1e-6);
    CHECK(rel(gradient_action(*d, u, phi, lambda).value, fd) < 1e-6);
  }
}

TEST_CASE("evaluation bundles consistent pieces") {
  auto d = fixture::radial(20.0, 128);
  const auto u = fixture::gaussian(*d).values;
  const Evaluation ev = evaluate(*d, u);
  CHECK(ev.triple.E == doctest::Approx(norm_sq(*d, u)).epsilon(1e-14));
  CHECK(ev.triple.B == doctest::Approx(steinweiss_B(*d, u)).epsilon(1e-14));
  CHECK(dot(ev.stiff_u, u) == doctest::Approx(ev.triple.E).epsilon(1e-13));
  CHECK(energy(ev.triple, 0.3, 2.0, 0.5) ==
        doctest::Approx(0.5 * ev.triple.E - 0.6 * ev.triple.A - 0.25 * ev.triple.B));
}

TEST_CASE("pinned triple for the default gaussian (regression)") {
  auto d = fixture::radial();
  const ReducedTriple t = reduced_triple(*d, fixture::gaussian(*d).values);
  CHECK(rel(t.E, 9.3519700792148388) < 1e-10);
  CHECK(rel(t.A, 4.3463154958930774) < 1e-10);
  CHECK(rel(t.B, 2.6634399694878095) < 1e-10);
  // The pinned B is also within the engine-agreement band of the direct sum.
  auto cd = fixture::cartesian(3.0, 20);
  CHECK(rel(steinweiss_B_direct(*cd, fixture::gaussian(*cd).values), t.B) < 0.02);
}
