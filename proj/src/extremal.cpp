#include "nehari/extremal.hpp"

#include <algorithm>
#include <cmath>

#include "nehari/error.hpp"
#include "nehari/format.hpp"

namespace nehari {

namespace {

double log_lambda(const ReducedTriple& tr, double p, double q) {
  return std::log(lambda_n(tr, p, q));
}

void normalize(const Discretization& d, std::vector<double>& u) {
  const double s = 1.0 / std::sqrt(norm_sq(d, u));
  for (double& v : u) v *= s;
}

}  // namespace

std::vector<ProfileSpec> ExtremalOptions::default_families() {
  return {{ProfileFamily::Gaussian, 1.0, 1.0},
          {ProfileFamily::InversePoly, 1.0, 1.5},
          {ProfileFamily::InversePoly, 1.0, 2.0},
          {ProfileFamily::SobolevBump, 1.0, 1.0}};
}

FamilySweepResult family_sweep(const Discretization& d, const std::vector<ProfileSpec>& families,
                               const std::vector<double>& scales) {
  if (families.empty() || scales.empty())
    throw Error(ErrorCode::EmptyFamily, "family sweep needs at least one profile and one scale");
  const double p = d.params().p(), q = d.params().q();
  FamilySweepResult out;
  out.lattice.resize(families.size() * scales.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(out.lattice.size()); ++k) {
    ProfileSpec spec = families[k / scales.size()];
    spec.sigma = scales[k % scales.size()];
    const GridFunction u = sample_profile(spec, d.grid_ptr());
    out.lattice[k] = {spec, lambda_n(reduced_triple(d, u.values), p, q)};
  }
  // First minimum in lattice order, so ties resolve deterministically.
  std::size_t best = 0;
  for (std::size_t k = 1; k < out.lattice.size(); ++k)
    if (out.lattice[k].lambda_n < out.lattice[best].lambda_n) best = k;
  out.best_value = out.lattice[best].lambda_n;
  out.best_profile = out.lattice[best].profile;
  out.best_function = sample_profile(out.best_profile, d.grid_ptr());
  return out;
}

std::vector<double> log_lambda_n_gradient(const Discretization& d, std::span<const double> u,
                                          double floor) {
  const double p = d.params().p(), q = d.params().q();
  const Evaluation ev = evaluate(d, u);
  const auto& tr = ev.triple;
  const double k1 = (2.0 * p - q) / (2.0 * p - 2.0);
  const double k2 = (2.0 - q) / (2.0 * p - 2.0);
  const double umax = *std::max_element(u.begin(), u.end());
  const double eps = floor * umax;
  const auto m = d.mass();
  const auto a = d.a();
  const auto b = d.b();
  std::vector<double> g(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double dE = 2.0 * ev.stiff_u[i];
    const double dA = q * m[i] * a[i] * std::pow(std::max(u[i], eps), q - 1.0);
    const double dB = 2.0 * p * m[i] * b[i] * std::pow(u[i], p - 1.0) * ev.potential[i];
    g[i] = k1 * dE / tr.E - dA / tr.A - k2 * dB / tr.B;
  }
  return g;
}

DescentResult refine_descent(const Discretization& d, const GridFunction& start,
                             const DescentOptions& opts) {
  require_positive_cone(start.values);
  const double p = d.params().p(), q = d.params().q();
  const double k1 = (2.0 * p - q) / (2.0 * p - 2.0);
  const auto m = d.mass();
  const auto a = d.a();

  std::vector<double> u = start.values;
  normalize(d, u);
  ReducedTriple tr = reduced_triple(d, u);
  double f = log_lambda(tr, p, q);

  DescentResult out;
  out.history.push_back(std::exp(f));
  double step = 1.0;
  std::vector<double> shift(u.size()), trial(u.size());

  for (int it = 0; it < opts.max_iterations; ++it) {
    const auto g = log_lambda_n_gradient(d, u, opts.floor);
    // Precondition with the positive part of the Hessian of log Lambda_n:
    // (2 k1 / E) S + (q (1-q) / A) diag(m a u^{q-2}).
    const double umax = *std::max_element(u.begin(), u.end());
    const double eps = opts.floor * umax;
    const double scale = q * (1.0 - q) * tr.E / (2.0 * k1 * tr.A);
    for (std::size_t i = 0; i < u.size(); ++i)
      shift[i] = scale * m[i] * a[i] * std::pow(std::max(u[i], eps), q - 2.0);
    auto dir = d.solve_shifted(g, shift);
    double slope = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      dir[i] *= -tr.E / (2.0 * k1);
      slope += dir[i] * g[i];
    }
    if (!(slope < 0.0)) {
      out.stalled = true;
      break;
    }

    bool accepted = false;
    double f_trial = f;
    ReducedTriple tr_trial;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < u.size(); ++i)
        trial[i] = std::max(u[i] + step * dir[i], 0.1 * u[i]);
      // Compare normalized iterates so the accepted value is the recorded one.
      normalize(d, trial);
      tr_trial = reduced_triple(d, trial);
      f_trial = log_lambda(tr_trial, p, q);
      if (!std::isfinite(f_trial))
        throw Error(ErrorCode::DescentDiverged, "Lambda_n became non-finite during descent");
      if (f_trial < f) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      out.stalled = true;
      break;
    }
    u = trial;
    tr = tr_trial;
    f = f_trial;
    out.history.push_back(std::exp(f));
    out.iterations = it + 1;
    step = std::min(1.0, 2.0 * step);

    const std::size_t h = out.history.size();
    if (h > static_cast<std::size_t>(opts.window)) {
      const double old = out.history[h - 1 - opts.window];
      if ((old - out.history.back()) <= opts.rel_decrease * old) break;
    }
  }
  out.value = std::exp(f);
  out.minimizer = GridFunction{d.grid_ptr(), std::move(u)};
  return out;
}

ExtremalEstimate estimate_lambda_star(const Discretization& d, const ExtremalOptions& opts) {
  ExtremalEstimate est;
  est.sweep = family_sweep(d, opts.families, opts.scales);
  est.descent = refine_descent(d, est.sweep.best_function, opts.descent);
  est.ratio = fibering_constants(d.params().p(), d.params().q()).ratio;
  if (est.descent.value <= est.sweep.best_value) {
    est.lambda_star = est.descent.value;
    est.minimizer = est.descent.minimizer;
  } else {
    est.lambda_star = est.sweep.best_value;
    est.minimizer = est.sweep.best_function;
  }
  est.lambda_sub = est.ratio * est.lambda_star;
  return est;
}

void write_trace_csv(std::ostream& os, const ExtremalEstimate& est) {
  os << "stage,sigma,beta,lambda_n\n";
  for (const auto& e : est.sweep.lattice)
    os << to_string(e.profile.family) << ',' << fmt17(e.profile.sigma) << ','
       << fmt17(e.profile.beta) << ',' << fmt17(e.lambda_n) << '\n';
  for (std::size_t k = 0; k < est.descent.history.size(); ++k)
    os << "descent," << k << ",," << fmt17(est.descent.history[k]) << '\n';
}

}  // namespace nehari
