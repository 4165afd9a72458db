#include "nehari/steinweiss.hpp"

#include <cmath>
#include <numbers>

#include "nehari/error.hpp"

namespace nehari {

namespace {

bool is_log_kernel(double mu) { return std::abs(mu - 2.0) < 1e-12; }

// Mean of |r - s|^{2-mu} (or log|r - s| when mu = 2) over s in [r - d1, r + d2].
double cell_mean_singular(double d1, double d2, double mu) {
  if (is_log_kernel(mu)) {
    auto part = [](double d) { return d > 0.0 ? d * std::log(d) - d : 0.0; };
    return (part(d1) + part(d2)) / (d1 + d2);
  }
  const double e = 3.0 - mu;
  return (std::pow(d1, e) + std::pow(d2, e)) / (e * (d1 + d2));
}

}  // namespace

double angular_kernel(double r, double s, double mu) {
  if (is_log_kernel(mu)) return std::log((r + s) / std::abs(r - s)) / (r * s);
  const double e = 2.0 - mu;
  return (std::pow(r + s, e) - std::pow(std::abs(r - s), e)) / (e * r * s);
}

SteinWeissRadial::SteinWeissRadial(const RadialGrid& grid, double alpha, double mu)
    : n_(grid.r.size()), g_(n_ * n_) {
  if (grid.dim != 3)
    throw Error(ErrorCode::UnsupportedDimension, "the radial Stein-Weiss engine is N = 3 only");
  if (!(mu > 0.0 && mu < grid.dim))
    throw Error(ErrorCode::KernelDomain, "kernel exponent mu must lie in (0, N)");

  const auto& r = grid.r;
  std::vector<double> rw(n_);
  for (std::size_t i = 0; i < n_; ++i) rw[i] = std::pow(r[i], -alpha);

  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double v = 0.5 * rw[i] * rw[j] * angular_kernel(r[i], r[j], mu);
      g_[i * n_ + j] = v;
      g_[j * n_ + i] = v;
    }
    const double ri = r[i];
    const double d1 = ri - grid.edges[i];
    const double d2 = grid.edges[i + 1] - ri;
    const double mean = cell_mean_singular(d1, d2, mu);
    double k;
    if (is_log_kernel(mu))
      k = (std::log(2.0 * ri) - mean) / (ri * ri);
    else
      k = (std::pow(2.0 * ri, 2.0 - mu) - mean) / ((2.0 - mu) * ri * ri);
    g_[i * n_ + i] = 0.5 * rw[i] * rw[i] * k;
  }
}

void SteinWeissRadial::potential(std::span<const double> mass_density,
                                 std::span<double> out) const {
  if (mass_density.size() != n_ || out.size() != n_)
    throw Error(ErrorCode::LengthMismatch, "density does not match the kernel");
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n_); ++i) {
    const double* row = g_.data() + static_cast<std::size_t>(i) * n_;
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += row[j] * mass_density[j];
    out[i] = acc;
  }
}

SteinWeissDirect::SteinWeissDirect(const CartesianGrid& grid, double alpha, double mu)
    : m_(grid.m) {
  if (grid.m > kMaxPointsPerAxis)
    throw Error(ErrorCode::GridTooLarge, "direct pair sum limited to m <= 24");
  if (!(mu > 0.0 && mu < 3.0))
    throw Error(ErrorCode::KernelDomain, "kernel exponent mu must lie in (0, 3)");

  radial_weight_.resize(grid.radius.size());
  for (std::size_t i = 0; i < grid.radius.size(); ++i)
    radial_weight_[i] = std::pow(grid.radius[i], -alpha);

  // |x - y| depends only on the lattice offset, so tabulate it once.
  const int span = 2 * m_ - 1;
  offset_kernel_.assign(static_cast<std::size_t>(span) * span * span, 0.0);
  for (int a = 0; a < span; ++a)
    for (int b = 0; b < span; ++b)
      for (int c = 0; c < span; ++c) {
        const double da = a - (m_ - 1), db = b - (m_ - 1), dc = c - (m_ - 1);
        const double d2 = (da * da + db * db + dc * dc) * grid.h * grid.h;
        if (d2 > 0.0)
          offset_kernel_[(static_cast<std::size_t>(a) * span + b) * span + c] =
              std::pow(d2, -0.5 * mu);
      }

  const double vol = grid.h * grid.h * grid.h;
  const double rho = std::cbrt(3.0 * vol / (4.0 * std::numbers::pi));
  self_term_ = 4.0 * std::numbers::pi * std::pow(rho, 3.0 - mu) / ((3.0 - mu) * vol);
}

void SteinWeissDirect::potential(std::span<const double> mass_density,
                                 std::span<double> out) const {
  const std::size_t n = radial_weight_.size();
  if (mass_density.size() != n || out.size() != n)
    throw Error(ErrorCode::LengthMismatch, "density does not match the kernel");
  const int m = m_;
  const int span = 2 * m - 1;
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) g[j] = radial_weight_[j] * mass_density[j];

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(n); ++idx) {
    const int i = static_cast<int>(idx / (m * m));
    const int j = static_cast<int>((idx / m) % m);
    const int k = static_cast<int>(idx % m);
    double acc = 0.0;
    for (int a = 0; a < m; ++a) {
      const std::size_t ka = static_cast<std::size_t>(a - i + m - 1) * span;
      for (int b = 0; b < m; ++b) {
        const double* krow = offset_kernel_.data() + (ka + (b - j + m - 1)) * span + (m - 1 - k);
        const double* grow = g.data() + (static_cast<std::size_t>(a) * m + b) * m;
        for (int c = 0; c < m; ++c) acc += krow[c] * grow[c];
      }
    }
    acc += self_term_ * g[idx];
    out[idx] = radial_weight_[idx] * acc;
  }
}

}  // namespace nehari
