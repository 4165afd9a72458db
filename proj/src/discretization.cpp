#include "nehari/discretization.hpp"

#include <cmath>

#include "nehari/error.hpp"

namespace nehari {

namespace {

void check_len(std::size_t got, std::size_t want) {
  if (got != want) throw Error(ErrorCode::LengthMismatch, "vector does not match the grid");
}

}  // namespace

Discretization::Discretization(GridPtr grid, ValidatedParams params)
    : grid_(std::move(grid)), params_(std::move(params)) {
  if (!grid_) throw Error(ErrorCode::DegenerateGrid, "null grid");
  if (grid_dim(*grid_) != params_.dim())
    throw Error(ErrorCode::UnsupportedDimension, "grid and parameter dimensions differ");

  const auto r = node_radii(*grid_);
  const std::size_t n = r.size();
  mass_.resize(n);
  a_.resize(n);
  b_.resize(n);
  vmass_.resize(n);

  if (const auto* rg = std::get_if<RadialGrid>(grid_.get())) {
    for (std::size_t i = 0; i < n; ++i) mass_[i] = rg->omega * rg->w[i];
    coupling_.resize(n);
    const int dim = rg->dim;
    for (std::size_t k = 0; k < n; ++k) {
      const double lo = rg->r[k];
      const double hi = k + 1 < n ? rg->r[k + 1] : rg->R;
      const double shell = (std::pow(hi, dim) - std::pow(lo, dim)) / dim;
      coupling_[k] = rg->omega * shell / ((hi - lo) * (hi - lo));
    }
  } else {
    const auto& cg = std::get<CartesianGrid>(*grid_);
    const double vol = cg.h * cg.h * cg.h;
    for (std::size_t i = 0; i < n; ++i) mass_[i] = vol;
  }
  for (std::size_t i = 0; i < n; ++i) {
    a_[i] = params_.a(r[i]);
    b_[i] = params_.b(r[i]);
    vmass_[i] = mass_[i] * params_.V(r[i]);
  }
}

void Discretization::apply_stiffness(std::span<const double> u, std::span<double> out) const {
  const std::size_t n = size();
  check_len(u.size(), n);
  check_len(out.size(), n);
  for (std::size_t i = 0; i < n; ++i) out[i] = vmass_[i] * u[i];

  if (radial()) {
    for (std::size_t k = 0; k < n; ++k) {
      const double next = k + 1 < n ? u[k + 1] : 0.0;
      const double flux = coupling_[k] * (u[k] - next);
      out[k] += flux;
      if (k + 1 < n) out[k + 1] -= flux;
    }
    return;
  }

  const auto& cg = std::get<CartesianGrid>(*grid_);
  const int m = cg.m;
  const double c = cg.h;  // h^3 / h^2
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const std::size_t id = cg.index(i, j, k);
        double nb = 0.0;
        if (i > 0) nb += u[cg.index(i - 1, j, k)];
        if (i + 1 < m) nb += u[cg.index(i + 1, j, k)];
        if (j > 0) nb += u[cg.index(i, j - 1, k)];
        if (j + 1 < m) nb += u[cg.index(i, j + 1, k)];
        if (k > 0) nb += u[cg.index(i, j, k - 1)];
        if (k + 1 < m) nb += u[cg.index(i, j, k + 1)];
        out[id] += c * (6.0 * u[id] - nb);
      }
}

double Discretization::inner(std::span<const double> u, std::span<const double> v) const {
  check_len(v.size(), size());
  std::vector<double> su(size());
  apply_stiffness(u, su);
  double s = 0.0;
  for (std::size_t i = 0; i < su.size(); ++i) s += su[i] * v[i];
  return s;
}

std::vector<double> Discretization::solve_shifted(std::span<const double> rhs,
                                                  std::span<const double> shift) const {
  const std::size_t n = size();
  check_len(rhs.size(), n);
  if (!shift.empty()) check_len(shift.size(), n);
  auto extra = [&](std::size_t i) { return shift.empty() ? 0.0 : shift[i]; };

  if (radial()) {
    // Thomas algorithm on the symmetric tridiagonal system.
    std::vector<double> diag(n), upper(n), x(rhs.begin(), rhs.end());
    for (std::size_t k = 0; k < n; ++k) {
      diag[k] = vmass_[k] + coupling_[k] + extra(k) + (k > 0 ? coupling_[k - 1] : 0.0);
      upper[k] = k + 1 < n ? -coupling_[k] : 0.0;
    }
    for (std::size_t k = 1; k < n; ++k) {
      const double f = upper[k - 1] / diag[k - 1];
      diag[k] -= f * upper[k - 1];
      x[k] -= f * x[k - 1];
    }
    x[n - 1] /= diag[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) x[k] = (x[k] - upper[k] * x[k + 1]) / diag[k];
    return x;
  }

  // Jacobi-preconditioned conjugate gradients.
  const auto& cg = std::get<CartesianGrid>(*grid_);
  std::vector<double> inv_diag(n);
  for (std::size_t i = 0; i < n; ++i) inv_diag[i] = 1.0 / (vmass_[i] + 6.0 * cg.h + extra(i));
  auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
    apply_stiffness(v, out);
    for (std::size_t i = 0; i < n; ++i) out[i] += extra(i) * v[i];
  };
  std::vector<double> x(n, 0.0), r(rhs.begin(), rhs.end()), z(n), p(n), ap(n);
  double rhs_norm = 0.0;
  for (double v : r) rhs_norm += v * v;
  rhs_norm = std::sqrt(rhs_norm);
  if (rhs_norm == 0.0) return x;
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = 0.0;
  for (std::size_t i = 0; i < n; ++i) rz += r[i] * z[i];
  for (int it = 0; it < 10 * static_cast<int>(n); ++it) {
    apply(p, ap);
    double pap = 0.0;
    for (std::size_t i = 0; i < n; ++i) pap += p[i] * ap[i];
    const double step = rz / pap;
    double rr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += step * p[i];
      r[i] -= step * ap[i];
      rr += r[i] * r[i];
    }
    if (std::sqrt(rr) <= 1e-14 * rhs_norm) break;
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    double rz_new = 0.0;
    for (std::size_t i = 0; i < n; ++i) rz_new += r[i] * z[i];
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  return x;
}

void Discretization::ensure_engine() const {
  std::call_once(engine_once_, [this] {
    if (const auto* rg = std::get_if<RadialGrid>(grid_.get()))
      engine_.emplace<SteinWeissRadial>(*rg, params_.alpha(), params_.mu());
    else
      engine_.emplace<SteinWeissDirect>(std::get<CartesianGrid>(*grid_), params_.alpha(),
                                        params_.mu());
  });
}

std::vector<double> Discretization::potential(std::span<const double> density) const {
  const std::size_t n = size();
  check_len(density.size(), n);
  ensure_engine();
  std::vector<double> md(n), out(n);
  for (std::size_t i = 0; i < n; ++i) md[i] = mass_[i] * density[i];
  std::visit(
      [&](const auto& e) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(e)>, std::monostate>)
          e.potential(md, out);
      },
      engine_);
  return out;
}

double Discretization::kernel_entry(std::size_t i, std::size_t j) const {
  ensure_engine();
  const auto* e = std::get_if<SteinWeissRadial>(&engine_);
  if (!e) throw Error(ErrorCode::UnsupportedGrid, "dense kernel entries need a radial grid");
  return e->entry(i, j);
}

DiscretizationPtr make_discretization(GridPtr grid, ValidatedParams params) {
  return std::make_shared<const Discretization>(std::move(grid), std::move(params));
}

}  // namespace nehari
