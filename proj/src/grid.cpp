#include "nehari/grid.hpp"

#include <algorithm>
#include <cmath>

#include "nehari/error.hpp"
#include "nehari/params.hpp"

namespace nehari {

namespace {

// Midpoint rule in the graded variable s = (r/R)^{1/grading} with sixth-order
// end corrections for cell-centered samples: the first six weights at each
// end cancel the h^2, h^4 Euler-Maclaurin boundary terms. All stay positive.
constexpr int kEndNodes = 6;
constexpr double kEndCorrection[kEndNodes] = {
    1152511.0 / 967680.0, 435301.0 / 967680.0, 164923.0 / 96768.0,
    235297.0 / 483840.0,  1162883.0 / 967680.0, 935561.0 / 967680.0};

}  // namespace

GridPtr build_radial_grid(double R, int M, double grading, int dim) {
  if (M < 16) throw Error(ErrorCode::DegenerateGrid, "radial grid needs M >= 16");
  if (!(R > 0.0)) throw Error(ErrorCode::DegenerateGrid, "radial grid needs R > 0");
  if (!(grading >= 1.0)) throw Error(ErrorCode::DegenerateGrid, "grading must be >= 1");
  if (dim < 1) throw Error(ErrorCode::UnsupportedDimension, "dimension must be positive");

  RadialGrid g;
  g.dim = dim;
  g.R = R;
  g.M = M;
  g.grading = grading;
  g.omega = sphere_measure(dim);
  g.r.resize(M);
  g.edges.resize(M + 1);
  for (int i = 0; i <= M; ++i) g.edges[i] = R * std::pow(static_cast<double>(i) / M, grading);
  for (int i = 0; i < M; ++i) g.r[i] = R * std::pow((i + 0.5) / M, grading);

  const double h = 1.0 / M;
  g.w.resize(M);
  for (int i = 0; i < M; ++i) {
    const double si = (i + 0.5) * h;
    // r^{N-1} dr/ds at the node
    const double density = std::pow(g.r[i], dim - 1) * R * grading * std::pow(si, grading - 1.0);
    double c = 1.0;
    if (i < kEndNodes) c = kEndCorrection[i];
    if (M - 1 - i < kEndNodes) c = kEndCorrection[M - 1 - i];
    g.w[i] = h * c * density;
  }

  if (!(g.r[0] > 0.0)) throw Error(ErrorCode::DegenerateGrid, "node at the origin");
  for (double wi : g.w)
    if (!(wi > 0.0)) throw Error(ErrorCode::DegenerateGrid, "nonpositive quadrature weight");
  return std::make_shared<const Grid>(std::move(g));
}

GridPtr build_cartesian_grid(double L, int m, int dim) {
  if (dim != 3) throw Error(ErrorCode::UnsupportedDimension, "Cartesian grids are N = 3 only");
  if (m < 8) throw Error(ErrorCode::DegenerateGrid, "Cartesian grid needs m >= 8");
  if (m % 2 != 0) throw Error(ErrorCode::DegenerateGrid, "odd m puts a node at the origin");
  if (!(L > 0.0)) throw Error(ErrorCode::DegenerateGrid, "Cartesian grid needs L > 0");

  CartesianGrid g;
  g.L = L;
  g.m = m;
  g.h = 2.0 * L / m;
  const std::size_t n = static_cast<std::size_t>(m) * m * m;
  g.x.resize(n);
  g.radius.resize(n);
  auto coord = [&](int i) { return (i + 0.5) * g.h - L; };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const std::size_t idx = g.index(i, j, k);
        g.x[idx] = {coord(i), coord(j), coord(k)};
        g.radius[idx] = std::hypot(coord(i), coord(j), coord(k));
      }
  return std::make_shared<const Grid>(std::move(g));
}

GridPtr build_grid(const GridSpec& spec, int dim) {
  if (spec.kind == GridSpec::Kind::Radial) return build_radial_grid(spec.R, spec.M, spec.grading, dim);
  return build_cartesian_grid(spec.L, spec.m, dim);
}

GridSpec spec_of(const Grid& grid) {
  GridSpec s;
  if (const auto* rg = std::get_if<RadialGrid>(&grid)) {
    s.kind = GridSpec::Kind::Radial;
    s.R = rg->R;
    s.M = rg->M;
    s.grading = rg->grading;
  } else {
    const auto& cg = std::get<CartesianGrid>(grid);
    s.kind = GridSpec::Kind::Cartesian;
    s.L = cg.L;
    s.m = cg.m;
  }
  return s;
}

const char* to_string(GridSpec::Kind kind) noexcept {
  return kind == GridSpec::Kind::Radial ? "radial" : "cartesian";
}

GridSpec::Kind grid_kind_from_string(const std::string& s) {
  if (s == "radial") return GridSpec::Kind::Radial;
  if (s == "cartesian") return GridSpec::Kind::Cartesian;
  throw Error(ErrorCode::ConfigError, "unknown grid kind '" + s + "'");
}

std::size_t node_count(const Grid& grid) noexcept {
  return std::visit([](const auto& g) -> std::size_t {
    if constexpr (std::is_same_v<std::decay_t<decltype(g)>, RadialGrid>)
      return g.r.size();
    else
      return g.x.size();
  }, grid);
}

std::span<const double> node_radii(const Grid& grid) noexcept {
  if (const auto* rg = std::get_if<RadialGrid>(&grid)) return rg->r;
  return std::get<CartesianGrid>(grid).radius;
}

int grid_dim(const Grid& grid) noexcept {
  if (const auto* rg = std::get_if<RadialGrid>(&grid)) return rg->dim;
  return 3;
}

bool is_radial(const Grid& grid) noexcept { return std::holds_alternative<RadialGrid>(grid); }

double integrate(const Grid& grid, std::span<const double> values) {
  if (values.size() != node_count(grid))
    throw Error(ErrorCode::LengthMismatch, "values do not match the grid");
  double sum = 0.0;
  if (const auto* rg = std::get_if<RadialGrid>(&grid)) {
    for (std::size_t i = 0; i < values.size(); ++i) sum += rg->w[i] * values[i];
    return sum;
  }
  const auto& cg = std::get<CartesianGrid>(grid);
  for (double v : values) sum += v;
  return sum * cg.h * cg.h * cg.h;
}

bool GridFunction::in_positive_cone() const noexcept {
  bool any_positive = false;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) return false;
    if (v > 0.0) any_positive = true;
  }
  return any_positive;
}

double GridFunction::max_value() const noexcept {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double profile_value(const ProfileSpec& spec, double r, int dim) {
  const double s = r / spec.sigma;
  switch (spec.family) {
    case ProfileFamily::Gaussian: return std::exp(-s * s);
    case ProfileFamily::InversePoly: return std::pow(1.0 + s * s, -spec.beta);
    case ProfileFamily::SobolevBump: return std::pow(1.0 + s * s, -0.5 * (dim - 2));
  }
  return 0.0;
}

GridFunction sample_profile(const ProfileSpec& spec, const GridPtr& grid) {
  if (!(spec.sigma > 0.0)) throw Error(ErrorCode::DegenerateGrid, "profile scale must be positive");
  const auto radii = node_radii(*grid);
  const int dim = grid_dim(*grid);
  GridFunction u{grid, std::vector<double>(radii.size())};
  for (std::size_t i = 0; i < radii.size(); ++i) u.values[i] = profile_value(spec, radii[i], dim);
  return u;
}

bool profile_in_x(const ProfileSpec& spec, int dim) noexcept {
  // The X-norm carries V = 1 + |x|^2, so (1+r^2)^{-beta} needs 4 beta > N + 2.
  const double need = 0.25 * (dim + 2);
  switch (spec.family) {
    case ProfileFamily::Gaussian: return true;
    case ProfileFamily::InversePoly: return spec.beta > need;
    case ProfileFamily::SobolevBump: return 0.5 * (dim - 2) > need;
  }
  return false;
}

const char* to_string(ProfileFamily family) noexcept {
  switch (family) {
    case ProfileFamily::SobolevBump: return "sobolev_bump";
    case ProfileFamily::Gaussian: return "gaussian";
    case ProfileFamily::InversePoly: return "inverse_poly";
  }
  return "gaussian";
}

ProfileFamily profile_family_from_string(const std::string& s) {
  if (s == "sobolev_bump") return ProfileFamily::SobolevBump;
  if (s == "gaussian") return ProfileFamily::Gaussian;
  if (s == "inverse_poly") return ProfileFamily::InversePoly;
  throw Error(ErrorCode::ConfigError, "unknown profile family '" + s + "'");
}

}  // namespace nehari
