#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace nehari {

/// Staggered radial grid on [0, R]. Nodes r_i = R ((i - 1/2) / M)^grading, so
/// the origin is never a node. Weights integrate f(r) r^{N-1} dr.
struct RadialGrid {
  int dim = 3;
  double R = 0.0;
  int M = 0;
  double grading = 1.0;
  std::vector<double> r;
  std::vector<double> w;
  std::vector<double> edges;  // cell edges R (i/M)^grading, i = 0..M
  double omega = 0.0;         // |S^{N-1}|
};

/// Cell-centered box [-L, L]^3 with m points per axis (m even, origin excluded).
struct CartesianGrid {
  double L = 0.0;
  int m = 0;
  double h = 0.0;
  std::vector<std::array<double, 3>> x;
  std::vector<double> radius;

  std::size_t index(int i, int j, int k) const noexcept {
    return (static_cast<std::size_t>(i) * m + j) * m + k;
  }
};

using Grid = std::variant<RadialGrid, CartesianGrid>;
using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_radial_grid(double R, int M, double grading, int dim = 3);
GridPtr build_cartesian_grid(double L, int m, int dim = 3);

/// Serializable description of either grid kind.
struct GridSpec {
  enum class Kind { Radial, Cartesian };
  Kind kind = Kind::Radial;
  double R = 20.0;
  int M = 256;
  double grading = 2.0;
  double L = 3.0;
  int m = 20;

  bool operator==(const GridSpec&) const = default;
};

GridPtr build_grid(const GridSpec& spec, int dim);
GridSpec spec_of(const Grid& grid);
const char* to_string(GridSpec::Kind kind) noexcept;
GridSpec::Kind grid_kind_from_string(const std::string& s);

std::size_t node_count(const Grid& grid) noexcept;
std::span<const double> node_radii(const Grid& grid) noexcept;
int grid_dim(const Grid& grid) noexcept;
bool is_radial(const Grid& grid) noexcept;

/// Quadrature sum. On radial grids this includes r^{N-1} but not |S^{N-1}|.
double integrate(const Grid& grid, std::span<const double> values);

struct GridFunction {
  GridPtr grid;
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  std::span<const double> view() const noexcept { return values; }
  bool in_positive_cone() const noexcept;
  double max_value() const noexcept;
};

enum class ProfileFamily { SobolevBump, Gaussian, InversePoly };

struct ProfileSpec {
  ProfileFamily family = ProfileFamily::Gaussian;
  double sigma = 1.0;
  double beta = 1.0;  // InversePoly only
};

/// gaussian: exp(-(r/s)^2); inverse_poly: (1 + (r/s)^2)^{-beta};
/// sobolev_bump: (1 + (r/s)^2)^{-(N-2)/2}, the Aubin-Talenti profile.
double profile_value(const ProfileSpec& spec, double r, int dim);

GridFunction sample_profile(const ProfileSpec& spec, const GridPtr& grid);

/// False when the untruncated profile has infinite X-norm (ProfileNotInX).
/// Only a warning: truncation to a bounded domain regularizes it.
bool profile_in_x(const ProfileSpec& spec, int dim) noexcept;

const char* to_string(ProfileFamily family) noexcept;
ProfileFamily profile_family_from_string(const std::string& s);

}  // namespace nehari
