#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qflow/defects.hpp"
#include "qflow/field.hpp"

namespace qflow {

struct BBox {
  double x_min = -2.0, x_max = 2.0, y_min = -2.0, y_max = 2.0;
};

struct GridSample {
  double x = 0.0, y = 0.0, u = 0.0, v = 0.0;
  bool clipped = false;
};

/// Row-major (y outer, x inner) velocity samples.
struct FieldGrid {
  BBox bbox;
  int nx = 0, ny = 0;
  std::vector<GridSample> samples;

  const GridSample& at(int ix, int iy) const { return samples.at(static_cast<std::size_t>(iy) * nx + ix); }
};

inline constexpr double kDefaultClip = 10.0;

/// Samples within 1e-9 of a pole are clipped to a zero vector; larger
/// magnitudes than `clip` are rescaled to `clip` along the same direction.
FieldGrid sample_grid(const Field& field, const BBox& bbox, int nx, int ny, double clip = kDefaultClip);

/// Box around every finite defect with a margin, never smaller than [-2, 2]^2.
BBox auto_bbox(const DefectSet& defects, const std::vector<cplx>& extra = {});

/// CSV with header x,y,u,v,clipped; doubles in shortest round-trip form.
void write_grid_csv(std::ostream& out, const FieldGrid& grid);
/// Reads back what write_grid_csv wrote (samples only; bbox and shape are
/// recovered from the coordinates).
FieldGrid read_grid_csv(std::istream& in);

struct SvgOptions {
  int width = 640;
  int height = 640;
  std::string title;
};

/// Quiver plot with white diamonds at poles and filled circles at zeros.
/// Halo zeros are colored by center (red, green, blue, brown, ...), zeros
/// outside any halo purple. Byte-identical output for identical inputs.
std::string render_svg(const FieldGrid& grid, const DefectSet& defects, const HaloReport* halos = nullptr,
                       const SvgOptions& opts = {});

struct SphereSample {
  double theta = 0.0;  // angle from the north pole
  double phi = 0.0;
  std::array<double, 3> position{};
  std::array<double, 3> U{};
};

/// Lifts the planar velocity at g(p) to the tangent vector at p on the unit
/// sphere. Throws InvalidArgument at the north pole, PoleError at field poles.
SphereSample project_vector(const Field& field, double theta, double phi);

/// Equiangular lattice theta_i = i pi / n_theta (i = 1..n_theta),
/// phi_k = 2 pi k / n_phi. Points that land on a field pole are skipped.
std::vector<SphereSample> stereographic_project(const Field& field, int n_theta, int n_phi);

enum class NorthPoleBehavior { Vanishes, BoundedDiscontinuous, Diverges };

std::string_view to_string(NorthPoleBehavior b);

struct NorthPoleReport {
  NorthPoleBehavior behavior = NorthPoleBehavior::Vanishes;
  /// Asymptotic power D of the planar field, f ~ z^D.
  int asymptotic_degree = 0;
  /// Slope of log|U| against log theta on [1e-3, 1e-1]; NaN if the field
  /// overflows there.
  double fitted_exponent = 0.0;
  double expected_exponent() const { return 2.0 - asymptotic_degree; }
};

NorthPoleReport north_pole_classify(const Field& field);

/// deg(numerator) - deg(denominator) of the field as written.
int asymptotic_degree(const Field& field);

}  // namespace qflow
