#include "qflow/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace qflow {

namespace {

constexpr double kPoleRadius = 1e-9;
constexpr const char* kHaloColors[] = {"#d62728", "#2ca02c", "#1f77b4", "#8c564b", "#ff7f0e", "#17becf"};
constexpr const char* kFreeZeroColor = "#9467bd";

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  // Avoid "-0.00" so output does not depend on the sign of tiny values.
  if (std::string(buf) == "-0.00") return "0.00";
  return buf;
}

double parse_double(std::string_view s, int line, const char* column) {
  double value = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw InvalidArgument("CSV line " + std::to_string(line) + ": column '" + column + "' is not a number: '" +
                          std::string(s) + "'");
  }
  return value;
}

struct Canvas {
  BBox box;
  double width, height, margin;

  double px(double x) const { return margin + (x - box.x_min) / (box.x_max - box.x_min) * (width - 2 * margin); }
  double py(double y) const { return margin + (box.y_max - y) / (box.y_max - box.y_min) * (height - 2 * margin); }
  bool inside(cplx z) const {
    return z.real() >= box.x_min && z.real() <= box.x_max && z.imag() >= box.y_min && z.imag() <= box.y_max;
  }
};

void draw_zero(std::ostringstream& svg, const Canvas& c, cplx z, const std::string& cls, const char* color) {
  if (!c.inside(z)) return;
  svg << "<circle class=\"" << cls << "\" cx=\"" << fixed(c.px(z.real())) << "\" cy=\"" << fixed(c.py(z.imag()))
      << "\" r=\"5\" fill=\"" << color << "\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
}

}  // namespace

FieldGrid sample_grid(const Field& field, const BBox& bbox, int nx, int ny, double clip) {
  if (!(bbox.x_max > bbox.x_min) || !(bbox.y_max > bbox.y_min)) throw InvalidArgument("degenerate bounding box");
  if (nx < 2 || ny < 2) throw InvalidArgument("grid resolution must be at least 2x2");
  if (!(clip > 0.0)) throw InvalidArgument("clip threshold must be positive");

  const auto poles = pole_locations(field);
  FieldGrid grid{bbox, nx, ny, {}};
  grid.samples.reserve(static_cast<std::size_t>(nx) * ny);
  for (int iy = 0; iy < ny; ++iy) {
    const double y = bbox.y_min + (bbox.y_max - bbox.y_min) * iy / (ny - 1);
    for (int ix = 0; ix < nx; ++ix) {
      const double x = bbox.x_min + (bbox.x_max - bbox.x_min) * ix / (nx - 1);
      GridSample s{x, y, 0.0, 0.0, false};
      const cplx z(x, y);
      const bool at_pole = std::any_of(poles.begin(), poles.end(), [&](cplx p) { return std::abs(z - p) <= kPoleRadius; });
      if (at_pole) {
        s.clipped = true;
      } else {
        const FieldValue fv = eval_field(field, z);
        const double mag = std::abs(fv.f);
        if (!std::isfinite(mag)) {
          s.clipped = true;
        } else if (mag > clip) {
          s.u = fv.u * clip / mag;
          s.v = fv.v * clip / mag;
          s.clipped = true;
        } else {
          s.u = fv.u;
          s.v = fv.v;
        }
      }
      grid.samples.push_back(s);
    }
  }
  return grid;
}

BBox auto_bbox(const DefectSet& defects, const std::vector<cplx>& extra) {
  BBox b{-2.0, 2.0, -2.0, 2.0};
  auto grow = [&](cplx z) {
    b.x_min = std::min(b.x_min, z.real() - 0.5);
    b.x_max = std::max(b.x_max, z.real() + 0.5);
    b.y_min = std::min(b.y_min, z.imag() - 0.5);
    b.y_max = std::max(b.y_max, z.imag() + 0.5);
  };
  for (const auto& r : defects.zeros) grow(r.location);
  for (const auto& r : defects.poles) grow(r.location);
  for (const auto& z : extra) grow(z);
  // Square it up so arrows are not distorted.
  const double half = 0.5 * std::max(b.x_max - b.x_min, b.y_max - b.y_min);
  const double cx = 0.5 * (b.x_min + b.x_max), cy = 0.5 * (b.y_min + b.y_max);
  return {cx - half, cx + half, cy - half, cy + half};
}

void write_grid_csv(std::ostream& out, const FieldGrid& grid) {
  out << "x,y,u,v,clipped\n";
  for (const auto& s : grid.samples) {
    out << shortest(s.x) << ',' << shortest(s.y) << ',' << shortest(s.u) << ',' << shortest(s.v) << ','
        << (s.clipped ? 1 : 0) << '\n';
  }
}

FieldGrid read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "x,y,u,v,clipped") {
    throw InvalidArgument("CSV line 1: expected header 'x,y,u,v,clipped'");
  }
  FieldGrid grid;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string_view> cols;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1)) {
      cols.push_back(rest.substr(0, pos));
    }
    cols.push_back(rest);
    if (cols.size() != 5) {
      throw InvalidArgument("CSV line " + std::to_string(lineno) + ": expected 5 columns, got " + std::to_string(cols.size()));
    }
    GridSample s;
    s.x = parse_double(cols[0], lineno, "x");
    s.y = parse_double(cols[1], lineno, "y");
    s.u = parse_double(cols[2], lineno, "u");
    s.v = parse_double(cols[3], lineno, "v");
    if (cols[4] != "0" && cols[4] != "1") {
      throw InvalidArgument("CSV line " + std::to_string(lineno) + ": column 'clipped' must be 0 or 1");
    }
    s.clipped = cols[4] == "1";
    grid.samples.push_back(s);
  }
  if (grid.samples.empty()) throw InvalidArgument("CSV contains no samples");
  // Recover the shape: x varies fastest.
  const double y0 = grid.samples.front().y;
  int nx = 0;
  while (nx < static_cast<int>(grid.samples.size()) && grid.samples[nx].y == y0) ++nx;
  grid.nx = nx;
  grid.ny = static_cast<int>(grid.samples.size()) / nx;
  if (static_cast<std::size_t>(grid.nx) * grid.ny != grid.samples.size()) throw InvalidArgument("CSV samples do not form a grid");
  grid.bbox = {grid.samples.front().x, grid.samples.back().x, grid.samples.front().y, grid.samples.back().y};
  return grid;
}

std::string render_svg(const FieldGrid& grid, const DefectSet& defects, const HaloReport* halos, const SvgOptions& opts) {
  const Canvas c{grid.bbox, static_cast<double>(opts.width), static_cast<double>(opts.height), 30.0};
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opts.width << "\" height=\""
      << opts.height << "\" viewBox=\"0 0 " << opts.width << ' ' << opts.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!opts.title.empty()) svg << "<title>" << opts.title << "</title>\n";

  // Quiver: arrow length proportional to magnitude, longest arrow ~ 0.9 cells.
  double vmax = 0.0;
  for (const auto& s : grid.samples) vmax = std::max(vmax, std::hypot(s.u, s.v));
  if (grid.nx > 0 && grid.ny > 0 && vmax > 0.0) {
    const double cell = std::min((c.width - 2 * c.margin) / std::max(grid.nx - 1, 1),
                                 (c.height - 2 * c.margin) / std::max(grid.ny - 1, 1));
    svg << "<g class=\"quiver\" stroke=\"#444\" stroke-width=\"0.8\" fill=\"none\">\n";
    for (const auto& s : grid.samples) {
      const double mag = std::hypot(s.u, s.v);
      if (mag == 0.0) continue;
      const double len = 0.9 * cell * mag / vmax;
      const double dx = s.u / mag, dy = -s.v / mag;  // screen y points down
      const double x0 = c.px(s.x) - 0.5 * len * dx, y0 = c.py(s.y) - 0.5 * len * dy;
      const double x1 = x0 + len * dx, y1 = y0 + len * dy;
      const double head = 0.3 * len;
      const double hx1 = x1 - head * (dx * 0.866 - dy * 0.5), hy1 = y1 - head * (dy * 0.866 + dx * 0.5);
      const double hx2 = x1 - head * (dx * 0.866 + dy * 0.5), hy2 = y1 - head * (dy * 0.866 - dx * 0.5);
      svg << "<polyline points=\"" << fixed(x0) << ',' << fixed(y0) << ' ' << fixed(x1) << ',' << fixed(y1) << ' '
          << fixed(hx1) << ',' << fixed(hy1) << ' ' << fixed(x1) << ',' << fixed(y1) << ' ' << fixed(hx2) << ','
          << fixed(hy2) << "\"/>\n";
    }
    svg << "</g>\n";
  }

  for (const auto& p : defects.poles) {
    if (!c.inside(p.location)) continue;
    const double x = c.px(p.location.real()), y = c.py(p.location.imag());
    svg << "<polygon class=\"pole\" points=\"" << fixed(x) << ',' << fixed(y - 7) << ' ' << fixed(x + 7) << ','
        << fixed(y) << ' ' << fixed(x) << ',' << fixed(y + 7) << ' ' << fixed(x - 7) << ',' << fixed(y)
        << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
  }

  if (halos) {
    for (std::size_t j = 0; j < halos->halos.size(); ++j) {
      const auto& h = halos->halos[j];
      if (h.status != HaloStatus::Regular && h.status != HaloStatus::Collapsed) continue;
      const char* color = kHaloColors[j % std::size(kHaloColors)];
      const std::string cls = "zero halo-" + std::to_string(j);
      if (h.status == HaloStatus::Collapsed) {
        draw_zero(svg, c, h.center, cls, color);
      } else {
        for (const auto& z : h.zeros) draw_zero(svg, c, z, cls, color);
      }
    }
    for (const auto& r : halos->leftover_zeros) draw_zero(svg, c, r.location, "zero free", kFreeZeroColor);
  } else {
    for (const auto& r : defects.zeros) draw_zero(svg, c, r.location, "zero", "black");
  }

  // Unit scale bar along the bottom-left edge.
  const double bx0 = c.margin, by = c.height - 0.5 * c.margin;
  const double bx1 = bx0 + (c.width - 2 * c.margin) / (grid.bbox.x_max - grid.bbox.x_min);
  svg << "<line class=\"scale-bar\" x1=\"" << fixed(bx0) << "\" y1=\"" << fixed(by) << "\" x2=\"" << fixed(bx1)
      << "\" y2=\"" << fixed(by) << "\" stroke=\"black\" stroke-width=\"2\"/>\n"
      << "<text x=\"" << fixed(bx1 + 4) << "\" y=\"" << fixed(by + 4) << "\" font-size=\"11\">1</text>\n"
      << "</svg>\n";
  return svg.str();
}

SphereSample project_vector(const Field& field, double theta, double phi) {
  if (!(theta > 0.0)) throw InvalidArgument("the north pole (theta = 0) is excluded from the projection");
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  const double one_minus = 2.0 * std::sin(0.5 * theta) * std::sin(0.5 * theta);  // 1 - cos(theta)

  SphereSample s;
  s.theta = theta;
  s.phi = phi;
  s.position = {cp * st, sp * st, ct};
  // Planar point g(p) = (x, y) / (1 - z).
  const double scale = st / one_minus;
  const FieldValue fv = eval_field(field, cplx(scale * cp, scale * sp));
  const double v1 = fv.u, v2 = fv.v;

  const double m11 = one_minus * (sp * sp - cp * cp * ct);
  const double m12 = -0.5 * std::sin(2.0 * phi) * st * st;
  const double m22 = one_minus * (cp * cp - sp * sp * ct);
  const double m31 = one_minus * cp * st;
  const double m32 = one_minus * sp * st;
  s.U = {m11 * v1 + m12 * v2, m12 * v1 + m22 * v2, m31 * v1 + m32 * v2};
  return s;
}

std::vector<SphereSample> stereographic_project(const Field& field, int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1) throw InvalidArgument("sphere resolution must be positive");
  std::vector<SphereSample> out;
  for (int i = 1; i <= n_theta; ++i) {
    const double theta = std::numbers::pi * i / n_theta;
    for (int k = 0; k < n_phi; ++k) {
      try {
        out.push_back(project_vector(field, theta, 2.0 * std::numbers::pi * k / n_phi));
      } catch (const PoleError&) {
      }
    }
  }
  return out;
}

std::string_view to_string(NorthPoleBehavior b) {
  switch (b) {
    case NorthPoleBehavior::Vanishes: return "vanishes";
    case NorthPoleBehavior::BoundedDiscontinuous: return "bounded-discontinuous";
    case NorthPoleBehavior::Diverges: return "diverges";
  }
  return "vanishes";
}

int asymptotic_degree(const Field& field) {
  if (is_zero_field(field)) throw InvalidArgument("the zero field has no asymptotic degree");
  if (const auto* lf = std::get_if<LaurentField>(&field)) return static_cast<int>(lf->max_exponent());
  const auto& rf = std::get<RationalField>(field);
  return rf.numerator.degree() - rf.denominator_degree();
}

NorthPoleReport north_pole_classify(const Field& field) {
  NorthPoleReport rep;
  rep.asymptotic_degree = asymptotic_degree(field);
  const int D = rep.asymptotic_degree;
  rep.behavior = D < 2 ? NorthPoleBehavior::Vanishes : D == 2 ? NorthPoleBehavior::BoundedDiscontinuous
                                                              : NorthPoleBehavior::Diverges;

  // Least-squares slope of log|U| vs log(theta), |U| averaged (RMS) over phi.
  constexpr int kThetas = 25, kPhis = 8;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int i = 0; i < kThetas; ++i) {
    const double theta = std::pow(10.0, -3.0 + 2.0 * i / (kThetas - 1));
    double sq = 0.0;
    for (int k = 0; k < kPhis; ++k) {
      const auto s = project_vector(field, theta, 2.0 * std::numbers::pi * (k + 0.5) / kPhis);
      sq += s.U[0] * s.U[0] + s.U[1] * s.U[1] + s.U[2] * s.U[2];
    }
    const double mag = std::sqrt(sq / kPhis);
    if (!std::isfinite(mag) || mag <= 0.0) {
      rep.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
      return rep;
    }
    const double lx = std::log(theta), ly = std::log(mag);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  rep.fitted_exponent = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return rep;
}

}  // namespace qflow
