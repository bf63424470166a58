#include "qflow/defects.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace qflow {

namespace {

constexpr double kMultiplicityTol = 1e-10;
constexpr double kWitnessTol = 1e-8;
constexpr int kWitnessSamples = 20;

bool same_point(cplx a, cplx b) { return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a)); }

int order_at(const std::vector<Root>& roots, cplx where) {
  int m = 0;
  for (const auto& r : roots) {
    if (same_point(r.location, where)) m += r.multiplicity;
  }
  return m;
}

double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  return a < 0.0 ? a + two_pi : a;
}

struct Candidate {
  // Per polygon vertex, the indices of its copies in the free-zero list.
  std::vector<std::vector<int>> vertices;
  cplx power;                // common value of (z - a)^(2d)
};

bool is_regular_polygon(const std::vector<cplx>& pts, cplx center, int d, const HaloTolerances& tol) {
  std::vector<double> radii, angles;
  for (const auto& p : pts) {
    radii.push_back(std::abs(p - center));
    angles.push_back(wrap_angle(std::arg(p - center)));
  }
  const auto [rmin, rmax] = std::minmax_element(radii.begin(), radii.end());
  if (*rmin <= 0.0 || (*rmax - *rmin) > tol.radius * *rmax) return false;
  std::sort(angles.begin(), angles.end());
  const double gap = std::numbers::pi / d;
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const double next = k + 1 < angles.size() ? angles[k + 1] : angles[0] + 2.0 * std::numbers::pi;
    if (std::abs(next - angles[k] - gap) > tol.angle) return false;
  }
  return true;
}

std::vector<Candidate> polygon_candidates(const std::vector<cplx>& free, cplx center, int d, const HaloTolerances& tol) {
  const int size = 2 * d;
  std::vector<cplx> w(free.size());
  for (std::size_t i = 0; i < free.size(); ++i) w[i] = std::pow(free[i] - center, size);
  const double group_tol = 2.0 * size * (tol.radius + tol.angle);

  std::vector<Candidate> out;
  std::vector<bool> grouped(free.size(), false);
  for (std::size_t i = 0; i < free.size(); ++i) {
    if (grouped[i]) continue;
    std::vector<int> members;
    for (std::size_t k = i; k < free.size(); ++k) {
      if (!grouped[k] && std::abs(w[k] - w[i]) <= group_tol * std::max(std::abs(w[k]), std::abs(w[i]))) {
        members.push_back(static_cast<int>(k));
      }
    }
    // A zero shared by two halos shows up twice; the search takes one copy
    // here and leaves the other for the neighbouring center.
    std::vector<std::vector<int>> vertices;
    for (int k : members) {
      auto it = std::find_if(vertices.begin(), vertices.end(), [&](const auto& v) { return same_point(free[k], free[v[0]]); });
      if (it == vertices.end()) {
        vertices.push_back({k});
      } else {
        it->push_back(k);
      }
    }
    for (int k : members) grouped[k] = true;
    if (static_cast<int>(vertices.size()) != size) continue;
    std::vector<cplx> pts;
    cplx mean{};
    for (const auto& v : vertices) {
      pts.push_back(free[v[0]]);
      mean += w[v[0]];
    }
    if (is_regular_polygon(pts, center, d, tol)) out.push_back({std::move(vertices), mean / static_cast<double>(size)});
  }
  return out;
}

enum class Choice { Absent, Collapsed, AtInfinity, Polygon };

struct Assignment {
  std::vector<Choice> choice;
  std::vector<int> polygon;  // candidate index per center when choice == Polygon
  std::vector<std::vector<int>> members;  // free-zero indices used by each polygon
};

struct Search {
  int n = 0;
  int d = 1;
  std::vector<int> center_mult;
  std::vector<std::vector<Candidate>> candidates;
  std::size_t free_count = 0;
  int budget = 0;

  Assignment current, best;
  int best_score = -1;
  bool found_complete = false;

  std::vector<bool> used;
  int free_used = 0;
  int budget_used = 0;

  bool complete_now() const {
    if (free_used != static_cast<int>(free_count) || budget_used != budget) return false;
    for (int j = 0; j < n; ++j) {
      const int consumed = current.choice[j] == Choice::Collapsed ? 2 * d : 0;
      if (current.choice[j] == Choice::Absent || center_mult[j] != consumed) return false;
    }
    return true;
  }

  void run(int j) {
    if (found_complete) return;
    if (j == n) {
      int score = 0;
      for (auto c : current.choice) score += c != Choice::Absent;
      if (complete_now()) {
        found_complete = true;
        best = current;
        return;
      }
      if (score > best_score) {
        best_score = score;
        best = current;
      }
      return;
    }
    if (center_mult[j] >= 2 * d) {
      current.choice[j] = Choice::Collapsed;
      run(j + 1);
    }
    for (std::size_t c = 0; c < candidates[j].size() && !found_complete; ++c) {
      // Copies of one vertex are interchangeable, so the first unused one will do.
      std::vector<int> picked;
      for (const auto& v : candidates[j][c].vertices) {
        auto it = std::find_if(v.begin(), v.end(), [&](int k) { return !used[k]; });
        if (it == v.end()) break;
        picked.push_back(*it);
      }
      if (picked.size() != candidates[j][c].vertices.size()) continue;
      for (int k : picked) used[k] = true;
      free_used += static_cast<int>(picked.size());
      current.choice[j] = Choice::Polygon;
      current.polygon[j] = static_cast<int>(c);
      current.members[j] = picked;
      run(j + 1);
      for (int k : picked) used[k] = false;
      free_used -= static_cast<int>(picked.size());
    }
    if (budget_used < budget && !found_complete) {
      ++budget_used;
      current.choice[j] = Choice::AtInfinity;
      run(j + 1);
      --budget_used;
    }
    if (!found_complete) {
      current.choice[j] = Choice::Absent;
      run(j + 1);
    }
  }
};

std::vector<cplx> witness_points(const std::vector<cplx>& defects) {
  cplx center{};
  for (const auto& a : defects) center += a;
  center /= static_cast<double>(defects.size());
  double spread = 0.0;
  for (const auto& a : defects) spread = std::max(spread, std::abs(a - center));
  const double scale = 1.0 + spread;

  std::vector<cplx> pts;
  for (int k = 0; k < kWitnessSamples; ++k) {
    cplx z = center + std::polar(scale * (0.35 + 0.05 * k), 0.7 + 2.39996 * k);
    for (const auto& a : defects) {
      if (std::abs(z - a) < 1e-3) z += 1e-2;
    }
    pts.push_back(z);
  }
  return pts;
}

bool rank_one(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return true;
  return s.size() < 2 || s(1) <= kFactorTolerance * s(0);
}

void require_nonzero(const QubitState& state) {
  if (state.is_zero()) throw InvalidArgument("separability of the zero state is undefined");
}

}  // namespace

int DefectSet::zero_count() const {
  int s = 0;
  for (const auto& r : zeros) s += r.multiplicity;
  return s;
}

int DefectSet::pole_count() const {
  int s = 0;
  for (const auto& r : poles) s += r.multiplicity;
  return s;
}

DefectSet extract_defects(const Field& field) {
  const PolynomialFraction fr = as_fraction(field);
  if (fr.numerator.is_zero()) throw InvalidArgument("the zero field has no defect structure");

  DefectSet out;
  out.infinity_charge = fr.numerator.degree() - fr.denominator_degree();
  Polynomial rest = fr.numerator;
  for (const auto& [loc, power] : fr.denominator) {
    const int m = multiplicity_at(rest, loc, kMultiplicityTol, &rest);
    if (m < power) out.poles.push_back({loc, power - m});
    if (m > power) out.zeros.push_back({loc, m - power});
  }
  if (rest.degree() >= 1) {
    for (const auto& r : roots(rest).roots) out.zeros.push_back(r);
  }
  return out;
}

std::string_view to_string(HaloStatus s) {
  switch (s) {
    case HaloStatus::Regular: return "regular";
    case HaloStatus::AtInfinity: return "at-infinity";
    case HaloStatus::Collapsed: return "collapsed";
    case HaloStatus::Absent: return "absent";
  }
  return "absent";
}

HaloStatus parse_halo_status(std::string_view s) {
  if (s == "regular") return HaloStatus::Regular;
  if (s == "at-infinity") return HaloStatus::AtInfinity;
  if (s == "collapsed") return HaloStatus::Collapsed;
  if (s == "absent") return HaloStatus::Absent;
  throw InvalidArgument("unknown halo status '" + std::string(s) + "'");
}

bool HaloReport::complete() const {
  return leftover_zeros.empty() &&
         std::none_of(halos.begin(), halos.end(), [](const Halo& h) { return h.status == HaloStatus::Absent; });
}

HaloReport detect_halos(const DefectSet& defects, const RepresentationConfig& cfg, const HaloTolerances& tol) {
  if (cfg.kind != Representation::Position) throw InvalidArgument("halo detection needs a position-representation config");
  const int n = cfg.n, d = cfg.d;
  const auto& centers = cfg.defects;

  Search search;
  search.n = n;
  search.d = d;
  for (const auto& a : centers) {
    search.center_mult.push_back(d - order_at(defects.poles, a) + order_at(defects.zeros, a));
  }
  std::vector<cplx> free;
  for (const auto& z : defects.zeros) {
    const bool on_center = std::any_of(centers.begin(), centers.end(), [&](cplx a) { return same_point(z.location, a); });
    if (!on_center) free.insert(free.end(), static_cast<std::size_t>(z.multiplicity), z.location);
  }
  search.free_count = free.size();
  const int deficit = 2 * n * d - (defects.infinity_charge + n * d);
  search.budget = deficit > 0 && deficit % (2 * d) == 0 ? deficit / (2 * d) : 0;
  for (const auto& a : centers) search.candidates.push_back(polygon_candidates(free, a, d, tol));
  search.used.assign(free.size(), false);
  search.current.choice.assign(static_cast<std::size_t>(n), Choice::Absent);
  search.current.polygon.assign(static_cast<std::size_t>(n), -1);
  search.current.members.assign(static_cast<std::size_t>(n), {});
  search.run(0);
  const Assignment& best = search.best;

  HaloReport report;
  std::vector<bool> used(free.size(), false);
  for (int j = 0; j < n; ++j) {
    Halo h;
    h.center = centers[j];
    int consumed = 0;
    switch (best.choice[j]) {
      case Choice::Collapsed:
        h.status = HaloStatus::Collapsed;
        h.zeros.assign(static_cast<std::size_t>(2 * d), centers[j]);
        h.alpha = 0.0;
        h.beta = 1.0;
        consumed = 2 * d;
        break;
      case Choice::AtInfinity:
        h.status = HaloStatus::AtInfinity;
        h.alpha = 1.0;
        h.beta = 0.0;
        break;
      case Choice::Polygon: {
        const auto& cand = search.candidates[j][best.polygon[j]];
        h.status = HaloStatus::Regular;
        double phase = 2.0 * std::numbers::pi;
        for (int k : best.members[j]) {
          used[k] = true;
          h.zeros.push_back(free[k]);
          phase = std::min(phase, std::fmod(wrap_angle(std::arg(free[k] - centers[j])), std::numbers::pi / d));
        }
        h.radius = std::pow(std::abs(cand.power), 1.0 / (2 * d));
        h.phase = phase;
        // Zeros solve alpha + beta (z - a)^(2d) = 0, so alpha/beta = -(z - a)^(2d).
        h.alpha = -cand.power;
        h.beta = 1.0;
        break;
      }
      case Choice::Absent:
        h.status = HaloStatus::Absent;
        break;
    }
    report.halos.push_back(std::move(h));
    const int extra = search.center_mult[j] - consumed;
    if (extra > 0) report.leftover_zeros.push_back({centers[j], extra});
  }
  for (std::size_t k = 0; k < free.size(); ++k) {
    if (!used[k]) report.leftover_zeros.push_back({free[k], 1});
  }
  return report;
}

GeometricVerdict is_separable_geometric(const QubitState& state, const RepresentationConfig& cfg, const HaloTolerances& tol) {
  require_nonzero(state);
  GeometricVerdict verdict;
  const Field field = position_map(state, cfg);
  verdict.defects = extract_defects(field);
  verdict.halos = detect_halos(verdict.defects, cfg, tol);
  if (!verdict.halos.complete()) return verdict;

  for (const auto& h : verdict.halos.halos) verdict.witness.emplace_back(h.alpha, h.beta);
  QubitState product = single_qubit(verdict.witness[0].first, verdict.witness[0].second);
  for (std::size_t j = 1; j < verdict.witness.size(); ++j) {
    product = tensor(product, single_qubit(verdict.witness[j].first, verdict.witness[j].second));
  }
  const Field rebuilt = position_map(product, cfg);

  cplx gf{}, gg{};
  std::vector<cplx> f, g;
  for (const auto& z : witness_points(cfg.defects)) {
    f.push_back(eval_value(field, z));
    g.push_back(eval_value(rebuilt, z));
    gf += std::conj(g.back()) * f.back();
    gg += std::norm(g.back());
  }
  if (gg == cplx{}) {
    verdict.witness_residual = 1.0;
    return verdict;
  }
  const cplx lambda = gf / gg;
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    num += std::norm(f[k] - lambda * g[k]);
    den += std::norm(f[k]);
  }
  verdict.witness_residual = std::sqrt(num / den);
  verdict.separable = verdict.witness_residual <= kWitnessTol;
  return verdict;
}

bool is_separable_tensor(const QubitState& state) {
  require_nonzero(state);
  std::vector<cplx> v = state.amplitudes();
  while (v.size() > 2) {
    const Eigen::Index half = static_cast<Eigen::Index>(v.size() / 2);
    Eigen::MatrixXcd m(2, half);
    for (Eigen::Index c = 0; c < half; ++c) {
      m(0, c) = v[c];
      m(1, c) = v[half + c];
    }
    if (!rank_one(m)) return false;
    // Rank one: both rows are parallel, keep the larger.
    const Eigen::Index keep = m.row(0).norm() >= m.row(1).norm() ? 0 : 1;
    v.assign(static_cast<std::size_t>(half), cplx{});
    for (Eigen::Index c = 0; c < half; ++c) v[c] = m(keep, c);
  }
  return true;
}

std::vector<int> factorizable_qubits(const QubitState& state) {
  require_nonzero(state);
  const int n = state.num_qubits();
  std::vector<int> out;
  if (n == 1) return {1};
  const Eigen::Index cols = static_cast<Eigen::Index>(state.dim() / 2);
  for (int q = 1; q <= n; ++q) {
    Eigen::MatrixXcd m(2, cols);
    Eigen::Index col[2] = {0, 0};
    for (std::size_t i = 0; i < state.dim(); ++i) {
      const int b = qubit_bit(i, n, q);
      m(b, col[b]++) = state[i];
    }
    if (rank_one(m)) out.push_back(q);
  }
  return out;
}

}  // namespace qflow
