#include "qflow/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

namespace qflow {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  const double tol = 1e-14 * max_abs_coeff();
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= tol) coeffs_.pop_back();
}

Polynomial Polynomial::constant(cplx c) { return Polynomial({c}); }

Polynomial Polynomial::linear(cplx root) { return Polynomial({-root, 1.0}); }

Polynomial Polynomial::power_of_linear(cplx root, int power) {
  if (power < 0) throw InvalidArgument("negative polynomial power");
  Polynomial out = constant(1.0);
  const Polynomial f = linear(root);
  for (int i = 0; i < power; ++i) out = out * f;
  return out;
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::taylor_shift(cplx alpha) const {
  // Repeated synthetic division by (z - alpha).
  std::vector<cplx> c = coeffs_;
  const int n = degree();
  for (int i = 0; i < n; ++i) {
    for (int k = n - 1; k >= i; --k) c[k] += alpha * c[k + 1];
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::deflate(cplx root, cplx* remainder) const {
  if (coeffs_.empty()) {
    if (remainder) *remainder = 0.0;
    return {};
  }
  const int n = degree();
  std::vector<cplx> q(static_cast<std::size_t>(std::max(n, 0)));
  cplx acc = coeffs_[n];
  for (int k = n - 1; k >= 0; --k) {
    q[k] = acc;
    acc = coeffs_[k] + acc * root;
  }
  if (remainder) *remainder = acc;
  return Polynomial(std::move(q));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

int RootSet::total_multiplicity() const {
  return std::accumulate(roots.begin(), roots.end(), 0, [](int s, const Root& r) { return s + r.multiplicity; });
}

namespace {

constexpr double kMergeRadius = 1e-4;

// p(z) and p'(z) together by Horner.
std::pair<cplx, cplx> eval_with_derivative(const std::vector<cplx>& c, cplx z) {
  cplx p = c.back(), dp{};
  for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
  return {p, dp};
}

void newton_polish(const std::vector<cplx>& c, cplx& z) {
  for (int it = 0; it < 3; ++it) {
    const auto [p, dp] = eval_with_derivative(c, z);
    if (p == cplx{} || dp == cplx{}) return;
    const cplx candidate = z - p / dp;
    if (std::abs(eval_with_derivative(c, candidate).first) >= std::abs(p)) return;
    z = candidate;
  }
}

// An m-fold root is a simple root of the (m-1)th derivative.
cplx refine_multiple(const Polynomial& p, cplx z, int m) {
  Polynomial dp = p;
  for (int k = 1; k < m; ++k) dp = dp.derivative();
  newton_polish(dp.coeffs(), z);
  return z;
}

}  // namespace

std::vector<cplx> aberth_roots(const Polynomial& p, const RootOptions& opts) {
  const int n = p.degree();
  if (n < 0) throw InvalidArgument("the zero polynomial has undefined roots");
  if (n == 0) return {};
  const auto& c = p.coeffs();
  if (n == 1) return {-c[0] / c[1]};

  double ratio = 0.0;
  for (int k = 0; k < n; ++k) ratio = std::max(ratio, std::abs(c[k] / c[n]));
  const double radius = 1.0 + ratio;

  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    bool all_done = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      const auto [pv, dpv] = eval_with_derivative(c, z[i]);
      if (pv == cplx{}) {
        done[i] = true;
        continue;
      }
      cplx repulsion{};
      for (int j = 0; j < n; ++j) {
        if (j != i && z[i] != z[j]) repulsion += 1.0 / (z[i] - z[j]);
      }
      const cplx newton = dpv == cplx{} ? cplx(1e-8, 1e-8) : pv / dpv;
      const cplx step = newton / (1.0 - newton * repulsion);
      z[i] -= step;
      if (std::abs(step) <= opts.tolerance * (1.0 + std::abs(z[i]))) {
        done[i] = true;
      } else {
        all_done = false;
      }
    }
    if (all_done) break;
  }
  for (auto& r : z) newton_polish(c, r);
  return z;
}

RootSet roots(const Polynomial& p, const RootOptions& opts) {
  if (p.is_zero()) throw InvalidArgument("the zero polynomial has undefined roots");

  RootSet out;
  const auto& c = p.coeffs();
  int zero_mult = 0;
  while (zero_mult < p.degree() && c[zero_mult] == cplx{}) ++zero_mult;
  std::vector<cplx> reduced(c.begin() + zero_mult, c.end());
  const std::vector<cplx> raw = aberth_roots(Polynomial(std::move(reduced)), opts);

  // Greedy single-link clustering.
  std::vector<int> cluster(raw.size());
  std::iota(cluster.begin(), cluster.end(), 0);
  std::function<int(int)> find = [&](int i) { return cluster[i] == i ? i : cluster[i] = find(cluster[i]); };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (std::abs(raw[i] - raw[j]) <= opts.cluster_radius * (1.0 + std::abs(raw[i]))) {
        cluster[find(static_cast<int>(j))] = find(static_cast<int>(i));
      }
    }
  }
  std::vector<int> order;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (find(static_cast<int>(i)) == static_cast<int>(i)) order.push_back(static_cast<int>(i));
  }
  if (zero_mult > 0) out.roots.push_back({0.0, zero_mult});
  for (int head : order) {
    cplx sum{};
    int count = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (find(static_cast<int>(i)) == head) {
        sum += raw[i];
        ++count;
      }
    }
    out.roots.push_back({sum / static_cast<double>(count), count});
  }
  // Multiple roots come back spread by ~eps^(1/m); their centroid is still
  // accurate, so nearby clusters merge when deflation confirms the order.
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < out.roots.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < out.roots.size() && !merged; ++j) {
        const auto& a = out.roots[i];
        const auto& b = out.roots[j];
        if (std::abs(a.location - b.location) > kMergeRadius * (1.0 + std::abs(a.location))) continue;
        const int m = a.multiplicity + b.multiplicity;
        const cplx centroid = (static_cast<double>(a.multiplicity) * a.location +
                               static_cast<double>(b.multiplicity) * b.location) / static_cast<double>(m);
        const cplx refined = refine_multiple(p, centroid, m);
        if (multiplicity_at(p, refined) < m) continue;
        out.roots[i] = {refined, m};
        out.roots.erase(out.roots.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
    }
  }
  for (auto& r : out.roots) {
    if (r.multiplicity >= 2 && r.location != cplx{}) r.location = refine_multiple(p, r.location, r.multiplicity);
  }
  for (const auto& r : out.roots) out.residual = std::max(out.residual, std::abs(p(r.location)));
  return out;
}

int multiplicity_at(const Polynomial& p, cplx root, double rel_tol, Polynomial* quotient) {
  Polynomial q = p;
  int mult = 0;
  while (q.degree() >= 1) {
    double scale = 0.0, power = 1.0;
    for (const auto& c : q.coeffs()) {
      scale += std::abs(c) * power;
      power *= std::abs(root);
    }
    cplx rem;
    Polynomial next = q.deflate(root, &rem);
    if (std::abs(rem) > rel_tol * scale) break;
    q = std::move(next);
    ++mult;
  }
  if (quotient) *quotient = std::move(q);
  return mult;
}

}  // namespace qflow
