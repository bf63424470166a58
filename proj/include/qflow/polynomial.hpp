#pragma once

#include <span>
#include <vector>

#include "qflow/error.hpp"

namespace qflow {

/// Dense complex polynomial, coefficients in ascending degree.
///
/// Trailing coefficients below 1e-14 * max|coeff| are trimmed on
/// construction; the zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);

  static Polynomial constant(cplx c);
  /// (z - root)
  static Polynomial linear(cplx root);
  /// (z - root)^power
  static Polynomial power_of_linear(cplx root, int power);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  cplx coeff(int k) const { return k >= 0 && k <= degree() ? coeffs_[k] : cplx{}; }
  double max_abs_coeff() const;

  cplx operator()(cplx z) const;

  Polynomial derivative() const;
  /// Coefficients of p(alpha + t) in powers of t.
  Polynomial taylor_shift(cplx alpha) const;
  /// Quotient of p / (z - root); the remainder is returned through `remainder`.
  Polynomial deflate(cplx root, cplx* remainder = nullptr) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(cplx s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(cplx s, Polynomial p) { return p *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

struct Root {
  cplx location;
  int multiplicity = 1;
};

struct RootSet {
  std::vector<Root> roots;
  /// Largest |p(root)| over the reported roots.
  double residual = 0.0;

  int total_multiplicity() const;
};

struct RootOptions {
  double tolerance = 1e-12;
  int max_iterations = 500;
  /// Roots within cluster_radius * (1 + |root|) are merged into one multiple root.
  double cluster_radius = 1e-6;
};

/// All roots of p by Aberth-Ehrlich iteration, clustered into multiplicities.
/// Exact zero roots (vanishing low-order coefficients) are split off first.
RootSet roots(const Polynomial& p, const RootOptions& opts = {});

/// Raw simultaneous Aberth iteration without clustering; one entry per root.
std::vector<cplx> aberth_roots(const Polynomial& p, const RootOptions& opts = {});

/// Multiplicity of a known point `root` as a zero of p, by repeated deflation
/// while the remainder stays below `rel_tol` relative to the coefficient scale.
/// The deflated quotient is returned through `quotient`.
int multiplicity_at(const Polynomial& p, cplx root, double rel_tol = 1e-10, Polynomial* quotient = nullptr);

}  // namespace qflow
