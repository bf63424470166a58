#pragma once

#include <vector>

#include "qflow/field.hpp"
#include "qflow/independence.hpp"

namespace qflow {

/// Derivative-based inner product on mapped fields.
///
/// pi(f) = [f(alpha), Df(alpha), ..., D^(2^n - 1) f(alpha)] and B holds
/// pi of every basis field as columns; P = (B^-1)^dag B^-1 makes the basis
/// fields orthonormal.
struct GramContext {
  RepresentationConfig config;
  cplx alpha;
  ComplexMatrix B;
  ComplexMatrix P;
  /// 2-norm condition number of B.
  double condition = 0.0;

  /// pi(f) for a field in the mapped space.
  Eigen::VectorXcd project(const Field& f) const;
};

struct GramOptions {
  double max_condition = 1e8;
  std::vector<double> radii{0.3, 0.7, 1.7, 2.9};
  int angles = 16;
  /// Candidates closer than this to a basis defect are skipped.
  double defect_clearance = 1e-3;
};

/// The 64 default evaluation points (or whatever `opts` describes), in scan order.
std::vector<cplx> alpha_candidates(const RepresentationConfig& cfg, const GramOptions& opts = {});

/// Scans the candidates and keeps the best-conditioned B. Throws
/// NumericalError (naming the best candidate) when no candidate reaches
/// opts.max_condition.
GramContext build_gram(const RepresentationConfig& cfg, const GramOptions& opts = {});

/// Gram context at a fixed alpha, no conditioning requirement.
GramContext gram_at(const RepresentationConfig& cfg, cplx alpha);

/// pi(f1)^dag P pi(f2); conjugate-linear in f1.
cplx inner(const Field& f1, const Field& f2, const GramContext& ctx);

/// (1/2pi) integral over the unit circle of conj(f1) f2 by the uniform
/// trapezoid rule, exact when nodes > 2 max|exponent|.
cplx circle_inner_product(const LaurentField& f1, const LaurentField& f2, int nodes);
/// Default node count 2 max|c| + 8.
cplx circle_inner_product(const LaurentField& f1, const LaurentField& f2);
int default_circle_nodes(const LaurentField& f1, const LaurentField& f2);

}  // namespace qflow
