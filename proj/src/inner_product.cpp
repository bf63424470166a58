#include "qflow/inner_product.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qflow {

namespace {

double condition_number(const ComplexMatrix& b) {
  const auto s = singular_values(b);
  if (s.empty() || s.back() == 0.0) return std::numeric_limits<double>::infinity();
  return s.front() / s.back();
}

ComplexMatrix basis_projection(const RepresentationConfig& cfg, cplx alpha) {
  const auto fields = basis_fields(cfg);
  return wronskian_matrix(fields, alpha, static_cast<int>(fields.size()));
}

}  // namespace

Eigen::VectorXcd GramContext::project(const Field& f) const {
  const auto d = derivative_eval(f, alpha, static_cast<int>(B.rows()) - 1);
  return Eigen::Map<const Eigen::VectorXcd>(d.data(), static_cast<Eigen::Index>(d.size()));
}

std::vector<cplx> alpha_candidates(const RepresentationConfig& cfg, const GramOptions& opts) {
  std::vector<cplx> out;
  for (double r : opts.radii) {
    for (int k = 0; k < opts.angles; ++k) {
      const cplx a = std::polar(r, 2.0 * std::numbers::pi * k / opts.angles);
      bool clear = true;
      for (const auto& p : cfg.defects) clear = clear && std::abs(a - p) >= opts.defect_clearance;
      if (cfg.kind == Representation::Charge) clear = clear && std::abs(a) >= opts.defect_clearance;
      if (clear) out.push_back(a);
    }
  }
  return out;
}

GramContext gram_at(const RepresentationConfig& cfg, cplx alpha) {
  GramContext ctx;
  ctx.config = cfg;
  ctx.alpha = alpha;
  ctx.B = basis_projection(cfg, alpha);
  ctx.condition = condition_number(ctx.B);
  if (!std::isfinite(ctx.condition)) {
    std::ostringstream msg;
    msg << "B(alpha) is singular at alpha = " << alpha;
    throw NumericalError(msg.str());
  }
  const ComplexMatrix inv = ctx.B.fullPivLu().inverse();
  const ComplexMatrix p = inv.adjoint() * inv;
  ctx.P = 0.5 * (p + p.adjoint());
  return ctx;
}

GramContext build_gram(const RepresentationConfig& cfg, const GramOptions& opts) {
  const auto candidates = alpha_candidates(cfg, opts);
  if (candidates.empty()) throw NumericalError("no admissible evaluation point for the Gram construction");
  double best = std::numeric_limits<double>::infinity();
  cplx best_alpha = candidates.front();
  for (const auto& a : candidates) {
    const double c = condition_number(basis_projection(cfg, a));
    if (c < best) {
      best = c;
      best_alpha = a;
    }
  }
  if (!(best <= opts.max_condition)) {
    std::ostringstream msg;
    msg << "no evaluation point reaches condition(B) <= " << opts.max_condition << "; best candidate alpha = "
        << best_alpha << " with condition " << best;
    throw NumericalError(msg.str());
  }
  return gram_at(cfg, best_alpha);
}

cplx inner(const Field& f1, const Field& f2, const GramContext& ctx) {
  const Eigen::VectorXcd v1 = ctx.project(f1);
  const Eigen::VectorXcd v2 = ctx.project(f2);
  return (v1.adjoint() * ctx.P * v2)(0, 0);
}

int default_circle_nodes(const LaurentField& f1, const LaurentField& f2) {
  return static_cast<int>(2 * std::max(f1.max_abs_exponent(), f2.max_abs_exponent()) + 8);
}

cplx circle_inner_product(const LaurentField& f1, const LaurentField& f2, int nodes) {
  const std::int64_t span = 2 * std::max(f1.max_abs_exponent(), f2.max_abs_exponent());
  if (nodes <= span) {
    throw InvalidArgument("circle quadrature needs more than " + std::to_string(span) + " nodes (at least " +
                          std::to_string(span + 1) + "), got " + std::to_string(nodes));
  }
  const Field a = f1, b = f2;
  cplx sum{};
  for (int k = 0; k < nodes; ++k) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / nodes);
    sum += std::conj(eval_value(a, z)) * eval_value(b, z);
  }
  return sum / static_cast<double>(nodes);
}

cplx circle_inner_product(const LaurentField& f1, const LaurentField& f2) {
  return circle_inner_product(f1, f2, default_circle_nodes(f1, f2));
}

}  // namespace qflow
