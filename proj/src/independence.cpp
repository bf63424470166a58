#include "qflow/independence.hpp"

#include <algorithm>
#include <map>

namespace qflow {

namespace {

constexpr std::size_t kMaxSvdColumns = 256;

bool all_laurent(std::span<const Field> fields) {
  return std::all_of(fields.begin(), fields.end(), [](const Field& f) { return std::holds_alternative<LaurentField>(f); });
}

ComplexMatrix laurent_matrix(const std::vector<const LaurentField*>& fields) {
  std::map<std::int64_t, Eigen::Index> row_of;
  for (const auto* f : fields) {
    for (const auto& [e, c] : f->terms()) row_of.emplace(e, 0);
  }
  Eigen::Index r = 0;
  for (auto& [e, row] : row_of) row = r++;
  ComplexMatrix m = ComplexMatrix::Zero(std::max<Eigen::Index>(r, 1), static_cast<Eigen::Index>(fields.size()));
  for (std::size_t j = 0; j < fields.size(); ++j) {
    for (const auto& [e, c] : fields[j]->terms()) m(row_of.at(e), static_cast<Eigen::Index>(j)) = c;
  }
  return m;
}

IndependenceReport report_for(const ComplexMatrix& raw) {
  IndependenceReport rep;
  rep.count = static_cast<int>(raw.cols());
  const ComplexMatrix m = normalize_columns(raw);
  rep.rank = numerical_rank(m);
  rep.independent = rep.rank == rep.count;
  if (static_cast<std::size_t>(m.cols()) <= kMaxSvdColumns) rep.singular_values = singular_values(m);
  return rep;
}

}  // namespace

ComplexMatrix normalize_columns(ComplexMatrix m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double nrm = m.col(j).norm();
    if (nrm > 0.0) m.col(j) /= nrm;
  }
  return m;
}

ComplexMatrix equilibrate(ComplexMatrix m, int sweeps) {
  for (int s = 0; s < sweeps; ++s) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double nrm = m.row(i).norm();
      if (nrm > 0.0) m.row(i) /= nrm;
    }
    m = normalize_columns(std::move(m));
  }
  return m;
}

int numerical_rank(const ComplexMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(m);
  qr.setThreshold(rel_tol);
  return static_cast<int>(qr.rank());
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

ComplexMatrix coefficient_matrix(std::span<const Field> fields) {
  if (fields.empty()) throw InvalidArgument("linear independence of an empty family is undefined");
  if (all_laurent(fields)) {
    std::vector<const LaurentField*> lf;
    for (const auto& f : fields) lf.push_back(&std::get<LaurentField>(f));
    return laurent_matrix(lf);
  }

  std::vector<PolynomialFraction> fractions;
  for (const auto& f : fields) fractions.push_back(as_fraction(f));
  // Common denominator: highest power of each distinct pole location.
  std::vector<std::pair<cplx, int>> common;
  for (const auto& fr : fractions) {
    for (const auto& [loc, p] : fr.denominator) {
      auto it = std::find_if(common.begin(), common.end(), [&](const auto& e) { return e.first == loc; });
      if (it == common.end()) {
        common.push_back({loc, p});
      } else {
        it->second = std::max(it->second, p);
      }
    }
  }
  std::vector<Polynomial> numerators;
  int rows = 1;
  for (const auto& fr : fractions) {
    Polynomial num = fr.numerator;
    for (const auto& [loc, p] : common) {
      int own = 0;
      for (const auto& [l2, p2] : fr.denominator) {
        if (l2 == loc) own = p2;
      }
      num = num * Polynomial::power_of_linear(loc, p - own);
    }
    rows = std::max(rows, num.degree() + 1);
    numerators.push_back(std::move(num));
  }
  ComplexMatrix m = ComplexMatrix::Zero(rows, static_cast<Eigen::Index>(fields.size()));
  for (std::size_t j = 0; j < numerators.size(); ++j) {
    for (int k = 0; k <= numerators[j].degree(); ++k) m(k, static_cast<Eigen::Index>(j)) = numerators[j].coeff(k);
  }
  return m;
}

IndependenceReport check_linear_independence(std::span<const Field> fields) {
  return report_for(coefficient_matrix(fields));
}

IndependenceReport check_linear_independence(std::span<const LaurentField> fields) {
  if (fields.empty()) throw InvalidArgument("linear independence of an empty family is undefined");
  std::vector<const LaurentField*> lf;
  for (const auto& f : fields) lf.push_back(&f);
  return report_for(laurent_matrix(lf));
}

ComplexMatrix evaluation_matrix(std::span<const Field> fields, std::span<const cplx> points) {
  ComplexMatrix m(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(fields.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < fields.size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = eval_value(fields[j], points[i]);
    }
  }
  return m;
}

ComplexMatrix wronskian_matrix(std::span<const Field> fields, cplx alpha, int order) {
  if (order < 1) throw InvalidArgument("Wronskian order must be positive");
  ComplexMatrix b(order, static_cast<Eigen::Index>(fields.size()));
  for (std::size_t j = 0; j < fields.size(); ++j) {
    const auto column = derivative_eval(fields[j], alpha, order - 1);
    for (int k = 0; k < order; ++k) b(k, static_cast<Eigen::Index>(j)) = column[k];
  }
  return b;
}

boost::multiprecision::cpp_int sufficient_charge_bound(int n) {
  if (n < 1) throw InvalidArgument("qubit count must be positive");
  if (n > 20) throw InvalidArgument("sufficient bound is only computed for n <= 20");
  boost::multiprecision::cpp_int value = boost::multiprecision::pow(boost::multiprecision::cpp_int(14), 1U << n);
  return value * n + 1;
}

std::int64_t necessary_charge_bound(int n) {
  if (n < 1) throw InvalidArgument("qubit count must be positive");
  if (n > 60) throw InvalidArgument("necessary bound is only computed for n <= 60");
  // d >= (S_k - 1) / 2k for each k, where S_k = sum_{j<=k} C(n, j).
  using boost::multiprecision::cpp_int;
  cpp_int binom = 1, partial = 1, best = 1;
  for (int k = 1; k <= n; ++k) {
    binom = binom * (n - k + 1) / k;
    partial += binom;
    const cpp_int need = (partial - 1 + 2 * k - 1) / (2 * k);
    best = std::max(best, need);
  }
  return best.convert_to<std::int64_t>();
}

}  // namespace qflow
