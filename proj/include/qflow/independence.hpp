#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "qflow/field.hpp"

namespace qflow {

using ComplexMatrix = Eigen::MatrixXcd;

/// Relative rank tolerance: pivots below 1e-9 of the largest count as zero.
inline constexpr double kRankTolerance = 1e-9;

struct IndependenceReport {
  bool independent = false;
  int rank = 0;
  int count = 0;
  /// Singular values of the column-normalized coefficient matrix, descending
  /// (left empty for families wider than 256 fields).
  std::vector<double> singular_values;
};

/// Rank of the coefficient matrix of a field family. Laurent terms index
/// rows by exponent; rational fields are brought over a common denominator
/// and their numerator coefficients form the columns. Columns are scaled to
/// unit norm first since linear independence is scale invariant.
IndependenceReport check_linear_independence(std::span<const Field> fields);
IndependenceReport check_linear_independence(std::span<const LaurentField> fields);

/// Columns are the fields' numerators over a common denominator.
ComplexMatrix coefficient_matrix(std::span<const Field> fields);

/// M(i, j) = f_j(b_i).
ComplexMatrix evaluation_matrix(std::span<const Field> fields, std::span<const cplx> points);

/// B(alpha)(k, j) = D^k f_j(alpha), k = 0..order-1.
ComplexMatrix wronskian_matrix(std::span<const Field> fields, cplx alpha, int order);

/// Rank with the column-pivoted QR threshold above.
int numerical_rank(const ComplexMatrix& m, double rel_tol = kRankTolerance);
std::vector<double> singular_values(const ComplexMatrix& m);
/// Same matrix with each nonzero column scaled to unit 2-norm.
ComplexMatrix normalize_columns(ComplexMatrix m);
/// Alternating row and column scaling to unit 2-norm. Diagonal scaling keeps
/// the rank, and evaluation matrices whose entries span many decades need it
/// before their singular values say anything about conditioning.
ComplexMatrix equilibrate(ComplexMatrix m, int sweeps = 50);

/// 14^(2^n) n + 1: a charge above which the position basis fields are
/// guaranteed independent.
boost::multiprecision::cpp_int sufficient_charge_bound(int n);

/// Smallest d with 2kd + 1 >= sum_{j<=k} C(n, j) for every 1 <= k <= n.
std::int64_t necessary_charge_bound(int n);

}  // namespace qflow
