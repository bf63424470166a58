#pragma once

#include <string_view>
#include <vector>

#include "qflow/field.hpp"
#include "qflow/polynomial.hpp"

namespace qflow {

/// Zeros and poles of a field after cancelling common factors.
///
/// infinity_charge is deg(numerator) - deg(denominator) of the reduced
/// fraction: positive means a pole at infinity of that order, negative a
/// zero. The finite orders balance it: sum(zeros) - sum(poles) = infinity_charge.
struct DefectSet {
  std::vector<Root> zeros;
  std::vector<Root> poles;
  int infinity_charge = 0;

  int zero_count() const;
  int pole_count() const;
};

/// Throws InvalidArgument for the zero field.
DefectSet extract_defects(const Field& field);

enum class HaloStatus { Regular, AtInfinity, Collapsed, Absent };

std::string_view to_string(HaloStatus s);
HaloStatus parse_halo_status(std::string_view s);

struct Halo {
  cplx center;
  HaloStatus status = HaloStatus::Absent;
  /// Polygon radius and the smallest vertex angle modulo pi/d (regular halos).
  double radius = 0.0;
  double phase = 0.0;
  std::vector<cplx> zeros;
  /// Single-qubit amplitudes recovered from the halo, alpha|0> + beta|1>.
  cplx alpha{};
  cplx beta{};
};

struct HaloReport {
  std::vector<Halo> halos;
  /// Zeros not explained by any halo, including uncancelled zeros sitting on
  /// a basis defect.
  std::vector<Root> leftover_zeros;

  /// Every basis defect has a halo and nothing is left over.
  bool complete() const;
};

struct HaloTolerances {
  /// Relative spread allowed between polygon radii.
  double radius = 1e-6;
  /// Allowed deviation of consecutive vertex gaps from pi/d, radians.
  double angle = 1e-6;
};

/// Finds a regular 2d-gon of zeros (or a collapsed / at-infinity halo) for
/// each basis defect of a position-representation config.
///
/// Candidate polygons are found per center by grouping zeros that share the
/// same value of (z - a_j)^(2d), then an exhaustive search picks the
/// assignment covering the most centers without reusing a zero.
HaloReport detect_halos(const DefectSet& defects, const RepresentationConfig& cfg, const HaloTolerances& tol = {});

struct GeometricVerdict {
  bool separable = false;
  /// Per-qubit (alpha', beta'), filled when every basis defect has a halo.
  std::vector<std::pair<cplx, cplx>> witness;
  /// Relative mismatch of the reconstructed field at the sample points.
  double witness_residual = 0.0;
  DefectSet defects;
  HaloReport halos;
};

/// Separability from the flow-field defects alone. A complete halo report is
/// only accepted after the product state rebuilt from the halos maps back
/// onto the field up to a global scale (1e-8 relative at sample points).
GeometricVerdict is_separable_geometric(const QubitState& state, const RepresentationConfig& cfg,
                                        const HaloTolerances& tol = {});

/// Relative threshold on the second singular value of a qubit reshape.
inline constexpr double kFactorTolerance = 1e-9;

/// Amplitude-space product test: peels qubits left to right, each by a
/// rank-1 test of the 2 x 2^(remaining-1) reshape.
bool is_separable_tensor(const QubitState& state);

/// 1-based qubits j whose 2 x 2^(n-1) reshape along j has rank 1.
std::vector<int> factorizable_qubits(const QubitState& state);

}  // namespace qflow
