#pragma once

// PPT classification of family states and the geometry of the separable region.
//
// For a mixture of the family basis, the partial transpose splits into two 2x2
// blocks on {|uu>, |dd>} and {|ud>, |du>}. Their determinants are
//
//   f1 = w1 w2 + k [(w1-w2)^2 - (w3-w4)^2]
//   f2 = w3 w4 - k [(w1-w2)^2 - (w3-w4)^2]        k = cos^2(alpha) sin^2(alpha)
//
// and since each block has non-negative trace, the state is PPT (hence
// separable for two qubits) exactly when f1 >= 0 and f2 >= 0. In the Cartesian
// chart f1 = 0 and f2 = 0 are elliptic cones with apices on the z-axis.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "stella/basis_family.hpp"

namespace stella {

inline constexpr double kDefaultBoundaryEps = 1e-9;

struct BoundaryFactors {
  double f1 = 0.0;  ///< determinant of the {|uu>, |dd>} block of the partial transpose
  double f2 = 0.0;  ///< determinant of the {|ud>, |du>} block
  double product() const { return f1 * f2; }
  double min() const { return f1 < f2 ? f1 : f2; }
};

enum class Label { Separable, Entangled, Boundary };

std::string_view to_string(Label label);
std::optional<Label> parse_label(std::string_view text);

struct Classification {
  Label label = Label::Separable;
  double witness = 0.0;  ///< smallest eigenvalue of the partial transpose
  BoundaryFactors factors;
};

BoundaryFactors boundary_factors(const SimplexWeights& weights, Alpha alpha);
/// Same polynomial on unconstrained coefficients.
BoundaryFactors boundary_factors(const std::array<double, 4>& w, Alpha alpha);

/// det of the partial transpose, as f1 * f2.
double det_pt(const SimplexWeights& weights, Alpha alpha);

/// Labels a family state. Both the factor signs and the eigenvalue spectrum of
/// the partial transpose are evaluated; the label follows the factors:
///   |min(f1, f2)| < eps  -> Boundary
///   min(f1, f2) >= eps   -> Separable
///   otherwise            -> Entangled
/// At alpha = 0 the partial transpose is the identity map on the family, so
/// every state is Separable and no Boundary band applies.
/// Throws ValidationError for eps <= 0 and ConsistencyError if the spectrum
/// contradicts the factor signs outside the band.
Classification classify(const SimplexWeights& weights, Alpha alpha, double eps = kDefaultBoundaryEps);

enum class ConeId { A, B };

std::string_view to_string(ConeId which);

/// Plane n . p = offset.
struct Plane {
  std::array<double, 3> normal{};
  double offset = 0.0;
  double signed_value(const CartesianPoint& p) const {
    return normal[0] * p.x + normal[1] * p.y + normal[2] * p.z - offset;
  }
};

/// Quadric (z - apex.z)^2 = coeff_x2 x^2 + coeff_y2 y^2.
///   ConeA (f1 = 0): apex (0, 0, +h), coefficients 2(1-4k), 8k
///   ConeB (f2 = 0): apex (0, 0, -h), coefficients 8k, 2(1-4k)
/// with h = 1/(2 sqrt 2). At k = 0 or k = 1/4 one coefficient vanishes and the
/// cone collapses to the plane pair reported by planes().
struct ConeSpec {
  ConeId which = ConeId::A;
  CartesianPoint apex;
  double coeff_x2 = 0.0;
  double coeff_y2 = 0.0;

  bool degenerate() const;
  /// coeff_x2 x^2 + coeff_y2 y^2 - (z - apex.z)^2.
  double residual(const CartesianPoint& p) const;
  /// The two limiting planes (z - apex.z) = +-sqrt(c) * (x or y). Only meaningful
  /// when degenerate(); throws ValidationError otherwise.
  std::array<Plane, 2> planes() const;
  /// Semi-axes of the cross-section ellipse in the plane z = 0.
  std::array<double, 2> waist_semi_axes() const;
};

/// Coefficients below this are treated as zero when detecting degenerate cones.
inline constexpr double kDegenerateCoefficient = 1e-12;

struct ConePair {
  ConeSpec a;
  ConeSpec b;
  bool degenerate() const { return a.degenerate(); }
};

ConePair cone_specs(Alpha alpha);

/// apex + t * (waist ellipse point at angle u - apex). t = 0 is the apex and
/// t = 1 lands on the z = 0 plane. Throws DegenerateConeError for degenerate specs.
CartesianPoint cone_point(const ConeSpec& spec, double u, double t);

/// Ellipse angle u whose ruling passes over the direction (x, y).
double cone_angle_toward(const ConeSpec& spec, double x, double y);

/// True iff the state is invariant under the partial transpose: |x - y| <= tol,
/// or always when cos(alpha) sin(alpha) = 0.
bool is_fixed_point(const SimplexWeights& weights, Alpha alpha, double tol);

struct VolumeEstimate {
  double fraction = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t separable = 0;
  std::uint64_t seed = 0;
};

/// Monte Carlo fraction of uniform simplex samples that are not Entangled.
/// Deterministic for a given seed regardless of `threads` (0 picks the hardware
/// concurrency).
VolumeEstimate separable_volume_fraction(Alpha alpha, std::uint64_t n_samples, std::uint64_t seed,
                                         double eps = kDefaultBoundaryEps, unsigned threads = 0);

}  // namespace stella
