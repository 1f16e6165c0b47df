#pragma once

// The one-parameter family of orthonormal two-qubit bases
//
//   |1> = c|uu> + s|dd>    |2> = s|uu> - c|dd>
//   |3> = c|ud> + s|du>    |4> = s|ud> - c|du>       c = cos(alpha), s = sin(alpha)
//
// for 0 <= alpha <= pi/4, the tetrahedron of their mixtures, and the
// Cartesian chart x = (w1-w2)/2, y = (w3-w4)/2, z = (w3+w4-w1-w2)/(2 sqrt 2).

#include <array>
#include <numbers>

#include "stella/hermitian_core.hpp"

namespace stella {

inline constexpr double kQuarterPi = std::numbers::pi / 4.0;
/// Height of the tetrahedron's top edge above the barycenter: 1 / (2 sqrt 2).
inline constexpr double kApexHeight = 1.0 / (2.0 * std::numbers::sqrt2);

/// Basis angle in radians, restricted to [0, pi/4].
class Alpha {
 public:
  /// Throws RangeError outside [0, pi/4]. No clamping.
  explicit Alpha(double radians);

  /// alpha = fraction * pi / 4.
  static Alpha from_quarter_pi_fraction(double fraction);

  double value() const { return value_; }
  double cos() const { return cos_; }
  double sin() const { return sin_; }
  /// cos(alpha) sin(alpha) = sin(2 alpha) / 2.
  double cs() const { return cs_; }
  /// cos^2(alpha) sin^2(alpha); exactly 0 at alpha = 0 and exactly 1/4 at alpha = pi/4.
  double k() const { return cs_ * cs_; }

 private:
  double value_;
  double cos_;
  double sin_;
  double cs_;
};

/// Mixture weights on the probability simplex.
class SimplexWeights {
 public:
  /// Entries >= -1e-12 are clamped to 0, the sum must be within `sum_tol` of 1, and
  /// the result is renormalized by its sum. Throws ValidationError otherwise.
  static SimplexWeights make(const std::array<double, 4>& w, double sum_tol = 1e-10);

  double operator[](std::size_t i) const { return w_[i]; }
  const std::array<double, 4>& values() const { return w_; }

 private:
  explicit SimplexWeights(const std::array<double, 4>& w) : w_(w) {}
  std::array<double, 4> w_;
};

struct CartesianPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const CartesianPoint&, const CartesianPoint&) = default;
};

/// Result of the inverse chart. Weights always sum to 1 but may leave [0, 1].
struct ChartWeights {
  std::array<double, 4> w{};
  bool inside = false;  ///< every weight >= -1e-12
};

using StateVector = std::array<Complex, 4>;

/// Pauli expectation values T[n][m] = Tr(rho sigma_n (x) sigma_m), n, m in {x, y, z}.
struct CorrelationTensor {
  std::array<std::array<double, 3>, 3> t{};
};

/// The four basis vectors, signs as in the family definition above.
std::array<StateVector, 4> basis_states(Alpha alpha);

/// |i><i| for vertex index 0..3.
ComplexMatrix4 vertex_projector(Alpha alpha, std::size_t vertex);

/// Closed-form sum_i w_i |i><i| for arbitrary real coefficients (no validation,
/// coefficients may lie outside the simplex).
ComplexMatrix4 family_matrix(const std::array<double, 4>& w, Alpha alpha);

/// Validated mixture of the vertex projectors.
DensityMatrix mixture(const SimplexWeights& weights, Alpha alpha, const Tolerances& tol = {});

CartesianPoint weights_to_point(const SimplexWeights& weights);
/// Affine chart on unconstrained coefficients.
CartesianPoint weights_to_point(const std::array<double, 4>& w);

ChartWeights point_to_weights(const CartesianPoint& p);

CorrelationTensor correlation_tensor(const DensityMatrix& rho);

/// Reduced-state entropy (nats) shared by all four basis vertices. Evaluated from
/// each vertex projector; throws ConsistencyError if the four disagree beyond 1e-12.
double basis_entanglement(Alpha alpha);

/// The four tetrahedron vertices in the Cartesian chart.
std::array<CartesianPoint, 4> tetrahedron_vertices();

}  // namespace stella
