#include "stella/basis_family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stella/errors.hpp"

namespace stella {

namespace {
constexpr double kNegativeWeightTol = 1e-12;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}  // namespace

Alpha::Alpha(double radians) : value_(radians) {
  if (!(radians >= 0.0 && radians <= kQuarterPi)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "alpha = " << radians << " lies outside [0, pi/4]";
    throw RangeError(msg.str());
  }
  cos_ = std::cos(radians);
  sin_ = std::sin(radians);
  cs_ = 0.5 * std::sin(2.0 * radians);
}

Alpha Alpha::from_quarter_pi_fraction(double fraction) { return Alpha(fraction * kQuarterPi); }

SimplexWeights SimplexWeights::make(const std::array<double, 4>& w, double sum_tol) {
  std::array<double, 4> out{};
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!std::isfinite(w[i])) throw ValidationError("weights: non-finite entry");
    if (w[i] < -kNegativeWeightTol) {
      std::ostringstream msg;
      msg << "weights: w" << i + 1 << " = " << w[i] << " is negative";
      throw ValidationError(msg.str());
    }
    out[i] = std::max(w[i], 0.0);
    sum += out[i];
  }
  if (std::abs(sum - 1.0) > sum_tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "weights: sum " << sum << " differs from 1 by more than " << sum_tol;
    throw ValidationError(msg.str());
  }
  for (auto& v : out) v /= sum;
  return SimplexWeights(out);
}

std::array<StateVector, 4> basis_states(Alpha alpha) {
  const double c = alpha.cos();
  const double s = alpha.sin();
  std::array<StateVector, 4> b{};
  b[0][0] = c;
  b[0][3] = s;
  b[1][0] = s;
  b[1][3] = -c;
  b[2][1] = c;
  b[2][2] = s;
  b[3][1] = s;
  b[3][2] = -c;
  return b;
}

ComplexMatrix4 vertex_projector(Alpha alpha, std::size_t vertex) {
  const auto v = basis_states(alpha).at(vertex);
  ComplexMatrix4 p;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) p(i, j) = v[i] * std::conj(v[j]);
  return p;
}

ComplexMatrix4 family_matrix(const std::array<double, 4>& w, Alpha alpha) {
  const double c2 = alpha.cos() * alpha.cos();
  const double s2 = alpha.sin() * alpha.sin();
  const double cs = alpha.cs();
  ComplexMatrix4 m;
  m(0, 0) = w[0] * c2 + w[1] * s2;
  m(3, 3) = w[0] * s2 + w[1] * c2;
  m(0, 3) = m(3, 0) = (w[0] - w[1]) * cs;
  m(1, 1) = w[2] * c2 + w[3] * s2;
  m(2, 2) = w[2] * s2 + w[3] * c2;
  m(1, 2) = m(2, 1) = (w[2] - w[3]) * cs;
  return m;
}

DensityMatrix mixture(const SimplexWeights& weights, Alpha alpha, const Tolerances& tol) {
  return DensityMatrix::validate(family_matrix(weights.values(), alpha), tol);
}

CartesianPoint weights_to_point(const std::array<double, 4>& w) {
  return {0.5 * (w[0] - w[1]), 0.5 * (w[2] - w[3]), kApexHeight * (w[2] + w[3] - w[0] - w[1])};
}

CartesianPoint weights_to_point(const SimplexWeights& weights) { return weights_to_point(weights.values()); }

ChartWeights point_to_weights(const CartesianPoint& p) {
  ChartWeights r;
  const double zt = p.z * kInvSqrt2;
  const double lower = 0.25 - zt;  // (w1 + w2) / 2
  const double upper = 0.25 + zt;  // (w3 + w4) / 2
  r.w = {lower + p.x, lower - p.x, upper + p.y, upper - p.y};
  r.inside = std::all_of(r.w.begin(), r.w.end(), [](double v) { return v >= -kNegativeWeightTol; });
  return r;
}

CorrelationTensor correlation_tensor(const DensityMatrix& rho) {
  CorrelationTensor out;
  for (std::size_t n = 0; n < 3; ++n)
    for (std::size_t m = 0; m < 3; ++m) {
      const ComplexMatrix4 op = tensor_product(pauli(n + 1), pauli(m + 1));
      out.t[n][m] = (rho.matrix() * op).trace().real();
    }
  return out;
}

double basis_entanglement(Alpha alpha) {
  std::array<double, 4> s{};
  for (std::size_t v = 0; v < 4; ++v) s[v] = von_neumann_entropy(partial_trace_b(vertex_projector(alpha, v)));
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  if (*hi - *lo > 1e-12) throw ConsistencyError("basis_entanglement: vertex entropies differ");
  return s[0];
}

std::array<CartesianPoint, 4> tetrahedron_vertices() {
  std::array<CartesianPoint, 4> v;
  for (std::size_t i = 0; i < 4; ++i) {
    std::array<double, 4> w{};
    w[i] = 1.0;
    v[i] = weights_to_point(w);
  }
  return v;
}

}  // namespace stella
