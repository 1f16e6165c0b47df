#include "stella/separability.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <sstream>
#include <thread>
#include <vector>

#include "stella/errors.hpp"
#include "stella/rng.hpp"

namespace stella {

std::string_view to_string(Label label) {
  switch (label) {
    case Label::Separable:
      return "Separable";
    case Label::Entangled:
      return "Entangled";
    case Label::Boundary:
      return "Boundary";
  }
  return "?";
}

std::optional<Label> parse_label(std::string_view text) {
  for (Label l : {Label::Separable, Label::Entangled, Label::Boundary})
    if (to_string(l) == text) return l;
  return std::nullopt;
}

std::string_view to_string(ConeId which) { return which == ConeId::A ? "coneA" : "coneB"; }

BoundaryFactors boundary_factors(const std::array<double, 4>& w, Alpha alpha) {
  const double d12 = w[0] - w[1];
  const double d34 = w[2] - w[3];
  const double skew = alpha.k() * (d12 * d12 - d34 * d34);
  return {w[0] * w[1] + skew, w[2] * w[3] - skew};
}

BoundaryFactors boundary_factors(const SimplexWeights& weights, Alpha alpha) {
  return boundary_factors(weights.values(), alpha);
}

double det_pt(const SimplexWeights& weights, Alpha alpha) { return boundary_factors(weights, alpha).product(); }

Classification classify(const SimplexWeights& weights, Alpha alpha, double eps) {
  if (!(eps > 0.0)) throw ValidationError("classify: eps must be positive");

  Classification out;
  out.factors = boundary_factors(weights, alpha);
  out.witness = eigenvalues_hermitian(partial_transpose(family_matrix(weights.values(), alpha))).min();

  const double closed = out.factors.min();
  bool consistent = true;
  if (alpha.k() == 0.0) {
    // Products of non-negative weights; the factors cannot go negative.
    out.label = Label::Separable;
    consistent = out.witness >= -eps;
  } else if (std::abs(closed) < eps) {
    out.label = Label::Boundary;
  } else if (closed > 0.0) {
    // Each block's smallest eigenvalue is its determinant over its largest
    // eigenvalue, which is at most 1, so the witness is bounded by the factor.
    out.label = Label::Separable;
    consistent = out.witness >= 0.5 * eps;
  } else {
    out.label = Label::Entangled;
    consistent = out.witness <= -0.5 * eps;
  }
  if (!consistent) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "classify: eigenvalue witness " << out.witness << " contradicts factors f1=" << out.factors.f1
        << " f2=" << out.factors.f2;
    throw ConsistencyError(msg.str());
  }
  return out;
}

bool ConeSpec::degenerate() const {
  return coeff_x2 < kDegenerateCoefficient || coeff_y2 < kDegenerateCoefficient;
}

double ConeSpec::residual(const CartesianPoint& p) const {
  const double dz = p.z - apex.z;
  return coeff_x2 * p.x * p.x + coeff_y2 * p.y * p.y - dz * dz;
}

std::array<Plane, 2> ConeSpec::planes() const {
  if (!degenerate()) throw ValidationError("planes: cone is not degenerate");
  // (z - z0)^2 = c v^2  ->  z - m v = z0 for m = +-sqrt(c), v the surviving axis.
  const bool along_y = coeff_x2 < kDegenerateCoefficient;
  const double slope = std::sqrt(along_y ? coeff_y2 : coeff_x2);
  std::array<Plane, 2> out;
  for (int i = 0; i < 2; ++i) {
    const double m = i == 0 ? slope : -slope;
    out[i].normal = along_y ? std::array<double, 3>{0.0, -m, 1.0} : std::array<double, 3>{-m, 0.0, 1.0};
    out[i].offset = apex.z;
  }
  return out;
}

std::array<double, 2> ConeSpec::waist_semi_axes() const {
  const double h = std::abs(apex.z);
  return {h / std::sqrt(coeff_x2), h / std::sqrt(coeff_y2)};
}

ConePair cone_specs(Alpha alpha) {
  const double k = alpha.k();
  const double wide = 2.0 * (1.0 - 4.0 * k);
  const double narrow = 8.0 * k;
  ConePair pair;
  pair.a = {ConeId::A, {0.0, 0.0, kApexHeight}, wide, narrow};
  pair.b = {ConeId::B, {0.0, 0.0, -kApexHeight}, narrow, wide};
  return pair;
}

CartesianPoint cone_point(const ConeSpec& spec, double u, double t) {
  if (spec.degenerate()) {
    throw DegenerateConeError("cone_point: cone is degenerate at this alpha; use ConeSpec::planes()");
  }
  const auto [rx, ry] = spec.waist_semi_axes();
  return {t * rx * std::cos(u), t * ry * std::sin(u), spec.apex.z * (1.0 - t)};
}

double cone_angle_toward(const ConeSpec& spec, double x, double y) {
  const auto [rx, ry] = spec.waist_semi_axes();
  return std::atan2(y / ry, x / rx);
}

bool is_fixed_point(const SimplexWeights& weights, Alpha alpha, double tol) {
  if (alpha.cs() == 0.0) return true;
  const CartesianPoint p = weights_to_point(weights);
  return std::abs(p.x - p.y) <= tol;
}

VolumeEstimate separable_volume_fraction(Alpha alpha, std::uint64_t n_samples, std::uint64_t seed, double eps,
                                         unsigned threads) {
  if (n_samples == 0) throw ValidationError("separable_volume_fraction: need at least one sample");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_samples));

  const rng::CounterRng gen(seed);
  std::vector<std::uint64_t> counts(threads, 0);
  std::vector<std::exception_ptr> failures(threads);
  auto work = [&](unsigned part) noexcept {
    try {
      const std::uint64_t begin = n_samples * part / threads;
      const std::uint64_t end = n_samples * (part + 1) / threads;
      std::uint64_t hits = 0;
      for (std::uint64_t i = begin; i < end; ++i) {
        const auto w = SimplexWeights::make(rng::uniform_simplex(gen, i));
        if (classify(w, alpha, eps).label != Label::Entangled) ++hits;
      }
      counts[part] = hits;
    } catch (...) {
      failures[part] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  VolumeEstimate est;
  est.samples = n_samples;
  est.seed = seed;
  est.separable = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  est.fraction = static_cast<double>(est.separable) / static_cast<double>(n_samples);
  est.std_error = std::sqrt(est.fraction * (1.0 - est.fraction) / static_cast<double>(n_samples));
  return est;
}

}  // namespace stella
