#include "stella/hermitian_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stella/errors.hpp"

namespace stella {

namespace {

template <std::size_t N>
HermiticityDefect<N> defect_of(const SquareMatrix<N>& a) {
  HermiticityDefect<N> worst;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) {
      const double d = std::abs(a(i, j) - std::conj(a(j, i)));
      if (d > worst.magnitude || std::isnan(d)) {
        worst = {std::isnan(d) ? std::numeric_limits<double>::infinity() : d, i, j};
      }
    }
  return worst;
}

template <std::size_t N>
void require_hermitian_impl(const SquareMatrix<N>& a, double tol, const char* what) {
  if (!a.all_finite()) {
    throw ValidationError(std::string(what) + ": non-finite entry");
  }
  const auto d = defect_of(a);
  if (d.magnitude > tol) {
    std::ostringstream msg;
    msg << what << ": not Hermitian at entry (" << d.row + 1 << "," << d.col + 1
        << "), |A - A^dagger| = " << d.magnitude << " > " << tol;
    throw ValidationError(msg.str());
  }
}

// Composite index (m, mu) -> 2 * m + mu.
constexpr std::size_t composite(std::size_t m, std::size_t mu) { return 2 * m + mu; }

}  // namespace

HermiticityDefect<4> hermiticity_defect(const ComplexMatrix4& a) { return defect_of(a); }
HermiticityDefect<2> hermiticity_defect(const Matrix2& a) { return defect_of(a); }

void require_hermitian(const ComplexMatrix4& a, double tol, const char* what) {
  require_hermitian_impl(a, tol, what);
}
void require_hermitian(const Matrix2& a, double tol, const char* what) {
  require_hermitian_impl(a, tol, what);
}

DensityMatrix DensityMatrix::validate(const ComplexMatrix4& m, const Tolerances& tol) {
  require_hermitian(m, tol.hermitian, "density matrix");
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream msg;
    msg << "density matrix: trace " << tr.real() << " differs from 1 by more than " << tol.trace;
    throw ValidationError(msg.str());
  }
  const Spectrum4 spec = eigenvalues_hermitian(m, tol.hermitian);
  if (spec.min() < -tol.psd) {
    std::ostringstream msg;
    msg << "density matrix: negative eigenvalue " << spec.min();
    throw ValidationError(msg.str());
  }
  return DensityMatrix(m, spec);
}

const Matrix2& pauli(std::size_t index) {
  static const std::array<Matrix2, 4> kPauli = [] {
    std::array<Matrix2, 4> p;
    p[0] = Matrix2::identity();
    p[1](0, 1) = 1.0;
    p[1](1, 0) = 1.0;
    p[2](0, 1) = Complex(0.0, -1.0);
    p[2](1, 0) = Complex(0.0, 1.0);
    p[3](0, 0) = 1.0;
    p[3](1, 1) = -1.0;
    return p;
  }();
  return kPauli.at(index);
}

ComplexMatrix4 tensor_product(const Matrix2& a, const Matrix2& b) {
  ComplexMatrix4 r;
  for (std::size_t m = 0; m < 2; ++m)
    for (std::size_t mu = 0; mu < 2; ++mu)
      for (std::size_t n = 0; n < 2; ++n)
        for (std::size_t nu = 0; nu < 2; ++nu) r(composite(m, mu), composite(n, nu)) = a(m, n) * b(mu, nu);
  return r;
}

ComplexMatrix4 partial_transpose(const ComplexMatrix4& rho) {
  ComplexMatrix4 r;
  for (std::size_t m = 0; m < 2; ++m)
    for (std::size_t mu = 0; mu < 2; ++mu)
      for (std::size_t n = 0; n < 2; ++n)
        for (std::size_t nu = 0; nu < 2; ++nu) r(composite(m, mu), composite(n, nu)) = rho(composite(m, nu), composite(n, mu));
  return r;
}

Matrix2 partial_trace_b(const ComplexMatrix4& rho) {
  Matrix2 r;
  for (std::size_t m = 0; m < 2; ++m)
    for (std::size_t n = 0; n < 2; ++n) r(m, n) = rho(composite(m, 0), composite(n, 0)) + rho(composite(m, 1), composite(n, 1));
  return r;
}

double hs_distance(const ComplexMatrix4& a, const ComplexMatrix4& b, double hermitian_tol) {
  require_hermitian(a, hermitian_tol, "hs_distance: first argument");
  require_hermitian(b, hermitian_tol, "hs_distance: second argument");
  // Tr(M^2) = sum |M_ij|^2 for Hermitian M.
  double sq = 0.0;
  for (std::size_t i = 0; i < 16; ++i) sq += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(0.5 * sq);
}

Spectrum4 eigenvalues_hermitian(const ComplexMatrix4& a, double hermitian_tol) {
  require_hermitian(a, hermitian_tol, "eigenvalues_hermitian");
  Spectrum4 out;
  if (a.is_real()) {
    // The embedding is block diagonal with two copies of Re(a); one copy suffices.
    std::array<double, 16> re{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) re[i * 4 + j] = 0.5 * (a(i, j).real() + a(j, i).real());
    out.values = detail::jacobi_eigenvalues<4>(re);
    return out;
  }
  std::array<double, 64> emb{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      // Symmetrize so the embedding is exactly symmetric.
      const double re = 0.5 * (a(i, j).real() + a(j, i).real());
      const double im = 0.5 * (a(i, j).imag() - a(j, i).imag());
      emb[i * 8 + j] = re;
      emb[(i + 4) * 8 + (j + 4)] = re;
      emb[i * 8 + (j + 4)] = -im;
      emb[(i + 4) * 8 + j] = im;
    }
  const auto doubled = detail::jacobi_eigenvalues<8>(emb);
  for (std::size_t k = 0; k < 4; ++k) out.values[k] = 0.5 * (doubled[2 * k] + doubled[2 * k + 1]);
  return out;
}

std::array<double, 2> eigenvalues_hermitian(const Matrix2& a, double hermitian_tol) {
  require_hermitian(a, hermitian_tol, "eigenvalues_hermitian");
  const double p = a(0, 0).real();
  const double q = a(1, 1).real();
  const double mean = 0.5 * (p + q);
  const double radius = std::hypot(0.5 * (p - q), std::abs(a(0, 1)));
  return {mean - radius, mean + radius};
}

double von_neumann_entropy(const Matrix2& rho_a, const Tolerances& tol) {
  require_hermitian(rho_a, tol.hermitian, "von_neumann_entropy");
  const Complex tr = rho_a.trace();
  if (std::abs(tr - 1.0) > tol.psd) {
    throw ValidationError("von_neumann_entropy: reduced state does not have unit trace");
  }
  const auto ev = eigenvalues_hermitian(rho_a, tol.hermitian);
  if (ev[0] < -tol.psd) {
    throw ValidationError("von_neumann_entropy: reduced state has a negative eigenvalue");
  }
  double s = 0.0;
  for (double lambda : ev) {
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return s;
}

std::array<double, 256> pt_superoperator_matrix() {
  std::array<ComplexMatrix4, 16> basis;
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = 0; nu < 4; ++nu) basis[4 * mu + nu] = tensor_product(pauli(mu), pauli(nu));

  std::array<double, 256> m{};
  for (std::size_t c = 0; c < 16; ++c) {
    const ComplexMatrix4 image = partial_transpose(basis[c]);
    for (std::size_t r = 0; r < 16; ++r) {
      // Basis elements are Hermitian with Tr(B_r B_c) = 4 delta_rc.
      m[r * 16 + c] = 0.25 * (basis[r] * image).trace().real();
    }
  }
  return m;
}

ReflectionSpectrum pt_superoperator_spectrum() {
  const auto ev = detail::jacobi_eigenvalues<16>(pt_superoperator_matrix());
  ReflectionSpectrum out;
  for (double lambda : ev) {
    if (std::abs(lambda - 1.0) < 1e-12) {
      ++out.plus_dim;
    } else if (std::abs(lambda + 1.0) < 1e-12) {
      ++out.minus_dim;
    } else {
      throw ConsistencyError("pt_superoperator_spectrum: eigenvalue is not +-1");
    }
  }
  return out;
}

namespace detail {

template <std::size_t N>
std::array<double, N> jacobi_eigenvalues(std::array<double, N * N> a, double off_tol) {
  auto at = [&a](std::size_t i, std::size_t j) -> double& { return a[i * N + j]; };
  constexpr int kMaxSweeps = 64;
  for (int sweep = 0;; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        if (i != j) off += at(i, j) * at(i, j);
    if (std::sqrt(off) < off_tol) break;
    if (sweep == kMaxSweeps) throw ConsistencyError("jacobi_eigenvalues: no convergence");

    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }
  std::array<double, N> ev{};
  for (std::size_t i = 0; i < N; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

template std::array<double, 4> jacobi_eigenvalues<4>(std::array<double, 16>, double);
template std::array<double, 8> jacobi_eigenvalues<8>(std::array<double, 64>, double);
template std::array<double, 16> jacobi_eigenvalues<16>(std::array<double, 256>, double);

}  // namespace detail

}  // namespace stella
