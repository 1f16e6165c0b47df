#pragma once

// Dense 2x2 / 4x4 complex matrix kernel for two-qubit states.
//
// Composite index order for 4x4 matrices (subsystem a is the slow index):
//   0 = |up,up>   1 = |up,down>   2 = |down,up>   3 = |down,down>

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>

namespace stella {

using Complex = std::complex<double>;

/// Global numeric tolerances. Defaults are the library-wide constants; the CLI
/// can override them per invocation.
struct Tolerances {
  double hermitian = 1e-12;  ///< max |A - A^dagger| entry
  double trace = 1e-12;      ///< |Tr A - 1|
  double psd = 1e-10;        ///< smallest admissible eigenvalue is -psd
};

template <std::size_t N>
class SquareMatrix {
 public:
  static constexpr std::size_t kDim = N;

  constexpr SquareMatrix() = default;

  static constexpr SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  constexpr Complex& operator()(std::size_t row, std::size_t col) { return data_[row * N + col]; }
  constexpr const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * N + col];
  }

  constexpr const std::array<Complex, N * N>& data() const { return data_; }

  Complex trace() const {
    Complex t{};
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  SquareMatrix adjoint() const {
    SquareMatrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
  }

  bool all_finite() const;

  /// True when every imaginary part is exactly zero.
  bool is_real() const {
    for (const auto& z : data_)
      if (z.imag() != 0.0) return false;
    return true;
  }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] += o.data_[i];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  SquareMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(SquareMatrix a, Complex s) { return a *= s; }
  friend SquareMatrix operator*(Complex s, SquareMatrix a) { return a *= s; }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::array<Complex, N * N> data_{};
};

template <std::size_t N>
bool SquareMatrix<N>::all_finite() const {
  for (const auto& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

using Matrix2 = SquareMatrix<2>;
using ComplexMatrix4 = SquareMatrix<4>;

/// Largest |A(i,j) - conj(A(j,i))| together with the entry where it occurs.
template <std::size_t N>
struct HermiticityDefect {
  double magnitude = 0.0;
  std::size_t row = 0;
  std::size_t col = 0;
};

HermiticityDefect<4> hermiticity_defect(const ComplexMatrix4& a);
HermiticityDefect<2> hermiticity_defect(const Matrix2& a);

/// Throws ValidationError naming the worst entry if `a` is not Hermitian within `tol`
/// or has a non-finite entry.
void require_hermitian(const ComplexMatrix4& a, double tol, const char* what = "matrix");
void require_hermitian(const Matrix2& a, double tol, const char* what = "matrix");

/// Eigenvalues of a Hermitian 4x4 matrix, ascending.
struct Spectrum4 {
  std::array<double, 4> values{};

  double min() const { return values.front(); }
  double max() const { return values.back(); }
  double sum() const { return values[0] + values[1] + values[2] + values[3]; }
  double product() const { return values[0] * values[1] * values[2] * values[3]; }
};

/// Validated two-qubit state: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  /// Throws ValidationError when any invariant fails.
  static DensityMatrix validate(const ComplexMatrix4& m, const Tolerances& tol = {});

  const ComplexMatrix4& matrix() const { return matrix_; }
  const Spectrum4& spectrum() const { return spectrum_; }

 private:
  DensityMatrix(const ComplexMatrix4& m, const Spectrum4& s) : matrix_(m), spectrum_(s) {}

  ComplexMatrix4 matrix_;
  Spectrum4 spectrum_;
};

/// Pauli matrices, index 0 is the identity, then x, y, z.
const Matrix2& pauli(std::size_t index);

/// Kronecker product; `a` acts on the slow index.
ComplexMatrix4 tensor_product(const Matrix2& a, const Matrix2& b);

/// Transpose on subsystem b: result(m mu, n nu) = rho(m nu, n mu).
/// Pure entry permutation, so applying it twice is exact.
ComplexMatrix4 partial_transpose(const ComplexMatrix4& rho);

/// Trace over subsystem b: result(m, n) = sum_mu rho(m mu, n mu).
Matrix2 partial_trace_b(const ComplexMatrix4& rho);

/// Normalized Hilbert-Schmidt distance sqrt(Tr((a-b)^2) / 2).
double hs_distance(const ComplexMatrix4& a, const ComplexMatrix4& b, double hermitian_tol = Tolerances{}.hermitian);

/// All four eigenvalues, ascending. Cyclic Jacobi sweeps on the real symmetric
/// embedding [[Re, -Im], [Im, Re]] until the off-diagonal norm drops below 1e-14.
Spectrum4 eigenvalues_hermitian(const ComplexMatrix4& a, double hermitian_tol = Tolerances{}.hermitian);

/// Ascending eigenvalues of a 2x2 Hermitian matrix (closed form).
std::array<double, 2> eigenvalues_hermitian(const Matrix2& a, double hermitian_tol = Tolerances{}.hermitian);

/// -Tr(rho ln rho) in nats, using 0 ln 0 = 0 and eigenvalues clamped to [0, 1].
double von_neumann_entropy(const Matrix2& rho_a, const Tolerances& tol = {});

/// Matrix of the partial transpose acting on the 16-dimensional real space of
/// Hermitian 4x4 matrices, expanded in the sigma_mu (x) sigma_nu basis.
/// Row-major, row/column index = 4 * mu + nu.
std::array<double, 256> pt_superoperator_matrix();

struct ReflectionSpectrum {
  int plus_dim = 0;
  int minus_dim = 0;
};

/// Dimensions of the +1 and -1 eigenspaces of pt_superoperator_matrix().
ReflectionSpectrum pt_superoperator_spectrum();

namespace detail {

/// In-place cyclic Jacobi on a symmetric N x N row-major matrix. Returns the
/// eigenvalues ascending. Iterates until the off-diagonal Frobenius norm is
/// below `off_tol`.
template <std::size_t N>
std::array<double, N> jacobi_eigenvalues(std::array<double, N * N> a, double off_tol = 1e-14);

extern template std::array<double, 4> jacobi_eigenvalues<4>(std::array<double, 16>, double);
extern template std::array<double, 8> jacobi_eigenvalues<8>(std::array<double, 64>, double);
extern template std::array<double, 16> jacobi_eigenvalues<16>(std::array<double, 256>, double);

}  // namespace detail

}  // namespace stella
