#pragma once

// Fixed-size 4x4 dense kernels. Every per-mode object in this library is a
// 4x4 matrix, so nothing here is written for general dimension.

#include <array>
#include <complex>
#include <cstddef>

#include "cattaneo/double_double.hpp"
#include "cattaneo/errors.hpp"

namespace cattaneo {

using Complex = std::complex<double>;

template <class T>
using Vec4 = std::array<T, 4>;

template <class T>
class Matrix4 {
 public:
  constexpr Matrix4() : a_{} {}

  static constexpr Matrix4 identity() {
    Matrix4 m;
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = T(1);
    return m;
  }

  constexpr T& operator()(std::size_t i, std::size_t j) { return a_[i][j]; }
  constexpr const T& operator()(std::size_t i, std::size_t j) const { return a_[i][j]; }

  friend Matrix4 operator*(const Matrix4& x, const Matrix4& y) {
    Matrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k) {
        const T xik = x(i, k);
        for (std::size_t j = 0; j < 4; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }

  friend Vec4<T> operator*(const Matrix4& x, const Vec4<T>& v) {
    Vec4<T> r{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) r[i] += x(i, j) * v[j];
    return r;
  }

  friend Matrix4 operator+(Matrix4 x, const Matrix4& y) {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) x(i, j) += y(i, j);
    return x;
  }

  friend Matrix4 operator-(Matrix4 x, const Matrix4& y) {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) x(i, j) -= y(i, j);
    return x;
  }

  friend Matrix4 operator*(T s, Matrix4 x) {
    for (auto& row : x.a_)
      for (auto& e : row) e *= s;
    return x;
  }

  [[nodiscard]] T trace() const { return a_[0][0] + a_[1][1] + a_[2][2] + a_[3][3]; }

 private:
  std::array<std::array<T, 4>, 4> a_;
};

using RealMatrix = Matrix4<double>;
using ComplexMatrix = Matrix4<Complex>;

ComplexMatrix to_complex(const RealMatrix& m);
ComplexMatrix adjoint(const ComplexMatrix& m);

// Partial-pivot LU inverse followed by one step of iterative refinement.
// Throws SingularMatrix (carrying a 1-norm condition estimate) when a pivot
// vanishes or the refined inverse is not finite.
RealMatrix inverse(const RealMatrix& m);
ComplexMatrix inverse(const ComplexMatrix& m);

// Solves m x = b with partial pivoting in double-double arithmetic.
Vec4<DoubleDouble> solve(Matrix4<DoubleDouble> m, Vec4<DoubleDouble> b);

double norm_1(const RealMatrix& m);
double norm_1(const ComplexMatrix& m);
double norm_frobenius(const ComplexMatrix& m);

// Eigenvalues of a real matrix: balancing, Hessenberg reduction and Francis
// double-shift QR. Complex pairs are returned as exact conjugates.
std::array<Complex, 4> eigenvalues(const RealMatrix& m);

// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
// ascending. Off-diagonal mass is driven below 1e-14 of the Frobenius norm.
std::array<double, 4> hermitian_eigenvalues(ComplexMatrix h);

// Largest singular value, from the Hermitian eigenproblem of m^H m.
double largest_singular_value(const ComplexMatrix& m);
double largest_singular_value(const RealMatrix& m);

// exp(m) by scaling and squaring with the degree-13 Pade approximant.
RealMatrix expm(const RealMatrix& m);

// Monic characteristic polynomial det(x I - m) = x^4 + k[3] x^3 + ... + k[0],
// computed from signed sums of principal minors in double-double.
std::array<DoubleDouble, 4> characteristic_polynomial(const RealMatrix& m);

// det(z I - m) in double-double complex arithmetic (Laplace expansion over
// complementary 2x2 minors), and its derivative in z (sum of the principal
// 3x3 minors of z I - m) in double.
ComplexDD shifted_determinant(const RealMatrix& m, Complex z);
Complex shifted_determinant_derivative(const RealMatrix& m, Complex z);

// Exhaustive search over the 24 bijections of four items. cost[i][j] is the
// price of sending i to j; the first permutation in lexicographic order wins
// ties.
struct Assignment {
  std::array<std::size_t, 4> target{};
  double cost = 0.0;
  double runner_up_cost = 0.0;  // cheapest cost among the other 23
};

Assignment best_assignment(const std::array<std::array<double, 4>, 4>& cost);

}  // namespace cattaneo
