#include "cattaneo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace cattaneo {
namespace {

double magnitude(double x) { return std::abs(x); }
double magnitude(const Complex& z) { return std::abs(z); }
double magnitude(const DoubleDouble& x) { return std::abs(x.hi); }

bool finite(double x) { return std::isfinite(x); }
bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

template <class T>
struct LU {
  Matrix4<T> a;
  std::array<std::size_t, 4> perm{0, 1, 2, 3};
};

template <class T>
bool lu_factor(LU<T>& lu) {
  auto& a = lu.a;
  for (std::size_t k = 0; k < 4; ++k) {
    std::size_t p = k;
    double best = magnitude(a(k, k));
    for (std::size_t i = k + 1; i < 4; ++i) {
      if (magnitude(a(i, k)) > best) {
        best = magnitude(a(i, k));
        p = i;
      }
    }
    if (best == 0.0) return false;
    if (p != k) {
      for (std::size_t j = 0; j < 4; ++j) std::swap(a(k, j), a(p, j));
      std::swap(lu.perm[k], lu.perm[p]);
    }
    for (std::size_t i = k + 1; i < 4; ++i) {
      const T f = a(i, k) / a(k, k);
      a(i, k) = f;
      for (std::size_t j = k + 1; j < 4; ++j) a(i, j) = a(i, j) - f * a(k, j);
    }
  }
  return true;
}

template <class T>
Vec4<T> lu_solve(const LU<T>& lu, const Vec4<T>& b) {
  Vec4<T> x{};
  for (std::size_t i = 0; i < 4; ++i) x[i] = b[lu.perm[i]];
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] = x[i] - lu.a(i, j) * x[j];
  for (std::size_t ii = 4; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < 4; ++j) x[ii] = x[ii] - lu.a(ii, j) * x[j];
    x[ii] = x[ii] / lu.a(ii, ii);
  }
  return x;
}

template <class T>
double norm_1_impl(const Matrix4<T>& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) s += magnitude(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

template <class T>
Matrix4<T> inverse_impl(const Matrix4<T>& m) {
  LU<T> lu{m, {0, 1, 2, 3}};
  if (!lu_factor(lu)) {
    throw SingularMatrix("matrix is singular to working precision (zero pivot)",
                         std::numeric_limits<double>::infinity());
  }
  Matrix4<T> x;
  for (std::size_t j = 0; j < 4; ++j) {
    Vec4<T> e{};
    e[j] = T(1);
    const Vec4<T> col = lu_solve(lu, e);
    for (std::size_t i = 0; i < 4; ++i) x(i, j) = col[i];
  }
  // One refinement step: X <- X + X (I - m X).
  const Matrix4<T> residual = Matrix4<T>::identity() - m * x;
  Matrix4<T> correction;
  for (std::size_t j = 0; j < 4; ++j) {
    Vec4<T> r{};
    for (std::size_t i = 0; i < 4; ++i) r[i] = residual(i, j);
    const Vec4<T> c = lu_solve(lu, r);
    for (std::size_t i = 0; i < 4; ++i) correction(i, j) = c[i];
  }
  x = x + correction;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (!finite(x(i, j))) {
        throw SingularMatrix("inverse is not finite", std::numeric_limits<double>::infinity());
      }
  return x;
}

// Determinant of the principal-or-not submatrix picked out by `rows` and
// `cols` (same length), by Laplace expansion along the first row.
template <class T, class Get>
T subdeterminant(const Get& get, const std::size_t* rows, const std::size_t* cols, std::size_t n) {
  if (n == 1) return get(rows[0], cols[0]);
  if (n == 2) {
    return get(rows[0], cols[0]) * get(rows[1], cols[1]) - get(rows[0], cols[1]) * get(rows[1], cols[0]);
  }
  T total{};
  std::size_t minor_cols[4];
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != c) minor_cols[k++] = cols[j];
    const T term = get(rows[0], cols[c]) * subdeterminant<T>(get, rows + 1, minor_cols, n - 1);
    total = (c % 2 == 0) ? total + term : total - term;
  }
  return total;
}

}  // namespace

ComplexMatrix to_complex(const RealMatrix& m) {
  ComplexMatrix r;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r(i, j) = m(i, j);
  return r;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix r;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r(i, j) = std::conj(m(j, i));
  return r;
}

RealMatrix inverse(const RealMatrix& m) { return inverse_impl(m); }

ComplexMatrix inverse(const ComplexMatrix& m) { return inverse_impl(m); }

Vec4<DoubleDouble> solve(Matrix4<DoubleDouble> m, Vec4<DoubleDouble> b) {
  LU<DoubleDouble> lu{m, {0, 1, 2, 3}};
  if (!lu_factor(lu)) throw SingularMatrix("double-double system is singular", std::numeric_limits<double>::infinity());
  return lu_solve(lu, b);
}

double norm_1(const RealMatrix& m) { return norm_1_impl(m); }
double norm_1(const ComplexMatrix& m) { return norm_1_impl(m); }

double norm_frobenius(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

std::array<Complex, 4> eigenvalues(const RealMatrix& input) {
  constexpr int n = 4;
  double a[n][n];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = input(i, j);

  // Balance with powers of two so the reduction sees comparable row and
  // column norms.
  constexpr double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) {
          c += std::abs(a[j][i]);
          r += std::abs(a[i][j]);
        }
      if (c != 0.0 && r != 0.0) {
        double g = r / radix;
        double f = 1.0;
        const double s = c + r;
        while (c < g) {
          f *= radix;
          c *= radix * radix;
        }
        g = r * radix;
        while (c > g) {
          f /= radix;
          c /= radix * radix;
        }
        if ((c + r) / f < 0.95 * s) {
          done = false;
          g = 1.0 / f;
          for (int j = 0; j < n; ++j) a[i][j] *= g;
          for (int j = 0; j < n; ++j) a[j][i] *= f;
        }
      }
    }
  }

  // Reduction to upper Hessenberg form by stabilized elementary similarity.
  for (int m = 1; m < n - 1; ++m) {
    double x = 0.0;
    int i = m;
    for (int j = m; j < n; ++j) {
      if (std::abs(a[j][m - 1]) > std::abs(x)) {
        x = a[j][m - 1];
        i = j;
      }
    }
    if (i != m) {
      for (int j = m - 1; j < n; ++j) std::swap(a[i][j], a[m][j]);
      for (int j = 0; j < n; ++j) std::swap(a[j][i], a[j][m]);
    }
    if (x != 0.0) {
      for (i = m + 1; i < n; ++i) {
        double y = a[i][m - 1];
        if (y != 0.0) {
          y /= x;
          a[i][m - 1] = y;
          for (int j = m; j < n; ++j) a[i][j] -= y * a[m][j];
          for (int j = 0; j < n; ++j) a[j][m] += y * a[j][i];
        }
      }
    }
  }
  for (int i = 2; i < n; ++i)
    for (int j = 0; j < i - 1; ++j) a[i][j] = 0.0;

  // Francis double-shift QR on the Hessenberg matrix.
  std::array<Complex, 4> w{};
  const double eps = std::numeric_limits<double>::epsilon();
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a[i][j]);
  int nn = n - 1;
  double t = 0.0;
  double p = 0.0, q = 0.0, r = 0.0, s = 0.0, x = 0.0, y = 0.0, z = 0.0, ww = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l > 0; --l) {
        s = std::abs(a[l - 1][l - 1]) + std::abs(a[l][l]);
        if (s == 0.0) s = anorm;
        if (std::abs(a[l][l - 1]) <= eps * s) {
          a[l][l - 1] = 0.0;
          break;
        }
      }
      x = a[nn][nn];
      if (l == nn) {
        w[nn--] = x + t;
      } else {
        y = a[nn - 1][nn - 1];
        ww = a[nn][nn - 1] * a[nn - 1][nn];
        if (l == nn - 1) {
          p = 0.5 * (y - x);
          q = p * p + ww;
          z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + std::copysign(z, p);
            w[nn - 1] = w[nn] = x + z;
            if (z != 0.0) w[nn] = x - ww / z;
          } else {
            w[nn] = Complex(x + p, -z);
            w[nn - 1] = std::conj(w[nn]);
          }
          nn -= 2;
        } else {
          if (its == 60) throw NumericalFailure("QR iteration did not converge");
          if (its == 10 || its == 20 || its == 40) {
            t += x;
            for (int i = 0; i <= nn; ++i) a[i][i] -= x;
            s = std::abs(a[nn][nn - 1]) + std::abs(a[nn - 1][nn - 2]);
            y = x = 0.75 * s;
            ww = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          for (; m >= l; --m) {
            z = a[m][m];
            r = x - z;
            s = y - z;
            p = (r * s - ww) / a[m + 1][m] + a[m][m + 1];
            q = a[m + 1][m + 1] - z - r - s;
            r = a[m + 2][m + 1];
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(a[m][m - 1]) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(a[m - 1][m - 1]) + std::abs(z) + std::abs(a[m + 1][m + 1]));
            if (u <= eps * v) break;
          }
          for (int i = m; i < nn - 1; ++i) {
            a[i + 2][i] = 0.0;
            if (i != m) a[i + 2][i - 1] = 0.0;
          }
          for (int k = m; k < nn; ++k) {
            if (k != m) {
              p = a[k][k - 1];
              q = a[k + 1][k - 1];
              r = 0.0;
              if (k + 1 != nn) r = a[k + 2][k - 1];
              if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            if ((s = std::copysign(std::sqrt(p * p + q * q + r * r), p)) != 0.0) {
              if (k == m) {
                if (l != m) a[k][k - 1] = -a[k][k - 1];
              } else {
                a[k][k - 1] = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              z = r / s;
              q /= p;
              r /= p;
              for (int j = k; j <= nn; ++j) {
                p = a[k][j] + q * a[k + 1][j];
                if (k + 1 != nn) {
                  p += r * a[k + 2][j];
                  a[k + 2][j] -= p * z;
                }
                a[k + 1][j] -= p * y;
                a[k][j] -= p * x;
              }
              const int mmin = nn < k + 3 ? nn : k + 3;
              for (int i = l; i <= mmin; ++i) {
                p = x * a[i][k] + y * a[i][k + 1];
                if (k + 1 != nn) {
                  p += z * a[i][k + 2];
                  a[i][k + 2] -= p * r;
                }
                a[i][k + 1] -= p * q;
                a[i][k] -= p;
              }
            }
          }
        }
      }
    } while (l + 1 < nn);
  }
  return w;
}

std::array<double, 4> hermitian_eigenvalues(ComplexMatrix h) {
  const double total = norm_frobenius(h);
  std::array<double, 4> out{};
  if (total == 0.0) return out;
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < 4; ++p)
      for (std::size_t q = p + 1; q < 4; ++q) off += 2.0 * std::norm(h(p, q));
    if (std::sqrt(off) <= 1e-14 * total) break;
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        const double r = std::abs(h(p, q));
        if (r == 0.0) continue;
        // Rotate the phase out of h(p,q), then annihilate the real entry.
        const Complex phase = h(p, q) / r;
        for (std::size_t k = 0; k < 4; ++k) {
          h(k, q) *= std::conj(phase);
          h(q, k) *= phase;
        }
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        const double theta = 0.5 * (aqq - app) / r;
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < 4; ++k) {
          const Complex hkp = h(k, p);
          const Complex hkq = h(k, q);
          h(k, p) = c * hkp - s * hkq;
          h(k, q) = s * hkp + c * hkq;
        }
        for (std::size_t k = 0; k < 4; ++k) {
          const Complex hpk = h(p, k);
          const Complex hqk = h(q, k);
          h(p, k) = c * hpk - s * hqk;
          h(q, k) = s * hpk + c * hqk;
        }
        h(p, q) = h(q, p) = 0.0;
        h(p, p) = h(p, p).real();
        h(q, q) = h(q, q).real();
      }
    }
  }
  for (std::size_t i = 0; i < 4; ++i) out[i] = h(i, i).real();
  std::sort(out.begin(), out.end());
  return out;
}

double largest_singular_value(const ComplexMatrix& m) {
  // Scale first so m^H m neither overflows nor underflows.
  double scale = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) scale = std::max(scale, std::abs(m(i, j)));
  if (scale == 0.0) return 0.0;
  if (!std::isfinite(scale)) throw NumericalFailure("singular value of a non-finite matrix");
  const ComplexMatrix ms = (1.0 / scale) * m;
  const ComplexMatrix gram = adjoint(ms) * ms;
  const auto ev = hermitian_eigenvalues(gram);
  return scale * std::sqrt(std::max(ev[3], 0.0));
}

double largest_singular_value(const RealMatrix& m) { return largest_singular_value(to_complex(m)); }

RealMatrix expm(const RealMatrix& a) {
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;
  const double norm = norm_1(a);
  if (!std::isfinite(norm)) throw NumericalFailure("matrix exponential of a non-finite matrix");
  int squarings = 0;
  if (norm > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
  const RealMatrix x = std::ldexp(1.0, -squarings) * a;
  const RealMatrix ident = RealMatrix::identity();
  const RealMatrix x2 = x * x;
  const RealMatrix x4 = x2 * x2;
  const RealMatrix x6 = x4 * x2;
  const RealMatrix u =
      x * (x6 * (b[13] * x6 + b[11] * x4 + b[9] * x2) + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * ident);
  const RealMatrix v = x6 * (b[12] * x6 + b[10] * x4 + b[8] * x2) + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * ident;
  RealMatrix r = inverse(v - u) * (v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (!std::isfinite(r(i, j))) throw NumericalFailure("matrix exponential overflowed");
  return r;
}

std::array<DoubleDouble, 4> characteristic_polynomial(const RealMatrix& m) {
  const auto get = [&m](std::size_t i, std::size_t j) { return DoubleDouble(m(i, j)); };
  std::array<DoubleDouble, 4> k{};
  // Signed sums of principal minors of order 1..4 (elementary symmetric
  // functions of the eigenvalues).
  DoubleDouble e1, e2, e3;
  for (std::size_t i = 0; i < 4; ++i) e1 += get(i, i);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      const std::size_t idx[2] = {i, j};
      e2 += subdeterminant<DoubleDouble>(get, idx, idx, 2);
    }
  for (std::size_t skip = 0; skip < 4; ++skip) {
    std::size_t idx[3];
    std::size_t c = 0;
    for (std::size_t i = 0; i < 4; ++i)
      if (i != skip) idx[c++] = i;
    e3 += subdeterminant<DoubleDouble>(get, idx, idx, 3);
  }
  const std::size_t all[4] = {0, 1, 2, 3};
  const DoubleDouble e4 = subdeterminant<DoubleDouble>(get, all, all, 4);
  k[3] = -e1;
  k[2] = e2;
  k[1] = -e3;
  k[0] = e4;
  return k;
}

ComplexDD shifted_determinant(const RealMatrix& m, Complex z) {
  const auto get = [&m, z](std::size_t i, std::size_t j) {
    if (i != j) return ComplexDD(DoubleDouble(-m(i, j)), DoubleDouble(0.0));
    return ComplexDD(DoubleDouble(z.real()) - DoubleDouble(m(i, i)), DoubleDouble(z.imag()));
  };
  const std::size_t all[4] = {0, 1, 2, 3};
  return subdeterminant<ComplexDD>(get, all, all, 4);
}

Complex shifted_determinant_derivative(const RealMatrix& m, Complex z) {
  const auto get = [&m, z](std::size_t i, std::size_t j) -> Complex {
    return (i == j ? z : Complex(0.0)) - m(i, j);
  };
  Complex total = 0.0;
  for (std::size_t skip = 0; skip < 4; ++skip) {
    std::size_t idx[3];
    std::size_t c = 0;
    for (std::size_t i = 0; i < 4; ++i)
      if (i != skip) idx[c++] = i;
    total += subdeterminant<Complex>(get, idx, idx, 3);
  }
  return total;
}

Assignment best_assignment(const std::array<std::array<double, 4>, 4>& cost) {
  std::array<std::size_t, 4> perm{0, 1, 2, 3};
  Assignment best;
  bool first = true;
  double second = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < 4; ++i) total += cost[i][perm[i]];
    if (first || total < best.cost) {
      if (!first) second = std::min(second, best.cost);
      best.cost = total;
      best.target = perm;
      first = false;
    } else {
      second = std::min(second, total);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  best.runner_up_cost = second;
  return best;
}

}  // namespace cattaneo
