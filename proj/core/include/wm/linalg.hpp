#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "wm/common.hpp"

// Small dense linear algebra, templated on the scalar type so the same
// routines run on plain doubles and on forward-mode dual numbers. State and
// observation dimensions in this library stay in the single digits, which a
// straightforward implementation handles fine.
namespace wm::linalg {

template <class S>
using Vec = std::vector<S>;

template <class S>
class Mat {
public:
  Mat() = default;
  Mat(std::size_t r, std::size_t c, S fill = S(0)) : rows_(r), cols_(c), a_(r * c, fill) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  S& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::vector<S>& data() { return a_; }
  const std::vector<S>& data() const { return a_; }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<S> a_;
};

template <class S>
Mat<S> operator*(const Mat<S>& x, const Mat<S>& y) {
  Mat<S> z(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k) {
      const S xik = x(i, k);
      for (std::size_t j = 0; j < y.cols(); ++j) z(i, j) += xik * y(k, j);
    }
  return z;
}

template <class S>
Vec<S> operator*(const Mat<S>& x, const Vec<S>& v) {
  Vec<S> out(x.rows(), S(0));
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out[i] += x(i, j) * v[j];
  return out;
}

template <class S>
Mat<S> operator+(const Mat<S>& x, const Mat<S>& y) {
  Mat<S> z = x;
  for (std::size_t i = 0; i < z.data().size(); ++i) z.data()[i] += y.data()[i];
  return z;
}

template <class S>
Mat<S> operator-(const Mat<S>& x, const Mat<S>& y) {
  Mat<S> z = x;
  for (std::size_t i = 0; i < z.data().size(); ++i) z.data()[i] -= y.data()[i];
  return z;
}

template <class S>
Mat<S> operator*(S c, const Mat<S>& x) {
  Mat<S> z = x;
  for (auto& e : z.data()) e = c * e;
  return z;
}

template <class S>
Vec<S> operator+(const Vec<S>& x, const Vec<S>& y) {
  Vec<S> z = x;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += y[i];
  return z;
}

template <class S>
Vec<S> operator-(const Vec<S>& x, const Vec<S>& y) {
  Vec<S> z = x;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] -= y[i];
  return z;
}

template <class S>
Vec<S> scale(S c, const Vec<S>& x) {
  Vec<S> z = x;
  for (auto& e : z) e = c * e;
  return z;
}

template <class S>
S dot(const Vec<S>& x, const Vec<S>& y) {
  S s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

template <class S>
Mat<S> transpose(const Mat<S>& x) {
  Mat<S> z(x.cols(), x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) z(j, i) = x(i, j);
  return z;
}

template <class S>
Mat<S> outer(const Vec<S>& x, const Vec<S>& y) {
  Mat<S> z(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) z(i, j) = x[i] * y[j];
  return z;
}

template <class S>
void symmetrise(Mat<S>& x) {
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = i + 1; j < x.cols(); ++j) {
      S m = (x(i, j) + x(j, i)) / S(2);
      x(i, j) = m;
      x(j, i) = m;
    }
}

// Lower-triangular Cholesky factor; nullopt if not positive definite.
template <class S>
std::optional<Mat<S>> cholesky(const Mat<S>& a) {
  using std::sqrt;
  const std::size_t n = a.rows();
  Mat<S> l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    S d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > S(0))) return std::nullopt;
    l(j, j) = sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      S s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

template <class S>
Vec<S> chol_solve(const Mat<S>& l, Vec<S> b) {
  const std::size_t n = l.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) b[i] -= l(i, k) * b[k];
    b[i] = b[i] / l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) b[i] -= l(k, i) * b[k];
    b[i] = b[i] / l(i, i);
  }
  return b;
}

template <class S>
Mat<S> chol_solve_mat(const Mat<S>& l, const Mat<S>& b) {
  Mat<S> x(b.rows(), b.cols());
  Vec<S> col(b.rows());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
    Vec<S> sol = chol_solve(l, col);
    for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = sol[i];
  }
  return x;
}

template <class S>
Mat<S> chol_inverse(const Mat<S>& l) {
  return chol_solve_mat(l, Mat<S>::identity(l.rows()));
}

template <class S>
S chol_logdet(const Mat<S>& l) {
  using std::log;
  S s(0);
  for (std::size_t i = 0; i < l.rows(); ++i) s += log(l(i, i));
  return S(2) * s;
}

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Returns (eigenvalues, column eigenvectors).
inline std::pair<Vec<double>, Mat<double>> eigen_sym(Mat<double> a) {
  const std::size_t n = a.rows();
  Mat<double> v = Mat<double>::identity(n);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  Vec<double> evals(n);
  for (std::size_t i = 0; i < n; ++i) evals[i] = a(i, i);
  return {evals, v};
}

// Nearest PSD projection: clamp negative eigenvalues at `floor`.
inline Mat<double> project_psd(const Mat<double>& a, double floor = 0.0) {
  auto [evals, evecs] = eigen_sym(a);
  const std::size_t n = a.rows();
  Mat<double> out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = std::max(evals[k], floor);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += lam * evecs(i, k) * evecs(j, k);
  }
  symmetrise(out);
  return out;
}

// Forward-mode dual number carrying a fixed number of derivative lanes, so
// one templated pass differentiates with respect to several parameters.
inline constexpr std::size_t kDualLanes = 8;

struct Dual {
  double v = 0.0;
  std::array<double, kDualLanes> d{};

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit by design
  static Dual seeded(double value, std::size_t lane) {
    Dual x(value);
    x.d[lane] = 1.0;
    return x;
  }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (std::size_t i = 0; i < kDualLanes; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (std::size_t i = 0; i < kDualLanes; ++i) d[i] -= o.d[i];
    return *this;
  }
};

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator-(const Dual& a) {
  Dual z;
  z.v = -a.v;
  for (std::size_t i = 0; i < kDualLanes; ++i) z.d[i] = -a.d[i];
  return z;
}
inline Dual operator*(const Dual& a, const Dual& b) {
  Dual z;
  z.v = a.v * b.v;
  for (std::size_t i = 0; i < kDualLanes; ++i) z.d[i] = a.d[i] * b.v + a.v * b.d[i];
  return z;
}
inline Dual operator/(const Dual& a, const Dual& b) {
  Dual z;
  z.v = a.v / b.v;
  const double inv2 = 1.0 / (b.v * b.v);
  for (std::size_t i = 0; i < kDualLanes; ++i)
    z.d[i] = (a.d[i] * b.v - a.v * b.d[i]) * inv2;
  return z;
}
inline Dual& operator*=(Dual& a, const Dual& b) { return a = a * b; }
inline Dual& operator/=(Dual& a, const Dual& b) { return a = a / b; }

inline bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
inline bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
inline bool operator>=(const Dual& a, const Dual& b) { return a.v >= b.v; }
inline bool operator<=(const Dual& a, const Dual& b) { return a.v <= b.v; }

inline Dual exp(const Dual& a) {
  Dual z;
  z.v = std::exp(a.v);
  for (std::size_t i = 0; i < kDualLanes; ++i) z.d[i] = z.v * a.d[i];
  return z;
}
inline Dual log(const Dual& a) {
  Dual z;
  z.v = std::log(a.v);
  const double inv = 1.0 / a.v;
  for (std::size_t i = 0; i < kDualLanes; ++i) z.d[i] = inv * a.d[i];
  return z;
}
inline Dual sqrt(const Dual& a) {
  Dual z;
  z.v = std::sqrt(a.v);
  const double g = 0.5 / z.v;
  for (std::size_t i = 0; i < kDualLanes; ++i) z.d[i] = g * a.d[i];
  return z;
}

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

}  // namespace wm::linalg
