#include "aloha/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aloha::linalg {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double Matrix::symmetry_defect() const {
  if (!square()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - (*this)(c, r)));
  return worst;
}

std::vector<double> symmetric_eigenvalues(Matrix a) {
  if (!a.square()) throw std::invalid_argument("symmetric_eigenvalues: square matrix required");
  const std::size_t n = a.rows();
  if (n == 0) return {};

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      diag += a(p, p) * a(p, p);
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (std::sqrt(off) <= 1e-14 * std::max(1.0, std::sqrt(diag))) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

namespace {

// Householder similarity reduction to upper Hessenberg form, in place.
void hessenberg_reduce(Matrix& a) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<double> v(n, 0.0);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double scale = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
    if (scale == 0.0) continue;

    double h = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k) / scale;
      h += v[i] * v[i];
    }
    const double f = v[k + 1];
    const double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
    h -= f * g;  // now h = u.u / 2 for u = v with v[k+1] -= g
    v[k + 1] = f - g;

    // A <- P A with P = I - u u^T / h
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += v[i] * a(i, j);
      s /= h;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
    }
    // A <- A P
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      s /= h;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
    }

    a(k + 1, k) = scale * g;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(Matrix a) {
  if (!a.square()) throw std::invalid_argument("eigenvalues: square matrix required");
  const int n = static_cast<int>(a.rows());
  std::vector<std::complex<double>> out;
  if (n == 0) return out;
  if (n == 1) {
    out.emplace_back(a(0, 0), 0.0);
    return out;
  }
  hessenberg_reduce(a);

  const double eps = std::numeric_limits<double>::epsilon();
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));
  if (anorm == 0.0) {
    out.assign(n, {0.0, 0.0});
    return out;
  }

  int high = n - 1;
  double shift_sum = 0.0;  // accumulated exceptional shifts
  int its = 0;
  while (high >= 0) {
    // Split off converged 1x1 / 2x2 trailing blocks.
    int l = high;
    while (l > 0) {
      double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
      if (s == 0.0) s = anorm;
      if (std::abs(a(l, l - 1)) <= eps * s) {
        a(l, l - 1) = 0.0;
        break;
      }
      --l;
    }

    if (l == high) {
      out.emplace_back(a(high, high) + shift_sum, 0.0);
      --high;
      its = 0;
      continue;
    }
    if (l == high - 1) {
      const double p = 0.5 * (a(high - 1, high - 1) - a(high, high));
      const double w = a(high, high - 1) * a(high - 1, high);
      const double disc = p * p + w;
      const double x = a(high, high) + shift_sum;
      if (disc >= 0.0) {
        double z = std::sqrt(disc);
        z = p + std::copysign(z, p);
        out.emplace_back(x + z, 0.0);
        out.emplace_back(z != 0.0 ? x - w / z : x + z, 0.0);
      } else {
        const double z = std::sqrt(-disc);
        out.emplace_back(x + p, z);
        out.emplace_back(x + p, -z);
      }
      high -= 2;
      its = 0;
      continue;
    }

    if (its == 30) throw std::runtime_error("qr eigenvalue iteration did not converge");

    double x = a(high, high);
    double y = a(high - 1, high - 1);
    double w = a(high, high - 1) * a(high - 1, high);
    if (its == 10 || its == 20) {
      // Exceptional shift to break symmetry-induced stalls.
      shift_sum += x;
      for (int i = 0; i <= high; ++i) a(i, i) -= x;
      const double s = std::abs(a(high, high - 1)) + std::abs(a(high - 1, high - 2));
      x = y = 0.75 * s;
      w = -0.4375 * s * s;
    }
    ++its;

    // Start row of the implicit double-shift sweep.
    int m = high - 2;
    double p = 0.0, q = 0.0, r = 0.0;
    for (; m >= l; --m) {
      const double z = a(m, m);
      const double rr = x - z;
      const double ss = y - z;
      p = (rr * ss - w) / a(m + 1, m) + a(m, m + 1);
      q = a(m + 1, m + 1) - z - rr - ss;
      r = a(m + 2, m + 1);
      const double sc = std::abs(p) + std::abs(q) + std::abs(r);
      p /= sc;
      q /= sc;
      r /= sc;
      if (m == l) break;
      const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
      const double v =
          std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
      if (u <= eps * v) break;
    }
    for (int i = m + 2; i <= high; ++i) {
      a(i, i - 2) = 0.0;
      if (i > m + 2) a(i, i - 3) = 0.0;
    }

    // Chase the bulge down the active block.
    for (int k = m; k <= high - 1; ++k) {
      const bool notlast = k != high - 1;
      if (k != m) {
        p = a(k, k - 1);
        q = a(k + 1, k - 1);
        r = notlast ? a(k + 2, k - 1) : 0.0;
        x = std::abs(p) + std::abs(q) + std::abs(r);
        if (x == 0.0) continue;
        p /= x;
        q /= x;
        r /= x;
      }
      double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
      if (s == 0.0) continue;
      if (k == m) {
        if (l != m) a(k, k - 1) = -a(k, k - 1);
      } else {
        a(k, k - 1) = -s * x;
      }
      p += s;
      x = p / s;
      y = q / s;
      const double z = r / s;
      q /= p;
      r /= p;
      for (int j = k; j <= high; ++j) {
        double t = a(k, j) + q * a(k + 1, j);
        if (notlast) t += r * a(k + 2, j);
        a(k, j) -= t * x;
        a(k + 1, j) -= t * y;
        if (notlast) a(k + 2, j) -= t * z;
      }
      const int iend = std::min(high, k + 3);
      for (int i = l; i <= iend; ++i) {
        double t = x * a(i, k) + y * a(i, k + 1);
        if (notlast) t += z * a(i, k + 2);
        a(i, k) -= t;
        a(i, k + 1) -= t * q;
        if (notlast) a(i, k + 2) -= t * r;
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const auto& u, const auto& v) {
    if (u.real() != v.real()) return u.real() < v.real();
    return u.imag() < v.imag();
  });
  return out;
}

double max_real_eigenvalue(const Matrix& a) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& ev : eigenvalues(a)) worst = std::max(worst, ev.real());
  return worst;
}

}  // namespace aloha::linalg
