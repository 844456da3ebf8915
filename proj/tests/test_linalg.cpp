#include <cmath>
#include <complex>

#include "doctest.h"

#include "aloha/linalg.hpp"
#include "test_support.hpp"

using namespace aloha::linalg;
namespace at = aloha::testing;

namespace {

Matrix from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  return m;
}

// Random orthogonal similarity of a diagonal matrix: eigenvalues are known.
Matrix similarity_of_diagonal(std::mt19937_64& rng, const std::vector<double>& diag) {
  const std::size_t n = diag.size();
  // Householder reflector P = I - 2 v v^T with a random unit v.
  std::vector<double> v(n);
  double norm = 0.0;
  for (double& x : v) {
    x = at::uniform(rng, -1.0, 1.0);
    norm += x * x;
  }
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double pik = (i == k ? 1.0 : 0.0) - 2.0 * v[i] * v[k];
        const double pkj = (k == j ? 1.0 : 0.0) - 2.0 * v[k] * v[j];
        sum += pik * diag[k] * pkj;
      }
      m(i, j) = sum;
    }
  return m;
}

}  // namespace

TEST_CASE("jacobi eigenvalues of small symmetric matrices") {
  CHECK(symmetric_eigenvalues(from_rows({{-1, 0}, {0, -2}})) ==
        std::vector<double>{-2.0, -1.0});
  const auto eig = symmetric_eigenvalues(from_rows({{-1, 3}, {3, -1}}));
  CHECK(eig[0] == doctest::Approx(-4.0));
  CHECK(eig[1] == doctest::Approx(2.0));
}

TEST_CASE("jacobi matches known spectra under orthogonal similarity") {
  auto rng = at::make_rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 7;
    std::vector<double> diag(n);
    for (double& d : diag) d = at::uniform(rng, -5.0, 5.0);
    const auto eig = symmetric_eigenvalues(similarity_of_diagonal(rng, diag));
    std::sort(diag.begin(), diag.end());
    for (std::size_t i = 0; i < n; ++i)
      CHECK(eig[i] == doctest::Approx(diag[i]).epsilon(1e-10));
  }
}

TEST_CASE("qr eigenvalues: diagonal, rotation, companion, defective") {
  // diagonal
  {
    const auto eig = eigenvalues(from_rows({{3, 0, 0}, {0, -1, 0}, {0, 0, 2}}));
    CHECK(eig[0].real() == doctest::Approx(-1.0));
    CHECK(eig[1].real() == doctest::Approx(2.0));
    CHECK(eig[2].real() == doctest::Approx(3.0));
  }
  // pure rotation: +-i
  {
    const auto eig = eigenvalues(from_rows({{0, -1}, {1, 0}}));
    CHECK(eig[0].real() == doctest::Approx(0.0));
    CHECK(std::fabs(eig[0].imag()) == doctest::Approx(1.0));
    CHECK(eig[1].imag() == doctest::Approx(-eig[0].imag()));
  }
  // companion matrix of (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
  {
    const auto eig = eigenvalues(from_rows({{6, -11, 6}, {1, 0, 0}, {0, 1, 0}}));
    CHECK(eig[0].real() == doctest::Approx(1.0));
    CHECK(eig[1].real() == doctest::Approx(2.0));
    CHECK(eig[2].real() == doctest::Approx(3.0));
    for (const auto& ev : eig) CHECK(std::fabs(ev.imag()) < 1e-9);
  }
  // defective Jordan block
  {
    const auto eig = eigenvalues(from_rows({{2, 1}, {0, 2}}));
    CHECK(eig[0].real() == doctest::Approx(2.0));
    CHECK(eig[1].real() == doctest::Approx(2.0));
  }
}

TEST_CASE("qr eigenvalues: complex pair embedded by similarity") {
  // block diag([a, b; -b, a], c) has eigenvalues a+-bi and c
  auto rng = at::make_rng(12);
  for (int trial = 0; trial < 25; ++trial) {
    const double a = at::uniform(rng, -2.0, 2.0);
    const double b = at::uniform(rng, 0.1, 2.0);
    const double c = at::uniform(rng, -2.0, 2.0);
    Matrix m = from_rows({{a, b, 0}, {-b, a, 0}, {0, 0, c}});
    const auto eig = eigenvalues(m);
    double max_real = -1e300;
    for (const auto& ev : eig) max_real = std::max(max_real, ev.real());
    CHECK(max_real == doctest::Approx(std::max(a, c)).epsilon(1e-9));
    // the conjugate pair is present
    int complex_count = 0;
    for (const auto& ev : eig) {
      if (std::fabs(ev.imag()) > 1e-9) {
        ++complex_count;
        CHECK(ev.real() == doctest::Approx(a).epsilon(1e-9));
        CHECK(std::fabs(ev.imag()) == doctest::Approx(b).epsilon(1e-9));
      }
    }
    CHECK(complex_count == 2);
  }
}

TEST_CASE("qr agrees with jacobi on random symmetric matrices") {
  auto rng = at::make_rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 8;
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = at::uniform(rng, -3.0, 3.0);
    const auto sym = symmetric_eigenvalues(m);
    const auto gen = eigenvalues(m);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(gen[i].real() == doctest::Approx(sym[i]).epsilon(1e-8));
      CHECK(std::fabs(gen[i].imag()) < 1e-8);
    }
  }
}

namespace {

// Determinant by LU with partial pivoting; independent check for the
// eigenvalue product.
double lu_determinant(Matrix a) {
  const std::size_t n = a.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(a(i, k)) > std::fabs(a(pivot, k))) pivot = i;
    }
    if (a(pivot, k) == 0.0) return 0.0;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(k, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

}  // namespace

TEST_CASE("qr eigenvalues satisfy trace, determinant and conjugacy invariants") {
  auto rng = at::make_rng(14);
  for (std::size_t n : {12u, 24u, 48u}) {
    for (int trial = 0; trial < 5; ++trial) {
      Matrix m(n, n);
      double trace = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = at::uniform(rng, -1.0, 1.0);
        trace += m(i, i);
      }
      const auto eig = eigenvalues(m);
      REQUIRE(eig.size() == n);

      std::complex<double> sum = 0.0, prod = 1.0;
      for (const auto& ev : eig) {
        sum += ev;
        prod *= ev;
      }
      CHECK(sum.real() == doctest::Approx(trace).epsilon(1e-8));
      CHECK(std::fabs(sum.imag()) < 1e-8);
      const double det = lu_determinant(m);
      CHECK(prod.real() == doctest::Approx(det).epsilon(1e-6));
      CHECK(std::fabs(prod.imag()) <= 1e-6 * (1.0 + std::fabs(det)));

      // complex eigenvalues appear in conjugate pairs
      std::vector<std::complex<double>> complexes;
      for (const auto& ev : eig) {
        if (std::fabs(ev.imag()) > 1e-12) complexes.push_back(ev);
      }
      CHECK(complexes.size() % 2 == 0);
      for (const auto& ev : complexes) {
        bool paired = false;
        for (const auto& other : complexes) {
          if (std::fabs(other.real() - ev.real()) < 1e-7 &&
              std::fabs(other.imag() + ev.imag()) < 1e-7) {
            paired = true;
            break;
          }
        }
        CHECK(paired);
      }
    }
  }
}

TEST_CASE("max real eigenvalue helper") {
  CHECK(max_real_eigenvalue(from_rows({{-3, 0}, {0, -1}})) == doctest::Approx(-1.0));
  CHECK(max_real_eigenvalue(from_rows({{0, -2}, {2, 0}})) == doctest::Approx(0.0));
}

TEST_CASE("matrix helpers") {
  Matrix m = from_rows({{1, 2}, {3, 4}});
  CHECK(m.transposed() == from_rows({{1, 3}, {2, 4}}));
  CHECK(m.symmetry_defect() == doctest::Approx(1.0));
  CHECK(Matrix::identity(2).symmetry_defect() == 0.0);
}
