#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace aloha::linalg {

/// Minimal dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Matrix transposed() const;

  /// Largest absolute difference |a_ij - a_ji|.
  double symmetry_defect() const;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Eigenvalues of a symmetric matrix via cyclic Jacobi rotations, sorted
/// ascending. The input is assumed symmetric; only the caller-checked
/// routines reject asymmetry.
std::vector<double> symmetric_eigenvalues(Matrix a);

/// Eigenvalues of a general real square matrix: Householder reduction to
/// Hessenberg form followed by the implicitly shifted (Francis double-shift)
/// QR iteration. Sorted by real part, then imaginary part.
std::vector<std::complex<double>> eigenvalues(Matrix a);

/// Largest real part among the eigenvalues of a general square matrix.
double max_real_eigenvalue(const Matrix& a);

}  // namespace aloha::linalg
