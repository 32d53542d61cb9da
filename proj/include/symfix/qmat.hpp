#pragma once

#include <optional>
#include <vector>

#include "symfix/scalar.hpp"

namespace symfix::exalg {

/// Dense matrix over the exact rationals. Row-major; all operations exact.
class QMat {
 public:
  QMat() : rows_(0), cols_(0) {}
  QMat(int rows, int cols);
  static QMat identity(int n);
  static QMat from_rows(const std::vector<std::vector<Scalar>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Scalar& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::vector<Scalar> row(int i) const;
  std::vector<Scalar> col(int j) const;

  QMat transpose() const;
  QMat operator*(const QMat& rhs) const;
  QMat operator+(const QMat& rhs) const;
  QMat operator-(const QMat& rhs) const;
  QMat scaled(const Scalar& c) const;
  std::vector<Scalar> apply(const std::vector<Scalar>& x) const;

  bool operator==(const QMat& rhs) const { return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_; }

  Scalar trace() const;
  Scalar det() const;
  int rank() const;
  /// Inverse; throws std::invalid_argument when singular.
  QMat inverse() const;
  /// Unique solution of Ax = b; nullopt when inconsistent, throws when the
  /// solution exists but is not unique.
  std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const;

  /// Characteristic polynomial det(xI - A), coefficients ascending in x,
  /// monic of degree n. Faddeev-LeVerrier, exact.
  std::vector<Scalar> char_poly() const;

 private:
  int rows_, cols_;
  std::vector<Scalar> a_;
};

/// In-place reduced row echelon form; returns the rank and (optionally) the
/// pivot column of each of the first rank rows. Pivot columns are strictly
/// increasing and pivot entries are normalized to 1.
int rref_in_place(QMat& m, std::vector<int>* pivot_cols = nullptr);

/// Basis of {x : Mx = 0} as column vectors, one per free column of the RREF,
/// in ascending free-column order.
std::vector<std::vector<Scalar>> null_space(const QMat& m);

}  // namespace symfix::exalg
