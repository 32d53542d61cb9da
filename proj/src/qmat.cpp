#include "symfix/qmat.hpp"

#include <stdexcept>

namespace symfix::exalg {

QMat::QMat(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("QMat: negative shape");
  a_.assign(static_cast<std::size_t>(rows) * cols, Scalar(0));
}

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat QMat::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  QMat m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("QMat::from_rows: ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::vector<Scalar> QMat::row(int i) const {
  std::vector<Scalar> out(cols_);
  for (int j = 0; j < cols_; ++j) out[j] = at(i, j);
  return out;
}

std::vector<Scalar> QMat::col(int j) const {
  std::vector<Scalar> out(rows_);
  for (int i = 0; i < rows_; ++i) out[i] = at(i, j);
  return out;
}

QMat QMat::transpose() const {
  QMat m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

QMat QMat::operator*(const QMat& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("QMat *: shape mismatch");
  QMat m(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const Scalar& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) {
        if (rhs.at(k, j) == 0) continue;
        m.at(i, j) += aik * rhs.at(k, j);
      }
    }
  }
  return m;
}

QMat QMat::operator+(const QMat& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("QMat +: shape mismatch");
  QMat m(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + rhs.a_[i];
  return m;
}

QMat QMat::operator-(const QMat& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("QMat -: shape mismatch");
  QMat m(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - rhs.a_[i];
  return m;
}

QMat QMat::scaled(const Scalar& c) const {
  QMat m(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * c;
  return m;
}

std::vector<Scalar> QMat::apply(const std::vector<Scalar>& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("QMat::apply: length mismatch");
  std::vector<Scalar> out(rows_, Scalar(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0) out[i] += at(i, j) * x[j];
  return out;
}

Scalar QMat::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("QMat::trace: not square");
  Scalar t(0);
  for (int i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

int rref_in_place(QMat& m, std::vector<int>* pivot_cols) {
  if (pivot_cols) pivot_cols->clear();
  int rank = 0;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int pivot = -1;
    for (int i = rank; i < m.rows(); ++i) {
      if (m.at(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    }
    Scalar inv = Scalar(1) / m.at(rank, col);
    for (int j = col; j < m.cols(); ++j) m.at(rank, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == rank || m.at(i, col) == 0) continue;
      Scalar f = m.at(i, col);
      for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(rank, j);
    }
    if (pivot_cols) pivot_cols->push_back(col);
    ++rank;
  }
  return rank;
}

std::vector<std::vector<Scalar>> null_space(const QMat& m) {
  QMat r = m;
  std::vector<int> pivots;
  int rank = rref_in_place(r, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> x(m.cols(), Scalar(0));
    x[free] = 1;
    for (int i = 0; i < rank; ++i) {
      // row i reads x_{pivot_i} + sum(coeff * x_free) = 0
      x[pivots[i]] = -r.at(i, free);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

Scalar QMat::det() const {
  if (rows_ != cols_) throw std::invalid_argument("QMat::det: not square");
  QMat m = *this;
  Scalar d(1);
  for (int col = 0; col < cols_; ++col) {
    int pivot = -1;
    for (int i = col; i < rows_; ++i) {
      if (m.at(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return Scalar(0);
    if (pivot != col) {
      for (int j = 0; j < cols_; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      d = -d;
    }
    d *= m.at(col, col);
    Scalar inv = Scalar(1) / m.at(col, col);
    for (int i = col + 1; i < rows_; ++i) {
      if (m.at(i, col) == 0) continue;
      Scalar f = m.at(i, col) * inv;
      for (int j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(col, j);
    }
  }
  return d;
}

int QMat::rank() const {
  QMat m = *this;
  return rref_in_place(m);
}

QMat QMat::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("QMat::inverse: not square");
  QMat aug(rows_, 2 * cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = 1;
  }
  std::vector<int> pivots;
  int rank = rref_in_place(aug, &pivots);
  if (rank < rows_ || pivots[rows_ - 1] != rows_ - 1) {
    throw std::invalid_argument("QMat::inverse: matrix is singular");
  }
  QMat inv(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
  return inv;
}

std::optional<std::vector<Scalar>> QMat::solve(const std::vector<Scalar>& b) const {
  if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("QMat::solve: length mismatch");
  QMat aug(rows_, cols_ + 1);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i];
  }
  std::vector<int> pivots;
  int rank = rref_in_place(aug, &pivots);
  if (rank > 0 && pivots[rank - 1] == cols_) return std::nullopt;  // row (0 ... 0 | 1)
  if (rank < cols_) throw std::invalid_argument("QMat::solve: solution not unique");
  std::vector<Scalar> x(cols_);
  for (int i = 0; i < rank; ++i) x[pivots[i]] = aug.at(i, cols_);
  return x;
}

std::vector<Scalar> QMat::char_poly() const {
  if (rows_ != cols_) throw std::invalid_argument("QMat::char_poly: not square");
  int n = rows_;
  std::vector<Scalar> c(n + 1, Scalar(0));
  c[n] = 1;
  QMat m = QMat::identity(n);
  for (int k = 1; k <= n; ++k) {
    m = *this * m;
    Scalar ck = -m.trace() / k;
    c[n - k] = ck;
    for (int i = 0; i < n; ++i) m.at(i, i) += ck;
  }
  return c;
}

}  // namespace symfix::exalg
