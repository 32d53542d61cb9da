#pragma once

#include <random>
#include <vector>

#include "symfix/multivector.hpp"
#include "symfix/qmat.hpp"

namespace testutil {

using Rng = std::mt19937_64;
using symfix::Scalar;
using symfix::exalg::Mask;
using symfix::exalg::MultiVector;
using symfix::exalg::QMat;

inline Scalar random_scalar(Rng& rng, int num_bound = 9, int den_bound = 5) {
  std::uniform_int_distribution<int> num(-num_bound, num_bound);
  std::uniform_int_distribution<int> den(1, den_bound);
  Scalar s(num(rng), den(rng));
  s.canonicalize();
  return s;
}

inline MultiVector random_multivector(Rng& rng, int n, int k) {
  const auto& basis = symfix::exalg::degree_basis(n, k);
  MultiVector v(n, k);
  for (Mask m : basis) {
    // keep the term map sparse on average
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) continue;
    v.add_term(m, random_scalar(rng));
  }
  return v;
}

inline MultiVector random_vector_deg1(Rng& rng, int n) {
  MultiVector v(n, 1);
  while (v.is_zero()) {
    for (int i = 1; i <= n; ++i) {
      Scalar c = random_scalar(rng);
      if (c != 0) v.add_term(Mask{1} << (i - 1), c);
    }
  }
  return v;
}

inline QMat random_qmat(Rng& rng, int rows, int cols, int bound = 9) {
  QMat m(rows, cols);
  std::uniform_int_distribution<int> entry(-bound, bound);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = entry(rng);
  return m;
}

}  // namespace testutil
