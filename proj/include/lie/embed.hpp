#pragma once

#include <cstddef>
#include <vector>

#include "lie/linalg.hpp"

// Entrywise realifications used to present complex and quaternionic matrix
// algebras as real ones.

namespace lie {

inline QMat unit_mat(std::size_t n, std::size_t i, std::size_t j) {
  QMat m(n, n);
  m.at(i, j) = 1;
  return m;
}

inline QMat diag_mat(const std::vector<int>& d) {
  QMat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

inline QMat zero_sq(std::size_t n) { return QMat(n, n); }

// Complex entry a+bi becomes the 2x2 block [[a,-b],[b,a]]; conjugate transpose
// over C becomes plain transpose over R.
inline QMat emb_c(const QMat& re, const QMat& im) {
  std::size_t n = re.rows;
  QMat out(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& a = re.at(i, j);
      const Rat& b = im.at(i, j);
      out.at(2 * i, 2 * j) = a;
      out.at(2 * i, 2 * j + 1) = -b;
      out.at(2 * i + 1, 2 * j) = b;
      out.at(2 * i + 1, 2 * j + 1) = a;
    }
  }
  return out;
}

// Quaternion entry a+bi+cj+dk as the left-multiplication matrix on (1,i,j,k)
// coordinates; again * over H becomes transpose over R.
inline QMat emb_h(const QMat& a, const QMat& b, const QMat& c, const QMat& d) {
  std::size_t n = a.rows;
  QMat out(4 * n, 4 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& w = a.at(i, j);
      const Rat& x = b.at(i, j);
      const Rat& y = c.at(i, j);
      const Rat& z = d.at(i, j);
      std::size_t r = 4 * i, s = 4 * j;
      out.at(r, s) = w;     out.at(r, s + 1) = -x; out.at(r, s + 2) = -y; out.at(r, s + 3) = -z;
      out.at(r + 1, s) = x; out.at(r + 1, s + 1) = w; out.at(r + 1, s + 2) = -z; out.at(r + 1, s + 3) = y;
      out.at(r + 2, s) = y; out.at(r + 2, s + 1) = z; out.at(r + 2, s + 2) = w; out.at(r + 2, s + 3) = -x;
      out.at(r + 3, s) = z; out.at(r + 3, s + 1) = -y; out.at(r + 3, s + 2) = x; out.at(r + 3, s + 3) = w;
    }
  }
  return out;
}

}  // namespace lie
