#include "lie/linalg.hpp"

#include <stdexcept>

#include "lie/errors.hpp"

namespace lie {

QMat mat_mul(const QMat& a, const QMat& b) {
  if (a.cols != b.rows) throw std::invalid_argument("mat_mul shape mismatch");
  QMat out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Rat& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

QMat mat_add(const QMat& a, const QMat& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("mat_add shape mismatch");
  QMat out = a;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
  return out;
}

QMat mat_sub(const QMat& a, const QMat& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("mat_sub shape mismatch");
  QMat out = a;
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] -= b.data[i];
  return out;
}

QMat mat_scale(const QMat& a, const Rat& c) {
  QMat out = a;
  for (auto& x : out.data) x *= c;
  return out;
}

QMat mat_transpose(const QMat& a) {
  QMat out(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) out.at(j, i) = a.at(i, j);
  return out;
}

QMat mat_bracket(const QMat& a, const QMat& b) { return mat_sub(mat_mul(a, b), mat_mul(b, a)); }

QVec mat_apply(const QMat& a, const QVec& v) {
  if (a.cols != v.size()) throw std::invalid_argument("mat_apply shape mismatch");
  QVec out(a.rows, Rat(0));
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      if (a.at(i, j) != 0) out[i] += a.at(i, j) * v[j];
  return out;
}

QMat mat_inverse(const QMat& a) {
  if (a.rows != a.cols) throw std::invalid_argument("mat_inverse needs a square matrix");
  std::size_t n = a.rows;
  QMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1) throw SingularMatrix("matrix is not invertible");
  QMat out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

bool mat_is_zero(const QMat& a) {
  for (const auto& x : a.data)
    if (x != 0) return false;
  return true;
}

QVec vec_add(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_add size mismatch");
  QVec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

QVec vec_sub(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_sub size mismatch");
  QVec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

QVec vec_scale(const QVec& a, const Rat& c) {
  QVec out = a;
  for (auto& x : out) x *= c;
  return out;
}

Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot size mismatch");
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool vec_is_zero(const QVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

QVec mat_flatten(const QMat& a) { return a.data; }

std::vector<std::size_t> rref(QMat& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t piv = row;
    while (piv < m.rows && m.at(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    Rat inv = 1 / m.at(row, col);
    for (std::size_t j = col; j < m.cols; ++j) m.at(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col) == 0) continue;
      Rat f = m.at(i, col);
      for (std::size_t j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank_of(QMat m) { return rref(m).size(); }

std::size_t rank_of_vectors(const std::vector<QVec>& vs) {
  if (vs.empty()) return 0;
  QMat m(vs.size(), vs[0].size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs[i].size(); ++j) m.at(i, j) = vs[i][j];
  return rank_of(std::move(m));
}

std::optional<QVec> solve(const QMat& a, const QVec& b) {
  if (a.rows != b.size()) throw std::invalid_argument("solve shape mismatch");
  QMat aug(a.rows, a.cols + 1);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols) return std::nullopt;
  QVec x(a.cols, Rat(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, a.cols);
  return x;
}

std::vector<QVec> nullspace(const QMat& a) {
  QMat m = a;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(a.cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVec> out;
  for (std::size_t free = 0; free < a.cols; ++free) {
    if (is_pivot[free]) continue;
    QVec v(a.cols, Rat(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<QVec> span_basis(const std::vector<QVec>& vs) {
  if (vs.empty()) return {};
  QMat m(vs.size(), vs[0].size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs[i].size(); ++j) m.at(i, j) = vs[i][j];
  auto pivots = rref(m);
  std::vector<QVec> out;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    QVec v(m.cols);
    for (std::size_t j = 0; j < m.cols; ++j) v[j] = m.at(r, j);
    out.push_back(std::move(v));
  }
  return out;
}

bool in_span(const std::vector<QVec>& basis, const QVec& v) {
  if (vec_is_zero(v)) return true;
  if (basis.empty()) return false;
  QMat m(v.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, j) = basis[j][i];
  return solve(m, v).has_value();
}

std::optional<QVec> coordinates_in(const std::vector<QVec>& basis, const QVec& v) {
  if (basis.empty()) {
    if (vec_is_zero(v)) return QVec{};
    return std::nullopt;
  }
  QMat m(v.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, j) = basis[j][i];
  return solve(m, v);
}

SpanSolver::SpanSolver(std::vector<QVec> rows) : basis(std::move(rows)) {
  std::size_t k = basis.size();
  if (k == 0) return;
  QMat m(k, basis[0].size());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < basis[i].size(); ++j) m.at(i, j) = basis[i][j];
  pivot_cols = rref(m);
  if (pivot_cols.size() != k) throw std::invalid_argument("SpanSolver rows are dependent");
  QMat minor(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) minor.at(i, j) = basis[i][pivot_cols[j]];
  minor_inv = mat_inverse(minor);
  sparse.resize(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < basis[i].size(); ++j)
      if (basis[i][j] != 0) sparse[i].emplace_back(j, basis[i][j]);
}

QVec SpanSolver::coords_unchecked(const QVec& v) const {
  std::size_t k = basis.size();
  QVec x(k, Rat(0));
  // x solves minor^T x = v[pivot_cols], i.e. x = minor_inv^T v[pivot_cols].
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < k; ++r) {
      const Rat& c = minor_inv.at(r, i);
      if (c != 0) x[i] += c * v[pivot_cols[r]];
    }
  }
  return x;
}

std::optional<QVec> SpanSolver::coords(const QVec& v) const {
  if (basis.empty()) {
    if (vec_is_zero(v)) return QVec{};
    return std::nullopt;
  }
  QVec x = coords_unchecked(v);
  QVec w(v.size(), Rat(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (const auto& [j, c] : sparse[i]) w[j] += x[i] * c;
  }
  if (w != v) return std::nullopt;
  return x;
}

}  // namespace lie
