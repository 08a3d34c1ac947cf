#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lie/rat.hpp"

namespace lie {

using QVec = std::vector<Rat>;

struct QMat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rat> data;  // row-major

  QMat() = default;
  QMat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Rat(0)) {}

  Rat& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static QMat identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const QMat& o) const {
    return rows == o.rows && cols == o.cols && data == o.data;
  }
};

QMat mat_mul(const QMat& a, const QMat& b);
QMat mat_add(const QMat& a, const QMat& b);
QMat mat_sub(const QMat& a, const QMat& b);
QMat mat_scale(const QMat& a, const Rat& c);
QMat mat_transpose(const QMat& a);
QMat mat_bracket(const QMat& a, const QMat& b);  // ab - ba
QVec mat_apply(const QMat& a, const QVec& v);
bool mat_is_zero(const QMat& a);

// Exact inverse of a square matrix; throws SingularMatrix if not invertible.
QMat mat_inverse(const QMat& a);

QVec vec_add(const QVec& a, const QVec& b);
QVec vec_sub(const QVec& a, const QVec& b);
QVec vec_scale(const QVec& a, const Rat& c);
Rat dot(const QVec& a, const QVec& b);
bool vec_is_zero(const QVec& v);

// Flatten a matrix into a coordinate vector (row-major).
QVec mat_flatten(const QMat& a);

// In-place reduced row echelon form; returns pivot column indices.
std::vector<std::size_t> rref(QMat& m);

std::size_t rank_of(QMat m);
std::size_t rank_of_vectors(const std::vector<QVec>& vs);

// Solve a * x = b exactly; nullopt when inconsistent. When the solution space
// has positive dimension, returns the solution with free variables set to 0.
std::optional<QVec> solve(const QMat& a, const QVec& b);

// Basis of the right null space of a.
std::vector<QVec> nullspace(const QMat& a);

// Row-space basis in rref form.
std::vector<QVec> span_basis(const std::vector<QVec>& vs);

bool in_span(const std::vector<QVec>& basis, const QVec& v);

// Coordinates of v in the given (independent) spanning set; nullopt if outside.
std::optional<QVec> coordinates_in(const std::vector<QVec>& basis, const QVec& v);

// Coordinate solver over a fixed independent basis.  Precomputes an invertible
// minor so repeated queries cost O(k^2) plus a sparse verification pass.
struct SpanSolver {
  std::vector<QVec> basis;
  std::vector<std::size_t> pivot_cols;
  QMat minor_inv;
  std::vector<std::vector<std::pair<std::size_t, Rat>>> sparse;  // nonzeros per basis row

  SpanSolver() = default;
  // Throws std::invalid_argument when the rows are dependent.
  explicit SpanSolver(std::vector<QVec> rows);

  std::size_t dim() const { return basis.size(); }
  // Coordinates assuming v is in the span (agreement forced on pivot columns only).
  QVec coords_unchecked(const QVec& v) const;
  std::optional<QVec> coords(const QVec& v) const;
  bool contains(const QVec& v) const { return coords(v).has_value(); }
};

}  // namespace lie
