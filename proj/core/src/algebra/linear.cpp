#include "liouvprop/algebra/linear.hpp"

#include <stdexcept>

namespace liouvprop::algebra {

namespace {

Vector multiply(const Matrix& a, const Vector& x) {
  Vector out;
  for (const auto& row : a) {
    AlgebraicScalar acc;
    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * x[j];
    out.push_back(acc);
  }
  return out;
}

}  // namespace

LinearSolution solve_linear(const Matrix& a, const Vector& rhs) {
  std::size_t rows = a.size();
  if (rhs.size() != rows) throw std::invalid_argument("solve_linear: dimension mismatch");
  std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (const auto& row : a) {
    if (row.size() != cols) throw std::invalid_argument("solve_linear: ragged matrix");
  }
  Matrix m = a;
  for (std::size_t i = 0; i < rows; ++i) m[i].push_back(rhs[i]);

  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    AlgebraicScalar inv = m[r][c].inverse();
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      AlgebraicScalar f = m[i][c];
      for (std::size_t j = c; j <= cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }

  LinearSolution sol;
  for (std::size_t i = r; i < rows; ++i) {
    if (!m[i][cols].is_zero()) return sol;
  }
  sol.particular.assign(cols, AlgebraicScalar{});
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
    sol.particular[pivot_cols[i]] = m[i][cols];
    is_pivot[pivot_cols[i]] = true;
  }
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = AlgebraicScalar(1L);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -m[i][f];
    sol.null_space.push_back(std::move(v));
  }
  sol.kind = sol.null_space.empty() ? LinearSolution::Kind::Unique : LinearSolution::Kind::Parametric;

  if (multiply(a, sol.particular) != rhs) throw std::logic_error("solve_linear: back-substitution failed");
  for (const auto& v : sol.null_space) {
    for (const auto& x : multiply(a, v)) {
      if (!x.is_zero()) throw std::logic_error("solve_linear: null-space check failed");
    }
  }
  return sol;
}

}  // namespace liouvprop::algebra
