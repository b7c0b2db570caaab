#include "rspace/linalg.hpp"

#include <algorithm>

namespace rspace {

namespace {

// Bareiss fraction-free elimination for integral matrices over Q.
size_t integer_rank_bareiss(const FieldMatrix& src) {
  size_t rows = src.rows, cols = src.cols;
  std::vector<std::vector<mpz_class>> m(rows, std::vector<mpz_class>(cols));
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) m[i][j] = src.at(i, j).get_num();
  mpz_class prev(1);
  size_t rank = 0, row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t pivot = row;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[row], m[pivot]);
    for (size_t r = row + 1; r < rows; ++r) {
      for (size_t c = col + 1; c < cols; ++c)
        m[r][c] = (m[row][col] * m[r][c] - m[r][col] * m[row][c]) / prev;
      m[r][col] = 0;
    }
    prev = m[row][col];
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace

size_t matrix_rank(FieldMatrix m) {
  if (m.field.is_rationals()) {
    bool integral = true;
    for (const auto& e : m.entries)
      if (e.get_den() != 1) integral = false;
    if (integral) return integer_rank_bareiss(m);
  }
  size_t rank = 0;
  size_t col = 0;
  for (size_t row = 0; row < m.rows && col < m.cols; ++col) {
    size_t pivot = row;
    while (pivot < m.rows && m.field.reduce(m.at(pivot, col)) == 0) ++pivot;
    if (pivot == m.rows) continue;
    for (size_t c = 0; c < m.cols; ++c) std::swap(m.at(row, c), m.at(pivot, c));
    mpq_class inv = m.field.inv(m.at(row, col));
    for (size_t c = col; c < m.cols; ++c) m.at(row, c) = m.field.mul(m.at(row, c), inv);
    for (size_t r = 0; r < m.rows; ++r) {
      if (r == row) continue;
      mpq_class factor = m.field.reduce(m.at(r, col));
      if (factor == 0) continue;
      for (size_t c = col; c < m.cols; ++c)
        m.at(r, c) = m.field.sub(m.at(r, c), m.field.mul(factor, m.at(row, c)));
    }
    ++row;
    ++rank;
  }
  return rank;
}

std::vector<mpz_class> smith_normal_form(std::vector<std::vector<mpz_class>> m) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  std::vector<mpz_class> invariants;
  size_t t = 0;
  while (t < rows && t < cols) {
    // find a nonzero pivot of minimal absolute value
    bool found = false;
    size_t pr = t, pc = t;
    mpz_class best = 0;
    for (size_t r = t; r < rows; ++r)
      for (size_t c = t; c < cols; ++c) {
        if (m[r][c] == 0) continue;
        mpz_class a = abs(m[r][c]);
        if (!found || a < best) {
          best = a;
          pr = r;
          pc = c;
          found = true;
        }
      }
    if (!found) break;
    std::swap(m[t], m[pr]);
    for (size_t r = 0; r < rows; ++r) std::swap(m[r][t], m[r][pc]);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (size_t r = t + 1; r < rows; ++r) {
        if (m[r][t] == 0) continue;
        mpz_class q = m[r][t] / m[t][t];
        for (size_t c = t; c < cols; ++c) m[r][c] -= q * m[t][c];
        if (m[r][t] != 0) {
          std::swap(m[t], m[r]);
          dirty = true;
        }
      }
      for (size_t c = t + 1; c < cols; ++c) {
        if (m[t][c] == 0) continue;
        mpz_class q = m[t][c] / m[t][t];
        for (size_t r = t; r < rows; ++r) m[r][c] -= q * m[r][t];
        if (m[t][c] != 0) {
          for (size_t r = 0; r < rows; ++r) std::swap(m[r][t], m[r][c]);
          dirty = true;
        }
      }
    }
    // enforce divisibility of later entries by the pivot
    bool restart = false;
    for (size_t r = t + 1; r < rows && !restart; ++r)
      for (size_t c = t + 1; c < cols && !restart; ++c) {
        if (m[r][c] % m[t][t] != 0) {
          for (size_t cc = t; cc < cols; ++cc) m[t][cc] += m[r][cc];
          restart = true;
        }
      }
    if (restart) continue;
    if (m[t][t] < 0)
      for (size_t c = t; c < cols; ++c) m[t][c] = -m[t][c];
    invariants.push_back(m[t][t]);
    ++t;
  }
  return invariants;
}

}  // namespace rspace
