#pragma once

#include <vector>

#include "rspace/field.hpp"

namespace rspace {

/// Dense matrix over a coefficient field.
struct FieldMatrix {
  Field field;
  size_t rows = 0;
  size_t cols = 0;
  std::vector<mpq_class> entries;

  FieldMatrix(Field f, size_t r, size_t c)
      : field(f), rows(r), cols(c), entries(r * c, mpq_class(0)) {}
  mpq_class& at(size_t r, size_t c) { return entries[r * cols + c]; }
  const mpq_class& at(size_t r, size_t c) const { return entries[r * cols + c]; }
};

/// Exact rank by Gaussian elimination.
size_t matrix_rank(FieldMatrix m);

/// Smith normal form invariants d_1 | d_2 | ... (nonzero diagonal only) of an
/// integer matrix; transforms are unimodular, so the list is canonical.
std::vector<mpz_class> smith_normal_form(std::vector<std::vector<mpz_class>> m);

}  // namespace rspace
