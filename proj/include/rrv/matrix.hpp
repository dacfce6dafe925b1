#pragma once

#include <cstdint>
#include <vector>

#include "rrv/field.hpp"

namespace rrv::ff {

// Dense row-major matrix over F_p. The matrix does not carry the field;
// operations take it explicitly.
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<std::uint32_t> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0) {}

  std::uint32_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  std::uint32_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  std::uint32_t* row(int i) { return a.data() + static_cast<std::size_t>(i) * cols; }
  const std::uint32_t* row(int i) const { return a.data() + static_cast<std::size_t>(i) * cols; }

  static Matrix identity(int n);
  // Rows first..first+count-1 as a new matrix.
  Matrix slice_rows(int first, int count) const;

  bool operator==(const Matrix&) const = default;
};

Matrix stack_rows(const Matrix& top, const Matrix& bottom);
Matrix matmul(const PrimeField& f, const Matrix& x, const Matrix& y);

int rank(const PrimeField& f, const Matrix& m);
// Reduced row echelon form with zero rows dropped; canonical per row space.
Matrix rref(const PrimeField& f, const Matrix& m);
// Rows form an RREF basis of the right kernel {x : m x^T = 0}.
Matrix kernel_basis(const PrimeField& f, const Matrix& m);
Matrix inverse(const PrimeField& f, const Matrix& m);  // SingularMatrix if not invertible
bool is_invertible(const PrimeField& f, const Matrix& m);
// Whether v lies in the row space of m (v.size() == m.cols).
bool in_row_space(const PrimeField& f, const Matrix& m, const std::uint32_t* v);
// RREF basis of rowspace(a) intersect rowspace(b).
Matrix intersect_row_spaces(const PrimeField& f, const Matrix& a, const Matrix& b);

// Gaussian binomial [n choose k]_p; nullopt-style saturation is not needed at
// the supported sizes but the computation is overflow-checked.
std::uint64_t subspace_count(int n, int k, std::uint32_t p);
// k-dimensional subspaces of F_p^n as canonical RREF representatives.
// Deterministic order: pivot column sets lexicographically, then free entries
// as a base-p odometer (row-major, last free slot fastest).
std::vector<Matrix> enumerate_subspaces(const PrimeField& f, int n, int k,
                                        std::uint64_t budget = default_budget);
Matrix subspace_from_index(const PrimeField& f, int n, int k, std::uint64_t idx);

// All subspaces U with fixed <= U <= rowspace(ambient), dim U = target_dim,
// canonical RREF representatives, deterministic order induced by
// enumerate_subspaces of the quotient. `fixed` may have 0 rows.
std::vector<Matrix> enumerate_extensions(const PrimeField& f, const Matrix& fixed,
                                         const Matrix& ambient, int target_dim,
                                         std::uint64_t budget = default_budget);

}  // namespace rrv::ff
