#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rrv/matrix.hpp"
#include "rrv/perm.hpp"

namespace rrv::ff {

// Complete flag in F_p^n: the i-th step is the span of the first i rows of
// `rows`. The matrix is kept in canonical form, so flags compare by bytes.
//
// Canonical form: process rows top-down; clear row i at the pivot columns of
// rows 1..i-1, then scale its leftmost nonzero entry to 1. The result depends
// only on the flag (each row is the unique representative of F_i / F_{i-1}
// vanishing at the earlier pivot columns, normalized to a leading 1), and the
// pivot columns form a permutation of the column set.
struct Flag {
  PrimeField field{2};
  int n = 0;
  Matrix rows;

  bool operator==(const Flag& o) const { return field == o.field && n == o.n && rows == o.rows; }
  bool operator<(const Flag& o) const { return rows.a < o.rows.a; }
  // Span of the first i rows (0 <= i <= n) as a matrix slice.
  Matrix prefix(int i) const { return rows.slice_rows(0, i); }
};

Flag canonical_flag(const PrimeField& f, const Matrix& basis);  // SingularMatrix if rank < n
Flag standard_flag(const PrimeField& f, int n);
Flag opposite_flag(const PrimeField& f, int n);
// Seed-deterministic uniform draw via rejection on random matrices.
Flag random_flag(const PrimeField& f, int n, std::uint64_t seed);

// Number of complete flags, prod_{i=1..n} (1 + p + ... + p^{i-1}); throws
// EnumerationBudgetExceeded if it does not fit the budget/uint64.
std::uint64_t flag_count(int n, std::uint32_t p, std::uint64_t budget = default_budget);
// Index-addressable canonical enumeration: pivot-column permutations in
// lexicographic order, free entries as a base-p odometer. flag_from_index(k)
// is the k-th flag of enumerate_flags.
Flag flag_from_index(const PrimeField& f, int n, std::uint64_t idx);
std::vector<Flag> enumerate_flags(const PrimeField& f, int n, std::uint64_t budget = default_budget);

// Streams the frames of flags [begin, end) in enumeration order without
// materializing them. The matrix reference is reused between calls; copy it
// to keep it. Advancing is incremental (one odometer digit per step).
void for_each_flag(const PrimeField& f, int n, std::uint64_t begin, std::uint64_t end,
                   const std::function<void(std::uint64_t, const Matrix&)>& visit);

// d(i,j) = dim(P_i intersect Q_j) for 0 <= i,j <= n, computed from ranks of
// stacked prefixes: d(i,j) = i + j - rank(stack(P_{1..i}, Q_{1..j})).
struct RankTable {
  int n = 0;
  std::vector<int> d;  // (n+1) x (n+1) row-major
  int at(int i, int j) const { return d[static_cast<std::size_t>(i) * (n + 1) + j]; }
};

RankTable rank_table(const Flag& p, const Flag& q);

// The unique sigma with rank_matrix(sigma)(i,j) = dim(P_i intersect Q_j),
// recovered from the second differences of the rank table.
perm::Permutation relative_position(const Flag& p, const Flag& q);

// Rows b_1..b_n with b_i in (P_i \ P_{i-1}) intersect (Q_{s(i)} \ Q_{s(i)-1})
// for s = relative_position(p, q). Deterministic choice; the rows always form
// a basis.
Matrix common_basis(const Flag& p, const Flag& q);

// Transverse: d(i,j) = max(0, i+j-n) everywhere (relative position w0).
bool is_transverse(const Flag& p, const Flag& q);
// Almost transverse: transverse pattern except d(t, n-t) = 1 for exactly one
// t; returns that t. Characterized on rank tables; equals relative position
// w0 composed with s_t.
std::optional<int> is_almost_transverse(const Flag& p, const Flag& q);

// Seed splitting for derived random streams.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t tag);

}  // namespace rrv::ff
