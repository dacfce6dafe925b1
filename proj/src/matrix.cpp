#include "rrv/matrix.hpp"

#include <algorithm>
#include <array>

namespace rrv::ff {

namespace {

constexpr std::array<std::uint32_t, 11> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};

// Inverse tables live here once per prime.
const std::uint32_t* inverse_table(std::uint32_t p) {
  static std::array<std::array<std::uint32_t, 32>, primes.size()> tables = [] {
    std::array<std::array<std::uint32_t, 32>, primes.size()> t{};
    for (std::size_t k = 0; k < primes.size(); ++k) {
      std::uint32_t p = primes[k];
      for (std::uint32_t a = 1; a < p; ++a)
        for (std::uint32_t b = 1; b < p; ++b)
          if ((a * b) % p == 1) t[k][a] = b;
    }
    return t;
  }();
  for (std::size_t k = 0; k < primes.size(); ++k)
    if (primes[k] == p) return tables[k].data();
  return nullptr;
}

}  // namespace

PrimeField::PrimeField(std::uint32_t p) : p_(p), inv_(inverse_table(p)) {
  if (inv_ == nullptr)
    throw error(errc::invalid_field, "p = " + std::to_string(p) + " is not a prime in 2..31");
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::slice_rows(int first, int count) const {
  Matrix m(count, cols);
  std::copy_n(a.begin() + static_cast<std::ptrdiff_t>(first) * cols,
              static_cast<std::ptrdiff_t>(count) * cols, m.a.begin());
  return m;
}

Matrix stack_rows(const Matrix& top, const Matrix& bottom) {
  if (top.cols != bottom.cols && top.rows != 0 && bottom.rows != 0)
    throw error(errc::dimension_mismatch, "stacking widths differ");
  Matrix m(top.rows + bottom.rows, top.rows != 0 ? top.cols : bottom.cols);
  std::copy(top.a.begin(), top.a.end(), m.a.begin());
  std::copy(bottom.a.begin(), bottom.a.end(), m.a.begin() + static_cast<std::ptrdiff_t>(top.a.size()));
  return m;
}

Matrix matmul(const PrimeField& f, const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw error(errc::dimension_mismatch, "matmul shapes");
  Matrix m(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      std::uint32_t v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        m.at(i, j) = f.add(m.at(i, j), f.mul(v, y.at(k, j)));
    }
  return m;
}

namespace {

// In-place forward elimination; returns pivot columns in order. With
// `reduced`, also clears above pivots and normalizes them to 1, and compacts
// nonzero rows to the top.
std::vector<int> echelonize(const PrimeField& f, Matrix& m, bool reduced) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    std::uint32_t pivinv = f.inv(m.at(r, c));
    if (reduced)
      for (int j = c; j < m.cols; ++j) m.at(r, j) = f.mul(m.at(r, j), pivinv);
    int lo = reduced ? 0 : r + 1;
    for (int i = lo; i < m.rows; ++i) {
      if (i == r) continue;
      std::uint32_t v = m.at(i, c);
      if (v == 0) continue;
      std::uint32_t factor = reduced ? v : f.mul(v, pivinv);
      for (int j = c; j < m.cols; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

int rank(const PrimeField& f, const Matrix& m) {
  Matrix w = m;
  return static_cast<int>(echelonize(f, w, false).size());
}

Matrix rref(const PrimeField& f, const Matrix& m) {
  Matrix w = m;
  std::vector<int> piv = echelonize(f, w, true);
  return w.slice_rows(0, static_cast<int>(piv.size()));
}

Matrix kernel_basis(const PrimeField& f, const Matrix& m) {
  Matrix r = rref(f, m);
  std::vector<int> piv;
  {
    Matrix w = r;
    piv = echelonize(f, w, false);
  }
  std::vector<bool> is_piv(static_cast<std::size_t>(m.cols), false);
  for (int c : piv) is_piv[static_cast<std::size_t>(c)] = true;
  Matrix k(m.cols - static_cast<int>(piv.size()), m.cols);
  int kr = 0;
  for (int c = 0; c < m.cols; ++c) {
    if (is_piv[static_cast<std::size_t>(c)]) continue;
    k.at(kr, c) = 1;
    for (int rrow = 0; rrow < r.rows; ++rrow) k.at(kr, piv[static_cast<std::size_t>(rrow)]) = f.neg(r.at(rrow, c));
    ++kr;
  }
  return rref(f, k);
}

Matrix inverse(const PrimeField& f, const Matrix& m) {
  if (m.rows != m.cols) throw error(errc::dimension_mismatch, "inverse of non-square");
  int n = m.rows;
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  std::vector<int> piv = echelonize(f, aug, true);
  if (static_cast<int>(piv.size()) != n || piv.back() != n - 1)
    throw error(errc::singular_matrix, "matrix is singular");
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  return out;
}

bool is_invertible(const PrimeField& f, const Matrix& m) {
  return m.rows == m.cols && rank(f, m) == m.rows;
}

bool in_row_space(const PrimeField& f, const Matrix& m, const std::uint32_t* v) {
  Matrix r = rref(f, m);
  std::vector<std::uint32_t> w(v, v + m.cols);
  for (int i = 0; i < r.rows; ++i) {
    int c = 0;
    while (c < r.cols && r.at(i, c) == 0) ++c;
    if (c == r.cols) continue;
    std::uint32_t factor = w[static_cast<std::size_t>(c)];
    if (factor == 0) continue;
    for (int j = c; j < r.cols; ++j) w[static_cast<std::size_t>(j)] = f.sub(w[static_cast<std::size_t>(j)], f.mul(factor, r.at(i, j)));
  }
  return std::all_of(w.begin(), w.end(), [](std::uint32_t x) { return x == 0; });
}

Matrix intersect_row_spaces(const PrimeField& f, const Matrix& a, const Matrix& b) {
  int n = a.rows != 0 ? a.cols : b.cols;
  if (a.rows == 0 || b.rows == 0) return Matrix(0, n);
  // Left-kernel relations x a + y b = 0 give intersection vectors x a.
  Matrix stacked = stack_rows(a, b);
  Matrix t(stacked.cols, stacked.rows);
  for (int i = 0; i < stacked.rows; ++i)
    for (int j = 0; j < stacked.cols; ++j) t.at(j, i) = stacked.at(i, j);
  Matrix rel = kernel_basis(f, t);
  Matrix xs(rel.rows, a.rows);
  for (int i = 0; i < rel.rows; ++i)
    for (int j = 0; j < a.rows; ++j) xs.at(i, j) = rel.at(i, j);
  Matrix inter = rref(f, matmul(f, xs, a));
  int expect = a.rows + b.rows - rank(f, stacked);
  if (rank(f, a) == a.rows && rank(f, b) == b.rows && inter.rows != expect)
    throw error(errc::internal_invariant_violation, "intersection dimension mismatch");
  return inter;
}

std::uint64_t subspace_count(int n, int k, std::uint32_t p) {
  if (k < 0 || n < 0 || k > n) return 0;
  // Recurrence [n,k] = [n-1,k-1] + p^k [n-1,k], overflow-checked.
  std::vector<std::vector<unsigned __int128>> g(static_cast<std::size_t>(n) + 1,
                                                std::vector<unsigned __int128>(static_cast<std::size_t>(k) + 1, 0));
  for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= std::min(i, k); ++j) {
      unsigned __int128 pk = 1;
      for (int t = 0; t < j; ++t) pk *= p;
      unsigned __int128 v = g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
                            pk * g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
      if (v > static_cast<unsigned __int128>(UINT64_MAX))
        throw error(errc::enumeration_budget_exceeded, "subspace count overflows");
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    }
  return static_cast<std::uint64_t>(g[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
}

namespace {

// Free column positions of an RREF matrix with the given pivot columns: in
// row s they are the non-pivot columns right of pivots[s].
std::vector<std::pair<int, int>> rref_free_positions(const std::vector<int>& pivots, int n) {
  std::vector<bool> is_piv(static_cast<std::size_t>(n), false);
  for (int c : pivots) is_piv[static_cast<std::size_t>(c)] = true;
  std::vector<std::pair<int, int>> free_pos;
  for (std::size_t s = 0; s < pivots.size(); ++s)
    for (int c = pivots[s] + 1; c < n; ++c)
      if (!is_piv[static_cast<std::size_t>(c)]) free_pos.emplace_back(static_cast<int>(s), c);
  return free_pos;
}

Matrix subspace_from_combo(const PrimeField& f, int n, const std::vector<int>& pivots,
                           const std::vector<std::pair<int, int>>& free_pos, std::uint64_t within) {
  int k = static_cast<int>(pivots.size());
  Matrix m(k, n);
  for (int s = 0; s < k; ++s) m.at(s, pivots[static_cast<std::size_t>(s)]) = 1;
  // Base-p odometer, last free slot fastest.
  for (std::size_t t = free_pos.size(); t-- > 0;) {
    m.at(free_pos[t].first, free_pos[t].second) = static_cast<std::uint32_t>(within % f.p());
    within /= f.p();
  }
  return m;
}

bool next_combination(std::vector<int>& c, int n) {
  int k = static_cast<int>(c.size());
  int pos = k - 1;
  while (pos >= 0 && c[static_cast<std::size_t>(pos)] == n - (k - pos)) --pos;
  if (pos < 0) return false;
  ++c[static_cast<std::size_t>(pos)];
  for (int q = pos + 1; q < k; ++q) c[static_cast<std::size_t>(q)] = c[static_cast<std::size_t>(q - 1)] + 1;
  return true;
}

std::uint64_t pow_u64(std::uint32_t p, std::size_t e) {
  std::uint64_t v = 1;
  while (e--) v *= p;
  return v;
}

}  // namespace

std::vector<Matrix> enumerate_subspaces(const PrimeField& f, int n, int k, std::uint64_t budget) {
  if (k < 0 || n < 0 || k > n) throw error(errc::dimension_mismatch, "subspace dimensions");
  std::uint64_t total = subspace_count(n, k, f.p());
  if (total > budget) throw error(errc::enumeration_budget_exceeded, std::to_string(total) + " subspaces");
  std::vector<Matrix> out;
  out.reserve(total);
  if (k == 0) {
    out.emplace_back(Matrix(0, n));
    return out;
  }
  std::vector<int> combo(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) combo[static_cast<std::size_t>(i)] = i;
  do {
    auto free_pos = rref_free_positions(combo, n);
    std::uint64_t block = pow_u64(f.p(), free_pos.size());
    for (std::uint64_t w = 0; w < block; ++w) out.push_back(subspace_from_combo(f, n, combo, free_pos, w));
  } while (next_combination(combo, n));
  if (out.size() != total) throw error(errc::internal_invariant_violation, "subspace enumeration count");
  return out;
}

Matrix subspace_from_index(const PrimeField& f, int n, int k, std::uint64_t idx) {
  if (k == 0) {
    if (idx != 0) throw error(errc::index_out_of_range, "subspace index");
    return Matrix(0, n);
  }
  std::vector<int> combo(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) combo[static_cast<std::size_t>(i)] = i;
  do {
    auto free_pos = rref_free_positions(combo, n);
    std::uint64_t block = pow_u64(f.p(), free_pos.size());
    if (idx < block) return subspace_from_combo(f, n, combo, free_pos, idx);
    idx -= block;
  } while (next_combination(combo, n));
  throw error(errc::index_out_of_range, "subspace index");
}

std::vector<Matrix> enumerate_extensions(const PrimeField& f, const Matrix& fixed, const Matrix& ambient,
                                         int target_dim, std::uint64_t budget) {
  int n = ambient.cols;
  Matrix w = rref(f, fixed);
  int wdim = w.rows;
  if (target_dim < wdim) throw error(errc::dimension_mismatch, "target below fixed subspace");
  Matrix amb = rref(f, ambient);
  for (int i = 0; i < w.rows; ++i)
    if (!in_row_space(f, amb, w.row(i)))
      throw error(errc::dimension_mismatch, "fixed subspace outside ambient");
  // Complement rows: ambient rows that grow the echelon seeded with `fixed`.
  Matrix ech = w;
  Matrix comp(0, n);
  for (int i = 0; i < amb.rows; ++i) {
    Matrix trial = stack_rows(ech, amb.slice_rows(i, 1));
    if (rank(f, trial) > ech.rows) {
      ech = trial;
      comp = stack_rows(comp, amb.slice_rows(i, 1));
    }
  }
  int m = comp.rows;
  if (target_dim - wdim > m) return {};
  std::vector<Matrix> out;
  for (const Matrix& s : enumerate_subspaces(f, m, target_dim - wdim, budget)) {
    Matrix lifted = s.rows != 0 ? matmul(f, s, comp) : Matrix(0, n);
    out.push_back(rref(f, stack_rows(w, lifted)));
    if (out.back().rows != target_dim)
      throw error(errc::internal_invariant_violation, "extension dimension");
  }
  return out;
}

}  // namespace rrv::ff
