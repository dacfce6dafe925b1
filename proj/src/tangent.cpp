#include "rrv/tangent.hpp"

#include <algorithm>

#include "rrv/error.hpp"

namespace rrv::tangent {

Dual dual_det(const ff::PrimeField& f, const std::vector<Dual>& entries, int m) {
  if (m == 0) return {1, 0};
  if (static_cast<int>(entries.size()) != m * m)
    throw error(errc::dimension_mismatch, "dual determinant shape");
  // Cofactor expansion along the first row of the active submatrix.
  std::vector<int> cols(static_cast<std::size_t>(m));
  for (int c = 0; c < m; ++c) cols[static_cast<std::size_t>(c)] = c;
  struct Rec {
    const ff::PrimeField& f;
    const std::vector<Dual>& e;
    int m;
    Dual run(int row, std::vector<int>& active) {
      if (active.empty()) return {1, 0};
      Dual acc{0, 0};
      for (std::size_t k = 0; k < active.size(); ++k) {
        Dual pivot = e[static_cast<std::size_t>(row * m + active[k])];
        if (pivot.a == 0 && pivot.b == 0) continue;
        int col = active[k];
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(k));
        Dual sub = run(row + 1, active);
        active.insert(active.begin() + static_cast<std::ptrdiff_t>(k), col);
        Dual term = dual_mul(f, pivot, sub);
        acc = (k % 2 == 0) ? dual_add(f, acc, term) : dual_sub(f, acc, term);
      }
      return acc;
    }
  } rec{f, entries, m};
  return rec.run(0, cols);
}

std::vector<MinorCondition> schubert_conditions(const ff::Matrix& fixed_rows,
                                                const perm::Permutation& sigma) {
  int n = fixed_rows.cols;
  if (fixed_rows.rows != n) throw error(errc::dimension_mismatch, "fixed basis must be square");
  if (sigma.degree() != n) throw error(errc::degree_mismatch, "datum degree");
  perm::RankMatrix r = perm::rank_matrix(sigma);
  std::vector<MinorCondition> out;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      int bound = i + j - r.at(i, j);
      if (bound >= std::min(i + j, n)) continue;
      MinorCondition c;
      c.fixed = fixed_rows.slice_rows(0, i);
      c.fixed_ds = ff::Matrix(i, n);
      c.moving.resize(static_cast<std::size_t>(j));
      for (int k = 0; k < j; ++k) c.moving[static_cast<std::size_t>(k)] = k;
      c.bound = bound;
      out.push_back(std::move(c));
    }
  return out;
}

std::vector<MinorCondition> schubert_conditions(const ff::Flag& fixed,
                                                const perm::Permutation& sigma) {
  return schubert_conditions(fixed.rows, sigma);
}

bool JacobianSpan::insert(const ff::PrimeField& f, const std::uint32_t* v) {
  std::vector<std::uint32_t> w(v, v + coordinates);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    int lc = lead[k];
    std::uint32_t x = w[static_cast<std::size_t>(lc)];
    if (x == 0) continue;
    std::uint32_t factor = f.mul(x, f.inv(rows[k][static_cast<std::size_t>(lc)]));
    for (int j = lc; j < coordinates; ++j)
      w[static_cast<std::size_t>(j)] = f.sub(w[static_cast<std::size_t>(j)], f.mul(factor, rows[k][static_cast<std::size_t>(j)]));
  }
  int c = 0;
  while (c < coordinates && w[static_cast<std::size_t>(c)] == 0) ++c;
  if (c == coordinates) return false;
  rows.push_back(std::move(w));
  lead.push_back(c);
  return true;
}

namespace {

bool next_combination(std::vector<int>& c, int n) {
  int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[static_cast<std::size_t>(i)] < n - k + i) {
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

// Rank, right kernel vector, and left kernel vector of a small square matrix
// of rank exactly m-1; used to reconstruct the full cofactor matrix, which is
// beta * l k^T for singular matrices. Plain elimination; m stays tiny.
struct SmallRankInfo {
  int rank = 0;
  std::vector<std::uint32_t> right;  // A right = 0 when rank = m-1
  std::vector<std::uint32_t> left;   // left A = 0 when rank = m-1
};

SmallRankInfo small_rank(const ff::PrimeField& f, const std::vector<std::uint32_t>& s, int m) {
  SmallRankInfo info;
  std::vector<std::uint32_t> a = s;
  // Track row operations to recover the left kernel: ops applied to identity.
  std::vector<std::uint32_t> t(static_cast<std::size_t>(m) * m, 0);
  for (int i = 0; i < m; ++i) t[static_cast<std::size_t>(i * m + i)] = 1;
  std::vector<int> pivot_col(static_cast<std::size_t>(m), -1);
  int rank = 0;
  for (int col = 0; col < m && rank < m; ++col) {
    int pr = -1;
    for (int r = rank; r < m; ++r)
      if (a[static_cast<std::size_t>(r * m + col)] != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    for (int c = 0; c < m; ++c) {
      std::swap(a[static_cast<std::size_t>(rank * m + c)], a[static_cast<std::size_t>(pr * m + c)]);
      std::swap(t[static_cast<std::size_t>(rank * m + c)], t[static_cast<std::size_t>(pr * m + c)]);
    }
    std::uint32_t inv = f.inv(a[static_cast<std::size_t>(rank * m + col)]);
    for (int r = 0; r < m; ++r) {
      if (r == rank) continue;
      std::uint32_t x = a[static_cast<std::size_t>(r * m + col)];
      if (x == 0) continue;
      std::uint32_t factor = f.mul(x, inv);
      for (int c = 0; c < m; ++c) {
        a[static_cast<std::size_t>(r * m + c)] =
            f.sub(a[static_cast<std::size_t>(r * m + c)], f.mul(factor, a[static_cast<std::size_t>(rank * m + c)]));
        t[static_cast<std::size_t>(r * m + c)] =
            f.sub(t[static_cast<std::size_t>(r * m + c)], f.mul(factor, t[static_cast<std::size_t>(rank * m + c)]));
      }
    }
    pivot_col[static_cast<std::size_t>(rank)] = col;
    ++rank;
  }
  info.rank = rank;
  if (rank != m - 1) return info;
  // Left kernel: the row of t corresponding to the zero row of the reduction.
  info.left.assign(t.begin() + static_cast<std::ptrdiff_t>(rank) * m,
                   t.begin() + static_cast<std::ptrdiff_t>(rank + 1) * m);
  // Right kernel: the single free column, expressed against the pivots.
  std::vector<bool> is_pivot(static_cast<std::size_t>(m), false);
  for (int r = 0; r < rank; ++r) is_pivot[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = true;
  int free_col = 0;
  while (is_pivot[static_cast<std::size_t>(free_col)]) ++free_col;
  info.right.assign(static_cast<std::size_t>(m), 0);
  info.right[static_cast<std::size_t>(free_col)] = 1;
  for (int r = 0; r < rank; ++r) {
    int pc = pivot_col[static_cast<std::size_t>(r)];
    std::uint32_t num = a[static_cast<std::size_t>(r * m + free_col)];
    std::uint32_t den = a[static_cast<std::size_t>(r * m + pc)];
    info.right[static_cast<std::size_t>(pc)] = f.neg(f.mul(num, f.inv(den)));
  }
  return info;
}

std::uint32_t small_det(const ff::PrimeField& f, std::vector<std::uint32_t> a, int m) {
  std::uint32_t det = 1;
  for (int col = 0; col < m; ++col) {
    int pr = -1;
    for (int r = col; r < m; ++r)
      if (a[static_cast<std::size_t>(r * m + col)] != 0) {
        pr = r;
        break;
      }
    if (pr < 0) return 0;
    if (pr != col) {
      for (int c = 0; c < m; ++c)
        std::swap(a[static_cast<std::size_t>(col * m + c)], a[static_cast<std::size_t>(pr * m + c)]);
      det = f.neg(det);
    }
    std::uint32_t pivot = a[static_cast<std::size_t>(col * m + col)];
    det = f.mul(det, pivot);
    std::uint32_t inv = f.inv(pivot);
    for (int r = col + 1; r < m; ++r) {
      std::uint32_t x = a[static_cast<std::size_t>(r * m + col)];
      if (x == 0) continue;
      std::uint32_t factor = f.mul(x, inv);
      for (int c = col; c < m; ++c)
        a[static_cast<std::size_t>(r * m + c)] =
            f.sub(a[static_cast<std::size_t>(r * m + c)], f.mul(factor, a[static_cast<std::size_t>(col * m + c)]));
    }
  }
  return det;
}

}  // namespace

JacobianSpan jacobian_span(const ff::PrimeField& f, const ff::Matrix& moving,
                           const std::vector<MinorCondition>& conditions, bool parameter_column,
                           bool use_dual_reference) {
  int n = moving.cols;
  int coords = moving.rows * n + (parameter_column ? 1 : 0);
  JacobianSpan span;
  span.coordinates = coords;
  std::vector<std::uint32_t> grad(static_cast<std::size_t>(coords));

  for (const auto& cond : conditions) {
    if (cond.fixed.cols != n || cond.fixed_ds.rows != cond.fixed.rows || cond.fixed_ds.cols != n)
      throw error(errc::dimension_mismatch, "condition shape");
    int fr = cond.fixed.rows;
    int mr = static_cast<int>(cond.moving.size());
    for (int idx : cond.moving)
      if (idx < 0 || idx >= moving.rows) throw error(errc::index_out_of_range, "moving row index");
    int total_rows = fr + mr;
    int m = cond.bound + 1;
    if (m > total_rows || m > n) continue;  // no minors of that size: vacuous

    std::vector<int> rsel(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) rsel[static_cast<std::size_t>(k)] = k;
    do {
      std::vector<int> csel(static_cast<std::size_t>(m));
      for (int k = 0; k < m; ++k) csel[static_cast<std::size_t>(k)] = k;
      do {
        // Assemble the minor: stacked row t is fixed row t for t < fr, else
        // moving row cond.moving[t - fr].
        std::vector<std::uint32_t> s(static_cast<std::size_t>(m) * m);
        std::vector<std::uint32_t> sds(static_cast<std::size_t>(m) * m, 0);
        bool any_ds = false;
        for (int t = 0; t < m; ++t) {
          int src = rsel[static_cast<std::size_t>(t)];
          for (int u = 0; u < m; ++u) {
            int c = csel[static_cast<std::size_t>(u)];
            if (src < fr) {
              s[static_cast<std::size_t>(t * m + u)] = cond.fixed.at(src, c);
              std::uint32_t d = cond.fixed_ds.at(src, c);
              sds[static_cast<std::size_t>(t * m + u)] = d;
              if (d != 0) any_ds = true;
            } else {
              s[static_cast<std::size_t>(t * m + u)] = moving.at(cond.moving[static_cast<std::size_t>(src - fr)], c);
            }
          }
        }
        ++span.minors;
        std::fill(grad.begin(), grad.end(), 0);
        bool nonzero = false;

        if (use_dual_reference) {
          std::vector<Dual> e(static_cast<std::size_t>(m) * m);
          for (int k = 0; k < m * m; ++k) e[static_cast<std::size_t>(k)] = {s[static_cast<std::size_t>(k)], 0};
          Dual base = dual_det(f, e, m);
          if (base.a != 0) throw error(errc::not_a_member, "governing minor does not vanish");
          for (int t = 0; t < m; ++t) {
            int src = rsel[static_cast<std::size_t>(t)];
            if (src < fr) continue;
            int mrow = cond.moving[static_cast<std::size_t>(src - fr)];
            for (int u = 0; u < m; ++u) {
              e[static_cast<std::size_t>(t * m + u)].b = 1;
              Dual d = dual_det(f, e, m);
              e[static_cast<std::size_t>(t * m + u)].b = 0;
              std::uint32_t g = d.b;
              if (g != 0) {
                grad[static_cast<std::size_t>(mrow * n + csel[static_cast<std::size_t>(u)])] = g;
                nonzero = true;
              }
            }
          }
          if (parameter_column && any_ds) {
            for (int k = 0; k < m * m; ++k) e[static_cast<std::size_t>(k)].b = sds[static_cast<std::size_t>(k)];
            Dual d = dual_det(f, e, m);
            if (d.b != 0) {
              grad[static_cast<std::size_t>(coords - 1)] = d.b;
              nonzero = true;
            }
          }
        } else {
          // Fast path: for a vanishing minor the cofactor matrix is beta l k^T
          // (rank one) or zero, recovered from the kernels of the submatrix.
          SmallRankInfo info = small_rank(f, s, m);
          if (info.rank == m) throw error(errc::not_a_member, "governing minor does not vanish");
          if (info.rank < m - 1) continue;  // every cofactor vanishes
          // Scale: compute one explicit cofactor where l and k are nonzero.
          int t0 = 0, u0 = 0;
          while (info.left[static_cast<std::size_t>(t0)] == 0) ++t0;
          while (info.right[static_cast<std::size_t>(u0)] == 0) ++u0;
          std::vector<std::uint32_t> sub(static_cast<std::size_t>(m - 1) * (m - 1));
          for (int t = 0, tt = 0; t < m; ++t) {
            if (t == t0) continue;
            for (int u = 0, uu = 0; u < m; ++u) {
              if (u == u0) continue;
              sub[static_cast<std::size_t>(tt * (m - 1) + uu)] = s[static_cast<std::size_t>(t * m + u)];
              ++uu;
            }
            ++tt;
          }
          std::uint32_t c0 = small_det(f, sub, m - 1);
          if ((t0 + u0) % 2 == 1) c0 = f.neg(c0);
          std::uint32_t beta =
              f.mul(c0, f.inv(f.mul(info.left[static_cast<std::size_t>(t0)], info.right[static_cast<std::size_t>(u0)])));
          for (int t = 0; t < m; ++t) {
            int src = rsel[static_cast<std::size_t>(t)];
            std::uint32_t lt = info.left[static_cast<std::size_t>(t)];
            if (lt == 0) continue;
            std::uint32_t row_scale = f.mul(beta, lt);
            if (src >= fr) {
              int mrow = cond.moving[static_cast<std::size_t>(src - fr)];
              for (int u = 0; u < m; ++u) {
                std::uint32_t g = f.mul(row_scale, info.right[static_cast<std::size_t>(u)]);
                if (g != 0) {
                  grad[static_cast<std::size_t>(mrow * n + csel[static_cast<std::size_t>(u)])] = g;
                  nonzero = true;
                }
              }
            } else if (parameter_column && any_ds) {
              std::uint32_t acc = 0;
              for (int u = 0; u < m; ++u)
                acc = f.add(acc, f.mul(sds[static_cast<std::size_t>(t * m + u)], info.right[static_cast<std::size_t>(u)]));
              if (acc != 0) {
                std::uint32_t prev = grad[static_cast<std::size_t>(coords - 1)];
                grad[static_cast<std::size_t>(coords - 1)] = f.add(prev, f.mul(row_scale, acc));
                nonzero = true;
              }
            }
          }
        }

        if (nonzero) span.insert(f, grad.data());
      } while (next_combination(csel, n));
    } while (next_combination(rsel, total_rows));
  }
  return span;
}

TangentReport report_from_span(const JacobianSpan& span, int stabilizer_dim) {
  TangentReport r;
  r.coordinates = span.coordinates;
  r.minors = span.minors;
  r.jacobian_rank = span.rank();
  r.nullity = span.coordinates - r.jacobian_rank;
  r.stabilizer_dim = stabilizer_dim;
  r.tangent_dim = r.nullity - stabilizer_dim;
  if (r.tangent_dim < 0)
    throw error(errc::internal_invariant_violation, "tangent dimension below gauge dimension");
  return r;
}

TangentReport report_from_spans(const ff::PrimeField& f, const std::vector<const JacobianSpan*>& spans,
                                int stabilizer_dim) {
  if (spans.empty()) throw error(errc::dimension_mismatch, "no spans");
  JacobianSpan merged;
  merged.coordinates = spans.front()->coordinates;
  for (const JacobianSpan* s : spans) {
    if (s->coordinates != merged.coordinates)
      throw error(errc::dimension_mismatch, "span coordinate mismatch");
    merged.minors += s->minors;
    for (const auto& row : s->rows) merged.insert(f, row.data());
  }
  return report_from_span(merged, stabilizer_dim);
}

TangentReport tangent_at(const ff::PrimeField& f, const ff::Matrix& moving,
                         const std::vector<MinorCondition>& conditions, int stabilizer_dim,
                         bool parameter_column) {
  JacobianSpan span = jacobian_span(f, moving, conditions, parameter_column);
  return report_from_span(span, stabilizer_dim);
}

}  // namespace rrv::tangent
