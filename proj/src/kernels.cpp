#include "rrv/kernels.hpp"

#include <algorithm>

#include "rrv/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rrv::kernels {

namespace {
// Flags never exceed the permutation degree cap.
constexpr int kMaxN = perm::max_degree;
}  // namespace

RelposContext relpos_context(const ff::Flag& fixed) {
  RelposContext ctx;
  ctx.f = fixed.field;
  ctx.n = fixed.n;
  ctx.identity_frame = fixed.rows == ff::Matrix::identity(fixed.n);
  if (!ctx.identity_frame) ctx.frame_inverse = ff::inverse(fixed.field, fixed.rows);
  return ctx;
}

void fast_relative_position(const RelposContext& ctx, const ff::Matrix& frame, int* out,
                            std::uint32_t* scratch) {
  const ff::PrimeField& f = ctx.f;
  int n = ctx.n;
  if (n > kMaxN) throw error(errc::degree_out_of_range, "frame too large");
  // scratch <- frame (in the fixed flag's coordinates).
  if (ctx.identity_frame) {
    std::copy(frame.a.begin(), frame.a.end(), scratch);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::uint32_t acc = 0;
        for (int k = 0; k < n; ++k) acc = f.add(acc, f.mul(frame.at(i, k), ctx.frame_inverse.at(k, j)));
        scratch[i * n + j] = acc;
      }
  }
  // Make trailing positions distinct by subtracting earlier rows; row spans of
  // every prefix are preserved, so the trailing permutation is the flag's.
  int owner[kMaxN];
  std::fill(owner, owner + n, -1);
  for (int i = 0; i < n; ++i) {
    std::uint32_t* row = scratch + i * n;
    int t = n - 1;
    while (t >= 0 && row[t] == 0) --t;
    while (t >= 0 && owner[t] >= 0) {
      const std::uint32_t* prev = scratch + owner[t] * n;
      std::uint32_t factor = f.mul(row[t], f.inv(prev[t]));
      for (int c = 0; c <= t; ++c) row[c] = f.sub(row[c], f.mul(factor, prev[c]));
      while (t >= 0 && row[t] == 0) --t;
    }
    if (t < 0) throw error(errc::singular_matrix, "frame rows are dependent");
    owner[t] = i;
    out[t] = i + 1;  // sigma(t+1) = i+1: sigma is the inverse of the trailing map
  }
}

namespace {

// Lexicographic rank of a one line form (1-indexed values), factorial base.
int lex_rank_of(const int* one_line, int n) {
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (one_line[j] < one_line[i]) ++smaller;
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int k = 2; k <= n; ++k) r *= static_cast<std::uint64_t>(k);
  return r;
}

PairHistogram histogram_range(const ff::Flag& p, const ff::Flag& q, std::uint64_t begin,
                              std::uint64_t end) {
  int n = p.n;
  RelposContext cp = relpos_context(p);
  RelposContext cq = relpos_context(q);
  PairHistogram h;
  h.n = n;
  h.order = factorial(n);
  h.counts.assign(static_cast<std::size_t>(h.order) * h.order, 0);
  std::uint32_t scratch[kMaxN * kMaxN];
  int u[kMaxN], v[kMaxN];
  ff::for_each_flag(p.field, n, begin, end, [&](std::uint64_t, const ff::Matrix& frame) {
    fast_relative_position(cp, frame, u, scratch);
    int ur = lex_rank_of(u, n);
    fast_relative_position(cq, frame, v, scratch);
    int vr = lex_rank_of(v, n);
    ++h.counts[static_cast<std::size_t>(ur) * h.order + vr];
    ++h.total;
  });
  return h;
}

void check_pair(const ff::Flag& p, const ff::Flag& q) {
  if (!(p.field == q.field) || p.n != q.n)
    throw error(errc::dimension_mismatch, "flags live in different spaces");
}

}  // namespace

PairHistogram relpos_pair_histogram_serial(const ff::Flag& p, const ff::Flag& q,
                                           std::uint64_t budget) {
  check_pair(p, q);
  std::uint64_t total = ff::flag_count(p.n, p.field.p(), budget);
  return histogram_range(p, q, 0, total);
}

PairHistogram relpos_pair_histogram(const ff::Flag& p, const ff::Flag& q, std::uint64_t budget) {
  check_pair(p, q);
  std::uint64_t total = ff::flag_count(p.n, p.field.p(), budget);
#ifdef _OPENMP
  PairHistogram h;
  h.n = p.n;
  h.order = factorial(p.n);
  h.counts.assign(static_cast<std::size_t>(h.order) * h.order, 0);
  int threads = omp_get_max_threads();
  std::uint64_t chunks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(static_cast<std::uint64_t>(threads) * 8, total));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::uint64_t c = 0; c < chunks; ++c) {
    std::uint64_t begin = total / chunks * c + std::min<std::uint64_t>(c, total % chunks);
    std::uint64_t end = begin + total / chunks + (c < total % chunks ? 1 : 0);
    PairHistogram local = histogram_range(p, q, begin, end);
#pragma omp critical(rrv_hist_merge)
    {
      for (std::size_t k = 0; k < h.counts.size(); ++k) h.counts[k] += local.counts[k];
      h.total += local.total;
    }
  }
  return h;
#else
  return histogram_range(p, q, 0, total);
#endif
}

std::vector<std::uint64_t> filter_flags_serial(const ff::PrimeField& f, int n,
                                               const std::function<bool(const ff::Matrix&)>& pred,
                                               std::uint64_t budget) {
  std::uint64_t total = ff::flag_count(n, f.p(), budget);
  std::vector<std::uint64_t> out;
  ff::for_each_flag(f, n, 0, total, [&](std::uint64_t idx, const ff::Matrix& frame) {
    if (pred(frame)) out.push_back(idx);
  });
  return out;
}

std::vector<std::uint64_t> filter_flags(const ff::PrimeField& f, int n,
                                        const std::function<bool(const ff::Matrix&)>& pred,
                                        std::uint64_t budget) {
#ifdef _OPENMP
  std::uint64_t total = ff::flag_count(n, f.p(), budget);
  int threads = omp_get_max_threads();
  std::uint64_t chunks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(static_cast<std::uint64_t>(threads) * 8, total));
  std::vector<std::vector<std::uint64_t>> parts(chunks);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::uint64_t c = 0; c < chunks; ++c) {
    std::uint64_t begin = total / chunks * c + std::min<std::uint64_t>(c, total % chunks);
    std::uint64_t end = begin + total / chunks + (c < total % chunks ? 1 : 0);
    ff::for_each_flag(f, n, begin, end, [&](std::uint64_t idx, const ff::Matrix& frame) {
      if (pred(frame)) parts[c].push_back(idx);
    });
  }
  std::vector<std::uint64_t> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
#else
  return filter_flags_serial(f, n, pred, budget);
#endif
}

std::vector<tangent::TangentReport> tangent_sweep_serial(
    const ff::PrimeField& f, const std::vector<ff::Matrix>& points,
    const std::vector<tangent::MinorCondition>& conditions, int stabilizer_dim,
    bool parameter_column) {
  std::vector<tangent::TangentReport> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    out[i] = tangent::tangent_at(f, points[i], conditions, stabilizer_dim, parameter_column);
  return out;
}

std::vector<tangent::TangentReport> tangent_sweep(const ff::PrimeField& f,
                                                  const std::vector<ff::Matrix>& points,
                                                  const std::vector<tangent::MinorCondition>& conditions,
                                                  int stabilizer_dim, bool parameter_column) {
#ifdef _OPENMP
  std::vector<tangent::TangentReport> out(points.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      out[i] = tangent::tangent_at(f, points[i], conditions, stabilizer_dim, parameter_column);
    } catch (...) {
#pragma omp critical(rrv_sweep_fail)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
#else
  return tangent_sweep_serial(f, points, conditions, stabilizer_dim, parameter_column);
#endif
}

}  // namespace rrv::kernels
