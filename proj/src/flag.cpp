#include "rrv/flag.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

namespace rrv::ff {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t tag) {
  // splitmix64 on a tag-tweaked state; one generator per derived stream.
  std::uint64_t z = seed ^ (tag * 0x9e3779b97f4a7c15ull);
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Flag canonical_flag(const PrimeField& f, const Matrix& basis) {
  if (basis.rows != basis.cols) throw error(errc::dimension_mismatch, "flag basis must be square");
  int n = basis.rows;
  Matrix m = basis;
  std::vector<int> piv(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      int c = piv[static_cast<std::size_t>(j)];
      std::uint32_t v = m.at(i, c);
      if (v == 0) continue;
      for (int t = 0; t < n; ++t) m.at(i, t) = f.sub(m.at(i, t), f.mul(v, m.at(j, t)));
    }
    int c = 0;
    while (c < n && m.at(i, c) == 0) ++c;
    if (c == n) throw error(errc::singular_matrix, "flag basis is singular");
    piv[static_cast<std::size_t>(i)] = c;
    std::uint32_t s = f.inv(m.at(i, c));
    if (s != 1)
      for (int t = 0; t < n; ++t) m.at(i, t) = f.mul(m.at(i, t), s);
  }
  return Flag{f, n, std::move(m)};
}

Flag standard_flag(const PrimeField& f, int n) { return Flag{f, n, Matrix::identity(n)}; }

Flag opposite_flag(const PrimeField& f, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, n - 1 - i) = 1;
  return Flag{f, n, std::move(m)};
}

Flag random_flag(const PrimeField& f, int n, std::uint64_t seed) {
  std::mt19937_64 rng(split_seed(seed, 0x666c6167ull));  // "flag" stream
  std::uniform_int_distribution<std::uint32_t> dist(0, f.p() - 1);
  while (true) {
    Matrix m(n, n);
    for (auto& v : m.a) v = dist(rng);
    if (is_invertible(f, m)) return canonical_flag(f, m);
  }
}

namespace {

// Per (n, p) decode table: pivot permutations in lexicographic order with
// their free positions and block sizes. Free entries of flag-canonical row i
// sit at columns right of its pivot that are not pivots of earlier rows.
struct FlagIndexTable {
  struct Block {
    std::vector<int> pivots;                    // 0-indexed pivot column per row
    std::vector<std::pair<int, int>> free_pos;  // row-major order
    std::uint64_t size = 0;                     // p^free
    std::uint64_t offset = 0;
  };
  int n = 0;
  std::uint32_t p = 0;
  std::uint64_t total = 0;
  std::vector<Block> blocks;
};

const FlagIndexTable& flag_index_table(int n, std::uint32_t p) {
  static std::map<std::pair<int, std::uint32_t>, FlagIndexTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  FlagIndexTable t;
  t.n = n;
  t.p = p;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t offset = 0;
  do {
    FlagIndexTable::Block b;
    b.pivots = perm;
    std::vector<bool> earlier(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) {
      for (int c = perm[static_cast<std::size_t>(i)] + 1; c < n; ++c)
        if (!earlier[static_cast<std::size_t>(c)]) b.free_pos.emplace_back(i, c);
      earlier[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = true;
    }
    unsigned __int128 size = 1;
    for (std::size_t k = 0; k < b.free_pos.size(); ++k) size *= p;
    if (size + offset > static_cast<unsigned __int128>(UINT64_MAX))
      throw error(errc::enumeration_budget_exceeded, "flag count overflows");
    b.size = static_cast<std::uint64_t>(size);
    b.offset = offset;
    offset += b.size;
    t.blocks.push_back(std::move(b));
  } while (std::next_permutation(perm.begin(), perm.end()));
  t.total = offset;
  return cache.emplace(key, std::move(t)).first->second;
}

}  // namespace

std::uint64_t flag_count(int n, std::uint32_t p, std::uint64_t budget) {
  PrimeField f(p);  // validates p
  unsigned __int128 total = 1, layer = 0;
  for (int i = 1; i <= n; ++i) {
    layer = 0;
    unsigned __int128 pk = 1;
    for (int k = 0; k < i; ++k) {
      layer += pk;
      pk *= p;
    }
    total *= layer;
    if (total > static_cast<unsigned __int128>(budget))
      throw error(errc::enumeration_budget_exceeded, "flag count exceeds budget");
  }
  return static_cast<std::uint64_t>(total);
}

Flag flag_from_index(const PrimeField& f, int n, std::uint64_t idx) {
  const FlagIndexTable& t = flag_index_table(n, f.p());
  if (idx >= t.total) throw error(errc::index_out_of_range, "flag index");
  // Linear scan: block counts are tiny (n!) compared to block sizes.
  std::size_t bi = 0;
  while (bi + 1 < t.blocks.size() && t.blocks[bi + 1].offset <= idx) ++bi;
  const auto& b = t.blocks[bi];
  std::uint64_t within = idx - b.offset;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, b.pivots[static_cast<std::size_t>(i)]) = 1;
  for (std::size_t k = b.free_pos.size(); k-- > 0;) {
    m.at(b.free_pos[k].first, b.free_pos[k].second) = static_cast<std::uint32_t>(within % f.p());
    within /= f.p();
  }
  return Flag{f, n, std::move(m)};
}

std::vector<Flag> enumerate_flags(const PrimeField& f, int n, std::uint64_t budget) {
  std::uint64_t total = flag_count(n, f.p(), budget);
  std::vector<Flag> out;
  out.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) out.push_back(flag_from_index(f, n, i));
  return out;
}

void for_each_flag(const PrimeField& f, int n, std::uint64_t begin, std::uint64_t end,
                   const std::function<void(std::uint64_t, const Matrix&)>& visit) {
  const FlagIndexTable& t = flag_index_table(n, f.p());
  if (end > t.total || begin > end) throw error(errc::index_out_of_range, "flag range");
  if (begin == end) return;
  std::uint32_t p = f.p();
  std::uint64_t idx = begin;
  std::size_t bi = 0;
  while (bi + 1 < t.blocks.size() && t.blocks[bi + 1].offset <= idx) ++bi;
  Matrix m(n, n);
  std::vector<std::uint32_t> digits;
  while (idx < end) {
    const auto& b = t.blocks[bi];
    std::fill(m.a.begin(), m.a.end(), 0);
    for (int i = 0; i < n; ++i) m.at(i, b.pivots[static_cast<std::size_t>(i)]) = 1;
    digits.assign(b.free_pos.size(), 0);
    std::uint64_t within = idx - b.offset;
    for (std::size_t k = b.free_pos.size(); k-- > 0;) {
      digits[k] = static_cast<std::uint32_t>(within % p);
      m.at(b.free_pos[k].first, b.free_pos[k].second) = digits[k];
      within /= p;
    }
    std::uint64_t block_end = std::min(end, b.offset + b.size);
    while (true) {
      visit(idx, m);
      ++idx;
      if (idx >= block_end) break;
      std::size_t k = digits.size();
      while (k-- > 0) {
        if (++digits[k] == p) {
          digits[k] = 0;
          m.at(b.free_pos[k].first, b.free_pos[k].second) = 0;
        } else {
          m.at(b.free_pos[k].first, b.free_pos[k].second) = digits[k];
          break;
        }
      }
    }
    ++bi;
  }
}

namespace {

// Incremental echelon for rank bookkeeping only.
struct Echelon {
  const PrimeField* f;
  int cols;
  std::vector<std::vector<std::uint32_t>> rows;  // each with a leading column
  std::vector<int> lead;

  explicit Echelon(const PrimeField& field, int c) : f(&field), cols(c) {}

  // Returns true if the row enlarged the span.
  bool insert(const std::uint32_t* v) {
    std::vector<std::uint32_t> w(v, v + cols);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      std::uint32_t x = w[static_cast<std::size_t>(lead[k])];
      if (x == 0) continue;
      std::uint32_t factor = f->mul(x, f->inv(rows[k][static_cast<std::size_t>(lead[k])]));
      for (int j = lead[k]; j < cols; ++j) w[static_cast<std::size_t>(j)] = f->sub(w[static_cast<std::size_t>(j)], f->mul(factor, rows[k][static_cast<std::size_t>(j)]));
    }
    int c = 0;
    while (c < cols && w[static_cast<std::size_t>(c)] == 0) ++c;
    if (c == cols) return false;
    rows.push_back(std::move(w));
    lead.push_back(c);
    return true;
  }

  int rank() const { return static_cast<int>(rows.size()); }
};

}  // namespace

RankTable rank_table(const Flag& p, const Flag& q) {
  if (!(p.field == q.field) || p.n != q.n)
    throw error(errc::dimension_mismatch, "flags live in different spaces");
  int n = p.n;
  RankTable t;
  t.n = n;
  t.d.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  for (int i = 0; i <= n; ++i) {
    Echelon e(p.field, n);
    for (int r = 0; r < i; ++r) e.insert(p.rows.row(r));
    for (int j = 1; j <= n; ++j) {
      e.insert(q.rows.row(j - 1));
      t.d[static_cast<std::size_t>(i) * (n + 1) + j] = i + j - e.rank();
    }
  }
  return t;
}

perm::Permutation relative_position(const Flag& p, const Flag& q) {
  RankTable t = rank_table(p, q);
  int n = p.n;
  std::vector<int> vals(static_cast<std::size_t>(n), 0);
  for (int i = 1; i <= n; ++i) {
    int found = 0;
    for (int j = 1; j <= n; ++j) {
      int jump = t.at(i, j) - t.at(i - 1, j) - t.at(i, j - 1) + t.at(i - 1, j - 1);
      if (jump == 1) {
        vals[static_cast<std::size_t>(i - 1)] = j;
        ++found;
      } else if (jump != 0) {
        throw error(errc::internal_invariant_violation, "rank table second difference");
      }
    }
    if (found != 1) throw error(errc::internal_invariant_violation, "rank table row jump count");
  }
  return perm::Permutation(vals);
}

Matrix common_basis(const Flag& p, const Flag& q) {
  perm::Permutation s = relative_position(p, q);
  int n = p.n;
  const PrimeField& f = p.field;
  Matrix out(n, n);
  for (int i = 1; i <= n; ++i) {
    Matrix w = intersect_row_spaces(f, p.prefix(i), q.prefix(s(i)));
    Matrix bad = intersect_row_spaces(f, p.prefix(i - 1), q.prefix(s(i)));
    int pick = -1;
    for (int r = 0; r < w.rows; ++r)
      if (bad.rows == 0 || !in_row_space(f, bad, w.row(r))) {
        pick = r;
        break;
      }
    if (pick < 0) throw error(errc::internal_invariant_violation, "no witness outside lower steps");
    for (int c = 0; c < n; ++c) out.at(i - 1, c) = w.at(pick, c);
    // Strict membership checks on both sides.
    bool in_pi = in_row_space(f, p.prefix(i), out.row(i - 1));
    bool in_pm = i > 1 && in_row_space(f, p.prefix(i - 1), out.row(i - 1));
    bool in_qj = in_row_space(f, q.prefix(s(i)), out.row(i - 1));
    bool in_qm = s(i) > 1 && in_row_space(f, q.prefix(s(i) - 1), out.row(i - 1));
    if (!in_pi || in_pm || !in_qj || in_qm)
      throw error(errc::internal_invariant_violation, "witness membership");
  }
  if (!is_invertible(f, out)) throw error(errc::internal_invariant_violation, "witnesses not a basis");
  return out;
}

bool is_transverse(const Flag& p, const Flag& q) {
  RankTable t = rank_table(p, q);
  int n = p.n;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (t.at(i, j) != std::max(0, i + j - n)) return false;
  return true;
}

std::optional<int> is_almost_transverse(const Flag& p, const Flag& q) {
  RankTable t = rank_table(p, q);
  int n = p.n;
  std::optional<int> tpos;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      int expect = std::max(0, i + j - n);
      if (t.at(i, j) == expect) continue;
      if (j == n - i && t.at(i, j) == 1 && !tpos.has_value()) {
        tpos = i;
        continue;
      }
      return std::nullopt;
    }
  return tpos;
}

}  // namespace rrv::ff
