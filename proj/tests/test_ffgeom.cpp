#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "rrv/flag.hpp"
#include "rrv/matrix.hpp"
#include "rrv/perm.hpp"

using namespace rrv;
using namespace rrv::ff;

namespace {

Matrix from_rows(int rows, int cols, std::vector<std::uint32_t> vals) {
  Matrix m(rows, cols);
  m.a = std::move(vals);
  return m;
}

// Flag whose step i is spanned by e_{pi(1)},...,e_{pi(i)}.
Flag perm_flag(const PrimeField& f, const perm::Permutation& pi) {
  int n = pi.degree();
  Matrix m(n, n);
  for (int k = 1; k <= n; ++k) m.at(k - 1, pi(k) - 1) = 1;
  return Flag{f, n, std::move(m)};
}

// Independent oracle: canonicalize every invertible matrix by brute force.
std::set<std::vector<std::uint32_t>> brute_flag_set(int n, std::uint32_t p) {
  PrimeField f(p);
  std::uint64_t total = 1;
  for (int k = 0; k < n * n; ++k) total *= p;
  std::set<std::vector<std::uint32_t>> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Matrix m(n, n);
    std::uint64_t v = idx;
    for (auto& e : m.a) {
      e = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    if (!is_invertible(f, m)) continue;
    out.insert(canonical_flag(f, m).rows.a);
  }
  return out;
}

}  // namespace

TEST_CASE("prime field arithmetic and validation") {
  PrimeField f5(5);
  CHECK(f5.add(3, 4) == 2);
  CHECK(f5.sub(1, 3) == 3);
  CHECK(f5.mul(3, 4) == 2);
  CHECK(f5.inv(2) == 3);
  CHECK(f5.neg(2) == 3);
  CHECK(f5.reduce(-7) == 3);
  for (std::uint32_t x = 1; x < 5; ++x) CHECK(f5.mul(x, f5.inv(x)) == 1);
  PrimeField f31(31);
  for (std::uint32_t x = 1; x < 31; ++x) CHECK(f31.mul(x, f31.inv(x)) == 1);
  CHECK_THROWS_AS(PrimeField(1), error);
  CHECK_THROWS_AS(PrimeField(4), error);
  CHECK_THROWS_AS(PrimeField(33), error);
  try {
    PrimeField bad(6);
  } catch (const error& e) {
    CHECK(e.code() == errc::invalid_field);
  }
  CHECK_THROWS_AS(f5.inv(0), error);
}

TEST_CASE("rank rref kernel inverse on frozen examples") {
  PrimeField f2(2);
  Matrix m = from_rows(2, 3, {1, 1, 0, 0, 0, 1});
  CHECK(rank(f2, m) == 2);
  Matrix k = kernel_basis(f2, m);
  CHECK(k == from_rows(1, 3, {1, 1, 0}));
  // Kernel rows annihilate the matrix.
  Matrix prod = matmul(f2, k, from_rows(3, 2, {1, 0, 1, 0, 0, 1}));
  CHECK(prod == from_rows(1, 2, {0, 0}));

  PrimeField f5(5);
  Matrix r = rref(f5, from_rows(3, 3, {2, 4, 0, 1, 2, 0, 0, 0, 3}));
  CHECK(r == from_rows(2, 3, {1, 2, 0, 0, 0, 1}));

  Matrix u = from_rows(2, 2, {1, 1, 0, 1});
  CHECK(inverse(f2, u) == u);
  Matrix a5 = from_rows(2, 2, {2, 1, 1, 1});
  Matrix inv5 = inverse(f5, a5);
  CHECK(matmul(f5, a5, inv5) == Matrix::identity(2));
  CHECK_THROWS_AS(inverse(f2, from_rows(2, 2, {1, 1, 1, 1})), error);
  CHECK(is_invertible(f2, u));
  CHECK_FALSE(is_invertible(f2, from_rows(2, 2, {1, 1, 1, 1})));
}

TEST_CASE("row space membership and intersection") {
  PrimeField f2(2);
  Matrix ab = from_rows(2, 3, {1, 0, 0, 0, 1, 0});
  std::vector<std::uint32_t> v{1, 1, 0};
  CHECK(in_row_space(f2, ab, v.data()));
  std::vector<std::uint32_t> w{0, 0, 1};
  CHECK_FALSE(in_row_space(f2, ab, w.data()));

  Matrix bc = from_rows(2, 3, {0, 1, 0, 0, 0, 1});
  Matrix meet = intersect_row_spaces(f2, ab, bc);
  CHECK(meet == from_rows(1, 3, {0, 1, 0}));
  // Dimension law dim(A meet B) = dim A + dim B - dim(A + B) on random spans.
  PrimeField f3(3);
  for (std::uint64_t s = 0; s < 30; ++s) {
    Matrix x(2, 4), y(2, 4);
    std::uint64_t state = split_seed(s, 77);
    for (auto& e : x.a) {
      state = split_seed(state, 1);
      e = static_cast<std::uint32_t>(state % 3);
    }
    for (auto& e : y.a) {
      state = split_seed(state, 2);
      e = static_cast<std::uint32_t>(state % 3);
    }
    Matrix m2 = intersect_row_spaces(f3, x, y);
    int expect = rank(f3, x) + rank(f3, y) - rank(f3, stack_rows(x, y));
    CHECK(m2.rows == expect);
    for (int r = 0; r < m2.rows; ++r) {
      CHECK(in_row_space(f3, x, m2.row(r)));
      CHECK(in_row_space(f3, y, m2.row(r)));
    }
  }
}

TEST_CASE("subspace counting matches Gaussian binomials") {
  CHECK(subspace_count(4, 2, 2) == 35);
  CHECK(subspace_count(4, 1, 2) == 15);
  CHECK(subspace_count(4, 3, 2) == 15);
  CHECK(subspace_count(4, 0, 2) == 1);
  CHECK(subspace_count(4, 4, 2) == 1);
  CHECK(subspace_count(3, 1, 3) == 13);
  CHECK(subspace_count(2, 1, 13) == 14);
}

TEST_CASE("subspace enumeration is canonical distinct and indexable") {
  PrimeField f2(2);
  auto subs = enumerate_subspaces(f2, 4, 2);
  CHECK(subs.size() == 35);
  CHECK(subs[0] == from_rows(2, 4, {1, 0, 0, 0, 0, 1, 0, 0}));
  std::set<std::vector<std::uint32_t>> seen;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    CHECK(rref(f2, subs[i]) == subs[i]);
    seen.insert(subs[i].a);
    CHECK(subspace_from_index(f2, 4, 2, i) == subs[i]);
  }
  CHECK(seen.size() == 35);
  CHECK_THROWS_AS(subspace_from_index(f2, 4, 2, 35), error);
  CHECK_THROWS_AS(enumerate_subspaces(PrimeField(31), 12, 6, 1000), error);
  try {
    enumerate_subspaces(PrimeField(31), 12, 6, 1000);
  } catch (const error& e) {
    CHECK(e.code() == errc::enumeration_budget_exceeded);
  }
}

TEST_CASE("extension enumeration respects containment") {
  PrimeField f2(2);
  Matrix fixed = from_rows(1, 3, {1, 0, 0});
  Matrix ambient = Matrix::identity(3);
  auto exts = enumerate_extensions(f2, fixed, ambient, 2);
  CHECK(exts.size() == 3);  // [2 choose 1]_2
  std::set<std::vector<std::uint32_t>> distinct;
  for (const auto& e : exts) {
    CHECK(e.rows == 2);
    CHECK(in_row_space(f2, e, fixed.row(0)));
    distinct.insert(e.a);
  }
  CHECK(distinct.size() == 3);

  PrimeField f3(3);
  Matrix amb2 = from_rows(3, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0});
  auto exts2 = enumerate_extensions(f3, from_rows(1, 4, {0, 1, 0, 0}), amb2, 2);
  CHECK(exts2.size() == 4);  // [2 choose 1]_3
  for (const auto& e : exts2)
    for (int r = 0; r < e.rows; ++r) CHECK(in_row_space(f3, amb2, e.row(r)));
  // Fixed space outside the ambient space is rejected.
  CHECK_THROWS_AS(enumerate_extensions(f3, from_rows(1, 4, {0, 0, 0, 1}), amb2, 2), error);
}

TEST_CASE("canonical flag form is idempotent and basis independent") {
  PrimeField f5(5);
  Matrix m = from_rows(3, 3, {2, 1, 0, 3, 3, 1, 1, 0, 0});
  Flag fl = canonical_flag(f5, m);
  CHECK(canonical_flag(f5, fl.rows).rows == fl.rows);
  // Lower triangular change of basis preserves every prefix span.
  Matrix lower = from_rows(3, 3, {4, 0, 0, 2, 1, 0, 3, 2, 2});
  CHECK(canonical_flag(f5, matmul(f5, lower, m)).rows == fl.rows);
  CHECK_THROWS_AS(canonical_flag(f5, from_rows(2, 3, {1, 0, 0, 0, 1, 0})), error);
  CHECK_THROWS_AS(canonical_flag(f5, from_rows(2, 2, {1, 2, 2, 4})), error);
  try {
    canonical_flag(f5, from_rows(2, 2, {1, 2, 2, 4}));
  } catch (const error& e) {
    CHECK(e.code() == errc::singular_matrix);
  }
}

TEST_CASE("flag counts match the q factorial") {
  CHECK(flag_count(2, 2) == 3);
  CHECK(flag_count(3, 2) == 21);
  CHECK(flag_count(4, 2) == 315);
  CHECK(flag_count(3, 3) == 52);
  CHECK(flag_count(4, 13) == 6097560);
  CHECK(flag_count(5, 2) == 9765);
  CHECK_THROWS_AS(flag_count(4, 13, 1000000), error);
}

TEST_CASE("flag enumeration matches brute force canonicalization") {
  for (auto [n, p] : {std::pair<int, std::uint32_t>{2, 3}, {3, 2}, {3, 3}, {4, 2}}) {
    PrimeField f(p);
    auto brute = brute_flag_set(n, p);
    CHECK(brute.size() == flag_count(n, p));
    std::set<std::vector<std::uint32_t>> enumerated;
    std::uint64_t total = flag_count(n, p);
    for (std::uint64_t i = 0; i < total; ++i) {
      Flag fl = flag_from_index(f, n, i);
      CHECK(canonical_flag(f, fl.rows).rows == fl.rows);
      enumerated.insert(fl.rows.a);
    }
    CHECK(enumerated == brute);
  }
  PrimeField f2(2);
  CHECK_THROWS_AS(flag_from_index(f2, 3, 21), error);
  auto flags = enumerate_flags(f2, 3);
  CHECK(flags.size() == 21);
}

TEST_CASE("random flags are canonical and seed deterministic") {
  PrimeField f3(3);
  Flag a = random_flag(f3, 4, 12345);
  Flag b = random_flag(f3, 4, 12345);
  Flag c = random_flag(f3, 4, 54321);
  CHECK(a.rows == b.rows);
  CHECK_FALSE(a.rows == c.rows);
  CHECK(canonical_flag(f3, a.rows).rows == a.rows);
  CHECK(is_invertible(f3, a.rows));
}

TEST_CASE("rank tables for standard and opposite pairs") {
  PrimeField f5(5);
  int n = 4;
  Flag std4 = standard_flag(f5, n);
  Flag opp4 = opposite_flag(f5, n);
  RankTable same = rank_table(std4, std4);
  RankTable cross = rank_table(std4, opp4);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      CHECK(same.at(i, j) == std::min(i, j));
      CHECK(cross.at(i, j) == std::max(0, i + j - n));
    }
}

TEST_CASE("relative position of permutation flags inverts the permutation") {
  PrimeField f3(3);
  int n = 4;
  Flag base = standard_flag(f3, n);
  for (const auto& pi : perm::all_permutations(n)) {
    Flag q = perm_flag(f3, pi);
    CHECK(relative_position(base, q) == pi.inverse());
    CHECK(relative_position(q, base) == pi);
  }
}

TEST_CASE("relative position is antisymmetric under swapping flags") {
  PrimeField f2(2);
  for (std::uint64_t s = 0; s < 40; ++s) {
    Flag p = random_flag(f2, 4, split_seed(s, 1));
    Flag q = random_flag(f2, 4, split_seed(s, 2));
    perm::Permutation fwd = relative_position(p, q);
    CHECK(relative_position(q, p) == fwd.inverse());
  }
}

TEST_CASE("relative position frozen small examples") {
  PrimeField f5(5);
  Flag p = standard_flag(f5, 3);
  Flag q1 = canonical_flag(f5, from_rows(3, 3, {0, 1, 0, 1, 0, 0, 0, 0, 1}));
  CHECK(relative_position(p, q1) == perm::Permutation::parse("213"));
  Flag q2 = canonical_flag(f5, from_rows(3, 3, {1, 1, 0, 0, 1, 1, 0, 0, 1}));
  CHECK(relative_position(p, q2) == perm::Permutation::parse("312"));
}

TEST_CASE("common basis rows witness both flags") {
  PrimeField f3(3);
  for (std::uint64_t s = 0; s < 25; ++s) {
    Flag p = random_flag(f3, 4, split_seed(s, 3));
    Flag q = random_flag(f3, 4, split_seed(s, 4));
    perm::Permutation sigma = relative_position(p, q);
    Matrix basis = common_basis(p, q);
    CHECK(is_invertible(f3, basis));
    for (int i = 1; i <= 4; ++i) {
      CHECK(in_row_space(f3, p.prefix(i), basis.row(i - 1)));
      if (i > 1) CHECK_FALSE(in_row_space(f3, p.prefix(i - 1), basis.row(i - 1)));
      CHECK(in_row_space(f3, q.prefix(sigma(i)), basis.row(i - 1)));
      if (sigma(i) > 1) CHECK_FALSE(in_row_space(f3, q.prefix(sigma(i) - 1), basis.row(i - 1)));
    }
  }
}

TEST_CASE("transversality detection") {
  PrimeField f5(5);
  Flag std4 = standard_flag(f5, 4);
  Flag opp4 = opposite_flag(f5, 4);
  CHECK(is_transverse(std4, opp4));
  CHECK_FALSE(is_transverse(std4, std4));
  CHECK_FALSE(is_almost_transverse(std4, opp4).has_value());
  CHECK_FALSE(is_almost_transverse(std4, std4).has_value());
  for (std::uint64_t s = 0; s < 60; ++s) {
    Flag p = random_flag(f5, 4, split_seed(s, 5));
    Flag q = random_flag(f5, 4, split_seed(s, 6));
    bool t = is_transverse(p, q);
    CHECK(t == (relative_position(p, q) == perm::Permutation::longest(4)));
  }
}

TEST_CASE("almost transverse pairs sit one step below the longest element") {
  PrimeField f5(5);
  int n = 4;
  Flag base = standard_flag(f5, n);
  perm::Permutation w0 = perm::Permutation::longest(n);
  for (int t = 1; t < n; ++t) {
    perm::Permutation target = perm::compose(w0, perm::Permutation::simple(n, t));
    Flag q = perm_flag(f5, target.inverse());
    CHECK(relative_position(base, q) == target);
    auto found = is_almost_transverse(base, q);
    REQUIRE(found.has_value());
    CHECK(*found == t);
    CHECK_FALSE(is_transverse(base, q));
  }
}

TEST_CASE("rank table rejects mismatched flags") {
  PrimeField f2(2);
  PrimeField f3(3);
  Flag a = standard_flag(f2, 3);
  Flag b = standard_flag(f3, 3);
  CHECK_THROWS_AS(rank_table(a, b), error);
  Flag c = standard_flag(f2, 4);
  CHECK_THROWS_AS(rank_table(a, c), error);
}
