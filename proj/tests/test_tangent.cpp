#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "rrv/flag.hpp"
#include "rrv/matrix.hpp"
#include "rrv/perm.hpp"
#include "rrv/tangent.hpp"

using namespace rrv;
using namespace rrv::tangent;

namespace {

// Flag whose step i is spanned by e_{pi(1)},...,e_{pi(i)}.
ff::Flag perm_flag(const ff::PrimeField& f, const perm::Permutation& pi) {
  int n = pi.degree();
  ff::Matrix m(n, n);
  for (int k = 1; k <= n; ++k) m.at(k - 1, pi(k) - 1) = 1;
  return ff::Flag{f, n, std::move(m)};
}

int transpositions_below(const perm::Permutation& sigma) {
  int n = sigma.degree();
  int count = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (perm::bruhat_leq(perm::Permutation::transposition(n, i, j), sigma)) ++count;
  return count;
}

}  // namespace

TEST_CASE("dual determinant matches cofactor identities") {
  ff::PrimeField f5(5);
  // [[a, b], [c, d]]: value ad - bc, derivative in a is d.
  std::vector<Dual> e{{2, 1}, {3, 0}, {1, 0}, {4, 0}};
  Dual d = dual_det(f5, e, 2);
  CHECK(d.a == 0);  // 2*4 - 3*1 = 5 = 0
  CHECK(d.b == 4);  // cofactor of the (0,0) entry
  std::vector<Dual> g{{2, 0}, {3, 0}, {1, 1}, {4, 0}};
  CHECK(dual_det(f5, g, 2).b == 2);  // -b = -3 = 2 mod 5
  // Product rule across a row: eps in two entries of the same row.
  std::vector<Dual> h{{2, 1}, {3, 2}, {1, 0}, {4, 0}};
  CHECK(dual_det(f5, h, 2).b == f5.add(4, f5.mul(2, f5.neg(1))));
  CHECK(dual_det(f5, {}, 0).a == 1);
}

TEST_CASE("dual determinant value part equals elimination determinant") {
  ff::PrimeField f7(7);
  std::uint64_t state = 99;
  for (int trial = 0; trial < 40; ++trial) {
    int m = 1 + trial % 4;
    std::vector<Dual> e(static_cast<std::size_t>(m) * m);
    ff::Matrix s(m, m);
    for (int k = 0; k < m * m; ++k) {
      state = ff::split_seed(state, 7);
      std::uint32_t v = static_cast<std::uint32_t>(state % 7);
      e[static_cast<std::size_t>(k)] = {v, 0};
      s.a[static_cast<std::size_t>(k)] = v;
    }
    Dual d = dual_det(f7, e, m);
    CHECK(d.b == 0);
    CHECK((d.a != 0) == ff::is_invertible(f7, s));
  }
}

TEST_CASE("schubert conditions drop vacuous cells") {
  ff::PrimeField f3(3);
  ff::Flag std4 = ff::standard_flag(f3, 4);
  // The longest element imposes nothing.
  CHECK(schubert_conditions(std4, perm::Permutation::longest(4)).empty());
  auto conds = schubert_conditions(std4, perm::Permutation::parse("4231"));
  REQUIRE(conds.size() == 1);  // the single essential cell (2,2) with bound 3
  CHECK(conds[0].fixed.rows == 2);
  CHECK(conds[0].moving.size() == 2);
  CHECK(conds[0].bound == 3);
  CHECK_FALSE(schubert_conditions(std4, perm::Permutation::identity(4)).empty());
}

TEST_CASE("tangent dimension at the fixed flag counts transpositions below sigma") {
  ff::PrimeField f5(5);
  int n = 4;
  ff::Flag base = ff::standard_flag(f5, n);
  for (const auto& sigma : perm::all_permutations(n)) {
    auto conds = schubert_conditions(base, sigma);
    TangentReport r = tangent_at(f5, base.rows, conds, flag_stabilizer_dim(n));
    CHECK(r.tangent_dim == transpositions_below(sigma));
  }
}

TEST_CASE("tangent dimension on the open cell equals the cell dimension") {
  ff::PrimeField f3(3);
  int n = 4;
  ff::Flag base = ff::standard_flag(f3, n);
  for (const auto& sigma : perm::all_permutations(n)) {
    ff::Flag v = perm_flag(f3, sigma.inverse());
    REQUIRE(ff::relative_position(base, v) == sigma);
    auto conds = schubert_conditions(base, sigma);
    TangentReport r = tangent_at(f3, v.rows, conds, flag_stabilizer_dim(n));
    CHECK(r.tangent_dim == perm::inversions(sigma));
  }
}

TEST_CASE("frozen singular example from the fixed point") {
  ff::PrimeField f5(5);
  ff::Flag base = ff::standard_flag(f5, 4);
  auto conds = schubert_conditions(base, perm::Permutation::parse("4231"));
  TangentReport r = tangent_at(f5, base.rows, conds, 10);
  CHECK(r.tangent_dim == 6);  // exceeds inv(4231) = 5: singular point
  CHECK(r.nullity == 16);
  CHECK(r.jacobian_rank == 0);  // the lone 4x4 minor has a zero gradient here
  TangentReport w = tangent_at(f5, base.rows, schubert_conditions(base, perm::Permutation::longest(4)), 10);
  CHECK(w.tangent_dim == 6);  // whole flag variety
  TangentReport one = tangent_at(f5, base.rows, schubert_conditions(base, perm::Permutation::identity(4)), 10);
  CHECK(one.tangent_dim == 0);  // reduced point
}

TEST_CASE("non members are rejected by a non vanishing minor") {
  ff::PrimeField f3(3);
  ff::Flag base = ff::standard_flag(f3, 4);
  ff::Flag opp = ff::opposite_flag(f3, 4);
  auto conds = schubert_conditions(base, perm::Permutation::identity(4));
  CHECK_THROWS_AS(tangent_at(f3, opp.rows, conds, 10), error);
  try {
    tangent_at(f3, opp.rows, conds, 10);
  } catch (const error& e) {
    CHECK(e.code() == errc::not_a_member);
  }
}

TEST_CASE("adjugate fast path agrees with dual number reference") {
  ff::PrimeField f3(3);
  int n = 4;
  ff::Flag base = ff::standard_flag(f3, n);
  ff::Flag opp = ff::opposite_flag(f3, n);
  for (const auto& sigma : perm::all_permutations(n)) {
    auto conds = schubert_conditions(base, sigma);
    for (const auto& tau : perm::all_permutations(n)) {
      if (!perm::bruhat_leq(tau, sigma)) continue;
      ff::Flag v = perm_flag(f3, tau.inverse());
      JacobianSpan fast = jacobian_span(f3, v.rows, conds, false, false);
      JacobianSpan ref = jacobian_span(f3, v.rows, conds, false, true);
      CHECK(fast.rank() == ref.rank());
      CHECK(fast.minors == ref.minors);
      // Same row space, not merely the same rank.
      JacobianSpan merged = fast;
      for (const auto& row : ref.rows) merged.insert(f3, row.data());
      CHECK(merged.rank() == fast.rank());
    }
    // A couple of generic members as well.
    for (std::uint64_t s = 0; s < 3; ++s) {
      ff::Flag v = ff::random_flag(f3, n, ff::split_seed(s, 11));
      if (!perm::bruhat_leq(ff::relative_position(base, v), sigma)) continue;
      JacobianSpan fast = jacobian_span(f3, v.rows, conds, false, false);
      JacobianSpan ref = jacobian_span(f3, v.rows, conds, false, true);
      CHECK(fast.rank() == ref.rank());
    }
  }
  // Two data merged: richardson tangent at a common member.
  auto cp = schubert_conditions(base, perm::Permutation::parse("3412"));
  auto cq = schubert_conditions(opp, perm::Permutation::longest(4));
  ff::Flag v = perm_flag(f3, perm::Permutation::parse("2143").inverse());
  JacobianSpan a = jacobian_span(f3, v.rows, cp);
  JacobianSpan b = jacobian_span(f3, v.rows, cq);
  TangentReport merged = report_from_spans(f3, {&a, &b}, flag_stabilizer_dim(4));
  std::vector<MinorCondition> both = cp;
  both.insert(both.end(), cq.begin(), cq.end());
  TangentReport direct = tangent_at(f3, v.rows, both, flag_stabilizer_dim(4));
  CHECK(merged.tangent_dim == direct.tangent_dim);
}
