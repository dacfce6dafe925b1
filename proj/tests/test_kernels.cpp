#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "rrv/flag.hpp"
#include "rrv/kernels.hpp"
#include "rrv/perm.hpp"
#include "rrv/tangent.hpp"

using namespace rrv;
using namespace rrv::kernels;

namespace {

perm::Permutation fast_relpos(const RelposContext& ctx, const ff::Matrix& frame) {
  std::uint32_t scratch[perm::max_degree * perm::max_degree];
  int out[perm::max_degree];
  fast_relative_position(ctx, frame, out, scratch);
  return perm::Permutation(std::vector<int>(out, out + ctx.n));
}

}  // namespace

TEST_CASE("streaming enumeration matches indexed access") {
  for (auto [n, p] : {std::pair<int, std::uint32_t>{3, 3}, {4, 2}}) {
    ff::PrimeField f(p);
    std::uint64_t total = ff::flag_count(n, p);
    std::uint64_t seen = 0;
    ff::for_each_flag(f, n, 0, total, [&](std::uint64_t idx, const ff::Matrix& frame) {
      CHECK(idx == seen);
      CHECK(ff::flag_from_index(f, n, idx).rows == frame);
      ++seen;
    });
    CHECK(seen == total);
    // Arbitrary subrange, crossing pivot block boundaries.
    std::uint64_t lo = total / 3, hi = 2 * total / 3 + 5;
    seen = lo;
    ff::for_each_flag(f, n, lo, hi, [&](std::uint64_t idx, const ff::Matrix& frame) {
      CHECK(idx == seen);
      CHECK(ff::flag_from_index(f, n, idx).rows == frame);
      ++seen;
    });
    CHECK(seen == hi);
    CHECK_THROWS_AS(ff::for_each_flag(f, n, 0, total + 1, [](std::uint64_t, const ff::Matrix&) {}),
                    error);
  }
}

TEST_CASE("fast relative position agrees with the rank table") {
  for (auto [n, p] : {std::pair<int, std::uint32_t>{3, 2}, {3, 3}, {4, 2}}) {
    ff::PrimeField f(p);
    std::vector<ff::Flag> fixed{ff::standard_flag(f, n), ff::opposite_flag(f, n),
                                ff::random_flag(f, n, 2024)};
    for (const auto& base : fixed) {
      RelposContext ctx = relpos_context(base);
      std::uint64_t total = ff::flag_count(n, p);
      ff::for_each_flag(f, n, 0, total, [&](std::uint64_t, const ff::Matrix& frame) {
        ff::Flag v{f, n, frame};
        CHECK(fast_relpos(ctx, frame) == ff::relative_position(base, v));
      });
    }
  }
}

TEST_CASE("pair histogram matches brute force and marginals") {
  ff::PrimeField f2(2);
  ff::Flag p = ff::standard_flag(f2, 3);
  ff::Flag q = ff::opposite_flag(f2, 3);
  PairHistogram h = relpos_pair_histogram(p, q);
  CHECK(h.total == 21);
  CHECK(h.order == 6);
  // Brute force joint distribution.
  std::vector<std::uint64_t> brute(36, 0);
  for (const auto& v : ff::enumerate_flags(f2, 3)) {
    auto u = ff::relative_position(p, v).lex_rank();
    auto w = ff::relative_position(q, v).lex_rank();
    ++brute[static_cast<std::size_t>(u) * 6 + w];
  }
  CHECK(h.counts == brute);
  // Both marginals count Schubert cells: q^inv.
  for (const auto& sigma : perm::all_permutations(3)) {
    std::uint64_t row = 0, col = 0;
    for (int k = 0; k < 6; ++k) {
      row += h.at(static_cast<int>(sigma.lex_rank()), k);
      col += h.at(k, static_cast<int>(sigma.lex_rank()));
    }
    std::uint64_t cell = 1;
    for (int k = 0; k < perm::inversions(sigma); ++k) cell *= 2;
    CHECK(row == cell);
    CHECK(col == cell);
  }
}

TEST_CASE("parallel kernels equal their serial references") {
  ff::PrimeField f3(3);
  ff::Flag p = ff::standard_flag(f3, 4);
  ff::Flag q = ff::opposite_flag(f3, 4);
  PairHistogram par = relpos_pair_histogram(p, q);
  PairHistogram ser = relpos_pair_histogram_serial(p, q);
  CHECK(par.total == ser.total);
  CHECK(par.total == 2080);
  CHECK(par.counts == ser.counts);

  RelposContext ctx = relpos_context(p);
  perm::Permutation target = perm::Permutation::parse("2143");
  auto pred = [&](const ff::Matrix& frame) { return fast_relpos(ctx, frame) == target; };
  auto a = filter_flags(f3, 4, pred);
  auto b = filter_flags_serial(f3, 4, pred);
  CHECK(a == b);
  CHECK(a.size() == 9);  // 3^inv(2143)
  CHECK(std::is_sorted(a.begin(), a.end()));

  auto conds = tangent::schubert_conditions(p, perm::Permutation::parse("4231"));
  std::vector<ff::Matrix> points;
  for (std::uint64_t idx : filter_flags(f3, 4, [&](const ff::Matrix& frame) {
         return perm::bruhat_leq(fast_relpos(ctx, frame), perm::Permutation::parse("4231"));
       }))
    points.push_back(ff::flag_from_index(f3, 4, idx).rows);
  auto s1 = tangent_sweep(f3, points, conds, tangent::flag_stabilizer_dim(4));
  auto s2 = tangent_sweep_serial(f3, points, conds, tangent::flag_stabilizer_dim(4));
  REQUIRE(s1.size() == s2.size());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    CHECK(s1[i].tangent_dim == s2[i].tangent_dim);
    CHECK(s1[i].jacobian_rank == s2[i].jacobian_rank);
  }
}

TEST_CASE("histogram rejects budget overruns and mismatched flags") {
  ff::PrimeField f13(13);
  ff::Flag p = ff::standard_flag(f13, 4);
  ff::Flag q = ff::opposite_flag(f13, 4);
  CHECK_THROWS_AS(relpos_pair_histogram(p, q, 1000), error);
  ff::PrimeField f2(2);
  CHECK_THROWS_AS(relpos_pair_histogram(p, ff::standard_flag(f2, 4)), error);
}
