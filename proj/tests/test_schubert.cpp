#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "rrv/flag.hpp"
#include "rrv/perm.hpp"
#include "rrv/schubert.hpp"

using namespace rrv;
using namespace rrv::schubert;

namespace {

ff::Flag perm_flag(const ff::PrimeField& f, const perm::Permutation& pi) {
  int n = pi.degree();
  ff::Matrix m(n, n);
  for (int k = 1; k <= n; ++k) m.at(k - 1, pi(k) - 1) = 1;
  return ff::Flag{f, n, std::move(m)};
}

// Oracle: sum of q^inv over the Bruhat lower set.
std::uint64_t lower_set_count(const perm::Permutation& sigma, std::uint64_t q) {
  std::uint64_t total = 0;
  for (const auto& tau : perm::bruhat_lower_set(sigma)) {
    std::uint64_t cell = 1;
    for (int k = 0; k < perm::inversions(tau); ++k) cell *= q;
    total += cell;
  }
  return total;
}

}  // namespace

TEST_CASE("membership basics") {
  ff::PrimeField f3(3);
  ff::Flag base = ff::standard_flag(f3, 4);
  for (const auto& sigma : perm::all_permutations(4)) {
    CHECK(schubert_member(base, {base, sigma}));  // relpos identity is minimal
    CHECK(schubert_cell_member(base, {base, sigma}) == (sigma == perm::Permutation::identity(4)));
  }
  SchubertDatum top{base, perm::Permutation::longest(4)};
  for (std::uint64_t s = 0; s < 10; ++s)
    CHECK(schubert_member(ff::random_flag(f3, 4, s), top));
  ff::PrimeField f2(2);
  CHECK_THROWS_AS(schubert_member(ff::standard_flag(f2, 4), top), error);
}

TEST_CASE("frozen membership count over the two element field") {
  ff::PrimeField f2(2);
  ff::Flag base = ff::standard_flag(f2, 4);
  SchubertDatum d{base, perm::Permutation::parse("2143")};
  std::size_t members = 0;
  for (const auto& v : ff::enumerate_flags(f2, 4))
    if (schubert_member(v, d)) ++members;
  CHECK(members == 9);  // 1 + 2*2 + 2^2 over the lower set {1234,2134,1243,2143}
}

TEST_CASE("enumerate schubert matches the lower set generating function") {
  for (std::uint32_t q : {2u, 3u}) {
    ff::PrimeField f(q);
    ff::Flag base = ff::standard_flag(f, 4);
    for (const auto& sigma : perm::all_permutations(4)) {
      auto pts = enumerate_schubert({base, sigma});
      CHECK(pts.size() == lower_set_count(sigma, q));
      if (sigma == perm::Permutation::identity(4)) {
        REQUIRE(pts.size() == 1);
        CHECK(pts[0].rows == base.rows);
      }
    }
  }
}

TEST_CASE("membership is bruhat monotone") {
  ff::PrimeField f2(2);
  ff::Flag base = ff::standard_flag(f2, 4);
  std::map<std::uint64_t, std::set<std::vector<std::uint32_t>>> members;
  for (const auto& sigma : perm::all_permutations(4)) {
    auto pts = enumerate_schubert({base, sigma});
    auto& set = members[sigma.lex_rank()];
    for (const auto& v : pts) set.insert(v.rows.a);
  }
  for (const auto& a : perm::all_permutations(4))
    for (const auto& b : perm::all_permutations(4)) {
      if (!perm::bruhat_leq(a, b)) continue;
      const auto& small = members[a.lex_rank()];
      const auto& big = members[b.lex_rank()];
      CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
    }
}

TEST_CASE("richardson enumeration nonemptiness and histogram counts") {
  ff::PrimeField f2(2);
  ff::Flag p = ff::standard_flag(f2, 4);
  ff::Flag q = ff::opposite_flag(f2, 4);
  for (const auto& sigma : perm::all_permutations(4))
    for (const auto& tau : perm::all_permutations(4)) {
      auto pts = enumerate_richardson({p, sigma}, {q, tau});
      CHECK(pts.empty() == !richardson_nonempty(sigma, tau));
      CHECK(pts.size() == richardson_count(4, 2, sigma, tau));
      for (const auto& v : pts) {
        CHECK(schubert_member(v, {p, sigma}));
        CHECK(schubert_member(v, {q, tau}));
      }
    }
}

TEST_CASE("point count polynomial on frozen examples") {
  // Full flag counts for n = 3 over seven primes.
  std::map<std::uint32_t, std::uint64_t> counts;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u}) counts[q] = ff::flag_count(3, q);
  PointCountFit fit = point_count_polynomial(counts, 3);
  CHECK(fit.degree == 3);
  CHECK(fit.polynomial.coeffs == std::vector<long long>{1, 2, 2, 1});
  CHECK(fit.all_nonnegative);

  PointCountFit single = point_count_polynomial({{2, 1}}, 0);
  CHECK(single.degree == 0);
  CHECK(single.polynomial.coeffs == std::vector<long long>{1});

  // |X_2143(F_q)| over three primes.
  std::map<std::uint32_t, std::uint64_t> x2143;
  perm::Permutation sigma = perm::Permutation::parse("2143");
  for (std::uint32_t q : {2u, 3u, 5u}) x2143[q] = lower_set_count(sigma, q);
  PointCountFit fx = point_count_polynomial(x2143, 2);
  CHECK(fx.degree == 2);
  CHECK(fx.polynomial.coeffs == std::vector<long long>{1, 2, 1});

  CHECK_THROWS_AS(point_count_polynomial(x2143, 5), error);
  try {
    point_count_polynomial(x2143, 5);
  } catch (const error& e) {
    CHECK(e.code() == errc::insufficient_samples);
  }
  CHECK_THROWS_AS(point_count_polynomial({{2, 1}, {3, 2}, {5, 3}}, 2), error);
  try {
    point_count_polynomial({{2, 1}, {3, 2}, {5, 3}}, 2);
  } catch (const error& e) {
    CHECK(e.code() == errc::non_integral_coefficients);
  }
  // q^2 - q is a genuine count shape with a negative coefficient.
  PointCountFit neg = point_count_polynomial({{2, 2}, {3, 6}, {5, 20}}, 2);
  CHECK(neg.degree == 2);
  CHECK_FALSE(neg.all_nonnegative);
  CHECK(neg.polynomial.coeffs == std::vector<long long>{0, -1, 1});
}

TEST_CASE("interpolated richardson dimension for the three dimensional flag variety") {
  perm::Permutation w0 = perm::Permutation::longest(3);
  for (const auto& sigma : perm::all_permutations(3))
    for (const auto& tau : perm::all_permutations(3)) {
      auto dim = interpolated_richardson_dimension(3, sigma, tau);
      if (!richardson_nonempty(sigma, tau)) {
        CHECK_FALSE(dim.has_value());
        continue;
      }
      REQUIRE(dim.has_value());
      // Codimension reading: inv sigma + inv tau - dim Fl.
      CHECK(*dim == perm::inversions(sigma) + perm::inversions(tau) - 3);
    }
  CHECK(*interpolated_richardson_dimension(3, w0, w0) == 3);
}

TEST_CASE("tangent dimension reports") {
  ff::PrimeField f5(5);
  ff::Flag base = ff::standard_flag(f5, 4);
  TangentReport r = tangent_dimension(base, {{base, perm::Permutation::parse("4231")}});
  CHECK(r.tangent_dim == 6);
  CHECK(r.ambient_nullity == 16);
  CHECK(r.quotient_dim == 10);
  TangentReport w = tangent_dimension(base, {{base, perm::Permutation::longest(4)}});
  CHECK(w.tangent_dim == 6);
  ff::PrimeField f3(3);
  ff::Flag b3 = ff::standard_flag(f3, 4);
  for (const auto& sigma : perm::all_permutations(4)) {
    ff::Flag v = perm_flag(f3, sigma.inverse());
    TangentReport cell = tangent_dimension(v, {{b3, sigma}});
    CHECK(cell.tangent_dim == perm::inversions(sigma));
  }
  CHECK_THROWS_AS(tangent_dimension(ff::opposite_flag(f3, 4), {{b3, perm::Permutation::identity(4)}}),
                  error);
  try {
    tangent_dimension(ff::opposite_flag(f3, 4), {{b3, perm::Permutation::identity(4)}});
  } catch (const error& e) {
    CHECK(e.code() == errc::not_a_member);
  }
}

TEST_CASE("smooth locus biconditional for the three dimensional flag variety") {
  ff::PrimeField f3(3);
  ff::Flag p = ff::standard_flag(f3, 3);
  ff::Flag q = ff::opposite_flag(f3, 3);
  for (const auto& sigma : perm::all_permutations(3))
    for (const auto& tau : perm::all_permutations(3)) {
      if (!richardson_nonempty(sigma, tau)) continue;
      SmoothLocusReport rep = smooth_locus_check({p, sigma}, {q, tau});
      CHECK(rep.biconditional_holds);
      // Every permutation in S_3 avoids 3412 and 4231: no singular points at all.
      CHECK(rep.singular_in_r == 0);
      CHECK(rep.singular_in_factors == 0);
    }
}

TEST_CASE("smooth locus of the singular schubert variety against the full space") {
  ff::PrimeField f3(3);
  ff::Flag p = ff::standard_flag(f3, 4);
  ff::Flag q = ff::opposite_flag(f3, 4);
  perm::Permutation sigma = perm::Permutation::parse("4231");
  SmoothLocusReport rep = smooth_locus_check({p, sigma}, {q, perm::Permutation::longest(4)}, 5);
  CHECK(rep.expected_r_dim == 5);
  CHECK(rep.richardson_size == lower_set_count(sigma, 3));
  CHECK(rep.biconditional_holds);
  // The singular locus of X_4231 is X_2143.
  CHECK(rep.singular_in_r == lower_set_count(perm::Permutation::parse("2143"), 3));
  CHECK(rep.singular_in_r == rep.singular_in_factors);
  for (const auto& pt : rep.points) {
    CHECK_FALSE(pt.excess_q);
    CHECK(pt.excess_r == pt.excess_p);
  }
  CHECK_THROWS_AS(smooth_locus_check({p, sigma}, {p, sigma}, 5), error);
  try {
    smooth_locus_check({p, sigma}, {p, sigma}, 5);
  } catch (const error& e) {
    CHECK(e.code() == errc::flags_not_transverse);
  }
}
