#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "rrv/flag.hpp"
#include "rrv/grass.hpp"
#include "rrv/matrix.hpp"

using namespace rrv;
using namespace rrv::grass;

namespace {

// All weakly decreasing sequences of length r bounded by n - r.
void gen_partitions(int r, int bound, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == r) {
    out.push_back(cur);
    return;
  }
  int top = cur.empty() ? bound : cur.back();
  for (int v = top; v >= 0; --v) {
    cur.push_back(v);
    gen_partitions(r, bound, cur, out);
    cur.pop_back();
  }
}

ff::Flag flag_from_rows(const ff::PrimeField& f, std::vector<std::vector<std::uint32_t>> rows) {
  int n = static_cast<int>(rows.size());
  ff::Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  return ff::canonical_flag(f, m);
}

}  // namespace

TEST_CASE("admissibility and the worked exponent form") {
  CHECK(is_admissible({4, 3, 3, 2, 1}, 5, 9));
  auto lambda = make_partition({4, 3, 3, 2, 1}, 5, 9);
  auto ef = exponent_form(lambda);
  CHECK(ef.type == 4);
  std::vector<std::pair<int, int>> pairs{{4, 1}, {3, 2}, {2, 1}, {1, 1}};
  CHECK(ef.pairs == pairs);
  CHECK(ef.prefix_sums == std::vector<int>{1, 3, 4, 5});

  auto zero = make_partition({0, 0}, 2, 4);
  CHECK(exponent_form(zero).type == 0);
  CHECK(exponent_form(zero).pairs.empty());

  CHECK_FALSE(is_admissible({5, 0}, 2, 4));
  CHECK_THROWS_AS(make_partition({5, 0}, 2, 4), const error&);
  CHECK_FALSE(is_admissible({1, 2}, 2, 4));
  CHECK_FALSE(is_admissible({1, -1}, 2, 4));
  CHECK_FALSE(is_admissible({1}, 3, 2));

  // Trailing zeros may be omitted and are padded back.
  CHECK(make_partition({1}, 2, 4).parts == std::vector<int>{1, 0});
}

TEST_CASE("exponent form round trips over every small admissible partition") {
  for (int r = 1; r <= 5; ++r) {
    for (int n = r; n <= 9; ++n) {
      std::vector<std::vector<int>> all;
      std::vector<int> cur;
      gen_partitions(r, n - r, cur, all);
      for (const auto& parts : all) {
        auto lambda = make_partition(parts, r, n);
        auto ef = exponent_form(lambda);
        std::vector<int> rebuilt;
        for (auto [mu, count] : ef.pairs)
          for (int k = 0; k < count; ++k) rebuilt.push_back(mu);
        int nonzero = 0;
        for (int part : parts) nonzero += part > 0 ? 1 : 0;
        CHECK(static_cast<int>(rebuilt.size()) == nonzero);
        CHECK(ef.prefix_sums.empty() ? true : ef.prefix_sums.back() == nonzero);
        rebuilt.resize(parts.size(), 0);
        CHECK(rebuilt == parts);
        for (std::size_t s = 1; s < ef.pairs.size(); ++s)
          CHECK(ef.pairs[s - 1].first > ef.pairs[s].first);
      }
    }
  }
}

TEST_CASE("vanishing sequence conversions match the displayed formula") {
  auto a = make_vanishing({0, 2}, 1, 4);
  auto lambda = vanishing_to_partition(a);
  CHECK(lambda.parts == std::vector<int>{1, 0});
  CHECK(lambda.r == 2);
  CHECK(lambda.n == 5);
  auto back = partition_to_vanishing(lambda, 1, 4);
  CHECK(back.values == a.values);

  auto minimal = make_vanishing({0, 1, 2, 3}, 3, 7);
  CHECK(vanishing_to_partition(minimal).parts == std::vector<int>{0, 0, 0, 0});

  CHECK_THROWS_AS(make_vanishing({2, 2}, 1, 4), const error&);
  CHECK_THROWS_AS(make_vanishing({0, 5}, 1, 4), const error&);
  CHECK_THROWS_AS(make_vanishing({0, 1, 2}, 1, 4), const error&);
  CHECK_THROWS_AS(partition_to_vanishing(make_partition({1, 0}, 2, 4), 2, 4), const error&);
}

TEST_CASE("vanishing round trip on seeded sequences") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    int r = static_cast<int>(rng() % 4);
    int d = r + 1 + static_cast<int>(rng() % 7);
    // Sample r + 1 distinct values in [0, d] and sort them.
    std::set<int> chosen;
    while (static_cast<int>(chosen.size()) < r + 1)
      chosen.insert(static_cast<int>(rng() % (d + 1)));
    std::vector<int> values(chosen.begin(), chosen.end());
    auto a = make_vanishing(values, r, d);
    auto lambda = vanishing_to_partition(a);
    auto back = partition_to_vanishing(lambda, r, d);
    CHECK(back.values == values);
    CHECK(back.r == r);
    CHECK(back.d == d);
  }
}

TEST_CASE("grass points are canonical per subspace") {
  ff::PrimeField f(3);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    ff::Matrix m(2, 4);
    do {
      for (auto& e : m.a) e = static_cast<std::uint32_t>(rng() % 3);
    } while (ff::rank(f, m) < 2);
    GrassPoint v = grass_point(f, m);
    // Row operations leave the point unchanged.
    ff::Matrix shuffled(2, 4);
    for (int j = 0; j < 4; ++j) {
      shuffled.at(0, j) = f.add(f.mul(2, m.at(0, j)), m.at(1, j));
      shuffled.at(1, j) = m.at(0, j);
    }
    CHECK(grass_point(f, shuffled) == v);
    CHECK(v.basis == ff::rref(f, v.basis));
  }
  ff::Matrix sing(2, 4);
  sing.at(0, 0) = 1;
  sing.at(1, 0) = 2;
  CHECK_THROWS_AS(grass_point(f, sing), const error&);
}

TEST_CASE("schubert membership counts over F_2 and F_3") {
  ff::PrimeField f(2);
  ff::Flag std4 = ff::standard_flag(f, 4);

  auto zero = make_partition({0, 0}, 2, 4);
  CHECK(enumerate_grass_schubert(std4, zero).size() == ff::subspace_count(4, 2, 2));

  // Lines meeting a fixed line in P^3: 35 total minus q^4 = 16 disjoint.
  auto hyper = make_partition({1, 0}, 2, 4);
  auto members = enumerate_grass_schubert(std4, hyper);
  CHECK(members.size() == 19);
  CHECK(members.size() == 35 - 16);
  std::uint64_t q = 2;
  CHECK(members.size() == q * q * q + 2 * q * q + q + 1);

  auto point = make_partition({2, 2}, 2, 4);
  auto pinned = enumerate_grass_schubert(std4, point);
  REQUIRE(pinned.size() == 1);
  CHECK(pinned[0].basis == ff::rref(f, std4.prefix(2)));

  ff::PrimeField f3(3);
  auto members3 = enumerate_grass_schubert(ff::standard_flag(f3, 4), hyper);
  std::uint64_t q3 = 3;
  CHECK(members3.size() == q3 * q3 * q3 + 2 * q3 * q3 + q3 + 1);
}

TEST_CASE("schubert point counts do not depend on the flag") {
  ff::PrimeField f(2);
  for (const auto& parts : {std::vector<int>{1, 0}, std::vector<int>{2, 1}, std::vector<int>{1, 1}}) {
    auto lambda = make_partition(parts, 2, 4);
    std::set<std::size_t> counts;
    for (std::uint64_t seed : {1, 2, 3, 4, 5})
      counts.insert(enumerate_grass_schubert(ff::random_flag(f, 4, seed), lambda).size());
    CHECK(counts.size() == 1);
  }
}

TEST_CASE("z chains for the hyperplane condition") {
  ff::PrimeField f(2);
  ff::Flag std4 = ff::standard_flag(f, 4);
  auto hyper = make_partition({1, 0}, 2, 4);
  auto chains = enumerate_z_chain(std4, hyper);
  CHECK(chains.size() == 21);

  ff::Matrix f2 = ff::rref(f, std4.prefix(2));
  std::map<GrassPoint, std::uint64_t> fibers;
  for (const auto& c : chains) {
    REQUIRE(c.subspaces.size() == 1);
    CHECK(c.subspaces[0].rows == 1);
    // V_1 inside F_2 and inside the projected line.
    CHECK(ff::in_row_space(f, f2, c.subspaces[0].row(0)));
    CHECK(ff::in_row_space(f, c.projection.basis, c.subspaces[0].row(0)));
    ++fibers[c.projection];
  }
  auto image = enumerate_grass_schubert(std4, hyper);
  CHECK(fibers.size() == image.size());
  for (const auto& v : image) CHECK(fibers.count(v) == 1);
  // The only multiple fiber is q+1 over L = F_2 itself.
  for (const auto& [v, c] : fibers) CHECK(c == (v.basis == f2 ? 3u : 1u));
}

TEST_CASE("z chains with no conditions are free subspaces") {
  ff::PrimeField f(2);
  auto zero = make_partition({0, 0}, 2, 4);
  auto chains = enumerate_z_chain(ff::standard_flag(f, 4), zero);
  CHECK(chains.size() == 35);
  std::set<GrassPoint> distinct;
  for (const auto& c : chains) {
    CHECK(c.subspaces.empty());
    distinct.insert(c.projection);
  }
  CHECK(distinct.size() == 35);
}

TEST_CASE("z chains with a full length partition need no augmentation") {
  ff::PrimeField f(2);
  ff::Flag std4 = ff::standard_flag(f, 4);
  auto lambda = make_partition({2, 1}, 2, 4);
  auto chains = enumerate_z_chain(std4, lambda);
  // V_1 = F_1 forced, then V_2 between F_1 and F_3: q+1 chains, all distinct.
  CHECK(chains.size() == 3);
  std::set<GrassPoint> distinct;
  for (const auto& c : chains) {
    REQUIRE(c.subspaces.size() == 2);
    CHECK(c.subspaces[1] == c.projection.basis);
    distinct.insert(c.projection);
  }
  CHECK(distinct.size() == 3);
  CHECK(enumerate_grass_schubert(std4, lambda).size() == 3);
}

TEST_CASE("example tuples over a transverse pair are uniquely determined") {
  for (std::uint32_t q : {2u, 3u}) {
    ff::PrimeField f(q);
    ff::Flag p = ff::standard_flag(f, 4);
    ff::Flag g = ff::opposite_flag(f, 4);
    auto tuples = enumerate_z_example(p, g);
    std::map<GrassPoint, std::uint64_t> fibers;
    for (const auto& t : tuples) ++fibers[t.line];
    // Lines meeting two transverse planes: every fiber is a singleton.
    for (const auto& [line, count] : fibers) CHECK(count == 1);
    // Inclusion-exclusion: N - 2 q^4 + |GL_2|, the graphs of invertible maps.
    std::uint64_t total = ff::subspace_count(4, 2, q);
    std::uint64_t q4 = static_cast<std::uint64_t>(q) * q * q * q;
    std::uint64_t gl2 = (q * q - 1) * (q * q - q);
    CHECK(fibers.size() == total - 2 * q4 + gl2);
  }
}

TEST_CASE("example tuples degenerate to P1 x P1 fibers at the special position") {
  ff::PrimeField f(2);
  ff::Flag p = ff::standard_flag(f, 4);
  // G_2 = span(e1, e4) meets F_2 = span(e1, e2) in the point e1.
  ff::Flag g = flag_from_rows(f, {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}});
  ff::Matrix f2 = ff::rref(f, p.prefix(2));
  ff::Matrix g2 = ff::rref(f, g.prefix(2));
  REQUIRE(ff::intersect_row_spaces(f, f2, g2).rows == 1);

  auto tuples = enumerate_z_example(p, g);
  std::map<GrassPoint, std::uint64_t> fibers;
  for (const auto& t : tuples) ++fibers[t.line];
  std::uint64_t special = 0;
  for (const auto& [line, count] : fibers) {
    if (line.basis == f2 || line.basis == g2) {
      CHECK(count == 9);
      ++special;
    } else {
      CHECK(count == 1);
    }
  }
  CHECK(special == 2);
}

TEST_CASE("richardson resolution agrees between variants on the special fiber") {
  for (std::uint32_t q : {2u, 3u}) {
    ff::PrimeField f(q);
    ff::Flag p = ff::standard_flag(f, 4);
    ff::Flag g = flag_from_rows(f, {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}});
    auto hyper = make_partition({1, 0}, 2, 4);
    ff::Matrix f2 = ff::rref(f, p.prefix(2));
    ff::Matrix g2 = ff::rref(f, g.prefix(2));

    auto chain_reports = resolve_grass_richardson(p, hyper, g, hyper, Variant::chain);
    auto example_reports = resolve_grass_richardson(p, hyper, g, hyper, Variant::example);
    REQUIRE(chain_reports.size() == example_reports.size());

    // The degenerate Richardson has 2q^2 + q + 1 points.
    CHECK(chain_reports.size() == 2 * q * q + q + 1);

    for (std::size_t k = 0; k < chain_reports.size(); ++k) {
      const auto& ch = chain_reports[k];
      const auto& ex = example_reports[k];
      CHECK(ch.target == ex.target);
      CHECK(ch.exact_position == ex.exact_position);
      bool collapsed = ch.target.basis == f2 || ch.target.basis == g2;
      // The two readings measure different fibers over the collapsed locus:
      // P^1 for the chain variant, P^1 x P^1 for the example variant.
      CHECK(ch.fiber_size == (collapsed ? q + 1 : 1u));
      CHECK(ex.fiber_size == (collapsed ? (q + 1) * (q + 1) : 1u));
      CHECK(ch.exact_position == !collapsed);
    }
  }
}

TEST_CASE("richardson resolution on a transverse pair is one to one") {
  for (std::uint32_t q : {2u, 3u}) {
    ff::PrimeField f(q);
    ff::Flag p = ff::standard_flag(f, 4);
    ff::Flag g = ff::opposite_flag(f, 4);
    auto hyper = make_partition({1, 0}, 2, 4);
    for (Variant variant : {Variant::chain, Variant::example}) {
      auto reports = resolve_grass_richardson(p, hyper, g, hyper, variant);
      std::uint64_t q4 = static_cast<std::uint64_t>(q) * q * q * q;
      std::uint64_t gl2 = (q * q - 1) * (q * q - q);
      CHECK(reports.size() == ff::subspace_count(4, 2, q) - 2 * q4 + gl2);
      for (const auto& rep : reports) {
        CHECK(rep.fiber_size == 1);
        CHECK(rep.exact_position);
      }
    }
  }
}

TEST_CASE("degenerate second factor reduces to the single variety") {
  ff::PrimeField f(2);
  ff::Flag p = ff::standard_flag(f, 4);
  ff::Flag g = ff::opposite_flag(f, 4);
  auto hyper = make_partition({1, 0}, 2, 4);
  auto zero = make_partition({0, 0}, 2, 4);
  auto reports = resolve_grass_richardson(p, hyper, g, zero, Variant::chain);
  auto image = enumerate_grass_schubert(p, hyper);
  std::sort(image.begin(), image.end());
  REQUIRE(reports.size() == image.size());
  ff::Matrix f2 = ff::rref(f, p.prefix(2));
  for (std::size_t k = 0; k < reports.size(); ++k) {
    CHECK(reports[k].target == image[k]);
    CHECK(reports[k].fiber_size == (reports[k].target.basis == f2 ? 3u : 1u));
  }
}

TEST_CASE("grassmannian tangent dimensions") {
  ff::PrimeField f(2);
  ff::Flag p = ff::standard_flag(f, 4);
  ff::Flag g = ff::opposite_flag(f, 4);
  auto hyper = make_partition({1, 0}, 2, 4);

  // Free point: the full Grassmannian dimension r(n-r).
  ff::Matrix free_rows(2, 4);
  free_rows.at(0, 0) = 1;
  free_rows.at(0, 2) = 1;
  free_rows.at(1, 1) = 1;
  free_rows.at(1, 3) = 1;
  GrassPoint u = grass_point(f, free_rows);
  CHECK(tangent_dimension_grass(u, {}).tangent_dim == 4);
  CHECK(tangent_dimension_grass(u, {}).quotient_dim == 4);

  // L = span(e1, e3 + e4) meets both F_2 and the opposite G_2 in a line.
  ff::Matrix cell_rows(2, 4);
  cell_rows.at(0, 0) = 1;
  cell_rows.at(1, 2) = 1;
  cell_rows.at(1, 3) = 1;
  GrassPoint v = grass_point(f, cell_rows);

  // One hyperplane condition, point in the open cell: codimension 1.
  REQUIRE(grass_schubert_member(v, p, hyper));
  REQUIRE(grass_schubert_exact(v, p, hyper));
  auto one = tangent_dimension_grass(v, {{p, hyper}});
  CHECK(one.tangent_dim == 3);

  // Both conditions at a generic intersection point: codimension 2.
  REQUIRE(grass_schubert_member(v, g, hyper));
  auto both = tangent_dimension_grass(v, {{p, hyper}, {g, hyper}});
  CHECK(both.tangent_dim == 2);

  // Every exact point of the transverse Richardson is smooth of dimension 2.
  for (const auto& rep : resolve_grass_richardson(p, hyper, g, hyper, Variant::chain)) {
    auto t = tangent_dimension_grass(rep.target, {{p, hyper}, {g, hyper}});
    CHECK(t.tangent_dim == 2);
  }

  CHECK_THROWS_AS(tangent_dimension_grass(grass_point(f, ff::rref(f, p.prefix(2))), {{g, hyper}}),
                  const error&);
}

TEST_CASE("tangent dimension jumps exactly on the pencil through the meet") {
  // With F_2 cap G_2 = span(e1) the degenerate Richardson splits into the
  // lines through e1 union the lines inside the plane F_2 + G_2, two surfaces
  // glued along the pencil {e1 in L, L in F_2 + G_2}. The variety is singular
  // along the whole pencil (q+1 points), while the resolution collapses only
  // over {F_2, G_2}: non singleton fibers cover a strict subset of the
  // singular locus of this fiber.
  for (std::uint32_t q : {2u, 3u}) {
    ff::PrimeField f(q);
    ff::Flag p = ff::standard_flag(f, 4);
    ff::Flag g = flag_from_rows(f, {{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}});
    auto hyper = make_partition({1, 0}, 2, 4);
    ff::Matrix f2 = ff::rref(f, p.prefix(2));
    ff::Matrix g2 = ff::rref(f, g.prefix(2));
    ff::Matrix plane = ff::rref(f, ff::stack_rows(f2, g2));
    REQUIRE(plane.rows == 3);
    ff::Matrix meet = ff::intersect_row_spaces(f, f2, g2);
    REQUIRE(meet.rows == 1);

    std::uint64_t on_pencil = 0, collapsed_count = 0;
    for (const auto& rep : resolve_grass_richardson(p, hyper, g, hyper, Variant::chain)) {
      auto t = tangent_dimension_grass(rep.target, {{p, hyper}, {g, hyper}});
      bool collapsed = rep.target.basis == f2 || rep.target.basis == g2;
      bool pencil = ff::in_row_space(f, rep.target.basis, meet.row(0)) &&
                    ff::in_row_space(f, plane, rep.target.basis.row(0)) &&
                    ff::in_row_space(f, plane, rep.target.basis.row(1));
      on_pencil += pencil ? 1 : 0;
      collapsed_count += collapsed ? 1 : 0;
      if (collapsed) CHECK(pencil);
      CHECK(t.tangent_dim == (pencil ? 3 : 2));
      CHECK(rep.fiber_size == (collapsed ? q + 1 : 1u));
      CHECK(rep.exact_position == !collapsed);
    }
    CHECK(on_pencil == q + 1);
    CHECK(collapsed_count == 2);
  }
}

TEST_CASE("grass interface rejects mismatched data") {
  ff::PrimeField f2(2), f3(3);
  ff::Flag p = ff::standard_flag(f2, 4);
  auto hyper = make_partition({1, 0}, 2, 4);
  auto wrong_n = make_partition({1, 0}, 2, 5);
  CHECK_THROWS_AS(enumerate_grass_schubert(p, wrong_n), const error&);
  CHECK_THROWS_AS(
      resolve_grass_richardson(p, hyper, ff::standard_flag(f3, 4), hyper, Variant::chain),
      const error&);
  CHECK_THROWS_AS(
      resolve_grass_richardson(p, make_partition({1, 1}, 2, 4), ff::opposite_flag(f2, 4),
                               make_partition({1, 1}, 2, 4), Variant::example),
      const error&);
  CHECK_THROWS_AS(enumerate_z_chain(p, hyper, 5), const error&);
}
