#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "rrv/perm.hpp"

using namespace rrv;
using perm::Permutation;
using perm::ReducedWord;

static Permutation P(const std::string& s) { return Permutation::parse(s); }

TEST_CASE("construction and validation") {
  CHECK(P("4231").degree() == 4);
  CHECK(P("4231")(1) == 4);
  CHECK(P("4231")(4) == 1);
  CHECK(Permutation::parse("10,3,2,1,4,5,6,7,8,9").degree() == 10);
  CHECK_THROWS_AS(P("122"), error);
  CHECK_THROWS_AS(P("130"), error);
  CHECK_THROWS_AS(Permutation(std::vector<int>{}), error);
  CHECK_THROWS_AS(Permutation(std::vector<int>(13, 1)), error);
}

TEST_CASE("identity, longest, inverse, compose") {
  CHECK(Permutation::identity(4) == P("1234"));
  CHECK(Permutation::longest(4) == P("4321"));
  CHECK(perm::inversions(Permutation::longest(4)) == 6);
  CHECK(perm::inversions(Permutation::identity(5)) == 0);
  CHECK(P("4231").inverse() == P("4231"));
  CHECK(P("3142").inverse() == P("2413"));
  // compose(f, g) applies g first.
  CHECK(perm::compose(P("2134"), P("1324")) == P("2314"));
  CHECK_THROWS_AS(perm::compose(P("21"), P("123")), error);
}

TEST_CASE("inversions frozen example") { CHECK(perm::inversions(P("4231")) == 5); }

TEST_CASE("rank matrix frozen examples") {
  perm::RankMatrix r2 = perm::rank_matrix(P("21"));
  CHECK(r2.at(1, 1) == 0);
  CHECK(r2.at(1, 2) == 1);
  CHECK(r2.at(2, 1) == 1);
  CHECK(r2.at(2, 2) == 2);
  CHECK(perm::rank_matrix(P("4231")).at(2, 2) == 1);
}

TEST_CASE("rank matrix round trip and forced border") {
  for (const Permutation& s : perm::all_permutations(5)) {
    perm::RankMatrix r = perm::rank_matrix(s);
    CHECK(perm::permutation_from_rank_matrix(r) == s);
    // last row/column are forced
    for (int j = 1; j <= 5; ++j) CHECK(r.at(5, j) == j);
    for (int i = 1; i <= 5; ++i) CHECK(r.at(i, 5) == i);
  }
}

TEST_CASE("bruhat frozen examples") {
  CHECK_FALSE(perm::bruhat_leq(P("3412"), P("4231")));
  CHECK_FALSE(perm::bruhat_leq(P("4231"), P("3412")));
  CHECK(perm::bruhat_leq(P("2134"), P("2143")));
  CHECK(perm::bruhat_leq(P("1234"), P("4321")));
  CHECK_FALSE(perm::bruhat_leq(P("4321"), P("1234")));
}

TEST_CASE("bruhat lower set of 2143") {
  std::vector<Permutation> got = perm::bruhat_lower_set(P("2143"));
  std::vector<Permutation> want{P("1234"), P("1243"), P("2134"), P("2143")};
  CHECK(got == want);
}

TEST_CASE("bruhat comparison agrees with closure oracle on S4") {
  for (const Permutation& s : perm::all_permutations(4))
    for (const Permutation& t : perm::all_permutations(4))
      CHECK(perm::bruhat_leq(s, t) == perm::bruhat_leq_oracle(s, t));
}

TEST_CASE("bruhat is inverse-invariant on S4") {
  for (const Permutation& s : perm::all_permutations(4))
    for (const Permutation& t : perm::all_permutations(4))
      CHECK(perm::bruhat_leq(s, t) == perm::bruhat_leq(s.inverse(), t.inverse()));
}

TEST_CASE("covering moves increase length") {
  for (const Permutation& s : perm::all_permutations(4))
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j) {
        Permutation t = perm::compose(s, Permutation::transposition(4, i, j));
        if (s(i) < s(j)) {
          CHECK(perm::inversions(t) > perm::inversions(s));
          CHECK(perm::bruhat_leq(s, t));
        }
      }
}

TEST_CASE("word evaluation frozen example pins the convention") {
  CHECK(perm::evaluate_word(ReducedWord{4, {3, 1, 2, 3, 1}}) == P("4231"));
  // First letter applied first: [1,2] ends at 312, not 231.
  CHECK(perm::evaluate_word(ReducedWord{3, {1, 2}}) == P("312"));
  CHECK(perm::evaluate_word(ReducedWord{3, {2, 1}}) == P("231"));
}

TEST_CASE("reduced words round trip over S5") {
  for (const Permutation& s : perm::all_permutations(5)) {
    ReducedWord w = perm::reduced_word(s);
    CHECK(static_cast<int>(w.letters.size()) == perm::inversions(s));
    CHECK(perm::evaluate_word(w) == s);
    CHECK(perm::is_reduced(w));
  }
}

TEST_CASE("is_reduced rejects repeats") {
  CHECK_FALSE(perm::is_reduced(ReducedWord{3, {1, 1}}));
  CHECK(perm::is_reduced(ReducedWord{3, {}}));
  CHECK_THROWS_AS(perm::is_reduced(ReducedWord{3, {3}}), error);
  CHECK_THROWS_AS(perm::evaluate_word(ReducedWord{4, {0}}), error);
}

TEST_CASE("all reduced words") {
  // Longest element of S3 has exactly two reduced words.
  std::vector<ReducedWord> ws = perm::all_reduced_words(P("321"));
  REQUIRE(ws.size() == 2);
  CHECK(ws[0].letters == std::vector<int>{1, 2, 1});
  CHECK(ws[1].letters == std::vector<int>{2, 1, 2});
  for (const Permutation& s : perm::all_permutations(4)) {
    std::vector<ReducedWord> all = perm::all_reduced_words(s);
    std::set<std::vector<int>> distinct;
    for (const ReducedWord& w : all) {
      CHECK(perm::is_reduced(w));
      CHECK(perm::evaluate_word(w) == s);
      distinct.insert(w.letters);
    }
    CHECK(distinct.size() == all.size());
    // the lexicographically least one is what reduced_word returns
    CHECK(all.front().letters == perm::reduced_word(s).letters);
  }
}

TEST_CASE("pattern containment") {
  CHECK(perm::contains_pattern(P("45312"), P("3412")));
  CHECK_FALSE(perm::contains_pattern(P("1234"), P("21")));
  CHECK(perm::contains_pattern(P("4231"), P("4231")));
  CHECK_FALSE(perm::contains_pattern(P("123"), P("1234")));
  CHECK_THROWS_AS(perm::contains_pattern(P("123456"), P("12345")), error);
}

TEST_CASE("smoothness pattern test") {
  CHECK_FALSE(perm::schubert_is_smooth(P("4231")));
  CHECK_FALSE(perm::schubert_is_smooth(P("3412")));
  CHECK(perm::schubert_is_smooth(P("4321")));
  CHECK(perm::schubert_is_smooth(P("1234")));
  int singular = 0;
  for (const Permutation& s : perm::all_permutations(4))
    if (!perm::schubert_is_smooth(s)) ++singular;
  CHECK(singular == 2);
}

TEST_CASE("lex rank round trip") {
  for (const Permutation& s : perm::all_permutations(4))
    CHECK(Permutation::from_lex_rank(4, s.lex_rank()) == s);
  CHECK(P("1234").lex_rank() == 0);
  CHECK(P("4321").lex_rank() == 23);
}

TEST_CASE("printing convention") {
  CHECK(P("4231").str() == "4231");
  CHECK(Permutation::parse("10,3,2,1,4,5,6,7,8,9").str() == "10,3,2,1,4,5,6,7,8,9");
}
