#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rrv/error.hpp"

// Permutations of {1..n} in one-line notation, Bruhat order, reduced words,
// rank matrices and pattern containment.
//
// Composition convention, fixed once for the whole library:
//   compose(f, g) is the function f o g, i.e. g is applied first.
// Words in the simple transpositions s_1..s_{n-1} are consumed left to right,
// and each new letter acts as an OUTER factor:
//   evaluate_word([i_1, ..., i_l]) = s_{i_l} o ... o s_{i_1}.
// Equivalently, appending letter i swaps the VALUES i and i+1 in one-line
// notation. Under this convention the generic endpoint of a chain of simple
// steps with letters [i_1..i_l] read off a fixed flag has relative position
// evaluate_word([i_1..i_l]); the example evaluate_word([3,1,2,3,1], 4) = 4231
// is pinned in tests.
//
// Bruhat order is implemented two ways: the rank-matrix comparison
// (sigma <= tau iff r_sigma(i,j) >= r_tau(i,j) for all i,j), used everywhere,
// and an independent closure oracle (transitive closure of sigma < sigma*t_ij
// whenever sigma(i) < sigma(j), i < j), cached per degree for n <= 6. A third
// classical criterion (subword property) is deliberately not implemented.

namespace rrv::perm {

inline constexpr int max_degree = 12;

class Permutation {
 public:
  // One-line notation; values are 1-indexed and must form a bijection.
  explicit Permutation(const std::vector<int>& one_line);

  static Permutation identity(int n);
  static Permutation longest(int n);
  // Simple transposition s_i, swapping i and i+1 (1 <= i <= n-1).
  static Permutation simple(int n, int i);
  // Transposition t_ij (1 <= i < j <= n).
  static Permutation transposition(int n, int i, int j);
  // Parses one-line notation: digits without separators, or comma-separated.
  static Permutation parse(const std::string& text);

  int degree() const { return n_; }
  // Image of i, 1-indexed.
  int operator()(int i) const;

  Permutation inverse() const;

  // Lexicographic rank among all degree-n permutations (Lehmer code), and back.
  std::uint64_t lex_rank() const;
  static Permutation from_lex_rank(int n, std::uint64_t rank);

  // One-line text: no separators for n <= 9, comma-separated otherwise.
  std::string str() const;

  bool operator==(const Permutation&) const = default;
  // Lexicographic order on one-line notation; degrees must match to compare
  // meaningfully, shorter degrees sort first.
  bool operator<(const Permutation& o) const;

 private:
  Permutation() = default;
  int n_ = 0;
  std::vector<std::uint8_t> img_;
};

// f o g: g applied first.
Permutation compose(const Permutation& f, const Permutation& g);

int inversions(const Permutation& s);

// r(i,j) = #{m <= i : sigma(m) <= j}, 1 <= i,j <= n.
struct RankMatrix {
  int n = 0;
  std::vector<int> e;  // row-major n*n
  int at(int i, int j) const { return e[static_cast<std::size_t>(i - 1) * n + (j - 1)]; }
};

RankMatrix rank_matrix(const Permutation& s);
// Inverse of rank_matrix; the entries must be a valid rank matrix.
Permutation permutation_from_rank_matrix(const RankMatrix& r);

// sigma <= tau iff r_sigma(i,j) >= r_tau(i,j) for all i,j.
bool bruhat_leq(const Permutation& s, const Permutation& t);
// Independent oracle via reflection-closure; n <= 6, cached per degree.
bool bruhat_leq_oracle(const Permutation& s, const Permutation& t);
// All tau <= s, sorted lexicographically. n <= 6.
std::vector<Permutation> bruhat_lower_set(const Permutation& s);

// All degree-n permutations in lexicographic order. n <= 8.
std::vector<Permutation> all_permutations(int n);

struct ReducedWord {
  int degree = 0;
  std::vector<int> letters;  // values in 1..degree-1
};

// Lexicographically least reduced word: repeatedly take the smallest position
// i with sigma(i) > sigma(i+1) and strip it (right descent under the
// composition convention above).
ReducedWord reduced_word(const Permutation& s);
Permutation evaluate_word(const ReducedWord& w);
bool is_reduced(const ReducedWord& w);
// Every reduced word of s, in lexicographic order. n <= 6.
std::vector<ReducedWord> all_reduced_words(const Permutation& s);

// Pattern containment; pattern degree <= 4.
bool contains_pattern(const Permutation& s, const Permutation& pattern);
// Smooth iff s avoids both 3412 and 4231.
bool schubert_is_smooth(const Permutation& s);

}  // namespace rrv::perm
