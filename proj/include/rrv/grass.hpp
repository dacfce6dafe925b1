#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rrv/error.hpp"
#include "rrv/flag.hpp"
#include "rrv/matrix.hpp"
#include "rrv/tangent.hpp"

namespace rrv::grass {

// Weakly decreasing lambda_1 >= ... >= lambda_r >= 0 with lambda_1 <= n - r.
struct AdmissiblePartition {
  int r = 0;
  int n = 0;
  std::vector<int> parts;  // length r
};

bool is_admissible(const std::vector<int>& parts, int r, int n);
// Validates and pads missing trailing parts with zeros. NotAdmissible on
// violation of the chain n - r >= lambda_1 >= ... >= lambda_r >= 0.
AdmissiblePartition make_partition(std::vector<int> parts, int r, int n);

// lambda = (mu_1^{i_1}, ..., mu_j^{i_j}) over the nonzero parts, mu strictly
// decreasing; type is j and prefix_sums holds a_s = i_1 + ... + i_s.
struct ExponentForm {
  std::vector<std::pair<int, int>> pairs;
  int type = 0;
  std::vector<int> prefix_sums;
};
ExponentForm exponent_form(const AdmissiblePartition& lambda);

// Strictly increasing 0 <= a_1 < ... < a_{r+1} <= d.
struct VanishingSequence {
  int r = 0;
  int d = 0;
  std::vector<int> values;  // length r + 1
};
VanishingSequence make_vanishing(std::vector<int> values, int r, int d);  // OutOfBounds

// lambda_i = a_{r+1-(i-1)} - (r+1-i): a partition of length r+1, admissible
// for Gr(r+1, d+1). The two conversions are mutually inverse.
AdmissiblePartition vanishing_to_partition(const VanishingSequence& a);
VanishingSequence partition_to_vanishing(const AdmissiblePartition& lambda, int r, int d);

// A point of Gr(r, F_p^n): canonical reduced echelon basis, unique per
// subspace.
struct GrassPoint {
  ff::PrimeField field{2};
  int n = 0;
  int r = 0;
  ff::Matrix basis;

  bool operator==(const GrassPoint& o) const {
    return field == o.field && n == o.n && r == o.r && basis == o.basis;
  }
  bool operator<(const GrassPoint& o) const { return basis.a < o.basis.a; }
};

// Canonicalizes a full rank basis; SingularMatrix if the rows are dependent.
GrassPoint grass_point(const ff::PrimeField& f, const ff::Matrix& basis);

// Membership in X_lambda(fl): dim(V cap F_{n-r+i-lambda_i}) >= i for all i.
bool grass_schubert_member(const GrassPoint& v, const ff::Flag& fl,
                           const AdmissiblePartition& lambda);
// Every non-vacuous condition (lambda_i > 0) holds with equality.
bool grass_schubert_exact(const GrassPoint& v, const ff::Flag& fl,
                          const AdmissiblePartition& lambda);
std::vector<GrassPoint> enumerate_grass_schubert(const ff::Flag& fl,
                                                 const AdmissiblePartition& lambda,
                                                 std::uint64_t budget = default_budget);

// One chain V_1 < ... < V_j with dim V_s = a_s and V_s inside the flag piece
// of dimension n - r + a_s - lambda_{a_s}, augmented by a free r dimensional
// V >= V_j exactly when a_j < r. projection is V (or V_j when a_j = r); the
// augmentation, when present, is recoverable as projection.basis.
struct GrassChain {
  std::vector<ff::Matrix> subspaces;
  GrassPoint projection;
};
std::vector<GrassChain> enumerate_z_chain(const ff::Flag& fl, const AdmissiblePartition& lambda,
                                          std::uint64_t budget = default_budget);

// The fixed Gr(2,4), lambda = lambda' = (1,0) resolution shape carrying dual
// data: tuples (L, p1, p2, H1, H2) with dim p_i = 1, dim H_i = 3,
// p1 <= L cap F_2, p2 <= L cap G_2, H1 >= L + F_2, H2 >= L + G_2.
struct ZExampleTuple {
  GrassPoint line;
  ff::Matrix p1, p2, h1, h2;
};
std::vector<ZExampleTuple> enumerate_z_example(const ff::Flag& f, const ff::Flag& g,
                                               std::uint64_t budget = default_budget);

// The Definition reading ("chain") joins two chain families on the projected
// r space; the worked-example reading ("example") groups the dual-data tuples
// by line. Both must hit exactly the Richardson point set.
enum class Variant { chain, example };

struct GrassFiberReport {
  GrassPoint target;
  std::uint64_t fiber_size = 0;
  bool exact_position = false;
};

// Image must equal {V : V in X_lambda(p)} cap {V : V in X_lambda'(q)} and
// exact-position targets (all non-vacuous conditions tight on both sides)
// must have singleton fibers, else ResolutionMismatch. The example variant
// accepts only the Gr(2,4), lambda = lambda' = (1,0) shape.
std::vector<GrassFiberReport> resolve_grass_richardson(
    const ff::Flag& p, const AdmissiblePartition& lambda, const ff::Flag& q,
    const AdmissiblePartition& lambda_prime, Variant variant,
    std::uint64_t budget = default_budget);

struct TangentReport {
  GrassPoint point;
  int ambient_nullity = 0;
  int quotient_dim = 0;  // r^2, the frame stabilizer
  int tangent_dim = 0;
  const char* caveat = tangent::ideal_generator_caveat;
};

// Tangent space dimension at V of the intersection of the given Schubert
// conditions, via the minor Jacobian at the r x n Stiefel lift. NotAMember
// if V violates a condition. No conditions gives dim Gr = r(n-r).
TangentReport tangent_dimension_grass(
    const GrassPoint& v,
    const std::vector<std::pair<ff::Flag, AdmissiblePartition>>& conditions);

}  // namespace rrv::grass
