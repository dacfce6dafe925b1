#pragma once

#include <cstdint>
#include <vector>

#include "rrv/flag.hpp"
#include "rrv/matrix.hpp"
#include "rrv/perm.hpp"

namespace rrv::tangent {

// Dual number a + b*eps with eps^2 = 0 over a prime field. Evaluating a
// polynomial at a dual point returns value and directional derivative in one
// pass; this is the reference mechanism for every Jacobian entry here.
struct Dual {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
};

inline Dual dual_add(const ff::PrimeField& f, Dual x, Dual y) {
  return {f.add(x.a, y.a), f.add(x.b, y.b)};
}
inline Dual dual_sub(const ff::PrimeField& f, Dual x, Dual y) {
  return {f.sub(x.a, y.a), f.sub(x.b, y.b)};
}
inline Dual dual_mul(const ff::PrimeField& f, Dual x, Dual y) {
  return {f.mul(x.a, y.a), f.add(f.mul(x.a, y.b), f.mul(x.b, y.a))};
}

// Determinant over the dual ring by cofactor expansion (the ring has zero
// divisors, so elimination with pivot inverses is not available).
Dual dual_det(const ff::PrimeField& f, const std::vector<Dual>& entries, int m);

// One rank condition: rank(stack(fixed, selected moving rows)) <= bound on the
// locus, so every (bound+1)-minor of the stack vanishes. fixed_ds carries the
// derivative of the fixed part with respect to the family parameter (all zero
// for a static flag). moving lists row indices into the caller's lift matrix.
struct MinorCondition {
  ff::Matrix fixed;
  ff::Matrix fixed_ds;
  std::vector<int> moving;
  int bound = 0;
};

// Rank conditions of the Schubert variety X_sigma(fixed): for each cell (i,j),
// rank(stack(F_i, V_j)) <= i + j - r_sigma(i,j). Vacuous bounds (at or above
// min(i+j, n)) are dropped. Build once per datum; conditions are point free.
// The matrix form takes any invertible row basis of the fixed flag (rows need
// not be canonical); conditions depend only on the prefix spans.
std::vector<MinorCondition> schubert_conditions(const ff::Matrix& fixed_rows,
                                                const perm::Permutation& sigma);
std::vector<MinorCondition> schubert_conditions(const ff::Flag& fixed,
                                                const perm::Permutation& sigma);

// Reduced row space of the Jacobian of all governing minors at a lift point.
struct JacobianSpan {
  int coordinates = 0;  // moving entries, plus one trailing parameter column if present
  std::vector<std::vector<std::uint32_t>> rows;  // echelon basis of the row space
  std::vector<int> lead;
  int minors = 0;  // vanishing minors inspected

  int rank() const { return static_cast<int>(rows.size()); }
  // Inserts a row, returns true if it enlarged the span.
  bool insert(const ff::PrimeField& f, const std::uint32_t* v);
};

// The governing ideal is taken to be generated by the natural minors; if they
// do not generate the full local ideal the computed tangent space is an
// overestimate. Every report carries this caveat.
inline constexpr const char* ideal_generator_caveat =
    "tangent space computed from the natural minor generators; if they do not generate the "
    "full defining ideal the reported dimension is an overestimate";

struct TangentReport {
  int coordinates = 0;
  int minors = 0;
  int jacobian_rank = 0;
  int nullity = 0;
  int stabilizer_dim = 0;
  int tangent_dim = 0;
  const char* caveat = ideal_generator_caveat;
};

// Jacobian row space of the conditions at the lift point. Throws NotAMember
// when a governing minor fails to vanish. use_dual_reference switches the
// gradient computation from the adjugate fast path to entry by entry dual
// number evaluation; both must agree identically (pinned by tests).
JacobianSpan jacobian_span(const ff::PrimeField& f, const ff::Matrix& moving,
                           const std::vector<MinorCondition>& conditions,
                           bool parameter_column = false, bool use_dual_reference = false);

TangentReport report_from_span(const JacobianSpan& span, int stabilizer_dim);

// Merges the row spaces (conditions of several loci imposed together).
TangentReport report_from_spans(const ff::PrimeField& f, const std::vector<const JacobianSpan*>& spans,
                                int stabilizer_dim);

// Tangent space dimension of the locus cut by the conditions, at the lift
// point: nullity of the Jacobian minus the gauge directions of the lift.
TangentReport tangent_at(const ff::PrimeField& f, const ff::Matrix& moving,
                         const std::vector<MinorCondition>& conditions, int stabilizer_dim,
                         bool parameter_column = false);

// Gauge dimension of a full flag lift: invertible maps preserving all prefix
// spans of an n frame are lower triangular, n(n+1)/2 of them.
inline int flag_stabilizer_dim(int n) { return n * (n + 1) / 2; }

}  // namespace rrv::tangent
