#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rrv/flag.hpp"
#include "rrv/grass.hpp"
#include "rrv/perm.hpp"
#include "rrv/tangent.hpp"

namespace rrv::family {

inline constexpr std::uint64_t default_budget = 10'000'000;

// Univariate polynomial over F_p in the base parameter s. Coefficients lowest
// degree first, degree capped at 2; the empty vector is zero.
struct Poly {
  std::vector<std::uint32_t> coeffs;

  bool operator==(const Poly&) const = default;
};

// Reduces mod p, trims trailing zeros; OutOfBounds above degree 2.
Poly make_poly(const ff::PrimeField& f, std::vector<std::uint32_t> coeffs);
std::uint32_t poly_eval(const ff::PrimeField& f, const Poly& poly, std::uint32_t s);
// Value of the formal derivative d/ds at s.
std::uint32_t poly_eval_ds(const ff::PrimeField& f, const Poly& poly, std::uint32_t s);

// One-parameter family of flag pairs over the base A^1(F_p): two n x n
// matrices of polynomials in s, invertible at every base point (checked at
// construction).
struct PolynomialFamily {
  ff::PrimeField field{2};
  int n = 0;
  std::vector<Poly> p_rows, q_rows;  // n*n entries each, row major
};

PolynomialFamily make_family(const ff::PrimeField& f, int n, std::vector<Poly> p_entries,
                             std::vector<Poly> q_entries);

// Raw specializations (rows as written, never canonicalized) and their
// entrywise d/ds. Total-space minors are built from the raw rows so that the
// parameter derivative is the honest derivative of the defining equations.
ff::Matrix p_matrix(const PolynomialFamily& fam, std::uint32_t s);
ff::Matrix q_matrix(const PolynomialFamily& fam, std::uint32_t s);
ff::Matrix p_matrix_ds(const PolynomialFamily& fam, std::uint32_t s);
ff::Matrix q_matrix_ds(const PolynomialFamily& fam, std::uint32_t s);

// Canonical specialized flags, for membership and relative position.
ff::Flag p_flag(const PolynomialFamily& fam, std::uint32_t s);
ff::Flag q_flag(const PolynomialFamily& fam, std::uint32_t s);

enum class FiberClass { transverse, almost_transverse, other };
const char* fiber_class_name(FiberClass cls);

struct FiberProfile {
  std::uint32_t s = 0;
  perm::Permutation relpos;
  FiberClass cls = FiberClass::other;
  int deviation = -1;  // t for almost-transverse fibers, else -1
};

// Caveat attached to every profile-backed versality statement: the profile is
// a finite surrogate, not a certificate of smoothness of the comparison map.
extern const char* const profile_caveat;

struct ProfileReport {
  std::vector<FiberProfile> fibers;  // base points in ascending order
  bool versal_pattern = false;       // every fiber transverse or almost-transverse
  std::string caveat;                // profile_caveat, prefixed with a warning if non-versal
};

ProfileReport relpos_profile(const PolynomialFamily& fam);

// Built-in family: P(s) the standard flag; Q(s) the opposite flag except that
// row n-t is e_t + s e_{t+1} and row n-t+1 is e_{t+1}. Profile (asserted at
// construction): almost-transverse(t) at s = 0, transverse at every s != 0.
// For n = 4, t = 2 the rows of Q are [e4; s e3 + e2; e3; e1].
PolynomialFamily demo_family(int n, const ff::PrimeField& f, int t);

// Seeded search over degree <= 1 matrix pencils for a family whose profile is
// almost-transverse(t) at s = 0 and transverse elsewhere. Deterministic in
// seed; NotFound when t is out of range or the attempt cap runs out.
PolynomialFamily search_family(int n, const ff::PrimeField& f, int t, std::uint64_t seed,
                               int attempt_cap = 20000);

// Points of the relative Richardson total space inside the flag bundle or the
// Grassmannian bundle over the base.
struct FlagTotalPoint {
  std::uint32_t s = 0;
  ff::Flag v;
};
struct GrassTotalPoint {
  std::uint32_t s = 0;
  grass::GrassPoint v;
};

// All (s, V) with V in X_sigma(P(s)) and X_tau(Q(s)), ordered by (s, V) with
// V canonical. The vacuous conditions (sigma = tau = longest) give the whole
// bundle of base size x fiber count points.
std::vector<FlagTotalPoint> enumerate_total_space(const PolynomialFamily& fam,
                                                  const perm::Permutation& sigma,
                                                  const perm::Permutation& tau,
                                                  std::uint64_t budget = default_budget);
// Grassmannian reading: V ranges over Gr(r, F_p^n), conditions X_lambda(P(s))
// and X_lambda'(Q(s)). Zero partitions are vacuous.
std::vector<GrassTotalPoint> enumerate_total_space(const PolynomialFamily& fam,
                                                   const grass::AdmissiblePartition& lambda,
                                                   const grass::AdmissiblePartition& lambda_prime,
                                                   std::uint64_t budget = default_budget);

// Tangent space of the total space at a point, on the ambient (lift, s)
// coordinates: the minors of both fiberwise conditions differentiated in the
// lift entries and in s (the fixed prefixes move with s).
struct TotalTangentReport {
  std::uint32_t s = 0;
  int ambient_nullity = 0;  // nullity of the Jacobian on lift entries plus s
  int quotient_dim = 0;     // structure group of the lift
  int tangent_dim = 0;      // ambient_nullity - quotient_dim
  const char* caveat = tangent::ideal_generator_caveat;
};

TotalTangentReport total_tangent_dimension(const FlagTotalPoint& pt, const PolynomialFamily& fam,
                                           const perm::Permutation& sigma,
                                           const perm::Permutation& tau,
                                           bool use_dual_reference = false);
TotalTangentReport total_tangent_dimension(const GrassTotalPoint& pt, const PolynomialFamily& fam,
                                           const grass::AdmissiblePartition& lambda,
                                           const grass::AdmissiblePartition& lambda_prime,
                                           bool use_dual_reference = false);

// Expected total-space dimensions for singularity flagging: the intersection
// and each single-condition factor. In the versal cases these are 1 plus the
// fiber dimensions; they come from interpolation or from the caller, never
// from a hard-coded formula.
struct ExpectedDims {
  int intersection = 0;
  int factor_p = 0;
  int factor_q = 0;
};

// Degrees of the total-space point counts as polynomials in q, sampled by
// rebuilding the configuration over each given prime. Needs at least two
// primes, and at least (true degree + 1) of them to pin the degree; the demo
// configurations need 5 (Grassmannian) or 6 (flags, n = 3) primes.
ExpectedDims interpolated_expected_dims(
    const std::function<PolynomialFamily(const ff::PrimeField&)>& generator,
    const perm::Permutation& sigma, const perm::Permutation& tau,
    const std::vector<std::uint32_t>& primes, std::uint64_t budget = default_budget);
ExpectedDims interpolated_expected_dims(
    const std::function<PolynomialFamily(const ff::PrimeField&)>& generator,
    const grass::AdmissiblePartition& lambda, const grass::AdmissiblePartition& lambda_prime,
    const std::vector<std::uint32_t>& primes, std::uint64_t budget = default_budget);

struct FlagLocusEntry {
  std::uint32_t s = 0;
  ff::Flag point;
  int tangent_intersection = 0;
  int tangent_p = 0;
  int tangent_q = 0;
  bool singular_intersection = false;
  bool singular_p = false;
  bool singular_q = false;
};
struct GrassLocusEntry {
  std::uint32_t s = 0;
  grass::GrassPoint point;
  int tangent_intersection = 0;
  int tangent_p = 0;
  int tangent_q = 0;
  bool singular_intersection = false;
  bool singular_p = false;
  bool singular_q = false;
};

// Smooth/singular classification of every total-space point, for the
// intersection and for each single-condition factor. union_law records the
// pointwise check singular(intersection) = singular(factor P) or singular(
// factor Q). For the Gr(2,4) configuration lambda = lambda' = (1,0) with a
// versal profile, the singular set is asserted to be exactly the two special
// lines (s0, P(s0)_2), (s0, Q(s0)_2) over each almost-transverse base point.
struct FlagLocusReport {
  bool versal_pattern = false;
  std::string caveat;
  ExpectedDims expected;
  std::vector<FlagLocusEntry> entries;  // (s, point) ascending
  std::size_t singular_count = 0;
  bool union_law = false;
};
struct GrassLocusReport {
  bool versal_pattern = false;
  std::string caveat;
  ExpectedDims expected;
  std::vector<GrassLocusEntry> entries;  // (s, point) ascending
  std::size_t singular_count = 0;
  bool union_law = false;
};

FlagLocusReport singular_locus_map(const PolynomialFamily& fam, const perm::Permutation& sigma,
                                   const perm::Permutation& tau, const ExpectedDims& expected,
                                   std::uint64_t budget = default_budget);
GrassLocusReport singular_locus_map(const PolynomialFamily& fam,
                                    const grass::AdmissiblePartition& lambda,
                                    const grass::AdmissiblePartition& lambda_prime,
                                    const ExpectedDims& expected,
                                    std::uint64_t budget = default_budget);

}  // namespace rrv::family
