#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rrv/flag.hpp"
#include "rrv/interpolate.hpp"
#include "rrv/perm.hpp"
#include "rrv/rational.hpp"
#include "rrv/tangent.hpp"

namespace rrv::schubert {

struct SchubertDatum {
  ff::Flag fixed;
  perm::Permutation sigma;
};

// Membership in the Schubert variety X_sigma(fixed): the degeneracy locus
// convention r(fixed, moving) <= sigma, i.e. dim(F_i meet V_j) >= r_sigma(i,j)
// for all i, j. Cell membership is equality of relative position.
bool schubert_member(const ff::Flag& v, const SchubertDatum& d);
bool schubert_cell_member(const ff::Flag& v, const SchubertDatum& d);

// Filtered flag enumeration in index order.
std::vector<ff::Flag> enumerate_schubert(const SchubertDatum& d,
                                         std::uint64_t budget = default_budget);
std::vector<ff::Flag> enumerate_richardson(const SchubertDatum& dp, const SchubertDatum& dq,
                                           std::uint64_t budget = default_budget);

// Nonemptiness of a Richardson set for transverse defining flags:
// sigma >= tau w0 in Bruhat order (pinned exhaustively by tests).
bool richardson_nonempty(const perm::Permutation& sigma, const perm::Permutation& tau);

// Point count of R_{sigma,tau}(F_q) for transverse defining flags (standard
// versus opposite; every transverse pair gives the same count). Histograms of
// relative position pairs are cached per (n, q).
std::uint64_t richardson_count(int n, std::uint32_t q, const perm::Permutation& sigma,
                               const perm::Permutation& tau,
                               std::uint64_t budget = default_budget);

struct PointCountFit {
  std::vector<Rational> coefficients;  // lowest degree first, trimmed
  IntegerPolynomial polynomial;        // the same coefficients as integers
  int degree = -1;                     // empirical dimension
  bool all_nonnegative = true;
};

// Interpolation over the rationals through every sample. Requires at least
// max_degree + 1 samples; non integral coefficients are an error (the count
// is not polynomial in q over the sampled range). Degrees are reported as
// found, even above max_degree.
PointCountFit point_count_polynomial(const std::map<std::uint32_t, std::uint64_t>& counts,
                                     int max_degree);

// Empirical local dimension of a nonempty transverse Richardson from point
// counts over q in {2,3,5,7,11,13}. The pair (longest, longest) is the whole
// flag variety of known dimension n(n-1)/2; every other pair is a proper
// closed subvariety, so its count degree is below n(n-1)/2 and six samples
// pin it exactly for n <= 4. Returns nullopt for an empty Richardson.
std::optional<int> interpolated_richardson_dimension(int n, const perm::Permutation& sigma,
                                                     const perm::Permutation& tau);

struct TangentReport {
  ff::Flag point;
  int ambient_nullity = 0;  // nullity of the minor Jacobian on the frame lift
  int quotient_dim = 0;     // structure group of the lift, n(n+1)/2
  int tangent_dim = 0;      // ambient_nullity - quotient_dim
  const char* caveat = tangent::ideal_generator_caveat;
};

// Zariski tangent dimension at v of the intersection of the loci in data.
// Rank conditions are imposed on the n x n frame lift and the stabilizer of
// the flag is quotiented out.
TangentReport tangent_dimension(const ff::Flag& v, const std::vector<SchubertDatum>& data);

struct SmoothLocusPoint {
  ff::Flag point;
  int tangent_r = 0;
  int tangent_p = 0;
  int tangent_q = 0;
  bool excess_r = false;
  bool excess_p = false;
  bool excess_q = false;
};

struct SmoothLocusReport {
  perm::Permutation sigma;
  perm::Permutation tau;
  int expected_r_dim = -1;  // local dimension the intersection is measured against
  std::uint64_t richardson_size = 0;
  std::vector<SmoothLocusPoint> points;
  std::size_t singular_in_r = 0;
  std::size_t singular_in_factors = 0;
  bool biconditional_holds = true;  // excess in R iff excess in some factor, at every point
};

// Pointwise comparison of the singular loci: for every point of the
// Richardson set, tangent dimension against {dp}, {dq} and {dp, dq}.
// Excess in a factor X_sigma is measured against inv sigma (Schubert
// varieties are irreducible of that dimension); excess in the intersection
// against expected_r_dim, which defaults to the interpolated point count
// degree so no contested dimension formula is hard coded.
SmoothLocusReport smooth_locus_check(const SchubertDatum& dp, const SchubertDatum& dq,
                                     std::optional<int> expected_r_dim = std::nullopt,
                                     std::uint64_t budget = default_budget);

}  // namespace rrv::schubert
