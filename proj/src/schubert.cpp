#include "rrv/schubert.hpp"

#include <algorithm>
#include <mutex>

#include "rrv/error.hpp"
#include "rrv/kernels.hpp"

namespace rrv::schubert {

namespace {

void check_datum(const ff::Flag& v, const SchubertDatum& d) {
  if (!(v.field == d.fixed.field) || v.n != d.fixed.n || d.sigma.degree() != v.n)
    throw error(errc::dimension_mismatch, "datum and flag disagree");
}

}  // namespace

bool schubert_member(const ff::Flag& v, const SchubertDatum& d) {
  check_datum(v, d);
  return perm::bruhat_leq(ff::relative_position(d.fixed, v), d.sigma);
}

bool schubert_cell_member(const ff::Flag& v, const SchubertDatum& d) {
  check_datum(v, d);
  return ff::relative_position(d.fixed, v) == d.sigma;
}

namespace {

// Membership predicate on raw frames for the streaming kernels: thread safe,
// all scratch lives on the stack.
std::function<bool(const ff::Matrix&)> member_predicate(const kernels::RelposContext& ctx,
                                                        const perm::Permutation& sigma) {
  return [&ctx, &sigma](const ff::Matrix& frame) {
    std::uint32_t scratch[perm::max_degree * perm::max_degree];
    int one_line[perm::max_degree];
    kernels::fast_relative_position(ctx, frame, one_line, scratch);
    std::vector<int> v(one_line, one_line + ctx.n);
    return perm::bruhat_leq(perm::Permutation(v), sigma);
  };
}

}  // namespace

std::vector<ff::Flag> enumerate_schubert(const SchubertDatum& d, std::uint64_t budget) {
  const ff::PrimeField& f = d.fixed.field;
  int n = d.fixed.n;
  if (d.sigma.degree() != n) throw error(errc::dimension_mismatch, "datum degree");
  kernels::RelposContext ctx = kernels::relpos_context(d.fixed);
  auto indices = kernels::filter_flags(f, n, member_predicate(ctx, d.sigma), budget);
  std::vector<ff::Flag> out;
  out.reserve(indices.size());
  for (std::uint64_t idx : indices) out.push_back(ff::flag_from_index(f, n, idx));
  return out;
}

std::vector<ff::Flag> enumerate_richardson(const SchubertDatum& dp, const SchubertDatum& dq,
                                           std::uint64_t budget) {
  if (!(dp.fixed.field == dq.fixed.field) || dp.fixed.n != dq.fixed.n)
    throw error(errc::dimension_mismatch, "data live in different spaces");
  const ff::PrimeField& f = dp.fixed.field;
  int n = dp.fixed.n;
  kernels::RelposContext cp = kernels::relpos_context(dp.fixed);
  kernels::RelposContext cq = kernels::relpos_context(dq.fixed);
  auto in_p = member_predicate(cp, dp.sigma);
  auto in_q = member_predicate(cq, dq.sigma);
  auto indices = kernels::filter_flags(
      f, n, [&](const ff::Matrix& frame) { return in_p(frame) && in_q(frame); }, budget);
  std::vector<ff::Flag> out;
  out.reserve(indices.size());
  for (std::uint64_t idx : indices) out.push_back(ff::flag_from_index(f, n, idx));
  return out;
}

bool richardson_nonempty(const perm::Permutation& sigma, const perm::Permutation& tau) {
  // tau w0 <= sigma: pinned against exhaustive enumeration (tests), and the
  // reading consistent with permutation flags realizing the pairs (u, u w0).
  perm::Permutation w0 = perm::Permutation::longest(sigma.degree());
  return perm::bruhat_leq(perm::compose(tau, w0), sigma);
}

namespace {

const kernels::PairHistogram& standard_opposite_histogram(int n, std::uint32_t q,
                                                          std::uint64_t budget) {
  static std::map<std::pair<int, std::uint32_t>, kernels::PairHistogram> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, q);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  ff::PrimeField f(q);
  kernels::PairHistogram h =
      kernels::relpos_pair_histogram(ff::standard_flag(f, n), ff::opposite_flag(f, n), budget);
  return cache.emplace(key, std::move(h)).first->second;
}

std::uint64_t count_from_histogram(const kernels::PairHistogram& h, const perm::Permutation& sigma,
                                   const perm::Permutation& tau) {
  std::vector<bool> below_sigma(h.order, false), below_tau(h.order, false);
  for (const auto& u : perm::bruhat_lower_set(sigma)) below_sigma[u.lex_rank()] = true;
  for (const auto& v : perm::bruhat_lower_set(tau)) below_tau[v.lex_rank()] = true;
  std::uint64_t total = 0;
  for (std::uint64_t u = 0; u < h.order; ++u) {
    if (!below_sigma[u]) continue;
    for (std::uint64_t v = 0; v < h.order; ++v)
      if (below_tau[v]) total += h.at(static_cast<int>(u), static_cast<int>(v));
  }
  return total;
}

}  // namespace

std::uint64_t richardson_count(int n, std::uint32_t q, const perm::Permutation& sigma,
                               const perm::Permutation& tau, std::uint64_t budget) {
  if (sigma.degree() != n || tau.degree() != n)
    throw error(errc::degree_mismatch, "permutation degree");
  return count_from_histogram(standard_opposite_histogram(n, q, budget), sigma, tau);
}

PointCountFit point_count_polynomial(const std::map<std::uint32_t, std::uint64_t>& counts,
                                     int max_degree) {
  if (max_degree < 0) throw error(errc::out_of_bounds, "negative degree bound");
  if (counts.size() < static_cast<std::size_t>(max_degree) + 1)
    throw error(errc::insufficient_samples,
                "need " + std::to_string(max_degree + 1) + " samples, have " +
                    std::to_string(counts.size()));
  std::vector<std::pair<long long, long long>> samples;
  for (const auto& [q, c] : counts) {
    [[maybe_unused]] ff::PrimeField probe(q);  // validates the abscissa is a supported prime
    if (c > static_cast<std::uint64_t>(0x7fffffffffffffffull))
      throw error(errc::enumeration_budget_exceeded, "count exceeds 63 bits");
    samples.emplace_back(static_cast<long long>(q), static_cast<long long>(c));
  }
  PointCountFit fit;
  fit.coefficients = interpolate_rational(samples);
  fit.degree = static_cast<int>(fit.coefficients.size()) - 1;
  for (const auto& c : fit.coefficients) {
    if (!c.is_integer())
      throw error(errc::non_integral_coefficients,
                  "coefficient " + c.str() + " is not an integer");
    if (c.is_negative()) fit.all_nonnegative = false;
  }
  fit.polynomial.coeffs.reserve(fit.coefficients.size());
  for (const auto& c : fit.coefficients) fit.polynomial.coeffs.push_back(c.to_int64());
  return fit;
}

std::optional<int> interpolated_richardson_dimension(int n, const perm::Permutation& sigma,
                                                     const perm::Permutation& tau) {
  perm::Permutation w0 = perm::Permutation::longest(n);
  if (sigma == w0 && tau == w0) return n * (n - 1) / 2;  // the whole flag variety
  std::map<std::uint32_t, std::uint64_t> counts;
  bool all_zero = true;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    std::uint64_t c = richardson_count(n, q, sigma, tau);
    if (c != 0) all_zero = false;
    counts[q] = c;
  }
  if (all_zero) return std::nullopt;
  // A proper pair has degree at most n(n-1)/2 - 1 <= 5 for n <= 4, so six
  // samples determine the polynomial exactly.
  PointCountFit fit = point_count_polynomial(counts, std::min(5, n * (n - 1) / 2));
  return fit.degree;
}

TangentReport tangent_dimension(const ff::Flag& v, const std::vector<SchubertDatum>& data) {
  std::vector<tangent::MinorCondition> conditions;
  for (const auto& d : data) {
    check_datum(v, d);
    if (!schubert_member(v, d))
      throw error(errc::not_a_member,
                  "flag lies outside X_" + d.sigma.str());
    auto c = tangent::schubert_conditions(d.fixed, d.sigma);
    conditions.insert(conditions.end(), c.begin(), c.end());
  }
  tangent::TangentReport r =
      tangent::tangent_at(v.field, v.rows, conditions, tangent::flag_stabilizer_dim(v.n));
  return TangentReport{v, r.nullity, r.stabilizer_dim, r.tangent_dim};
}

SmoothLocusReport smooth_locus_check(const SchubertDatum& dp, const SchubertDatum& dq,
                                     std::optional<int> expected_r_dim, std::uint64_t budget) {
  if (!(dp.fixed.field == dq.fixed.field) || dp.fixed.n != dq.fixed.n)
    throw error(errc::dimension_mismatch, "data live in different spaces");
  if (!ff::is_transverse(dp.fixed, dq.fixed))
    throw error(errc::flags_not_transverse, "defining flags are not transverse");
  const ff::PrimeField& f = dp.fixed.field;
  int n = dp.fixed.n;

  SmoothLocusReport rep{dp.sigma, dq.sigma, -1, 0, {}, 0, 0, true};
  std::vector<ff::Flag> points = enumerate_richardson(dp, dq, budget);
  rep.richardson_size = points.size();
  if (points.empty()) return rep;

  if (expected_r_dim.has_value()) {
    rep.expected_r_dim = *expected_r_dim;
  } else {
    auto dim = interpolated_richardson_dimension(n, dp.sigma, dq.sigma);
    if (!dim.has_value())
      throw error(errc::internal_invariant_violation, "nonempty set interpolated as empty");
    rep.expected_r_dim = *dim;
  }

  auto conds_p = tangent::schubert_conditions(dp.fixed, dp.sigma);
  auto conds_q = tangent::schubert_conditions(dq.fixed, dq.sigma);
  int stab = tangent::flag_stabilizer_dim(n);
  int dim_p = perm::inversions(dp.sigma);
  int dim_q = perm::inversions(dq.sigma);

  rep.points.reserve(points.size());
  for (const auto& v : points) {
    tangent::JacobianSpan sp = tangent::jacobian_span(f, v.rows, conds_p);
    tangent::JacobianSpan sq = tangent::jacobian_span(f, v.rows, conds_q);
    tangent::TangentReport tp = tangent::report_from_span(sp, stab);
    tangent::TangentReport tq = tangent::report_from_span(sq, stab);
    tangent::TangentReport tr = tangent::report_from_spans(f, {&sp, &sq}, stab);
    SmoothLocusPoint pt{v,
                        tr.tangent_dim,
                        tp.tangent_dim,
                        tq.tangent_dim,
                        tr.tangent_dim > rep.expected_r_dim,
                        tp.tangent_dim > dim_p,
                        tq.tangent_dim > dim_q};
    if (pt.excess_r) ++rep.singular_in_r;
    if (pt.excess_p || pt.excess_q) ++rep.singular_in_factors;
    if (pt.excess_r != (pt.excess_p || pt.excess_q)) rep.biconditional_holds = false;
    rep.points.push_back(std::move(pt));
  }
  return rep;
}

}  // namespace rrv::schubert
