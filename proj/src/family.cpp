#include "rrv/family.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>

#include "rrv/error.hpp"
#include "rrv/schubert.hpp"
#include "rrv/tangent.hpp"

namespace rrv::family {

const char* const profile_caveat =
    "profile-only versality: judged from the fiberwise relative-position profile; "
    "smoothness of the frame-bundle comparison map is not certified by this finite check";

const char* fiber_class_name(FiberClass cls) {
  switch (cls) {
    case FiberClass::transverse: return "transverse";
    case FiberClass::almost_transverse: return "almost-transverse";
    default: return "other";
  }
}

Poly make_poly(const ff::PrimeField& f, std::vector<std::uint32_t> coeffs) {
  for (std::uint32_t& c : coeffs) c %= f.p();
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  if (coeffs.size() > 3) throw error(errc::out_of_bounds, "family entry degree exceeds 2");
  return Poly{std::move(coeffs)};
}

std::uint32_t poly_eval(const ff::PrimeField& f, const Poly& poly, std::uint32_t s) {
  std::uint32_t acc = 0;
  s %= f.p();
  for (std::size_t k = poly.coeffs.size(); k-- > 0;)
    acc = f.add(f.mul(acc, s), poly.coeffs[k] % f.p());
  return acc;
}

std::uint32_t poly_eval_ds(const ff::PrimeField& f, const Poly& poly, std::uint32_t s) {
  std::uint32_t acc = 0;
  s %= f.p();
  for (std::size_t k = poly.coeffs.size(); k-- > 1;) {
    std::uint32_t ck = f.mul(static_cast<std::uint32_t>(k % f.p()), poly.coeffs[k] % f.p());
    acc = f.add(f.mul(acc, s), ck);
  }
  return acc;
}

namespace {

ff::Matrix specialize(const ff::PrimeField& f, const std::vector<Poly>& entries, int n,
                      std::uint32_t s, bool ds) {
  ff::Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Poly& e = entries[static_cast<std::size_t>(i) * n + j];
      m.at(i, j) = ds ? poly_eval_ds(f, e, s) : poly_eval(f, e, s);
    }
  return m;
}

void check_base(const PolynomialFamily& fam, std::uint32_t s) {
  if (s >= fam.field.p()) throw error(errc::out_of_bounds, "base point outside F_p");
}

}  // namespace

PolynomialFamily make_family(const ff::PrimeField& f, int n, std::vector<Poly> p_entries,
                             std::vector<Poly> q_entries) {
  if (n < 1) throw error(errc::dimension_mismatch, "family dimension must be positive");
  std::size_t need = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (p_entries.size() != need || q_entries.size() != need)
    throw error(errc::dimension_mismatch, "family needs n*n polynomial entries per matrix");
  for (Poly& e : p_entries) e = make_poly(f, std::move(e.coeffs));
  for (Poly& e : q_entries) e = make_poly(f, std::move(e.coeffs));
  PolynomialFamily fam{f, n, std::move(p_entries), std::move(q_entries)};
  for (std::uint32_t s = 0; s < f.p(); ++s)
    if (ff::rank(f, p_matrix(fam, s)) != n || ff::rank(f, q_matrix(fam, s)) != n)
      throw error(errc::singular_fiber, "family matrix drops rank at s = " + std::to_string(s));
  return fam;
}

ff::Matrix p_matrix(const PolynomialFamily& fam, std::uint32_t s) {
  check_base(fam, s);
  return specialize(fam.field, fam.p_rows, fam.n, s, false);
}
ff::Matrix q_matrix(const PolynomialFamily& fam, std::uint32_t s) {
  check_base(fam, s);
  return specialize(fam.field, fam.q_rows, fam.n, s, false);
}
ff::Matrix p_matrix_ds(const PolynomialFamily& fam, std::uint32_t s) {
  check_base(fam, s);
  return specialize(fam.field, fam.p_rows, fam.n, s, true);
}
ff::Matrix q_matrix_ds(const PolynomialFamily& fam, std::uint32_t s) {
  check_base(fam, s);
  return specialize(fam.field, fam.q_rows, fam.n, s, true);
}
ff::Flag p_flag(const PolynomialFamily& fam, std::uint32_t s) {
  return ff::canonical_flag(fam.field, p_matrix(fam, s));
}
ff::Flag q_flag(const PolynomialFamily& fam, std::uint32_t s) {
  return ff::canonical_flag(fam.field, q_matrix(fam, s));
}

ProfileReport relpos_profile(const PolynomialFamily& fam) {
  ProfileReport rep;
  rep.versal_pattern = true;
  for (std::uint32_t s = 0; s < fam.field.p(); ++s) {
    ff::Flag ps = p_flag(fam, s);
    ff::Flag qs = q_flag(fam, s);
    perm::Permutation rel = ff::relative_position(ps, qs);
    FiberClass cls = FiberClass::other;
    int dev = -1;
    if (ff::is_transverse(ps, qs)) {
      cls = FiberClass::transverse;
    } else if (std::optional<int> t = ff::is_almost_transverse(ps, qs)) {
      cls = FiberClass::almost_transverse;
      dev = *t;
    }
    if (cls == FiberClass::other) rep.versal_pattern = false;
    rep.fibers.push_back(FiberProfile{s, rel, cls, dev});
  }
  rep.caveat = rep.versal_pattern
                   ? std::string(profile_caveat)
                   : std::string("warning: profile does not match the versal pattern; ") +
                         profile_caveat;
  return rep;
}

namespace {

// Target pattern of demo_family and search_family: almost-transverse with
// deviation t at s = 0, transverse at every other base point.
bool profile_matches_target(const ProfileReport& rep, int t) {
  for (const FiberProfile& fb : rep.fibers) {
    bool ok = fb.s == 0 ? (fb.cls == FiberClass::almost_transverse && fb.deviation == t)
                        : fb.cls == FiberClass::transverse;
    if (!ok) return false;
  }
  return true;
}

}  // namespace

PolynomialFamily demo_family(int n, const ff::PrimeField& f, int t) {
  if (n < 2) throw error(errc::dimension_mismatch, "demo family needs n >= 2");
  if (t < 1 || t >= n) throw error(errc::index_out_of_range, "deviation t outside 1..n-1");
  std::size_t nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<Poly> pe(nn), qe(nn);
  for (int i = 0; i < n; ++i) pe[static_cast<std::size_t>(i) * n + i] = Poly{{1}};
  for (int k = 1; k <= n; ++k) {
    std::size_t base = static_cast<std::size_t>(k - 1) * n;
    if (k == n - t) {
      qe[base + (t - 1)] = Poly{{1}};  // e_t
      qe[base + t] = Poly{{0, 1}};     // + s e_{t+1}
    } else if (k == n - t + 1) {
      qe[base + t] = Poly{{1}};  // e_{t+1}
    } else {
      qe[base + (n - k)] = Poly{{1}};  // opposite row e_{n+1-k}
    }
  }
  PolynomialFamily fam = make_family(f, n, std::move(pe), std::move(qe));
  if (!profile_matches_target(relpos_profile(fam), t))
    throw error(errc::internal_invariant_violation, "demo family profile");
  return fam;
}

PolynomialFamily search_family(int n, const ff::PrimeField& f, int t, std::uint64_t seed,
                               int attempt_cap) {
  if (n < 2 || t < 1 || t >= n)
    throw error(errc::not_found, "no family: the deviation must satisfy 1 <= t <= n-1");
  std::mt19937_64 rng(ff::split_seed(seed, 0x66616dull));
  std::uniform_int_distribution<std::uint32_t> coeff(0, f.p() - 1);
  std::size_t nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  for (int attempt = 0; attempt < attempt_cap; ++attempt) {
    std::vector<Poly> pe(nn), qe(nn);
    for (Poly& e : pe) e = make_poly(f, {coeff(rng), coeff(rng)});
    for (Poly& e : qe) e = make_poly(f, {coeff(rng), coeff(rng)});
    PolynomialFamily cand{f, n, std::move(pe), std::move(qe)};
    bool invertible = true;
    for (std::uint32_t s = 0; s < f.p() && invertible; ++s)
      invertible = ff::rank(f, p_matrix(cand, s)) == n && ff::rank(f, q_matrix(cand, s)) == n;
    if (!invertible) continue;
    if (profile_matches_target(relpos_profile(cand), t)) return cand;
  }
  throw error(errc::not_found, "no family with the requested profile within the attempt cap");
}

std::vector<FlagTotalPoint> enumerate_total_space(const PolynomialFamily& fam,
                                                  const perm::Permutation& sigma,
                                                  const perm::Permutation& tau,
                                                  std::uint64_t budget) {
  if (sigma.degree() != fam.n || tau.degree() != fam.n)
    throw error(errc::degree_mismatch, "conditions must match the family dimension");
  std::uint64_t scan = ff::flag_count(fam.n, fam.field.p(), budget);
  if (scan > budget / fam.field.p())
    throw error(errc::enumeration_budget_exceeded, "total space scan exceeds budget");
  std::vector<FlagTotalPoint> out;
  for (std::uint32_t s = 0; s < fam.field.p(); ++s) {
    schubert::SchubertDatum dp{p_flag(fam, s), sigma};
    schubert::SchubertDatum dq{q_flag(fam, s), tau};
    std::vector<ff::Flag> fiber = schubert::enumerate_richardson(dp, dq, budget);
    std::sort(fiber.begin(), fiber.end());
    for (ff::Flag& v : fiber) out.push_back(FlagTotalPoint{s, std::move(v)});
  }
  return out;
}

std::vector<GrassTotalPoint> enumerate_total_space(const PolynomialFamily& fam,
                                                   const grass::AdmissiblePartition& lambda,
                                                   const grass::AdmissiblePartition& lambda_prime,
                                                   std::uint64_t budget) {
  if (lambda.n != fam.n || lambda_prime.n != fam.n || lambda.r != lambda_prime.r)
    throw error(errc::dimension_mismatch, "partition shape does not match the family");
  int r = lambda.r;
  std::uint64_t scan = ff::subspace_count(fam.n, r, fam.field.p());
  if (scan > budget / fam.field.p())
    throw error(errc::enumeration_budget_exceeded, "total space scan exceeds budget");
  std::vector<ff::Matrix> subs = ff::enumerate_subspaces(fam.field, fam.n, r, budget);
  std::sort(subs.begin(), subs.end(),
            [](const ff::Matrix& x, const ff::Matrix& y) { return x.a < y.a; });
  std::vector<GrassTotalPoint> out;
  for (std::uint32_t s = 0; s < fam.field.p(); ++s) {
    ff::Flag ps = p_flag(fam, s);
    ff::Flag qs = q_flag(fam, s);
    for (const ff::Matrix& m : subs) {
      grass::GrassPoint v{fam.field, fam.n, r, m};
      if (grass::grass_schubert_member(v, ps, lambda) &&
          grass::grass_schubert_member(v, qs, lambda_prime))
        out.push_back(GrassTotalPoint{s, std::move(v)});
    }
  }
  return out;
}

namespace {

// Minor conditions of one fiberwise Schubert factor, on the raw specialized
// rows, with the entrywise d/ds in fixed_ds so the parameter column sees the
// motion of the fixed flag.
std::vector<tangent::MinorCondition> flag_side_conditions(const PolynomialFamily& fam,
                                                          std::uint32_t s,
                                                          const perm::Permutation& sigma,
                                                          bool p_side) {
  ff::Matrix raw = p_side ? p_matrix(fam, s) : q_matrix(fam, s);
  ff::Matrix ds = p_side ? p_matrix_ds(fam, s) : q_matrix_ds(fam, s);
  std::vector<tangent::MinorCondition> conds = tangent::schubert_conditions(raw, sigma);
  for (tangent::MinorCondition& c : conds) c.fixed_ds = ds.slice_rows(0, c.fixed.rows);
  return conds;
}

std::vector<tangent::MinorCondition> grass_side_conditions(const PolynomialFamily& fam,
                                                           std::uint32_t s,
                                                           const grass::AdmissiblePartition& lambda,
                                                           bool p_side) {
  ff::Matrix raw = p_side ? p_matrix(fam, s) : q_matrix(fam, s);
  ff::Matrix ds = p_side ? p_matrix_ds(fam, s) : q_matrix_ds(fam, s);
  int n = fam.n;
  int r = lambda.r;
  std::vector<tangent::MinorCondition> out;
  for (int i = 1; i <= r; ++i) {
    int li = lambda.parts[static_cast<std::size_t>(i - 1)];
    if (li == 0) continue;  // vacuous condition
    int w = n - r + i - li;
    tangent::MinorCondition c;
    c.fixed = raw.slice_rows(0, w);
    c.fixed_ds = ds.slice_rows(0, w);
    c.moving.resize(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k) c.moving[static_cast<std::size_t>(k)] = k;
    c.bound = w + r - i;
    out.push_back(std::move(c));
  }
  return out;
}

TotalTangentReport tangent_from_conditions(const ff::PrimeField& f, const ff::Matrix& lift,
                                           std::vector<tangent::MinorCondition> conds,
                                           std::uint32_t s, int stabilizer, bool use_dual) {
  tangent::JacobianSpan span = tangent::jacobian_span(f, lift, conds, true, use_dual);
  tangent::TangentReport rep = tangent::report_from_span(span, stabilizer);
  return TotalTangentReport{s, rep.nullity, rep.stabilizer_dim, rep.tangent_dim};
}

}  // namespace

TotalTangentReport total_tangent_dimension(const FlagTotalPoint& pt, const PolynomialFamily& fam,
                                           const perm::Permutation& sigma,
                                           const perm::Permutation& tau,
                                           bool use_dual_reference) {
  if (sigma.degree() != fam.n || tau.degree() != fam.n)
    throw error(errc::degree_mismatch, "conditions must match the family dimension");
  if (pt.v.n != fam.n || !(pt.v.field == fam.field))
    throw error(errc::dimension_mismatch, "point does not live in the family bundle");
  check_base(fam, pt.s);
  if (!schubert::schubert_member(pt.v, {p_flag(fam, pt.s), sigma}) ||
      !schubert::schubert_member(pt.v, {q_flag(fam, pt.s), tau}))
    throw error(errc::not_a_member, "point is outside the total space");
  std::vector<tangent::MinorCondition> conds = flag_side_conditions(fam, pt.s, sigma, true);
  std::vector<tangent::MinorCondition> cq = flag_side_conditions(fam, pt.s, tau, false);
  conds.insert(conds.end(), std::make_move_iterator(cq.begin()), std::make_move_iterator(cq.end()));
  return tangent_from_conditions(fam.field, pt.v.rows, std::move(conds), pt.s,
                                 tangent::flag_stabilizer_dim(fam.n), use_dual_reference);
}

TotalTangentReport total_tangent_dimension(const GrassTotalPoint& pt, const PolynomialFamily& fam,
                                           const grass::AdmissiblePartition& lambda,
                                           const grass::AdmissiblePartition& lambda_prime,
                                           bool use_dual_reference) {
  if (lambda.n != fam.n || lambda_prime.n != fam.n || lambda.r != lambda_prime.r)
    throw error(errc::dimension_mismatch, "partition shape does not match the family");
  if (pt.v.n != fam.n || pt.v.r != lambda.r || !(pt.v.field == fam.field))
    throw error(errc::dimension_mismatch, "point does not live in the family bundle");
  check_base(fam, pt.s);
  if (!grass::grass_schubert_member(pt.v, p_flag(fam, pt.s), lambda) ||
      !grass::grass_schubert_member(pt.v, q_flag(fam, pt.s), lambda_prime))
    throw error(errc::not_a_member, "point is outside the total space");
  std::vector<tangent::MinorCondition> conds = grass_side_conditions(fam, pt.s, lambda, true);
  std::vector<tangent::MinorCondition> cq = grass_side_conditions(fam, pt.s, lambda_prime, false);
  conds.insert(conds.end(), std::make_move_iterator(cq.begin()), std::make_move_iterator(cq.end()));
  return tangent_from_conditions(fam.field, pt.v.basis, std::move(conds), pt.s,
                                 lambda.r * lambda.r, use_dual_reference);
}

namespace {

ExpectedDims dims_from_counts(const std::map<std::uint32_t, std::uint64_t>& cr,
                              const std::map<std::uint32_t, std::uint64_t>& cp,
                              const std::map<std::uint32_t, std::uint64_t>& cq) {
  int cap = static_cast<int>(cr.size()) - 1;
  ExpectedDims d;
  d.intersection = schubert::point_count_polynomial(cr, cap).degree;
  d.factor_p = schubert::point_count_polynomial(cp, cap).degree;
  d.factor_q = schubert::point_count_polynomial(cq, cap).degree;
  return d;
}

}  // namespace

ExpectedDims interpolated_expected_dims(
    const std::function<PolynomialFamily(const ff::PrimeField&)>& generator,
    const perm::Permutation& sigma, const perm::Permutation& tau,
    const std::vector<std::uint32_t>& primes, std::uint64_t budget) {
  if (primes.size() < 2) throw error(errc::insufficient_samples, "need at least two primes");
  std::map<std::uint32_t, std::uint64_t> cr, cp, cq;
  for (std::uint32_t q : primes) {
    ff::PrimeField f(q);
    PolynomialFamily fam = generator(f);
    if (fam.n != sigma.degree() || fam.n != tau.degree())
      throw error(errc::degree_mismatch, "generator dimension does not match the conditions");
    cr[q] = enumerate_total_space(fam, sigma, tau, budget).size();
    std::uint64_t np = 0, nq = 0;
    for (std::uint32_t s = 0; s < q; ++s) {
      np += schubert::enumerate_schubert({p_flag(fam, s), sigma}, budget).size();
      nq += schubert::enumerate_schubert({q_flag(fam, s), tau}, budget).size();
    }
    cp[q] = np;
    cq[q] = nq;
  }
  return dims_from_counts(cr, cp, cq);
}

ExpectedDims interpolated_expected_dims(
    const std::function<PolynomialFamily(const ff::PrimeField&)>& generator,
    const grass::AdmissiblePartition& lambda, const grass::AdmissiblePartition& lambda_prime,
    const std::vector<std::uint32_t>& primes, std::uint64_t budget) {
  if (primes.size() < 2) throw error(errc::insufficient_samples, "need at least two primes");
  std::map<std::uint32_t, std::uint64_t> cr, cp, cq;
  for (std::uint32_t q : primes) {
    ff::PrimeField f(q);
    PolynomialFamily fam = generator(f);
    if (fam.n != lambda.n || fam.n != lambda_prime.n)
      throw error(errc::degree_mismatch, "generator dimension does not match the conditions");
    cr[q] = enumerate_total_space(fam, lambda, lambda_prime, budget).size();
    std::uint64_t np = 0, nq = 0;
    for (std::uint32_t s = 0; s < q; ++s) {
      np += grass::enumerate_grass_schubert(p_flag(fam, s), lambda, budget).size();
      nq += grass::enumerate_grass_schubert(q_flag(fam, s), lambda_prime, budget).size();
    }
    cp[q] = np;
    cq[q] = nq;
  }
  return dims_from_counts(cr, cp, cq);
}

FlagLocusReport singular_locus_map(const PolynomialFamily& fam, const perm::Permutation& sigma,
                                   const perm::Permutation& tau, const ExpectedDims& expected,
                                   std::uint64_t budget) {
  ProfileReport prof = relpos_profile(fam);
  FlagLocusReport rep;
  rep.versal_pattern = prof.versal_pattern;
  rep.caveat = prof.caveat;
  rep.expected = expected;
  rep.union_law = true;
  for (FlagTotalPoint& pt : enumerate_total_space(fam, sigma, tau, budget)) {
    FlagLocusEntry e;
    e.s = pt.s;
    e.tangent_intersection = total_tangent_dimension(pt, fam, sigma, tau).tangent_dim;
    int stab = tangent::flag_stabilizer_dim(fam.n);
    e.tangent_p = tangent_from_conditions(fam.field, pt.v.rows,
                                          flag_side_conditions(fam, pt.s, sigma, true), pt.s, stab,
                                          false)
                      .tangent_dim;
    e.tangent_q = tangent_from_conditions(fam.field, pt.v.rows,
                                          flag_side_conditions(fam, pt.s, tau, false), pt.s, stab,
                                          false)
                      .tangent_dim;
    e.singular_intersection = e.tangent_intersection > expected.intersection;
    e.singular_p = e.tangent_p > expected.factor_p;
    e.singular_q = e.tangent_q > expected.factor_q;
    e.point = std::move(pt.v);
    if (e.singular_intersection != (e.singular_p || e.singular_q)) rep.union_law = false;
    if (e.singular_intersection) ++rep.singular_count;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

GrassLocusReport singular_locus_map(const PolynomialFamily& fam,
                                    const grass::AdmissiblePartition& lambda,
                                    const grass::AdmissiblePartition& lambda_prime,
                                    const ExpectedDims& expected, std::uint64_t budget) {
  ProfileReport prof = relpos_profile(fam);
  GrassLocusReport rep;
  rep.versal_pattern = prof.versal_pattern;
  rep.caveat = prof.caveat;
  rep.expected = expected;
  rep.union_law = true;
  for (GrassTotalPoint& pt : enumerate_total_space(fam, lambda, lambda_prime, budget)) {
    GrassLocusEntry e;
    e.s = pt.s;
    e.tangent_intersection = total_tangent_dimension(pt, fam, lambda, lambda_prime).tangent_dim;
    int stab = lambda.r * lambda.r;
    e.tangent_p = tangent_from_conditions(fam.field, pt.v.basis,
                                          grass_side_conditions(fam, pt.s, lambda, true), pt.s,
                                          stab, false)
                      .tangent_dim;
    e.tangent_q = tangent_from_conditions(fam.field, pt.v.basis,
                                          grass_side_conditions(fam, pt.s, lambda_prime, false),
                                          pt.s, stab, false)
                      .tangent_dim;
    e.singular_intersection = e.tangent_intersection > expected.intersection;
    e.singular_p = e.tangent_p > expected.factor_p;
    e.singular_q = e.tangent_q > expected.factor_q;
    e.point = std::move(pt.v);
    if (e.singular_intersection != (e.singular_p || e.singular_q)) rep.union_law = false;
    if (e.singular_intersection) ++rep.singular_count;
    rep.entries.push_back(std::move(e));
  }

  // The Gr(2,4), lambda = lambda' = (1,0) configuration with a versal profile
  // whose deviations all sit at t = 2: the singular set must be exactly the
  // two special lines P(s0)_2, Q(s0)_2 over each almost-transverse base point.
  bool example_shape = fam.n == 4 && lambda.r == 2 && rep.versal_pattern &&
                       lambda.parts == std::vector<int>{1, 0} &&
                       lambda_prime.parts == std::vector<int>{1, 0};
  bool has_almost = false;
  for (const FiberProfile& fb : prof.fibers)
    if (fb.cls == FiberClass::almost_transverse) {
      has_almost = true;
      if (fb.deviation != 2) example_shape = false;
    }
  if (example_shape && has_almost) {
    std::set<std::pair<std::uint32_t, grass::GrassPoint>> want, got;
    for (const FiberProfile& fb : prof.fibers)
      if (fb.cls == FiberClass::almost_transverse) {
        want.insert({fb.s, grass::grass_point(fam.field, p_matrix(fam, fb.s).slice_rows(0, 2))});
        want.insert({fb.s, grass::grass_point(fam.field, q_matrix(fam, fb.s).slice_rows(0, 2))});
      }
    for (const GrassLocusEntry& e : rep.entries)
      if (e.singular_intersection) got.insert({e.s, e.point});
    if (want != got)
      throw error(errc::internal_invariant_violation,
                  "singular set is not the pair of special lines");
  }
  return rep;
}

}  // namespace rrv::family
