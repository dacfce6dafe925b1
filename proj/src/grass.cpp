#include "rrv/grass.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "rrv/tangent.hpp"

namespace rrv::grass {

namespace {

void check_datum(const GrassPoint& v, const ff::Flag& fl, const AdmissiblePartition& lambda) {
  if (!(v.field == fl.field) || v.n != fl.n)
    throw error(errc::dimension_mismatch, "point and flag live in different spaces");
  if (lambda.n != v.n || lambda.r != v.r)
    throw error(errc::dimension_mismatch, "partition shape does not match the point");
}

// dim(V cap F_w) via the stacked rank.
int meet_dim(const GrassPoint& v, const ff::Flag& fl, int w) {
  ff::Matrix st = ff::stack_rows(fl.prefix(w), v.basis);
  return v.r + w - ff::rank(v.field, st);
}

std::string point_str(const GrassPoint& v) {
  std::string s = "[";
  for (int i = 0; i < v.r; ++i) {
    if (i) s += "; ";
    for (int j = 0; j < v.n; ++j) {
      if (j) s += " ";
      s += std::to_string(v.basis.at(i, j));
    }
  }
  s += "]";
  return s;
}

}  // namespace

bool is_admissible(const std::vector<int>& parts, int r, int n) {
  if (r < 0 || n < 0 || r > n) return false;
  if (static_cast<int>(parts.size()) > r) return false;
  int prev = n - r;
  for (int part : parts) {
    if (part < 0 || part > prev) return false;
    prev = part;
  }
  return true;
}

AdmissiblePartition make_partition(std::vector<int> parts, int r, int n) {
  if (!is_admissible(parts, r, n))
    throw error(errc::not_admissible, "partition violates n - r >= lambda_1 >= ... >= lambda_r >= 0");
  parts.resize(static_cast<std::size_t>(r), 0);
  return AdmissiblePartition{r, n, std::move(parts)};
}

ExponentForm exponent_form(const AdmissiblePartition& lambda) {
  ExponentForm out;
  int sum = 0;
  for (int part : lambda.parts) {
    if (part == 0) break;
    if (!out.pairs.empty() && out.pairs.back().first == part) {
      ++out.pairs.back().second;
      ++out.prefix_sums.back();
    } else {
      ++sum;
      out.pairs.emplace_back(part, 1);
      out.prefix_sums.push_back(sum);
    }
    sum = out.prefix_sums.back();
  }
  out.type = static_cast<int>(out.pairs.size());
  return out;
}

VanishingSequence make_vanishing(std::vector<int> values, int r, int d) {
  if (r < 0 || static_cast<int>(values.size()) != r + 1)
    throw error(errc::out_of_bounds, "vanishing sequence needs exactly r + 1 values");
  for (int k = 0; k <= r; ++k) {
    if (values[k] < 0 || values[k] > d)
      throw error(errc::out_of_bounds, "vanishing sequence value outside [0, d]");
    if (k > 0 && values[k] <= values[k - 1])
      throw error(errc::out_of_bounds, "vanishing sequence must strictly increase");
  }
  return VanishingSequence{r, d, std::move(values)};
}

AdmissiblePartition vanishing_to_partition(const VanishingSequence& a) {
  // lambda_i = a_{r+1-(i-1)} - (r+1-i), read off the values back to front.
  std::vector<int> parts(static_cast<std::size_t>(a.r) + 1);
  for (int i = 1; i <= a.r + 1; ++i)
    parts[i - 1] = a.values[static_cast<std::size_t>(a.r + 1 - i)] - (a.r + 1 - i);
  return make_partition(std::move(parts), a.r + 1, a.d + 1);
}

VanishingSequence partition_to_vanishing(const AdmissiblePartition& lambda, int r, int d) {
  if (lambda.r != r + 1)
    throw error(errc::not_admissible, "partition length must be r + 1");
  if (!is_admissible(lambda.parts, r + 1, d + 1))
    throw error(errc::not_admissible, "partition is not Gr(r+1, d+1) admissible");
  std::vector<int> values(static_cast<std::size_t>(r) + 1);
  for (int i = 1; i <= r + 1; ++i)
    values[static_cast<std::size_t>(r + 1 - i)] = lambda.parts[i - 1] + (r + 1 - i);
  return make_vanishing(std::move(values), r, d);
}

GrassPoint grass_point(const ff::PrimeField& f, const ff::Matrix& basis) {
  ff::Matrix canon = ff::rref(f, basis);
  if (canon.rows != basis.rows)
    throw error(errc::singular_matrix, "basis rows are dependent");
  return GrassPoint{f, basis.cols, basis.rows, std::move(canon)};
}

bool grass_schubert_member(const GrassPoint& v, const ff::Flag& fl,
                           const AdmissiblePartition& lambda) {
  check_datum(v, fl, lambda);
  for (int i = 1; i <= lambda.r; ++i)
    if (meet_dim(v, fl, v.n - v.r + i - lambda.parts[i - 1]) < i) return false;
  return true;
}

bool grass_schubert_exact(const GrassPoint& v, const ff::Flag& fl,
                          const AdmissiblePartition& lambda) {
  check_datum(v, fl, lambda);
  for (int i = 1; i <= lambda.r; ++i) {
    if (lambda.parts[i - 1] == 0) continue;
    if (meet_dim(v, fl, v.n - v.r + i - lambda.parts[i - 1]) != i) return false;
  }
  return true;
}

std::vector<GrassPoint> enumerate_grass_schubert(const ff::Flag& fl,
                                                 const AdmissiblePartition& lambda,
                                                 std::uint64_t budget) {
  if (lambda.n != fl.n)
    throw error(errc::dimension_mismatch, "partition ambient does not match the flag");
  std::vector<GrassPoint> out;
  for (ff::Matrix& m : ff::enumerate_subspaces(fl.field, lambda.n, lambda.r, budget)) {
    GrassPoint v{fl.field, lambda.n, lambda.r, std::move(m)};
    if (grass_schubert_member(v, fl, lambda)) out.push_back(std::move(v));
  }
  return out;
}

std::vector<GrassChain> enumerate_z_chain(const ff::Flag& fl, const AdmissiblePartition& lambda,
                                          std::uint64_t budget) {
  if (lambda.n != fl.n)
    throw error(errc::dimension_mismatch, "partition ambient does not match the flag");
  if (!is_admissible(lambda.parts, lambda.r, lambda.n))
    throw error(errc::not_admissible, "partition is not admissible");
  const ff::PrimeField& f = fl.field;
  const int n = lambda.n, r = lambda.r;
  ExponentForm ef = exponent_form(lambda);

  std::vector<GrassChain> out;
  std::vector<ff::Matrix> stack;
  const ff::Matrix empty(0, n);
  auto emit = [&](const ff::Matrix& top) {
    GrassChain c;
    c.subspaces = stack;
    c.projection = GrassPoint{f, n, r, ff::rref(f, top)};
    out.push_back(std::move(c));
    if (out.size() > budget)
      throw error(errc::enumeration_budget_exceeded, "chain count exceeds budget");
  };
  auto dfs = [&](auto&& self, int s) -> void {
    const ff::Matrix& prev = stack.empty() ? empty : stack.back();
    if (s > ef.type) {
      // Augment to dimension r when the chain stops short, else project V_j.
      if (stack.empty() || stack.back().rows < r) {
        for (const ff::Matrix& v : ff::enumerate_extensions(f, prev, ff::Matrix::identity(n), r, budget))
          emit(v);
      } else {
        emit(stack.back());
      }
      return;
    }
    int a = ef.prefix_sums[s - 1];
    int piece = n - r + a - lambda.parts[a - 1];
    for (const ff::Matrix& v : ff::enumerate_extensions(f, prev, fl.prefix(piece), a, budget)) {
      stack.push_back(v);
      self(self, s + 1);
      stack.pop_back();
    }
  };
  dfs(dfs, 1);
  return out;
}

std::vector<ZExampleTuple> enumerate_z_example(const ff::Flag& f, const ff::Flag& g,
                                               std::uint64_t budget) {
  if (!(f.field == g.field) || f.n != g.n)
    throw error(errc::dimension_mismatch, "flags live in different spaces");
  if (f.n != 4)
    throw error(errc::dimension_mismatch, "the worked example is fixed to Gr(2, 4)");
  const ff::PrimeField& fd = f.field;
  const ff::Matrix f2 = f.prefix(2), g2 = g.prefix(2);
  const ff::Matrix whole = ff::Matrix::identity(4);
  std::vector<ZExampleTuple> out;
  for (ff::Matrix& lm : ff::enumerate_subspaces(fd, 4, 2, budget)) {
    GrassPoint line{fd, 4, 2, std::move(lm)};
    ff::Matrix meet_f = ff::intersect_row_spaces(fd, line.basis, f2);
    ff::Matrix meet_g = ff::intersect_row_spaces(fd, line.basis, g2);
    if (meet_f.rows == 0 || meet_g.rows == 0) continue;
    ff::Matrix join_f = ff::rref(fd, ff::stack_rows(line.basis, f2));
    ff::Matrix join_g = ff::rref(fd, ff::stack_rows(line.basis, g2));
    if (join_f.rows > 3 || join_g.rows > 3)
      throw error(errc::internal_invariant_violation, "join dimension contradicts the meet");
    auto p1s = ff::enumerate_extensions(fd, ff::Matrix(0, 4), meet_f, 1, budget);
    auto p2s = ff::enumerate_extensions(fd, ff::Matrix(0, 4), meet_g, 1, budget);
    auto h1s = ff::enumerate_extensions(fd, join_f, whole, 3, budget);
    auto h2s = ff::enumerate_extensions(fd, join_g, whole, 3, budget);
    for (const auto& p1 : p1s)
      for (const auto& p2 : p2s)
        for (const auto& h1 : h1s)
          for (const auto& h2 : h2s) {
            out.push_back(ZExampleTuple{line, p1, p2, h1, h2});
            if (out.size() > budget)
              throw error(errc::enumeration_budget_exceeded, "tuple count exceeds budget");
          }
  }
  return out;
}

std::vector<GrassFiberReport> resolve_grass_richardson(const ff::Flag& p,
                                                       const AdmissiblePartition& lambda,
                                                       const ff::Flag& q,
                                                       const AdmissiblePartition& lambda_prime,
                                                       Variant variant, std::uint64_t budget) {
  if (!(p.field == q.field) || p.n != q.n)
    throw error(errc::dimension_mismatch, "flags live in different spaces");
  if (lambda.n != p.n || lambda_prime.n != q.n || lambda.r != lambda_prime.r)
    throw error(errc::dimension_mismatch, "partition shapes do not match");

  std::map<GrassPoint, std::uint64_t> fibers;
  if (variant == Variant::chain) {
    std::map<GrassPoint, std::uint64_t> from_p, from_q;
    for (const GrassChain& c : enumerate_z_chain(p, lambda, budget)) ++from_p[c.projection];
    for (const GrassChain& c : enumerate_z_chain(q, lambda_prime, budget)) ++from_q[c.projection];
    for (const auto& [v, cp] : from_p) {
      auto it = from_q.find(v);
      if (it != from_q.end()) fibers[v] = cp * it->second;
    }
  } else {
    const std::vector<int> shape{1, 0};
    if (p.n != 4 || lambda.r != 2 || lambda.parts != shape || lambda_prime.parts != shape)
      throw error(errc::usage_error, "the example variant is fixed to Gr(2,4) with both partitions (1,0)");
    for (const ZExampleTuple& t : enumerate_z_example(p, q, budget)) ++fibers[t.line];
  }

  std::vector<GrassPoint> expected;
  for (GrassPoint& v : enumerate_grass_schubert(p, lambda, budget))
    if (grass_schubert_member(v, q, lambda_prime)) expected.push_back(std::move(v));
  std::sort(expected.begin(), expected.end());
  if (expected.size() != fibers.size())
    throw error(errc::resolution_mismatch, "image size " + std::to_string(fibers.size()) +
                                               " does not match Richardson point count " +
                                               std::to_string(expected.size()));

  std::vector<GrassFiberReport> out;
  std::size_t k = 0;
  for (const auto& [v, c] : fibers) {
    if (!(v == expected[k]))
      throw error(errc::resolution_mismatch,
                  "image point " + point_str(v) + " is not the expected Richardson point");
    ++k;
    GrassFiberReport rep;
    rep.target = v;
    rep.fiber_size = c;
    rep.exact_position =
        grass_schubert_exact(v, p, lambda) && grass_schubert_exact(v, q, lambda_prime);
    if (rep.exact_position && rep.fiber_size != 1)
      throw error(errc::resolution_mismatch, "exact position point " + point_str(v) +
                                                 " has fiber of size " + std::to_string(c));
    out.push_back(std::move(rep));
  }
  return out;
}

TangentReport tangent_dimension_grass(
    const GrassPoint& v,
    const std::vector<std::pair<ff::Flag, AdmissiblePartition>>& conditions) {
  const int n = v.n, r = v.r;
  std::vector<tangent::MinorCondition> minors;
  std::vector<int> all_rows(static_cast<std::size_t>(r));
  for (int k = 0; k < r; ++k) all_rows[static_cast<std::size_t>(k)] = k;
  for (const auto& [fl, lambda] : conditions) {
    if (!grass_schubert_member(v, fl, lambda))
      throw error(errc::not_a_member, "point lies outside a Schubert condition");
    for (int i = 1; i <= r; ++i) {
      if (lambda.parts[i - 1] == 0) continue;  // vacuous bound
      int w = n - r + i - lambda.parts[i - 1];
      tangent::MinorCondition c;
      c.fixed = fl.prefix(w);
      c.fixed_ds = ff::Matrix(w, n);
      c.moving = all_rows;
      c.bound = w + r - i;
      minors.push_back(std::move(c));
    }
  }
  tangent::JacobianSpan span = tangent::jacobian_span(v.field, v.basis, minors);
  tangent::TangentReport base = tangent::report_from_span(span, r * r);
  TangentReport out;
  out.point = v;
  out.ambient_nullity = base.nullity;
  out.quotient_dim = base.stabilizer_dim;
  out.tangent_dim = base.tangent_dim;
  return out;
}

}  // namespace rrv::grass
