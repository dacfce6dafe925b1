#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rrv/flag.hpp"
#include "rrv/matrix.hpp"
#include "rrv/perm.hpp"
#include "rrv/tangent.hpp"

namespace rrv::kernels {

// Bulk enumeration kernels. Every kernel has a serial reference twin with
// identical output; the unsuffixed variant uses OpenMP when compiled in and
// falls back to the serial body otherwise. Outputs are deterministic either
// way: histogram merges are exact integer sums and filters keep index order.

// Streaming relative position: relpos(P, V) is the inverse of the trailing
// pivot permutation of V's frame written in P's coordinates. Agrees with
// ff::relative_position everywhere (pinned by tests).
struct RelposContext {
  ff::PrimeField f{2};
  int n = 0;
  bool identity_frame = false;  // fixed frame is the identity: skip the basis change
  ff::Matrix frame_inverse;
};

RelposContext relpos_context(const ff::Flag& fixed);

// Writes the one line form (1-indexed values) into out[0..n-1].
// scratch must hold n*n entries.
void fast_relative_position(const RelposContext& ctx, const ff::Matrix& frame, int* out,
                            std::uint32_t* scratch);

// Joint distribution of (relpos(P,V), relpos(Q,V)) over every flag V,
// indexed by lexicographic rank pairs. One pass over the flag variety.
struct PairHistogram {
  int n = 0;
  std::uint64_t order = 0;  // n!
  std::uint64_t total = 0;  // number of flags counted
  std::vector<std::uint64_t> counts;  // order x order, row major

  std::uint64_t at(int u, int v) const { return counts[static_cast<std::size_t>(u) * order + v]; }
};

PairHistogram relpos_pair_histogram(const ff::Flag& p, const ff::Flag& q,
                                    std::uint64_t budget = default_budget);
PairHistogram relpos_pair_histogram_serial(const ff::Flag& p, const ff::Flag& q,
                                           std::uint64_t budget = default_budget);

// Indices (ascending) of flags whose frame satisfies the predicate.
std::vector<std::uint64_t> filter_flags(const ff::PrimeField& f, int n,
                                        const std::function<bool(const ff::Matrix&)>& pred,
                                        std::uint64_t budget = default_budget);
std::vector<std::uint64_t> filter_flags_serial(const ff::PrimeField& f, int n,
                                               const std::function<bool(const ff::Matrix&)>& pred,
                                               std::uint64_t budget = default_budget);

// Tangent reports for a batch of lift matrices against one condition set.
std::vector<tangent::TangentReport> tangent_sweep(const ff::PrimeField& f,
                                                  const std::vector<ff::Matrix>& points,
                                                  const std::vector<tangent::MinorCondition>& conditions,
                                                  int stabilizer_dim, bool parameter_column = false);
std::vector<tangent::TangentReport> tangent_sweep_serial(
    const ff::PrimeField& f, const std::vector<ff::Matrix>& points,
    const std::vector<tangent::MinorCondition>& conditions, int stabilizer_dim,
    bool parameter_column = false);

}  // namespace rrv::kernels
