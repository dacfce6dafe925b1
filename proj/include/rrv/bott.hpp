#pragma once

#include <cstdint>
#include <vector>

#include "rrv/error.hpp"
#include "rrv/flag.hpp"
#include "rrv/perm.hpp"

namespace rrv::bott {

// A chain F^0, ..., F^l over a word [i_1..i_l]: consecutive flags agree in
// every subspace except possibly dimension i_j, so relative_position of each
// step is identity or s_{i_j}. flags.size() == word.letters.size() + 1.
struct Chain {
  perm::ReducedWord word;
  std::vector<ff::Flag> flags;
};

// One target of a resolution map. exact_position means the target realizes
// the full relative position(s) of the datum; such fibers must be singletons.
struct FiberReport {
  ff::Flag target;
  std::uint64_t fiber_size = 0;
  bool exact_position = false;
};

// The q+1 flags agreeing with f away from dimension i, one per line of the
// two dimensional quotient f_{i+1}/f_{i-1}, in the deterministic order of
// ff::enumerate_extensions. Contains the canonical form of f itself.
// IndexOutOfRange unless 1 <= i <= n-1.
std::vector<ff::Flag> step_options(const ff::Flag& f, int i);

// All (q+1)^l chains anchored at F^0 = p, depth first, step options in
// order. Every stored flag is in canonical form. The word need not be
// reduced. EnumerationBudgetExceeded if the chain count would pass the
// budget.
std::vector<Chain> enumerate_chains(const ff::Flag& p, const perm::ReducedWord& word,
                                    std::uint64_t budget = default_budget);

// Pushforward of enumerate_chains along the last flag, for a reduced word.
// fibers lists each image flag once in Flag order with its chain count;
// exact_position marks Schubert cell points (relative position equal to
// sigma). Checks image == enumerate_schubert and singleton fibers over cell
// points, throwing ResolutionMismatch with the offending flag if either
// fails.
struct SchubertResolution {
  perm::Permutation sigma;
  std::uint64_t total_chains = 0;
  std::vector<FiberReport> fibers;
};
SchubertResolution resolve_schubert(const ff::Flag& p, const perm::ReducedWord& word,
                                    std::uint64_t budget = default_budget);

// Pairs of chains, one from p over word_sigma and one from q over word_tau,
// joined on equal final flag. The two chain families are grouped
// independently and joined per flag, so memory stays linear in each family.
// Reports are in Flag order; exact_position means relative_position(p, .)
// == sigma and relative_position(q, .) == tau simultaneously. Checks image
// == enumerate_richardson and singleton fibers on the exact locus, else
// ResolutionMismatch.
std::vector<FiberReport> resolve_richardson(const ff::Flag& p, const perm::ReducedWord& word_sigma,
                                            const ff::Flag& q, const perm::ReducedWord& word_tau,
                                            std::uint64_t budget = default_budget);

// Structural iterated P^1 count: for every level j and every class of chains
// agreeing on F^0..F^{j-1}, the distinct F^j values must number exactly q+1.
// True iff all classes pass. Holds for non-reduced words too.
bool consecutive_fiber_check(const std::vector<Chain>& chains);

}  // namespace rrv::bott
