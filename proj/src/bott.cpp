#include "rrv/bott.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "rrv/matrix.hpp"
#include "rrv/schubert.hpp"

namespace rrv::bott {

namespace {

std::string flag_str(const ff::Flag& f) {
  std::string s = "[";
  for (int i = 0; i < f.n; ++i) {
    if (i) s += "; ";
    for (int j = 0; j < f.n; ++j) {
      if (j) s += " ";
      s += std::to_string(f.rows.at(i, j));
    }
  }
  s += "]";
  return s;
}

void check_word(const ff::Flag& p, const perm::ReducedWord& word) {
  if (word.degree != p.n)
    throw error(errc::degree_mismatch, "word degree does not match the flag");
  for (int letter : word.letters)
    if (letter < 1 || letter >= p.n)
      throw error(errc::letter_out_of_range, "word letter out of range");
}

// Final-flag multiplicities of all chains from p over word. Walks the chain
// tree without materializing chains; memoizes step options per (letter, flag)
// since the tree revisits the same flag many times.
std::map<ff::Flag, std::uint64_t> final_flag_counts(const ff::Flag& p,
                                                    const perm::ReducedWord& word,
                                                    std::uint64_t budget) {
  check_word(p, word);
  std::uint64_t total = 1;
  const std::uint64_t branch = p.field.p() + 1;
  for (std::size_t j = 0; j < word.letters.size(); ++j) {
    if (total > budget / branch)
      throw error(errc::enumeration_budget_exceeded, "chain count exceeds budget");
    total *= branch;
  }
  std::map<std::pair<int, ff::Flag>, std::vector<ff::Flag>> memo;
  std::map<ff::Flag, std::uint64_t> counts;
  // Level-order: multiplicity map per level, advanced one letter at a time.
  // The anchor is canonicalized so map keys are uniform across sources.
  counts[ff::canonical_flag(p.field, p.rows)] = 1;
  for (int letter : word.letters) {
    std::map<ff::Flag, std::uint64_t> next;
    for (const auto& [f, c] : counts) {
      auto key = std::make_pair(letter, f);
      auto it = memo.find(key);
      if (it == memo.end()) it = memo.emplace(key, step_options(f, letter)).first;
      for (const ff::Flag& g : it->second) next[g] += c;
    }
    counts = std::move(next);
  }
  return counts;
}

}  // namespace

std::vector<ff::Flag> step_options(const ff::Flag& f, int i) {
  if (i < 1 || i >= f.n)
    throw error(errc::index_out_of_range, "step index must lie in 1..n-1");
  const ff::Matrix fixed = f.prefix(i - 1);
  const ff::Matrix ambient = f.prefix(i + 1);
  std::vector<ff::Flag> out;
  for (const ff::Matrix& mid : ff::enumerate_extensions(f.field, fixed, ambient, i)) {
    // Rebuild a basis realizing the old flag with dimension i replaced by
    // mid: greedy rank-increasing selection keeps every other prefix span.
    ff::Matrix acc(0, f.n);
    auto push_if_new = [&](const std::uint32_t* v) {
      if (acc.rows > 0 && ff::in_row_space(f.field, acc, v)) return;
      ff::Matrix grown(acc.rows + 1, f.n);
      std::copy(acc.a.begin(), acc.a.end(), grown.a.begin());
      std::copy(v, v + f.n, grown.row(acc.rows));
      acc = std::move(grown);
    };
    for (int r = 0; r < i - 1; ++r) push_if_new(f.rows.row(r));
    for (int r = 0; r < mid.rows; ++r) push_if_new(mid.row(r));
    for (int r = i - 1; r < f.n; ++r) push_if_new(f.rows.row(r));
    if (acc.rows != f.n)
      throw error(errc::internal_invariant_violation, "step option basis incomplete");
    out.push_back(ff::canonical_flag(f.field, acc));
  }
  return out;
}

std::vector<Chain> enumerate_chains(const ff::Flag& p, const perm::ReducedWord& word,
                                    std::uint64_t budget) {
  check_word(p, word);
  std::uint64_t total = 1;
  const std::uint64_t branch = p.field.p() + 1;
  for (std::size_t j = 0; j < word.letters.size(); ++j) {
    if (total > budget / branch)
      throw error(errc::enumeration_budget_exceeded, "chain count exceeds budget");
    total *= branch;
  }
  std::map<std::pair<int, ff::Flag>, std::vector<ff::Flag>> memo;
  std::vector<Chain> out;
  out.reserve(total);
  Chain cur;
  cur.word = word;
  cur.flags.push_back(ff::canonical_flag(p.field, p.rows));
  auto dfs = [&](auto&& self, std::size_t level) -> void {
    if (level == word.letters.size()) {
      out.push_back(cur);
      return;
    }
    auto key = std::make_pair(word.letters[level], cur.flags.back());
    auto it = memo.find(key);
    if (it == memo.end())
      it = memo.emplace(key, step_options(cur.flags.back(), word.letters[level])).first;
    for (const ff::Flag& g : it->second) {
      cur.flags.push_back(g);
      self(self, level + 1);
      cur.flags.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

SchubertResolution resolve_schubert(const ff::Flag& p, const perm::ReducedWord& word,
                                    std::uint64_t budget) {
  if (!perm::is_reduced(word))
    throw error(errc::usage_error, "resolution word must be reduced");
  const perm::Permutation sigma = perm::evaluate_word(word);
  std::map<ff::Flag, std::uint64_t> counts = final_flag_counts(p, word, budget);

  std::vector<ff::Flag> expected = schubert::enumerate_schubert({p, sigma}, budget);
  std::sort(expected.begin(), expected.end());
  if (expected.size() != counts.size())
    throw error(errc::resolution_mismatch, "image size " + std::to_string(counts.size()) +
                                               " does not match Schubert point count " +
                                               std::to_string(expected.size()));

  SchubertResolution res{sigma, 0, {}};
  std::size_t k = 0;
  for (const auto& [f, c] : counts) {
    if (!(f == expected[k]))
      throw error(errc::resolution_mismatch, "image flag " + flag_str(f) + " is not the expected Schubert point");
    ++k;
    FiberReport rep;
    rep.target = f;
    rep.fiber_size = c;
    rep.exact_position = ff::relative_position(p, f) == sigma;
    if (rep.exact_position && rep.fiber_size != 1)
      throw error(errc::resolution_mismatch,
                  "cell point " + flag_str(f) + " has fiber of size " + std::to_string(c));
    res.total_chains += c;
    res.fibers.push_back(std::move(rep));
  }
  return res;
}

std::vector<FiberReport> resolve_richardson(const ff::Flag& p, const perm::ReducedWord& word_sigma,
                                            const ff::Flag& q, const perm::ReducedWord& word_tau,
                                            std::uint64_t budget) {
  if (!(p.field == q.field) || p.n != q.n)
    throw error(errc::dimension_mismatch, "flags live in different spaces");
  if (!perm::is_reduced(word_sigma) || !perm::is_reduced(word_tau))
    throw error(errc::usage_error, "resolution words must be reduced");
  const perm::Permutation sigma = perm::evaluate_word(word_sigma);
  const perm::Permutation tau = perm::evaluate_word(word_tau);

  std::map<ff::Flag, std::uint64_t> from_p = final_flag_counts(p, word_sigma, budget);
  std::map<ff::Flag, std::uint64_t> from_q = final_flag_counts(q, word_tau, budget);

  std::vector<FiberReport> out;
  for (const auto& [f, cp] : from_p) {
    auto it = from_q.find(f);
    if (it == from_q.end()) continue;
    FiberReport rep;
    rep.target = f;
    rep.fiber_size = cp * it->second;
    rep.exact_position =
        ff::relative_position(p, f) == sigma && ff::relative_position(q, f) == tau;
    if (rep.exact_position && rep.fiber_size != 1)
      throw error(errc::resolution_mismatch,
                  "exact position flag " + flag_str(f) + " has fiber of size " +
                      std::to_string(rep.fiber_size));
    out.push_back(std::move(rep));
  }

  std::vector<ff::Flag> expected = schubert::enumerate_richardson({p, sigma}, {q, tau}, budget);
  std::sort(expected.begin(), expected.end());
  if (expected.size() != out.size())
    throw error(errc::resolution_mismatch, "image size " + std::to_string(out.size()) +
                                               " does not match Richardson point count " +
                                               std::to_string(expected.size()));
  for (std::size_t k = 0; k < out.size(); ++k)
    if (!(out[k].target == expected[k]))
      throw error(errc::resolution_mismatch,
                  "image flag " + flag_str(out[k].target) + " is not the expected Richardson point");
  return out;
}

bool consecutive_fiber_check(const std::vector<Chain>& chains) {
  if (chains.empty()) return true;
  const std::size_t levels = chains.front().flags.size();
  const std::uint64_t branch = chains.front().flags.front().field.p() + 1;
  for (const Chain& c : chains)
    if (c.flags.size() != levels) return false;
  for (std::size_t j = 1; j < levels; ++j) {
    std::map<std::vector<ff::Flag>, std::set<ff::Flag>> classes;
    for (const Chain& c : chains) {
      std::vector<ff::Flag> key(c.flags.begin(), c.flags.begin() + j);
      classes[std::move(key)].insert(c.flags[j]);
    }
    for (const auto& [key, values] : classes)
      if (values.size() != branch) return false;
  }
  return true;
}

}  // namespace rrv::bott
