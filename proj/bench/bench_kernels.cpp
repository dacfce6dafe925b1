// Times the OpenMP kernels against their serial reference twins on the
// workloads the library runs in anger: the joint relative-position histogram,
// flag filtering, and batched tangent sweeps. Outputs must agree exactly
// before a timing is reported. Wall clock, best of a few repetitions.
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "rrv/flag.hpp"
#include "rrv/kernels.hpp"
#include "rrv/matrix.hpp"
#include "rrv/perm.hpp"
#include "rrv/schubert.hpp"
#include "rrv/tangent.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace rrv;

namespace {

template <class F>
double best_seconds(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    body();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void row(const std::string& name, std::uint64_t items, double serial, double parallel,
         bool agree) {
  std::cout << std::left << std::setw(22) << name << std::right << std::setw(10) << items
            << " items " << std::fixed << std::setprecision(4) << std::setw(9) << serial
            << "s serial " << std::setw(9) << parallel << "s parallel  x"
            << std::setprecision(2) << (parallel > 0 ? serial / parallel : 0.0)
            << (agree ? "" : "  OUTPUT MISMATCH") << "\n";
  if (!agree) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
  std::uint32_t p = argc > 1 ? static_cast<std::uint32_t>(std::atoi(argv[1])) : 5;
  int n = argc > 2 ? std::atoi(argv[2]) : 4;
  int reps = argc > 3 ? std::atoi(argv[3]) : 3;

#ifdef _OPENMP
  std::cout << "OpenMP enabled, max threads " << omp_get_max_threads() << "\n";
#else
  std::cout << "OpenMP not compiled in; both columns run the serial body\n";
#endif
  std::cout << "field F_" << p << ", ambient dimension " << n << ", best of " << reps
            << " runs\n\n";

  ff::PrimeField f(p);
  ff::Flag P = ff::standard_flag(f, n);
  ff::Flag Q = ff::opposite_flag(f, n);
  std::uint64_t flags = ff::flag_count(n, p);

  {
    kernels::PairHistogram hs, hp;
    double ts = best_seconds(reps, [&] { hs = kernels::relpos_pair_histogram_serial(P, Q); });
    double tp = best_seconds(reps, [&] { hp = kernels::relpos_pair_histogram(P, Q); });
    row("relpos histogram", flags, ts, tp, hs.counts == hp.counts && hs.total == hp.total);
  }

  {
    // Flags whose first step lies inside the standard middle subspace.
    ff::Matrix mid = P.prefix(n / 2);
    auto pred = [&](const ff::Matrix& frame) { return ff::in_row_space(f, mid, frame.row(0)); };
    std::vector<std::uint64_t> is, ip;
    double ts = best_seconds(reps, [&] { is = kernels::filter_flags_serial(f, n, pred); });
    double tp = best_seconds(reps, [&] { ip = kernels::filter_flags(f, n, pred); });
    row("flag filter", flags, ts, tp, is == ip);
  }

  {
    // sigma = [n, 2, .., n-1, 1]: the pattern-singular one for n = 4, and its
    // conditions are nonvacuous so the sweep does real Jacobian work.
    std::vector<int> line(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) line[static_cast<std::size_t>(i - 1)] = i;
    line.front() = n;
    line.back() = 1;
    perm::Permutation sigma(line);
    schubert::SchubertDatum d{P, sigma};
    std::vector<ff::Flag> pts = schubert::enumerate_schubert(d);
    std::vector<ff::Matrix> lifts;
    lifts.reserve(pts.size());
    for (const ff::Flag& v : pts) lifts.push_back(v.rows);
    std::vector<tangent::MinorCondition> conds = tangent::schubert_conditions(P, sigma);
    int stab = tangent::flag_stabilizer_dim(n);
    std::vector<tangent::TangentReport> rs, rp;
    double ts = best_seconds(reps, [&] { rs = kernels::tangent_sweep_serial(f, lifts, conds, stab); });
    double tp = best_seconds(reps, [&] { rp = kernels::tangent_sweep(f, lifts, conds, stab); });
    bool agree = rs.size() == rp.size();
    for (std::size_t i = 0; agree && i < rs.size(); ++i)
      agree = rs[i].nullity == rp[i].nullity && rs[i].tangent_dim == rp[i].tangent_dim;
    row("tangent sweep", lifts.size(), ts, tp, agree);
  }

  return 0;
}
