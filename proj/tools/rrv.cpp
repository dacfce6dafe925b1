// rrv: exact Schubert calculus over small prime fields.
//
// Every invocation emits exactly one JSON report on stdout: the command, an
// echo of its parameters, the results, a list of named checks with expected
// and actual values, and the applicable caveats. Exit status is 0 iff every
// check passes, 2 on usage errors, 1 when a computation fails mid-flight (the
// failure is surfaced as a failed check). Output is byte-identical across
// runs with identical inputs and seeds.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "rrv/bott.hpp"
#include "rrv/error.hpp"
#include "rrv/family.hpp"
#include "rrv/flag.hpp"
#include "rrv/grass.hpp"
#include "rrv/io.hpp"
#include "rrv/matrix.hpp"
#include "rrv/perm.hpp"
#include "rrv/schubert.hpp"
#include "rrv/tangent.hpp"

namespace {

using rrv::errc;
using rrv::error;
using json = rrv::io::json;
namespace ff = rrv::ff;
namespace perm = rrv::perm;
namespace bott = rrv::bott;
namespace grass = rrv::grass;
namespace schubert = rrv::schubert;
namespace family = rrv::family;
namespace io = rrv::io;

const char* field_caveat =
    "computed over the finite prime field F_p as a desk-scale surrogate for "
    "characteristic zero; the defining rank conditions are characteristic-free";
const char* sampling_caveat =
    "empirical degree from finitely many sampled primes; a higher-degree "
    "polynomial agreeing on the samples cannot be excluded";

struct Reporter {
  json doc;
  bool all_pass = true;

  explicit Reporter(const std::string& command) {
    doc["command"] = command;
    doc["params"] = json::object();
    doc["results"] = json::object();
    doc["checks"] = json::array();
    doc["caveats"] = json::array();
  }

  template <typename T>
  void param(const std::string& key, const T& value) {
    doc["params"][key] = value;
  }
  template <typename T>
  void result(const std::string& key, const T& value) {
    doc["results"][key] = value;
  }
  void check(const std::string& name, bool pass, json expected, json actual) {
    doc["checks"].push_back(json{{"name", name},
                                 {"pass", pass},
                                 {"expected", std::move(expected)},
                                 {"actual", std::move(actual)}});
    all_pass = all_pass && pass;
  }
  void caveat(const std::string& text) { doc["caveats"].push_back(text); }

  int emit(int indent) const {
    if (indent > 0)
      std::cout << doc.dump(indent) << "\n";
    else
      std::cout << doc.dump() << "\n";
    return all_pass ? 0 : 1;
  }
};

// All option storage; each leaf subcommand binds the subset it uses. The 0
// values of p and n mean "not given" and are resolved per command.
struct Options {
  std::uint32_t p = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = rrv::default_budget;
  int indent = 2;
  std::string flag1 = "standard";
  std::string flag2 = "opposite";
  std::string sigma;
  std::string tau;
  std::string word;
  std::string word2;
  std::string pattern;
  std::string lambda = "1,0";
  std::string lambda2 = "1,0";
  std::string lambda_convert;
  int r = 2;
  int d = -1;
  std::string vanishing;
  std::string variant = "chain";
  std::string point;
  std::int64_t point_index = 0;
  std::string family_file;
  int t = 2;
  bool search = false;
  std::string primes;
  std::string dims;
  int expected_dim = -1;
};

// Rethrows library validation failures on user-supplied input as usage
// errors so they exit 2 instead of polluting the report.
template <typename Fn>
auto usage_wrap(const std::string& what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const error& e) {
    if (e.code() == errc::usage_error) throw;
    throw error(errc::usage_error, what + ": " + e.what());
  }
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw error(errc::usage_error, what + ": cannot parse entry '" + tok + "'");
    }
  }
  return out;
}

perm::Permutation parse_perm(const std::string& text, int& n, const std::string& what) {
  perm::Permutation s =
      usage_wrap(what, [&] { return perm::Permutation::parse(text); });
  if (n == 0) n = s.degree();
  if (s.degree() != n)
    throw error(errc::usage_error, what + ": degree " + std::to_string(s.degree()) +
                                       " does not match --n " + std::to_string(n));
  return s;
}

perm::ReducedWord parse_word(const std::string& text, int n, const std::string& what) {
  std::vector<int> letters = parse_int_list(text, what);
  for (int l : letters)
    if (l < 1 || l >= n)
      throw error(errc::usage_error,
                  what + ": letter " + std::to_string(l) + " outside 1.." + std::to_string(n - 1));
  return perm::ReducedWord{n, letters};
}

ff::PrimeField make_field(std::uint32_t p) {
  return usage_wrap("--p", [&] { return ff::PrimeField(p); });
}

// File specs are @path; peeking lets the file decide p and n when the user
// did not pass them.
bool is_file_spec(const std::string& spec) { return !spec.empty() && spec[0] == '@'; }

void peek_flag_file(const std::string& spec, std::uint32_t& p, int& n) {
  if (!is_file_spec(spec)) return;
  ff::Flag fl = io::load_flag(spec.substr(1));
  if (p == 0) p = fl.field.p();
  if (n == 0) n = fl.n;
}

ff::Flag resolve_flag(const std::string& spec, const ff::PrimeField& f, int n,
                      const std::string& what) {
  if (spec == "standard") return ff::standard_flag(f, n);
  if (spec == "opposite") return ff::opposite_flag(f, n);
  if (is_file_spec(spec)) {
    ff::Flag fl = io::load_flag(spec.substr(1));
    if (fl.field.p() != f.p())
      throw error(errc::usage_error, what + ": file prime " + std::to_string(fl.field.p()) +
                                         " does not match p = " + std::to_string(f.p()));
    if (fl.n != n)
      throw error(errc::usage_error, what + ": file dimension " + std::to_string(fl.n) +
                                         " does not match n = " + std::to_string(n));
    return fl;
  }
  throw error(errc::usage_error,
              what + ": expected standard, opposite, or @file.json, got '" + spec + "'");
}

std::uint64_t upow(std::uint64_t base, int exp) {
  unsigned __int128 r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > static_cast<unsigned __int128>(UINT64_MAX))
      throw error(errc::out_of_bounds, "power overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

// |X_sigma(F_q)| by the cell decomposition: sum of q^inv(u) over u <= sigma.
std::uint64_t cell_sum(const perm::Permutation& sigma, std::uint64_t q) {
  std::uint64_t total = 0;
  for (const perm::Permutation& u : perm::bruhat_lower_set(sigma))
    total += upow(q, perm::inversions(u));
  return total;
}

json histogram_json(const std::map<std::uint64_t, std::uint64_t>& hist) {
  json out = json::object();
  for (const auto& [size, count] : hist) out[std::to_string(size)] = count;
  return out;
}

json partition_json(const grass::AdmissiblePartition& lam) {
  json out = json::array();
  for (int v : lam.parts) out.push_back(v);
  return out;
}

grass::AdmissiblePartition parse_partition(const std::string& text, int r, int n,
                                           const std::string& what) {
  std::vector<int> parts = parse_int_list(text, what);
  return usage_wrap(what, [&] { return grass::make_partition(parts, r, n); });
}

std::vector<std::uint32_t> parse_primes(const std::string& text) {
  std::vector<std::uint32_t> out;
  for (int v : parse_int_list(text, "--primes")) {
    if (v < 2) throw error(errc::usage_error, "--primes: " + std::to_string(v) + " is not prime");
    make_field(static_cast<std::uint32_t>(v));
    out.push_back(static_cast<std::uint32_t>(v));
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw error(errc::usage_error, "--primes: duplicate entries");
  return out;
}

// ---------------------------------------------------------------------------
// perm

void cmd_perm_bruhat(Reporter& rep, Options& o) {
  perm::Permutation sigma = parse_perm(o.sigma, o.n, "--sigma");
  perm::Permutation tau = parse_perm(o.tau, o.n, "--tau");
  rep.param("n", o.n);
  rep.param("sigma", sigma.str());
  rep.param("tau", tau.str());
  bool leq = perm::bruhat_leq(sigma, tau);
  bool oracle = perm::bruhat_leq_oracle(sigma, tau);
  rep.result("leq", leq);
  rep.check("oracle-agreement", leq == oracle, oracle, leq);
}

void cmd_perm_word(Reporter& rep, Options& o) {
  if (o.sigma.empty() == o.word.empty())
    throw error(errc::usage_error, "pass exactly one of --sigma and --word");
  if (!o.sigma.empty()) {
    perm::Permutation sigma = parse_perm(o.sigma, o.n, "--sigma");
    rep.param("n", o.n);
    rep.param("sigma", sigma.str());
    perm::ReducedWord w = perm::reduced_word(sigma);
    json letters = json::array();
    for (int l : w.letters) letters.push_back(l);
    rep.result("word", letters);
    rep.result("length", w.letters.size());
    perm::Permutation back = perm::evaluate_word(w);
    rep.check("evaluates-back", back == sigma, sigma.str(), back.str());
    int inv = perm::inversions(sigma);
    rep.check("length-is-inversions", static_cast<int>(w.letters.size()) == inv, inv,
              w.letters.size());
    return;
  }
  if (o.n == 0) throw error(errc::usage_error, "--word requires --n");
  perm::ReducedWord w = parse_word(o.word, o.n, "--word");
  rep.param("n", o.n);
  rep.param("word", o.word);
  perm::Permutation s = perm::evaluate_word(w);
  bool red = perm::is_reduced(w);
  rep.result("permutation", s.str());
  rep.result("length", w.letters.size());
  rep.result("reduced", red);
  perm::Permutation canon = perm::evaluate_word(perm::reduced_word(s));
  rep.check("canonical-word-evaluates-back", canon == s, s.str(), canon.str());
  bool minimal = static_cast<int>(w.letters.size()) == perm::inversions(s);
  rep.check("reduced-iff-minimal-length", red == minimal, minimal, red);
}

void cmd_perm_pattern(Reporter& rep, Options& o) {
  perm::Permutation sigma = parse_perm(o.sigma, o.n, "--sigma");
  int k = 0;
  perm::Permutation pat = parse_perm(o.pattern, k, "--pattern");
  if (pat.degree() > 4)
    throw error(errc::usage_error, "--pattern: degree above 4 is not supported");
  rep.param("n", o.n);
  rep.param("sigma", sigma.str());
  rep.param("pattern", pat.str());
  bool lib = perm::contains_pattern(sigma, pat);

  // Brute force over all index subsequences, the defining condition verbatim.
  int n = sigma.degree();
  bool brute = false;
  std::vector<int> idx(static_cast<size_t>(k));
  std::function<void(int, int)> scan = [&](int pos, int start) {
    if (brute) return;
    if (pos == k) {
      for (int a = 1; a <= k && !brute; ++a)
        for (int b = a + 1; b <= k; ++b)
          if ((sigma(idx[static_cast<size_t>(a - 1)]) < sigma(idx[static_cast<size_t>(b - 1)])) !=
              (pat(a) < pat(b)))
            return;
      brute = true;
      return;
    }
    for (int i = start; i <= n; ++i) {
      idx[static_cast<size_t>(pos)] = i;
      scan(pos + 1, i + 1);
    }
  };
  scan(0, 1);
  rep.result("contains", lib);
  rep.check("brute-force-agreement", lib == brute, brute, lib);
}

// ---------------------------------------------------------------------------
// relpos

void cmd_relpos(Reporter& rep, Options& o) {
  peek_flag_file(o.flag1, o.p, o.n);
  peek_flag_file(o.flag2, o.p, o.n);
  if (o.p == 0) o.p = 2;
  if (o.n == 0) o.n = 4;
  ff::PrimeField f = make_field(o.p);
  ff::Flag P = resolve_flag(o.flag1, f, o.n, "--flag");
  ff::Flag Q = resolve_flag(o.flag2, f, o.n, "--flag2");
  rep.param("p", o.p);
  rep.param("n", o.n);
  rep.param("flag", o.flag1);
  rep.param("flag2", o.flag2);
  rep.caveat(field_caveat);

  perm::Permutation s = ff::relative_position(P, Q);
  rep.result("relpos", s.str());
  rep.result("inversions", perm::inversions(s));
  perm::Permutation back = ff::relative_position(Q, P);
  rep.check("inverse-symmetry", back == s.inverse(), s.inverse().str(), back.str());

  ff::Matrix B = ff::common_basis(P, Q);
  bool witness = true;
  for (int i = 1; i <= o.n; ++i) {
    const std::uint32_t* b = B.row(i - 1);
    witness = witness && ff::in_row_space(f, P.prefix(i), b) &&
              !ff::in_row_space(f, P.prefix(i - 1), b) &&
              ff::in_row_space(f, Q.prefix(s(i)), b) &&
              !ff::in_row_space(f, Q.prefix(s(i) - 1), b);
  }
  rep.check("common-basis-witness", witness, true, witness);
}

// ---------------------------------------------------------------------------
// schubert

void cmd_schubert_enumerate(Reporter& rep, Options& o) {
  peek_flag_file(o.flag1, o.p, o.n);
  peek_flag_file(o.flag2, o.p, o.n);
  if (o.p == 0) o.p = 2;
  perm::Permutation sigma = parse_perm(o.sigma, o.n, "--sigma");
  ff::PrimeField f = make_field(o.p);
  ff::Flag P = resolve_flag(o.flag1, f, o.n, "--flag");
  rep.param("p", o.p);
  rep.param("n", o.n);
  rep.param("sigma", sigma.str());
  rep.param("flag", o.flag1);
  rep.caveat(field_caveat);

  if (o.tau.empty()) {
    std::vector<ff::Flag> pts = schubert::enumerate_schubert({P, sigma}, o.budget);
    std::uint64_t count = pts.size();
    rep.result("count", count);
    std::uint64_t cells = cell_sum(sigma, o.p);
    rep.check("bruhat-cell-sum", count == cells, cells, count);
    return;
  }
  perm::Permutation tau = parse_perm(o.tau, o.n, "--tau");
  ff::Flag Q = resolve_flag(o.flag2, f, o.n, "--flag2");
  rep.param("tau", tau.str());
  rep.param("flag2", o.flag2);
  std::vector<ff::Flag> pts = schubert::enumerate_richardson({P, sigma}, {Q, tau}, o.budget);
  std::uint64_t count = pts.size();
  rep.result("count", count);
  if (ff::is_transverse(P, Q)) {
    std::uint64_t formula = schubert::richardson_count(o.n, o.p, sigma, tau, o.budget);
    rep.check("transverse-count-formula", count == formula, formula, count);
    bool nonempty = schubert::richardson_nonempty(sigma, tau);
    rep.check("nonempty-iff-bruhat", (count > 0) == nonempty, nonempty, count > 0);
  } else {
    std::uint64_t rescan = 0;
    for (const ff::Flag& v : ff::enumerate_flags(f, o.n, o.budget))
      if (schubert::schubert_member(v, {P, sigma}) && schubert::schubert_member(v, {Q, tau}))
        ++rescan;
    rep.check("member-rescan", rescan == count, rescan, count);
  }
}

void cmd_schubert_count(Reporter& rep, Options& o) {
  if (o.p == 0) o.p = 2;
  perm::Permutation sigma = parse_perm(o.sigma, o.n, "--sigma");
  perm::Permutation tau = parse_perm(o.tau, o.n, "--tau");
  ff::PrimeField f = make_field(o.p);
  rep.param("p", o.p);
  rep.param("n", o.n);
  rep.param("sigma", sigma.str());
  rep.param("tau", tau.str());
  rep.caveat(field_caveat);

  std::uint64_t count = schubert::richardson_count(o.n, o.p, sigma, tau, o.budget);
  rep.result("count", count);
  std::uint64_t direct =
      schubert::enumerate_richardson({ff::standard_flag(f, o.n), sigma},
                                     {ff::opposite_flag(f, o.n), tau}, o.budget)
          .size();
  rep.check("formula-matches-enumeration", count == direct, direct, count);
  bool nonempty = schubert::richardson_nonempty(sigma, tau);
  rep.check("nonempty-iff-bruhat", (count > 0) == nonempty, nonempty, count > 0);
}

void cmd_schubert_tangent(Reporter& rep, Options& o) {
  peek_flag_file(o.flag1, o.p, o.n);
  peek_flag_file(o.flag2, o.p, o.n);
  if (is_file_spec(o.point)) {
    ff::Flag pt = io::load_flag(o.point.substr(1));
    if (o.p == 0) o.p = pt.field.p();
    if (o.n == 0) o.n = pt.n;
  }
  if (o.p == 0) o.p = 2;
  perm::Permutation sigma = parse_perm(o.sigma, o.n, "--sigma");
  ff::PrimeField f = make_field(o.p);
  ff::Flag P = resolve_flag(o.flag1, f, o.n, "--flag");
  rep.param("p", o.p);
  rep.param("n", o.n);
  rep.param("sigma", sigma.str());
  rep.param("flag", o.flag1);

  bool pair = !o.tau.empty();
  std::vector<schubert::SchubertDatum> data = {{P, sigma}};
  perm::Permutation tau = perm::Permutation::identity(o.n);
  ff::Flag Q = P;
  if (pair) {
    tau = parse_perm(o.tau, o.n, "--tau");
    Q = resolve_flag(o.flag2, f, o.n, "--flag2");
    data.push_back({Q, tau});
    rep.param("tau", tau.str());
    rep.param("flag2", o.flag2);
  }

  ff::Flag V = ff::standard_flag(f, o.n);
  if (!o.point.empty()) {
    if (!is_file_spec(o.point))
      throw error(errc::usage_error, "--point: expected @file.json, got '" + o.point + "'");
    V = resolve_flag(o.point, f, o.n, "--point");
    rep.param("point", o.point);
  } else {
    std::vector<ff::Flag> pts =
        pair ? schubert::enumerate_richardson(data[0], data[1], o.budget)
             : schubert::enumerate_schubert(data[0], o.budget);
    if (pts.empty())
      throw error(errc::usage_error, "--point-index: the point set is empty");
    if (o.point_index < 0 || o.point_index >= static_cast<std::int64_t>(pts.size()))
      throw error(errc::usage_error, "--point-index: " + std::to_string(o.point_index) +
                                         " outside 0.." + std::to_string(pts.size() - 1));
    V = pts[static_cast<size_t>(o.point_index)];
    rep.param("point_index", o.point_index);
  }
  rep.caveat(field_caveat);

  schubert::TangentReport tr = schubert::tangent_dimension(V, data);
  rep.result("point", io::flag_to_json(V));
  rep.result("tangent_dim", tr.tangent_dim);
  rep.result("ambient_nullity", tr.ambient_nullity);
  rep.result("quotient_dim", tr.quotient_dim);
  rep.caveat(tr.caveat);

  if (!pair) {
    int bound = perm::inversions(ff::relative_position(P, V));
    rep.check("cell-dimension-lower-bound", tr.tangent_dim >= bound, bound, tr.tangent_dim);
    if (perm::schubert_is_smooth(sigma)) {
      int inv = perm::inversions(sigma);
      rep.check("smooth-pattern-dimension", tr.tangent_dim == inv, inv, tr.tangent_dim);
    }
  } else {
    int tp = schubert::tangent_dimension(V, {data[0]}).tangent_dim;
    int tq = schubert::tangent_dimension(V, {data[1]}).tangent_dim;
    rep.result("tangent_p", tp);
    rep.result("tangent_q", tq);
    int bound = std::min(tp, tq);
    rep.check("factor-monotonicity", tr.tangent_dim <= bound, bound, tr.tangent_dim);
  }
}

void cmd_schubert_smoothlocus(Reporter& rep, Options& o) {
  peek_flag_file(o.flag1, o.p, o.n);
  peek_flag_file(o.flag2, o.p, o.n);
  if (o.p == 0) o.p = 2;
  perm::Permutation sigma = parse_perm(o.sigma, o.n, "--sigma");
  perm::Permutation tau = parse_perm(o.tau, o.n, "--tau");
  ff::PrimeField f = make_field(o.p);
  ff::Flag P = resolve_flag(o.flag1, f, o.n, "--flag");
  ff::Flag Q = resolve_flag(o.flag2, f, o.n, "--flag2");
  rep.param("p", o.p);
  rep.param("n", o.n);
  rep.param("sigma", sigma.str());
  rep.param("tau", tau.str());
  rep.param("flag", o.flag1);
  rep.param("flag2", o.flag2);
  bool transverse = ff::is_transverse(P, Q);
  if (!transverse && o.expected_dim < 0)
    throw error(errc::usage_error,
                "non-transverse flags need --expected-dim (the interpolated default "
                "assumes transverse flags)");
  std::optional<int> expected;
  if (o.expected_dim >= 0) {
    expected = o.expected_dim;
    rep.param("expected_dim", o.expected_dim);
  }
  rep.caveat(field_caveat);
  rep.caveat(rrv::tangent::ideal_generator_caveat);

  schubert::SmoothLocusReport sl = schubert::smooth_locus_check({P, sigma}, {Q, tau}, expected, o.budget);
  rep.result("richardson_size", sl.richardson_size);
  rep.result("expected_r_dim", sl.expected_r_dim);
  rep.result("singular_in_r", sl.singular_in_r);
  rep.result("singular_in_factors", sl.singular_in_factors);
  json singular = json::array();
  for (const schubert::SmoothLocusPoint& pt : sl.points) {
    if (!pt.excess_r && !pt.excess_p && !pt.excess_q) continue;
    singular.push_back(json{{"point", io::flag_to_json(pt.point)},
                            {"tangent_r", pt.tangent_r},
                            {"tangent_p", pt.tangent_p},
                            {"tangent_q", pt.tangent_q}});
  }
  rep.result("singular_points", singular);
  rep.check("biconditional-holds", sl.biconditional_holds, true, sl.biconditional_holds);
  rep.check("singular-count-agreement", sl.singular_in_r == sl.singular_in_factors,
            sl.singular_in_factors, sl.singular_in_r);
  if (transverse) {
    std::uint64_t formula = schubert::richardson_count(o.n, o.p, sigma, tau, o.budget);
    rep.check("richardson-size-formula", sl.richardson_size == formula, formula,
              sl.richardson_size);
  }
}

// ---------------------------------------------------------------------------
// bs

void cmd_bs_resolve(Reporter& rep, Options& o) {
  peek_flag_file(o.flag1, o.p, o.n);
  if (o.p == 0) o.p = 2;
  if (o.n == 0) o.n = 4;
  ff::PrimeField f = make_field(o.p);
  ff::Flag P = resolve_flag(o.flag1, f, o.n, "--flag");
  perm::ReducedWord w = parse_word(o.word, o.n, "--word");
  if (!perm::is_reduced(w))
    throw error(errc::usage_error, "--word: not a reduced word (fiber structure needs one)");
  rep.param("p", o.p);
  rep.param("n", o.n);
  rep.param("flag", o.flag1);
  rep.param("word", o.word);
  rep.caveat(field_caveat);

  bott::SchubertResolution res = bott::resolve_schubert(P, w, o.budget);
  int len = static_cast<int>(w.letters.size());
  std::map<std::uint64_t, std::uint64_t> hist;
  std::uint64_t conserved = 0, exact_count = 0;
  bool singleton = true;
  for (const bott::FiberReport& fr : res.fibers) {
    ++hist[fr.fiber_size];
    conserved += fr.fiber_size;
    if (fr.exact_position) {
      ++exact_count;
      singleton = singleton && fr.fiber_size == 1;
    }
  }
  rep.result("sigma", res.sigma.str());
  rep.result("image_size", res.fibers.size());
  rep.result("total_chains", res.total_chains);
  rep.result("fibers", histogram_json(hist));

  std::uint64_t cells = cell_sum(res.sigma, o.p);
  rep.check("image-size-cell-sum", res.fibers.size() == cells, cells, res.fibers.size());
  std::uint64_t chains = upow(o.p + 1, len);
  rep.check("chain-count", res.total_chains == chains, chains, res.total_chains);
  rep.check("fiber-conservation", conserved == res.total_chains, res.total_chains, conserved);
  std::uint64_t cell_points = upow(o.p, perm::inversions(res.sigma));
  rep.check("exact-cell-count", exact_count == cell_points, cell_points, exact_count);
  rep.check("exact-fibers-singleton", singleton, true, singleton);
}

void cmd_bs_richardson(Reporter& rep, Options& o) {
  peek_flag_file(o.flag1, o.p, o.n);
  peek_flag_file(o.flag2, o.p, o.n);
  if (o.p == 0) o.p = 2;
  if (o.n == 0) o.n = 4;
  ff::PrimeField f = make_field(o.p);
  ff::Flag P = resolve_flag(o.flag1, f, o.n, "--flag");
  ff::Flag Q = resolve_flag(o.flag2, f, o.n, "--flag2");
  perm::ReducedWord w1 = parse_word(o.word, o.n, "--word");
  perm::ReducedWord w2 = parse_word(o.word2, o.n, "--word2");
  if (!perm::is_reduced(w1) || !perm::is_reduced(w2))
    throw error(errc::usage_error, "--word/--word2: both words must be reduced");
  rep.param("p", o.p);
  rep.param("n", o.n);
  rep.param("flag", o.flag1);
  rep.param("flag2", o.flag2);
  rep.param("word", o.word);
  rep.param("word2", o.word2);
  rep.caveat(field_caveat);

  perm::Permutation sigma = perm::evaluate_word(w1);
  perm::Permutation tau = perm::evaluate_word(w2);
  std::vector<bott::FiberReport> fibers = bott::resolve_richardson(P, w1, Q, w2, o.budget);
  std::map<std::uint64_t, std::uint64_t> hist;
  std::uint64_t exact_count = 0;
  bool singleton = true;
  for (const bott::FiberReport& fr : fibers) {
    ++hist[fr.fiber_size];
    if (fr.exact_position) {
      ++exact_count;
      singleton = singleton && fr.fiber_size == 1;
    }
  }
  rep.result("sigma", sigma.str());
  rep.result("tau", tau.str());
  rep.result("image_size", fibers.size());
  rep.result("exact_count", exact_count);
  rep.result("fibers", histogram_json(hist));

  std::uint64_t direct =
      schubert::enumerate_richardson({P, sigma}, {Q, tau}, o.budget).size();
  rep.check("image-matches-enumeration", fibers.size() == direct, direct, fibers.size());
  rep.check("exact-fibers-singleton", singleton, true, singleton);
  if (ff::is_transverse(P, Q)) {
    std::uint64_t formula = schubert::richardson_count(o.n, o.p, sigma, tau, o.budget);
    rep.check("transverse-count-formula", fibers.size() == formula, formula, fibers.size());
  }
}

// ---------------------------------------------------------------------------
// grass

void cmd_grass_member(Reporter& rep, Options& o) {
  if (!is_file_spec(o.point))
    throw error(errc::usage_error, "--point: expected @file.json with a basis matrix");
  auto [pf, m] = io::load_matrix(o.point.substr(1));
  if (o.p == 0) o.p = pf.p();
  if (o.p != pf.p())
    throw error(errc::usage_error, "--point: file prime " + std::to_string(pf.p()) +
                                       " does not match --p " + std::to_string(o.p));
  if (o.n == 0) o.n = m.cols;
  if (o.n != m.cols)
    throw error(errc::usage_error, "--point: file columns " + std::to_string(m.cols) +
                                       " do not match --n " + std::to_string(o.n));
  int r = m.rows;
  ff::PrimeField f = make_field(o.p);
  grass::GrassPoint V = usage_wrap("--point", [&] { return grass::grass_point(f, m); });
  grass::AdmissiblePartition lam = parse_partition(o.lambda, r, o.n, "--lambda");
  peek_flag_file(o.flag1, o.p, o.n);
  ff::Flag F = resolve_flag(o.flag1, f, o.n, "--flag");
  rep.param("p", o.p);
  rep.param("n", o.n);
  rep.param("r", r);
  rep.param("lambda", partition_json(lam));
  rep.param("flag", o.flag1);
  rep.param("point", o.point);
  rep.caveat(field_caveat);

  bool member = grass::grass_schubert_member(V, F, lam);
  bool exact = grass::grass_schubert_exact(V, F, lam);
  rep.result("member", member);
  rep.result("exact", exact);

  // Direct recount of every meet dimension from ranks of stacked bases.
  bool direct_member = true, tight = true;
  for (int i = 1; i <= r; ++i) {
    int li = lam.parts[static_cast<size_t>(i - 1)];
    int w = o.n - r + i - li;
    int meet = r + w - ff::rank(f, ff::stack_rows(V.basis, F.prefix(w)));
    direct_member = direct_member && meet >= i;
    if (li > 0) tight = tight && meet == i;
  }
  bool direct_exact = direct_member && tight;
  rep.check("membership-rank-recount", member == direct_member, direct_member, member);
  rep.check("exactness-rank-recount", exact == direct_exact, direct_exact, exact);
}

void cmd_grass_resolve(Reporter& rep, Options& o) {
  peek_flag_file(o.flag1, o.p, o.n);
  peek_flag_file(o.flag2, o.p, o.n);
  if (o.p == 0) o.p = 2;
  if (o.n == 0) o.n = 4;
  ff::PrimeField f = make_field(o.p);
  ff::Flag P = resolve_flag(o.flag1, f, o.n, "--flag");
  ff::Flag Q = resolve_flag(o.flag2, f, o.n, "--flag2");
  grass::AdmissiblePartition lam = parse_partition(o.lambda, o.r, o.n, "--lambda");
  grass::AdmissiblePartition lam2 = parse_partition(o.lambda2, o.r, o.n, "--lambda2");
  grass::Variant variant;
  if (o.variant == "chain")
    variant = grass::Variant::chain;
  else if (o.variant == "example")
    variant = grass::Variant::example;
  else
    throw error(errc::usage_error, "--variant: expected chain or example, got '" + o.variant + "'");
  rep.param("p", o.p);
  rep.param("n", o.n);
  rep.param("r", o.r);
  rep.param("lambda", partition_json(lam));
  rep.param("lambda2", partition_json(lam2));
  rep.param("flag", o.flag1);
  rep.param("flag2", o.flag2);
  rep.param("variant", o.variant);
  rep.caveat(field_caveat);

  std::vector<grass::GrassFiberReport> fibers =
      grass::resolve_grass_richardson(P, lam, Q, lam2, variant, o.budget);
  std::map<std::uint64_t, std::uint64_t> hist;
  std::uint64_t exact_count = 0;
  bool singleton = true;
  for (const grass::GrassFiberReport& fr : fibers) {
    ++hist[fr.fiber_size];
    if (fr.exact_position) {
      ++exact_count;
      singleton = singleton && fr.fiber_size == 1;
    }
  }
  rep.result("image_size", fibers.size());
  rep.result("exact_count", exact_count);
  rep.result("fibers", histogram_json(hist));

  std::vector<grass::GrassPoint> a = grass::enumerate_grass_schubert(P, lam, o.budget);
  std::vector<grass::GrassPoint> b = grass::enumerate_grass_schubert(Q, lam2, o.budget);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<grass::GrassPoint> inter;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
  rep.check("image-matches-enumeration", fibers.size() == inter.size(), inter.size(),
            fibers.size());
  rep.check("exact-fibers-singleton", singleton, true, singleton);
}

void cmd_grass_example(Reporter& rep, Options& o) {
  if (o.p == 0) o.p = 2;
  ff::PrimeField f = make_field(o.p);
  std::uint64_t q = o.p;
  ff::Flag F = ff::standard_flag(f, 4);
  ff::Matrix g(4, 4);
  g.at(0, 3) = 1;  // e4
  g.at(1, 0) = 1;  // e1
  g.at(2, 2) = 1;  // e3
  g.at(3, 1) = 1;  // e2
  ff::Flag G = ff::canonical_flag(f, g);
  grass::AdmissiblePartition lam = grass::make_partition({1, 0}, 2, 4);
  rep.param("p", o.p);
  rep.caveat(field_caveat);
  rep.caveat(rrv::tangent::ideal_generator_caveat);

  std::vector<grass::GrassFiberReport> fibers =
      grass::resolve_grass_richardson(F, lam, G, lam, grass::Variant::example, o.budget);
  std::map<std::uint64_t, std::uint64_t> hist;
  std::vector<grass::GrassPoint> collapsed;
  for (const grass::GrassFiberReport& fr : fibers) {
    ++hist[fr.fiber_size];
    if (fr.fiber_size > 1) collapsed.push_back(fr.target);
  }
  std::sort(collapsed.begin(), collapsed.end());

  std::vector<grass::GrassPoint> special = {grass::grass_point(f, F.prefix(2)),
                                            grass::grass_point(f, G.prefix(2))};
  std::sort(special.begin(), special.end());

  // Tangent dimensions: each factor is a Schubert divisor of dimension 3; the
  // intersection has proper expected dimension 2 = dim Gr - |lambda| - |lambda'|.
  // The intersection is singular along the whole pencil of planes between
  // F_2 cap G_2 and F_2 + G_2; the factors are singular only at their
  // vertices, and the resolution collapses exactly over those two planes.
  ff::Matrix meet = ff::intersect_row_spaces(f, F.prefix(2), G.prefix(2));
  ff::Matrix join = ff::stack_rows(F.prefix(2), G.prefix(2));
  int join_rank = ff::rank(f, join);
  std::vector<grass::GrassPoint> factor_singular, inter_singular, pencil;
  json special_tangents = json::array();
  for (const grass::GrassFiberReport& fr : fibers) {
    int tp = grass::tangent_dimension_grass(fr.target, {{F, lam}}).tangent_dim;
    int tq = grass::tangent_dimension_grass(fr.target, {{G, lam}}).tangent_dim;
    int tr = grass::tangent_dimension_grass(fr.target, {{F, lam}, {G, lam}}).tangent_dim;
    if (tp > 3 || tq > 3) factor_singular.push_back(fr.target);
    if (tr > 2) inter_singular.push_back(fr.target);
    if (ff::in_row_space(f, fr.target.basis, meet.row(0)) &&
        ff::rank(f, ff::stack_rows(join, fr.target.basis)) == join_rank)
      pencil.push_back(fr.target);
    if (std::binary_search(special.begin(), special.end(), fr.target))
      special_tangents.push_back(json{{"point", io::matrix_to_json(f, 4, fr.target.basis)},
                                      {"tangent_p", tp},
                                      {"tangent_q", tq},
                                      {"tangent_r", tr},
                                      {"fiber_size", fr.fiber_size}});
  }
  std::sort(factor_singular.begin(), factor_singular.end());
  std::sort(inter_singular.begin(), inter_singular.end());
  std::sort(pencil.begin(), pencil.end());

  auto points_json = [&](const std::vector<grass::GrassPoint>& pts) {
    json out = json::array();
    for (const grass::GrassPoint& v : pts) out.push_back(io::matrix_to_json(f, 4, v.basis));
    return out;
  };
  json special_json = points_json(special);

  rep.result("image_size", fibers.size());
  rep.result("fibers", histogram_json(hist));
  rep.result("singular_points", points_json(factor_singular));
  rep.result("pencil", points_json(pencil));
  rep.result("special_tangents", special_tangents);

  std::uint64_t want_image = 2 * q * q + q + 1;
  rep.check("image-size", fibers.size() == want_image, want_image, fibers.size());
  json want_hist = json::object();
  want_hist[std::to_string(1)] = 2 * q * q + q - 1;
  want_hist[std::to_string((q + 1) * (q + 1))] = 2;
  json got_hist = histogram_json(hist);
  rep.check("fiber-histogram", got_hist == want_hist, want_hist, got_hist);
  rep.check("collapsed-targets-are-special-planes", collapsed == special, special_json,
            points_json(collapsed));
  rep.check("singular-set", factor_singular == special, special_json,
            points_json(factor_singular));
  rep.check("fiberwise-excess-is-pencil", inter_singular == pencil, points_json(pencil),
            points_json(inter_singular));
  rep.check("pencil-size", pencil.size() == q + 1, q + 1, pencil.size());
}

void cmd_grass_convert(Reporter& rep, Options& o) {
  if (o.lambda_convert.empty() == o.vanishing.empty())
    throw error(errc::usage_error, "pass exactly one of --lambda and --vanishing");
  if (!o.vanishing.empty()) {
    std::vector<int> values = parse_int_list(o.vanishing, "--vanishing");
    int rr = static_cast<int>(values.size()) - 1;
    int d = o.d >= 0 ? o.d : (values.empty() ? 0 : values.back());
    grass::VanishingSequence a =
        usage_wrap("--vanishing", [&] { return grass::make_vanishing(values, rr, d); });
    rep.param("vanishing", o.vanishing);
    rep.param("d", d);
    grass::AdmissiblePartition lam = grass::vanishing_to_partition(a);
    rep.result("partition", partition_json(lam));
    rep.result("r", lam.r);
    rep.result("n", lam.n);
    grass::VanishingSequence back = grass::partition_to_vanishing(lam, rr, d);
    json got = json::array();
    for (int v : back.values) got.push_back(v);
    json want = json::array();
    for (int v : values) want.push_back(v);
    rep.check("round-trip", back.values == values, want, got);
    return;
  }
  if (o.n == 0) o.n = 4;
  grass::AdmissiblePartition lam = parse_partition(o.lambda_convert, o.r, o.n, "--lambda");
  rep.param("lambda", partition_json(lam));
  rep.param("r", o.r);
  rep.param("n", o.n);
  grass::VanishingSequence a = grass::partition_to_vanishing(lam, o.r - 1, o.n - 1);
  json values = json::array();
  for (int v : a.values) values.push_back(v);
  rep.result("vanishing", values);
  rep.result("d", a.d);
  grass::AdmissiblePartition back = grass::vanishing_to_partition(a);
  rep.check("round-trip", back.parts == lam.parts && back.r == lam.r && back.n == lam.n,
            partition_json(lam), partition_json(back));
}

// ---------------------------------------------------------------------------
// family

family::PolynomialFamily resolve_family(Reporter& rep, Options& o) {
  if (!o.family_file.empty()) {
    if (!is_file_spec(o.family_file))
      throw error(errc::usage_error, "--family: expected @file.json, got '" + o.family_file + "'");
    family::PolynomialFamily fam = io::load_family(o.family_file.substr(1));
    if (o.p != 0 && o.p != fam.field.p())
      throw error(errc::usage_error, "--family: file prime " + std::to_string(fam.field.p()) +
                                         " does not match --p " + std::to_string(o.p));
    o.p = fam.field.p();
    if (o.n != 0 && o.n != fam.n)
      throw error(errc::usage_error, "--family: file dimension " + std::to_string(fam.n) +
                                         " does not match --n " + std::to_string(o.n));
    o.n = fam.n;
    rep.param("p", o.p);
    rep.param("n", o.n);
    rep.param("family", o.family_file);
    return fam;
  }
  if (o.p == 0) o.p = 2;
  if (o.n == 0) o.n = 4;
  ff::PrimeField f = make_field(o.p);
  rep.param("p", o.p);
  rep.param("n", o.n);
  rep.param("t", o.t);
  if (o.search) {
    rep.param("seed", o.seed);
    return usage_wrap("--t", [&] { return family::search_family(o.n, f, o.t, o.seed); });
  }
  return usage_wrap("--t", [&] { return family::demo_family(o.n, f, o.t); });
}

json profile_json(const family::ProfileReport& prof) {
  json fibers = json::array();
  for (const family::FiberProfile& fp : prof.fibers) {
    json e = {{"s", fp.s},
              {"relpos", fp.relpos.str()},
              {"class", family::fiber_class_name(fp.cls)}};
    if (fp.cls == family::FiberClass::almost_transverse) e["deviation"] = fp.deviation;
    fibers.push_back(e);
  }
  return fibers;
}

void cmd_family_demo(Reporter& rep, Options& o) {
  family::PolynomialFamily fam = resolve_family(rep, o);
  rep.caveat(field_caveat);
  family::ProfileReport prof = family::relpos_profile(fam);
  rep.caveat(prof.caveat);
  rep.result("family", io::family_to_json(fam));
  rep.result("profile", profile_json(prof));
  rep.result("versal_pattern", prof.versal_pattern);

  rep.check("versal-profile", prof.versal_pattern, true, prof.versal_pattern);
  bool at_zero = false, elsewhere = true;
  for (const family::FiberProfile& fp : prof.fibers) {
    if (fp.s == 0)
      at_zero = fp.cls == family::FiberClass::almost_transverse && fp.deviation == o.t;
    else
      elsewhere = elsewhere && fp.cls == family::FiberClass::transverse;
  }
  rep.check("almost-transverse-at-zero", at_zero, true, at_zero);
  rep.check("transverse-elsewhere", elsewhere, true, elsewhere);
}

void cmd_family_profile(Reporter& rep, Options& o) {
  family::PolynomialFamily fam = resolve_family(rep, o);
  rep.caveat(field_caveat);
  family::ProfileReport prof = family::relpos_profile(fam);
  rep.caveat(prof.caveat);
  rep.result("profile", profile_json(prof));
  rep.result("versal_pattern", prof.versal_pattern);

  // Reclassify every fiber from its rank table, independent of the stored
  // relative position.
  bool agree = true;
  for (const family::FiberProfile& fp : prof.fibers) {
    ff::Flag P = family::p_flag(fam, fp.s);
    ff::Flag Q = family::q_flag(fam, fp.s);
    family::FiberClass cls = family::FiberClass::other;
    int dev = -1;
    if (ff::is_transverse(P, Q)) {
      cls = family::FiberClass::transverse;
    } else if (std::optional<int> t = ff::is_almost_transverse(P, Q)) {
      cls = family::FiberClass::almost_transverse;
      dev = *t;
    }
    agree = agree && cls == fp.cls && dev == fp.deviation;
  }
  rep.check("rank-table-classification", agree, true, agree);
}

void cmd_family_total(Reporter& rep, Options& o) {
  family::PolynomialFamily fam = resolve_family(rep, o);
  bool flag_mode = !o.sigma.empty() || !o.tau.empty();
  rep.caveat(field_caveat);

  std::map<std::uint32_t, std::uint64_t> per_s;
  std::uint64_t total = 0;
  bool members = true;
  if (flag_mode) {
    if (o.sigma.empty() || o.tau.empty())
      throw error(errc::usage_error, "flag conditions need both --sigma and --tau");
    perm::Permutation sigma = parse_perm(o.sigma, o.n, "--sigma");
    perm::Permutation tau = parse_perm(o.tau, o.n, "--tau");
    rep.param("sigma", sigma.str());
    rep.param("tau", tau.str());
    std::vector<family::FlagTotalPoint> pts =
        family::enumerate_total_space(fam, sigma, tau, o.budget);
    total = pts.size();
    for (const family::FlagTotalPoint& pt : pts) {
      ++per_s[pt.s];
      members = members &&
                schubert::schubert_member(pt.v, {family::p_flag(fam, pt.s), sigma}) &&
                schubert::schubert_member(pt.v, {family::q_flag(fam, pt.s), tau});
    }
    bool transverse_ok = true;
    for (std::uint32_t s = 0; s < o.p; ++s) {
      if (!ff::is_transverse(family::p_flag(fam, s), family::q_flag(fam, s))) continue;
      std::uint64_t want = schubert::richardson_count(o.n, o.p, sigma, tau, o.budget);
      std::uint64_t got = per_s.count(s) ? per_s[s] : 0;
      transverse_ok = transverse_ok && got == want;
    }
    rep.check("transverse-fiber-formula", transverse_ok, true, transverse_ok);
  } else {
    grass::AdmissiblePartition lam = parse_partition(o.lambda, o.r, o.n, "--lambda");
    grass::AdmissiblePartition lam2 = parse_partition(o.lambda2, o.r, o.n, "--lambda2");
    rep.param("r", o.r);
    rep.param("lambda", partition_json(lam));
    rep.param("lambda2", partition_json(lam2));
    std::vector<family::GrassTotalPoint> pts =
        family::enumerate_total_space(fam, lam, lam2, o.budget);
    total = pts.size();
    for (const family::GrassTotalPoint& pt : pts) {
      ++per_s[pt.s];
      members = members && grass::grass_schubert_member(pt.v, family::p_flag(fam, pt.s), lam) &&
                grass::grass_schubert_member(pt.v, family::q_flag(fam, pt.s), lam2);
    }
  }
  rep.result("total", total);
  json fibers = json::object();
  std::uint64_t sum = 0;
  for (std::uint32_t s = 0; s < o.p; ++s) {
    std::uint64_t c = per_s.count(s) ? per_s[s] : 0;
    fibers[std::to_string(s)] = c;
    sum += c;
  }
  rep.result("fibers", fibers);
  rep.check("membership-rescan", members, true, members);
  rep.check("fiber-sum", sum == total, total, sum);
}

void cmd_family_singular(Reporter& rep, Options& o) {
  family::PolynomialFamily fam = resolve_family(rep, o);
  bool flag_mode = !o.sigma.empty() || !o.tau.empty();
  rep.caveat(field_caveat);
  rep.caveat(rrv::tangent::ideal_generator_caveat);

  family::ExpectedDims dims;
  bool have_dims = false;
  if (!o.dims.empty()) {
    std::vector<int> v = parse_int_list(o.dims, "--dims");
    if (v.size() != 3)
      throw error(errc::usage_error, "--dims: expected intersection,factor_p,factor_q");
    dims = {v[0], v[1], v[2]};
    have_dims = true;
    rep.param("dims", o.dims);
  }
  if (!have_dims && !o.family_file.empty())
    throw error(errc::usage_error,
                "--family files pin one prime; interpolation needs --dims instead");
  std::vector<std::uint32_t> primes;
  if (!have_dims) {
    primes = parse_primes(o.primes.empty() ? "2,3,5,7,11" : o.primes);
    if (primes.size() < 2) throw error(errc::usage_error, "--primes: need at least two");
    rep.param("primes", primes);
  }
  int n = o.n, t = o.t;
  bool search = o.search;
  std::uint64_t seed = o.seed;
  auto generator = [n, t, search, seed](const ff::PrimeField& f) {
    return search ? family::search_family(n, f, t, seed) : family::demo_family(n, f, t);
  };

  if (flag_mode) {
    if (o.sigma.empty() || o.tau.empty())
      throw error(errc::usage_error, "flag conditions need both --sigma and --tau");
    perm::Permutation sigma = parse_perm(o.sigma, o.n, "--sigma");
    perm::Permutation tau = parse_perm(o.tau, o.n, "--tau");
    rep.param("sigma", sigma.str());
    rep.param("tau", tau.str());
    if (!have_dims)
      dims = family::interpolated_expected_dims(generator, sigma, tau, primes, o.budget);
    family::FlagLocusReport lr = family::singular_locus_map(fam, sigma, tau, dims, o.budget);
    rep.caveat(lr.caveat);
    rep.result("expected",
               json{{"intersection", dims.intersection}, {"factor_p", dims.factor_p},
                    {"factor_q", dims.factor_q}});
    rep.result("versal_pattern", lr.versal_pattern);
    rep.result("singular_count", lr.singular_count);
    json singular = json::array();
    std::size_t recount = 0;
    for (const family::FlagLocusEntry& e : lr.entries) {
      if (!e.singular_intersection) continue;
      ++recount;
      singular.push_back(json{{"s", e.s},
                              {"point", io::flag_to_json(e.point)},
                              {"tangent_intersection", e.tangent_intersection},
                              {"tangent_p", e.tangent_p},
                              {"tangent_q", e.tangent_q}});
    }
    rep.result("singular_points", singular);
    rep.check("union-law", lr.union_law, true, lr.union_law);
    rep.check("singular-recount", recount == lr.singular_count, lr.singular_count, recount);
    return;
  }

  grass::AdmissiblePartition lam = parse_partition(o.lambda, o.r, o.n, "--lambda");
  grass::AdmissiblePartition lam2 = parse_partition(o.lambda2, o.r, o.n, "--lambda2");
  rep.param("r", o.r);
  rep.param("lambda", partition_json(lam));
  rep.param("lambda2", partition_json(lam2));
  if (!have_dims)
    dims = family::interpolated_expected_dims(generator, lam, lam2, primes, o.budget);
  family::GrassLocusReport lr = family::singular_locus_map(fam, lam, lam2, dims, o.budget);
  rep.caveat(lr.caveat);
  rep.result("expected", json{{"intersection", dims.intersection},
                              {"factor_p", dims.factor_p},
                              {"factor_q", dims.factor_q}});
  rep.result("versal_pattern", lr.versal_pattern);
  rep.result("singular_count", lr.singular_count);
  json singular = json::array();
  std::size_t recount = 0;
  std::size_t almost = 0;
  for (const family::FiberProfile& fp : family::relpos_profile(fam).fibers)
    if (fp.cls == family::FiberClass::almost_transverse) ++almost;
  for (const family::GrassLocusEntry& e : lr.entries) {
    if (!e.singular_intersection) continue;
    ++recount;
    singular.push_back(json{{"s", e.s},
                            {"point", io::matrix_to_json(fam.field, fam.n, e.point.basis)},
                            {"tangent_intersection", e.tangent_intersection},
                            {"tangent_p", e.tangent_p},
                            {"tangent_q", e.tangent_q}});
  }
  rep.result("singular_points", singular);
  rep.check("union-law", lr.union_law, true, lr.union_law);
  rep.check("singular-recount", recount == lr.singular_count, lr.singular_count, recount);
  bool example_shape = fam.n == 4 && o.r == 2 && lam.parts == std::vector<int>{1, 0} &&
                       lam2.parts == std::vector<int>{1, 0} && lr.versal_pattern;
  if (example_shape)
    rep.check("special-lines-per-almost-fiber", lr.singular_count == 2 * almost, 2 * almost,
              lr.singular_count);
}

// ---------------------------------------------------------------------------
// report

void cmd_report_dimension(Reporter& rep, Options& o) {
  perm::Permutation sigma = parse_perm(o.sigma, o.n, "--sigma");
  perm::Permutation w0 = perm::Permutation::longest(o.n);
  perm::Permutation tau = o.tau.empty() ? w0 : parse_perm(o.tau, o.n, "--tau");
  std::vector<std::uint32_t> primes = parse_primes(o.primes.empty() ? "2,3,5,7,11,13" : o.primes);
  if (primes.size() < 2) throw error(errc::usage_error, "--primes: need at least two");
  rep.param("n", o.n);
  rep.param("sigma", sigma.str());
  rep.param("tau", tau.str());
  rep.param("primes", primes);
  rep.caveat(field_caveat);
  rep.caveat(sampling_caveat);

  std::map<std::uint32_t, std::uint64_t> counts;
  json counts_json = json::object();
  for (std::uint32_t q : primes) {
    std::uint64_t c = schubert::richardson_count(o.n, q, sigma, tau, o.budget);
    counts[q] = c;
    counts_json[std::to_string(q)] = c;
  }
  rep.result("counts", counts_json);

  schubert::PointCountFit fit =
      schubert::point_count_polynomial(counts, static_cast<int>(primes.size()) - 1);
  json coeffs = json::array();
  for (long long c : fit.polynomial.coeffs) coeffs.push_back(c);
  rep.result("coefficients", coeffs);
  rep.result("polynomial", fit.polynomial.str());
  rep.result("degree", fit.degree);

  bool sigma_only = tau == w0;
  if (sigma_only) {
    json want = json::array(), got = json::array();
    bool agree = true;
    for (std::uint32_t q : primes) {
      std::uint64_t cs = cell_sum(sigma, q);
      want.push_back(cs);
      got.push_back(counts[q]);
      agree = agree && cs == counts[q];
    }
    rep.check("bruhat-cell-sum", agree, want, got);
    int inv = perm::inversions(sigma);
    rep.check("degree-is-inversions", fit.degree == inv, inv, fit.degree);
    rep.check("coefficients-nonnegative", fit.all_nonnegative, true, fit.all_nonnegative);
    return;
  }
  bool nonempty = schubert::richardson_nonempty(sigma, tau);
  rep.result("richardson_nonempty", nonempty);
  if (nonempty) {
    int want = perm::inversions(sigma) + perm::inversions(tau) - o.n * (o.n - 1) / 2;
    rep.check("codimension-additivity", fit.degree == want, want, fit.degree);
  } else {
    bool all_zero = true;
    for (const auto& [q, c] : counts) all_zero = all_zero && c == 0;
    rep.check("empty-richardson", all_zero, true, all_zero);
  }
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, Options& o, bool with_field) {
  sub->add_option("--json-indent", o.indent, "output indent, 0 for one line");
  sub->add_option("--budget", o.budget, "enumeration cap");
  sub->add_option("--seed", o.seed, "seed for every random draw");
  if (with_field) sub->add_option("--p", o.p, "prime field order");
  sub->add_option("--n", o.n, "ambient dimension / permutation degree");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"exact Schubert calculus over small prime fields"};
  app.require_subcommand(1);

  CLI::App* permc = app.add_subcommand("perm", "permutation order, words, patterns");
  permc->require_subcommand(1);
  CLI::App* perm_bruhat = permc->add_subcommand("bruhat", "Bruhat order comparison");
  add_common(perm_bruhat, o, false);
  perm_bruhat->add_option("--sigma", o.sigma, "one-line permutation")->required();
  perm_bruhat->add_option("--tau", o.tau, "one-line permutation")->required();
  CLI::App* perm_word = permc->add_subcommand("word", "reduced words");
  add_common(perm_word, o, false);
  perm_word->add_option("--sigma", o.sigma, "permutation to factor");
  perm_word->add_option("--word", o.word, "comma-separated letters to evaluate");
  CLI::App* perm_pattern = permc->add_subcommand("pattern", "pattern containment");
  add_common(perm_pattern, o, false);
  perm_pattern->add_option("--sigma", o.sigma, "one-line permutation")->required();
  perm_pattern->add_option("--pattern", o.pattern, "pattern, degree at most 4")->required();

  CLI::App* relposc = app.add_subcommand("relpos", "relative position of two flags");
  add_common(relposc, o, true);
  relposc->add_option("--flag", o.flag1, "standard|opposite|@file.json");
  relposc->add_option("--flag2", o.flag2, "standard|opposite|@file.json");

  CLI::App* schubertc = app.add_subcommand("schubert", "Schubert and Richardson sets");
  schubertc->require_subcommand(1);
  CLI::App* sch_enum = schubertc->add_subcommand("enumerate", "point enumeration");
  add_common(sch_enum, o, true);
  sch_enum->add_option("--sigma", o.sigma, "one-line permutation")->required();
  sch_enum->add_option("--tau", o.tau, "second condition (Richardson)");
  sch_enum->add_option("--flag", o.flag1, "standard|opposite|@file.json");
  sch_enum->add_option("--flag2", o.flag2, "standard|opposite|@file.json");
  CLI::App* sch_count = schubertc->add_subcommand("count", "transverse Richardson count");
  add_common(sch_count, o, true);
  sch_count->add_option("--sigma", o.sigma, "one-line permutation")->required();
  sch_count->add_option("--tau", o.tau, "one-line permutation")->required();
  CLI::App* sch_tan = schubertc->add_subcommand("tangent", "tangent space at a point");
  add_common(sch_tan, o, true);
  sch_tan->add_option("--sigma", o.sigma, "one-line permutation")->required();
  sch_tan->add_option("--tau", o.tau, "second condition (Richardson)");
  sch_tan->add_option("--flag", o.flag1, "standard|opposite|@file.json");
  sch_tan->add_option("--flag2", o.flag2, "standard|opposite|@file.json");
  sch_tan->add_option("--point", o.point, "@file.json flag to probe");
  sch_tan->add_option("--point-index", o.point_index, "index into the enumerated set");
  CLI::App* sch_smooth = schubertc->add_subcommand("smoothlocus", "pointwise singular loci");
  add_common(sch_smooth, o, true);
  sch_smooth->add_option("--sigma", o.sigma, "one-line permutation")->required();
  sch_smooth->add_option("--tau", o.tau, "one-line permutation")->required();
  sch_smooth->add_option("--flag", o.flag1, "standard|opposite|@file.json");
  sch_smooth->add_option("--flag2", o.flag2, "standard|opposite|@file.json");
  sch_smooth->add_option("--expected-dim", o.expected_dim, "override the interpolated dimension");

  CLI::App* bsc = app.add_subcommand("bs", "Bott-Samelson resolutions");
  bsc->require_subcommand(1);
  CLI::App* bs_resolve = bsc->add_subcommand("resolve", "resolve one Schubert variety");
  add_common(bs_resolve, o, true);
  bs_resolve->add_option("--flag", o.flag1, "anchor flag");
  bs_resolve->add_option("--word", o.word, "reduced word, comma-separated")->required();
  CLI::App* bs_rich = bsc->add_subcommand("richardson", "joined resolution of a Richardson");
  add_common(bs_rich, o, true);
  bs_rich->add_option("--flag", o.flag1, "first anchor flag");
  bs_rich->add_option("--flag2", o.flag2, "second anchor flag");
  bs_rich->add_option("--word", o.word, "reduced word for sigma")->required();
  bs_rich->add_option("--word2", o.word2, "reduced word for tau")->required();

  CLI::App* grassc = app.add_subcommand("grass", "Grassmannian Schubert machinery");
  grassc->require_subcommand(1);
  CLI::App* gr_member = grassc->add_subcommand("member", "Schubert membership of a subspace");
  add_common(gr_member, o, true);
  gr_member->add_option("--lambda", o.lambda, "partition, comma-separated");
  gr_member->add_option("--flag", o.flag1, "standard|opposite|@file.json");
  gr_member->add_option("--point", o.point, "@file.json basis matrix")->required();
  CLI::App* gr_resolve = grassc->add_subcommand("resolve", "resolve a Grassmannian Richardson");
  add_common(gr_resolve, o, true);
  gr_resolve->add_option("--r", o.r, "subspace dimension");
  gr_resolve->add_option("--lambda", o.lambda, "partition, comma-separated");
  gr_resolve->add_option("--lambda2", o.lambda2, "second partition");
  gr_resolve->add_option("--flag", o.flag1, "standard|opposite|@file.json");
  gr_resolve->add_option("--flag2", o.flag2, "standard|opposite|@file.json");
  gr_resolve->add_option("--variant", o.variant, "chain|example");
  CLI::App* gr_example = grassc->add_subcommand("example", "the fixed Gr(2,4) worked example");
  add_common(gr_example, o, true);
  CLI::App* gr_convert = grassc->add_subcommand("convert", "partition <-> vanishing sequence");
  add_common(gr_convert, o, false);
  gr_convert->add_option("--lambda", o.lambda_convert, "partition, comma-separated");
  gr_convert->add_option("--r", o.r, "subspace dimension");
  gr_convert->add_option("--vanishing", o.vanishing, "vanishing sequence, comma-separated");
  gr_convert->add_option("--d", o.d, "top vanishing order");

  CLI::App* familyc = app.add_subcommand("family", "one-parameter flag families");
  familyc->require_subcommand(1);
  CLI::App* fam_demo = familyc->add_subcommand("demo", "build the built-in versal family");
  add_common(fam_demo, o, true);
  fam_demo->add_option("--t", o.t, "deviation position of the s = 0 fiber");
  fam_demo->add_flag("--search", o.search, "seeded random search instead of the fixed family");
  CLI::App* fam_profile = familyc->add_subcommand("profile", "relative-position profile");
  add_common(fam_profile, o, true);
  fam_profile->add_option("--family", o.family_file, "@file.json family");
  fam_profile->add_option("--t", o.t, "demo family deviation");
  fam_profile->add_flag("--search", o.search, "seeded random search family");
  CLI::App* fam_total = familyc->add_subcommand("total", "enumerate the relative total space");
  add_common(fam_total, o, true);
  fam_total->add_option("--family", o.family_file, "@file.json family");
  fam_total->add_option("--t", o.t, "demo family deviation");
  fam_total->add_flag("--search", o.search, "seeded random search family");
  fam_total->add_option("--sigma", o.sigma, "flag condition (with --tau)");
  fam_total->add_option("--tau", o.tau, "flag condition (with --sigma)");
  fam_total->add_option("--r", o.r, "Grassmannian subspace dimension");
  fam_total->add_option("--lambda", o.lambda, "Grassmannian partition");
  fam_total->add_option("--lambda2", o.lambda2, "second partition");
  CLI::App* fam_singular = familyc->add_subcommand("singular", "singular locus of the total space");
  add_common(fam_singular, o, true);
  fam_singular->add_option("--family", o.family_file, "@file.json family (needs --dims)");
  fam_singular->add_option("--t", o.t, "demo family deviation");
  fam_singular->add_flag("--search", o.search, "seeded random search family");
  fam_singular->add_option("--sigma", o.sigma, "flag condition (with --tau)");
  fam_singular->add_option("--tau", o.tau, "flag condition (with --sigma)");
  fam_singular->add_option("--r", o.r, "Grassmannian subspace dimension");
  fam_singular->add_option("--lambda", o.lambda, "Grassmannian partition");
  fam_singular->add_option("--lambda2", o.lambda2, "second partition");
  fam_singular->add_option("--primes", o.primes, "primes for expected-dimension interpolation");
  fam_singular->add_option("--dims", o.dims, "override: intersection,factor_p,factor_q");

  CLI::App* reportc = app.add_subcommand("report", "cross-prime verification reports");
  reportc->require_subcommand(1);
  CLI::App* rep_dim = reportc->add_subcommand("dimension", "point-count interpolation");
  add_common(rep_dim, o, false);
  rep_dim->add_option("--sigma", o.sigma, "one-line permutation")->required();
  rep_dim->add_option("--tau", o.tau, "second condition (default: vacuous)");
  rep_dim->add_option("--primes", o.primes, "primes to sample");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  struct Dispatch {
    CLI::App* sub;
    const char* name;
    void (*fn)(Reporter&, Options&);
  };
  const Dispatch table[] = {
      {perm_bruhat, "perm bruhat", cmd_perm_bruhat},
      {perm_word, "perm word", cmd_perm_word},
      {perm_pattern, "perm pattern", cmd_perm_pattern},
      {relposc, "relpos", cmd_relpos},
      {sch_enum, "schubert enumerate", cmd_schubert_enumerate},
      {sch_count, "schubert count", cmd_schubert_count},
      {sch_tan, "schubert tangent", cmd_schubert_tangent},
      {sch_smooth, "schubert smoothlocus", cmd_schubert_smoothlocus},
      {bs_resolve, "bs resolve", cmd_bs_resolve},
      {bs_rich, "bs richardson", cmd_bs_richardson},
      {gr_member, "grass member", cmd_grass_member},
      {gr_resolve, "grass resolve", cmd_grass_resolve},
      {gr_example, "grass example", cmd_grass_example},
      {gr_convert, "grass convert", cmd_grass_convert},
      {fam_demo, "family demo", cmd_family_demo},
      {fam_profile, "family profile", cmd_family_profile},
      {fam_total, "family total", cmd_family_total},
      {fam_singular, "family singular", cmd_family_singular},
      {rep_dim, "report dimension", cmd_report_dimension},
  };

  for (const Dispatch& d : table) {
    if (!d.sub->parsed()) continue;
    Reporter rep(d.name);
    try {
      d.fn(rep, o);
    } catch (const error& e) {
      if (e.code() == errc::usage_error) {
        std::cerr << e.what() << "\n";
        return 2;
      }
      rep.check("error-free-completion", false, "no computational errors", e.what());
    } catch (const std::exception& e) {
      rep.check("error-free-completion", false, "no computational errors", e.what());
    }
    return rep.emit(o.indent);
  }
  std::cerr << "no subcommand selected\n";
  return 2;
}
