#include "rrv/perm.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace rrv::perm {

namespace {

void check_degree(int n) {
  if (n < 1 || n > max_degree)
    throw error(errc::degree_out_of_range,
                "degree " + std::to_string(n) + " outside 1.." + std::to_string(max_degree));
}

void check_same_degree(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree())
    throw error(errc::degree_mismatch, "degrees " + std::to_string(a.degree()) + " and " +
                                           std::to_string(b.degree()));
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

Permutation::Permutation(const std::vector<int>& one_line) {
  check_degree(static_cast<int>(one_line.size()));
  n_ = static_cast<int>(one_line.size());
  img_.resize(one_line.size());
  std::vector<bool> seen(one_line.size(), false);
  for (std::size_t i = 0; i < one_line.size(); ++i) {
    int v = one_line[i];
    if (v < 1 || v > n_ || seen[static_cast<std::size_t>(v - 1)])
      throw error(errc::degree_out_of_range, "not a permutation of 1.." + std::to_string(n_));
    seen[static_cast<std::size_t>(v - 1)] = true;
    img_[i] = static_cast<std::uint8_t>(v);
  }
}

Permutation Permutation::identity(int n) {
  check_degree(n);
  Permutation s;
  s.n_ = n;
  s.img_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s.img_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i + 1);
  return s;
}

Permutation Permutation::longest(int n) {
  check_degree(n);
  Permutation s;
  s.n_ = n;
  s.img_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s.img_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(n - i);
  return s;
}

Permutation Permutation::simple(int n, int i) {
  if (i < 1 || i >= n) throw error(errc::letter_out_of_range, "simple reflection " + std::to_string(i));
  return transposition(n, i, i + 1);
}

Permutation Permutation::transposition(int n, int i, int j) {
  check_degree(n);
  if (i < 1 || j < 1 || i > n || j > n || i == j)
    throw error(errc::index_out_of_range, "transposition indices");
  Permutation s = identity(n);
  std::swap(s.img_[static_cast<std::size_t>(i - 1)], s.img_[static_cast<std::size_t>(j - 1)]);
  return s;
}

Permutation Permutation::parse(const std::string& text) {
  std::vector<int> vals;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) throw error(errc::usage_error, "empty entry in permutation '" + text + "'");
      vals.push_back(std::stoi(tok));
    }
  } else {
    for (char ch : text) {
      if (ch < '1' || ch > '9')
        throw error(errc::usage_error, "cannot parse permutation '" + text + "'");
      vals.push_back(ch - '0');
    }
  }
  return Permutation(vals);
}

int Permutation::operator()(int i) const {
  if (i < 1 || i > n_) throw error(errc::index_out_of_range, "permutation argument " + std::to_string(i));
  return img_[static_cast<std::size_t>(i - 1)];
}

Permutation Permutation::inverse() const {
  Permutation s;
  s.n_ = n_;
  s.img_.resize(img_.size());
  for (int i = 1; i <= n_; ++i) s.img_[static_cast<std::size_t>(img_[static_cast<std::size_t>(i - 1)] - 1)] = static_cast<std::uint8_t>(i);
  return s;
}

std::uint64_t Permutation::lex_rank() const {
  std::uint64_t rank = 0;
  for (int i = 0; i < n_; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n_; ++j)
      if (img_[static_cast<std::size_t>(j)] < img_[static_cast<std::size_t>(i)]) ++smaller;
    rank += static_cast<std::uint64_t>(smaller) * factorial(n_ - 1 - i);
  }
  return rank;
}

Permutation Permutation::from_lex_rank(int n, std::uint64_t rank) {
  check_degree(n);
  if (rank >= factorial(n)) throw error(errc::index_out_of_range, "lex rank too large");
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> vals;
  for (int i = n - 1; i >= 0; --i) {
    std::uint64_t f = factorial(i);
    std::size_t k = static_cast<std::size_t>(rank / f);
    rank %= f;
    vals.push_back(pool[k]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return Permutation(vals);
}

std::string Permutation::str() const {
  std::string out;
  for (int i = 0; i < n_; ++i) {
    if (n_ > 9 && i > 0) out += ',';
    out += std::to_string(static_cast<int>(img_[static_cast<std::size_t>(i)]));
  }
  return out;
}

bool Permutation::operator<(const Permutation& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  return img_ < o.img_;
}

Permutation compose(const Permutation& f, const Permutation& g) {
  check_same_degree(f, g);
  std::vector<int> vals(static_cast<std::size_t>(f.degree()));
  for (int i = 1; i <= f.degree(); ++i) vals[static_cast<std::size_t>(i - 1)] = f(g(i));
  return Permutation(vals);
}

int inversions(const Permutation& s) {
  int inv = 0;
  for (int i = 1; i <= s.degree(); ++i)
    for (int j = i + 1; j <= s.degree(); ++j)
      if (s(i) > s(j)) ++inv;
  return inv;
}

RankMatrix rank_matrix(const Permutation& s) {
  int n = s.degree();
  RankMatrix r;
  r.n = n;
  r.e.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      int count = (i > 1 ? r.e[static_cast<std::size_t>(i - 2) * n + (j - 1)] : 0);
      if (s(i) <= j) ++count;
      r.e[static_cast<std::size_t>(i - 1) * n + (j - 1)] = count;
    }
  return r;
}

Permutation permutation_from_rank_matrix(const RankMatrix& r) {
  check_degree(r.n);
  std::vector<int> vals(static_cast<std::size_t>(r.n), 0);
  for (int i = 1; i <= r.n; ++i) {
    int found = 0;
    for (int j = 1; j <= r.n; ++j) {
      int cur = r.at(i, j);
      int up = i > 1 ? r.at(i - 1, j) : 0;
      int left = j > 1 ? r.at(i, j - 1) : 0;
      int diag = (i > 1 && j > 1) ? r.at(i - 1, j - 1) : 0;
      if (cur - up - left + diag == 1) {
        vals[static_cast<std::size_t>(i - 1)] = j;
        ++found;
      }
    }
    if (found != 1)
      throw error(errc::internal_invariant_violation, "rank matrix row lacks a unique jump");
  }
  return Permutation(vals);
}

bool bruhat_leq(const Permutation& s, const Permutation& t) {
  check_same_degree(s, t);
  RankMatrix rs = rank_matrix(s), rt = rank_matrix(t);
  for (std::size_t k = 0; k < rs.e.size(); ++k)
    if (rs.e[k] < rt.e[k]) return false;
  return true;
}

namespace {

// Upper sets of the reflection-closure relation, one bitset row per
// permutation (lex rank indexed), built per degree on first use.
struct Closure {
  int n = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> up;  // row sigma: bits of {tau : sigma <= tau}

  bool leq(std::uint64_t a, std::uint64_t b) const {
    return (up[a * words + b / 64] >> (b % 64)) & 1u;
  }
};

const Closure& closure_for(int n) {
  static std::map<int, Closure> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  Closure c;
  c.n = n;
  std::uint64_t total = factorial(n);
  c.words = static_cast<std::size_t>((total + 63) / 64);
  c.up.assign(static_cast<std::size_t>(total) * c.words, 0);

  // Process by inversion count descending: every edge sigma -> sigma*t_ij
  // strictly increases length, so successors are already complete.
  std::vector<Permutation> all = all_permutations(n);
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<int> inv(all.size());
  for (std::size_t k = 0; k < all.size(); ++k) inv[k] = inversions(all[k]);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return inv[a] > inv[b]; });

  for (std::size_t k : order) {
    const Permutation& s = all[k];
    std::uint64_t self = s.lex_rank();
    c.up[self * c.words + self / 64] |= 1ull << (self % 64);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        if (s(i) < s(j)) {
          Permutation t = compose(s, Permutation::transposition(n, i, j));
          std::uint64_t tr = t.lex_rank();
          for (std::size_t w = 0; w < c.words; ++w)
            c.up[self * c.words + w] |= c.up[tr * c.words + w];
        }
      }
  }
  return cache.emplace(n, std::move(c)).first->second;
}

}  // namespace

bool bruhat_leq_oracle(const Permutation& s, const Permutation& t) {
  check_same_degree(s, t);
  if (s.degree() > 6) throw error(errc::degree_out_of_range, "closure oracle limited to n <= 6");
  const Closure& c = closure_for(s.degree());
  return c.leq(s.lex_rank(), t.lex_rank());
}

std::vector<Permutation> bruhat_lower_set(const Permutation& s) {
  if (s.degree() > 6) throw error(errc::degree_out_of_range, "lower set limited to n <= 6");
  std::vector<Permutation> out;
  for (const Permutation& t : all_permutations(s.degree()))
    if (bruhat_leq(t, s)) out.push_back(t);
  return out;
}

std::vector<Permutation> all_permutations(int n) {
  check_degree(n);
  if (n > 8) throw error(errc::degree_out_of_range, "full symmetric group listing limited to n <= 8");
  std::vector<int> vals(static_cast<std::size_t>(n));
  std::iota(vals.begin(), vals.end(), 1);
  std::vector<Permutation> out;
  out.reserve(factorial(n));
  do {
    out.emplace_back(Permutation(vals));
  } while (std::next_permutation(vals.begin(), vals.end()));
  return out;
}

ReducedWord reduced_word(const Permutation& s) {
  ReducedWord w;
  w.degree = s.degree();
  Permutation cur = s;
  const Permutation id = Permutation::identity(s.degree());
  while (!(cur == id)) {
    int i = 0;
    for (int k = 1; k < cur.degree(); ++k)
      if (cur(k) > cur(k + 1)) {
        i = k;
        break;
      }
    w.letters.push_back(i);
    cur = compose(cur, Permutation::simple(cur.degree(), i));
  }
  return w;
}

Permutation evaluate_word(const ReducedWord& w) {
  check_degree(w.degree);
  Permutation cur = Permutation::identity(w.degree);
  for (int letter : w.letters) {
    if (letter < 1 || letter >= w.degree)
      throw error(errc::letter_out_of_range, "letter " + std::to_string(letter));
    cur = compose(Permutation::simple(w.degree, letter), cur);
  }
  return cur;
}

bool is_reduced(const ReducedWord& w) {
  check_degree(w.degree);
  Permutation cur = Permutation::identity(w.degree);
  int len = 0;
  for (int letter : w.letters) {
    if (letter < 1 || letter >= w.degree)
      throw error(errc::letter_out_of_range, "letter " + std::to_string(letter));
    Permutation next = compose(Permutation::simple(w.degree, letter), cur);
    if (inversions(next) != len + 1) return false;
    ++len;
    cur = next;
  }
  return true;
}

namespace {

void collect_words(const Permutation& s, std::vector<int>& prefix, std::vector<ReducedWord>& out) {
  bool descent = false;
  for (int i = 1; i < s.degree(); ++i) {
    if (s(i) > s(i + 1)) {
      descent = true;
      prefix.push_back(i);
      collect_words(compose(s, Permutation::simple(s.degree(), i)), prefix, out);
      prefix.pop_back();
    }
  }
  if (!descent) out.push_back(ReducedWord{s.degree(), prefix});
}

}  // namespace

std::vector<ReducedWord> all_reduced_words(const Permutation& s) {
  if (s.degree() > 6) throw error(errc::degree_out_of_range, "word listing limited to n <= 6");
  std::vector<ReducedWord> out;
  std::vector<int> prefix;
  collect_words(s, prefix, out);
  return out;  // descents visited in increasing order => lexicographic
}

bool contains_pattern(const Permutation& s, const Permutation& pattern) {
  int n = s.degree(), k = pattern.degree();
  if (k > 4) throw error(errc::degree_out_of_range, "patterns limited to degree <= 4");
  if (k > n) return false;
  std::vector<int> idx(static_cast<std::size_t>(k));
  // Walk all k-subsets of positions in lexicographic order.
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    bool match = true;
    for (int a = 0; a < k && match; ++a)
      for (int b = a + 1; b < k && match; ++b) {
        bool sl = s(idx[static_cast<std::size_t>(a)]) < s(idx[static_cast<std::size_t>(b)]);
        bool pl = pattern(a + 1) < pattern(b + 1);
        if (sl != pl) match = false;
      }
    if (match) return true;
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - (k - 1 - pos)) --pos;
    if (pos < 0) return false;
    ++idx[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < k; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
  }
}

bool schubert_is_smooth(const Permutation& s) {
  static const std::vector<int> p3412{3, 4, 1, 2}, p4231{4, 2, 3, 1};
  return !contains_pattern(s, Permutation(p3412)) && !contains_pattern(s, Permutation(p4231));
}

}  // namespace rrv::perm
