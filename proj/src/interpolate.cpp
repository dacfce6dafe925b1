#include "rrv/interpolate.hpp"

#include <algorithm>

#include "rrv/error.hpp"

namespace rrv {

long long IntegerPolynomial::eval(long long x) const {
  __int128 acc = 0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = acc * x + coeffs[k];
    if (acc > static_cast<__int128>(1) << 100 || acc < -(static_cast<__int128>(1) << 100))
      throw error(errc::internal_invariant_violation, "polynomial evaluation overflow");
  }
  if (acc > 0x7fffffffffffffffll || acc < -0x7fffffffffffffffll)
    throw error(errc::internal_invariant_violation, "polynomial value exceeds 64 bits");
  return static_cast<long long>(acc);
}

std::string IntegerPolynomial::str(const std::string& var) const {
  if (coeffs.empty()) return "0";
  std::string out;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    long long c = coeffs[k];
    if (c == 0) continue;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    unsigned long long mag = c < 0 ? static_cast<unsigned long long>(-(c + 1)) + 1
                                   : static_cast<unsigned long long>(c);
    if (k == 0 || mag != 1) out += std::to_string(mag);
    if (k >= 1) {
      out += var;
      if (k >= 2) out += "^" + std::to_string(k);
    }
  }
  return out.empty() ? "0" : out;
}

namespace {

void trim(std::vector<long long>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

}  // namespace

IntegerPolynomial poly_add(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  IntegerPolynomial r;
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) r.coeffs[k] += a.coeffs[k];
  for (std::size_t k = 0; k < b.coeffs.size(); ++k) r.coeffs[k] += b.coeffs[k];
  trim(r.coeffs);
  return r;
}

IntegerPolynomial poly_mul(const IntegerPolynomial& a, const IntegerPolynomial& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return {};
  IntegerPolynomial r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  trim(r.coeffs);
  return r;
}

std::vector<Rational> interpolate_rational(
    const std::vector<std::pair<long long, long long>>& samples) {
  std::size_t m = samples.size();
  if (m == 0) throw error(errc::insufficient_samples, "no samples");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (samples[i].first == samples[j].first)
        throw error(errc::insufficient_samples, "repeated abscissa");

  // Newton divided differences, then expansion into the monomial basis.
  std::vector<Rational> dd(m);
  for (std::size_t i = 0; i < m; ++i) dd[i] = Rational(samples[i].second);
  std::vector<Rational> newton(m);
  newton[0] = dd[0];
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = m - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) /
              Rational(samples[i].first - samples[i - level].first);
    newton[level] = dd[level];
  }

  std::vector<Rational> coeffs(m, Rational(0));
  std::vector<Rational> basis{Rational(1)};  // product of (x - x_0)...(x - x_{k-1})
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t t = 0; t < basis.size(); ++t) coeffs[t] = coeffs[t] + newton[k] * basis[t];
    if (k + 1 < m) {
      basis.push_back(Rational(0));
      for (std::size_t t = basis.size() - 1; t > 0; --t)
        basis[t] = basis[t - 1] - Rational(samples[k].first) * basis[t];
      basis[0] = -Rational(samples[k].first) * basis[0];
    }
  }
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  return coeffs;
}

}  // namespace rrv
