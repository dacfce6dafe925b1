#include "rrv/rational.hpp"

#include <limits>

namespace rrv {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

__int128 checked_mul(__int128 a, __int128 b) {
  __int128 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw error(errc::internal_invariant_violation, "rational overflow");
  return r;
}

__int128 checked_add(__int128 a, __int128 b) {
  __int128 r;
  if (__builtin_add_overflow(a, b, &r))
    throw error(errc::internal_invariant_violation, "rational overflow");
  return r;
}

std::string int128_str(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return std::string(s.rbegin(), s.rend());
}

}  // namespace

Rational::Rational(__int128 n, __int128 d) : num_(n), den_(d) {
  if (den_ == 0) throw error(errc::singular_matrix, "rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  __int128 g = gcd128(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                  checked_mul(den_, o.den_));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  return Rational(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw error(errc::singular_matrix, "rational division by zero");
  return Rational(checked_mul(num_, o.den_), checked_mul(den_, o.num_));
}

bool Rational::operator<(const Rational& o) const {
  return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
}

long long Rational::to_int64() const {
  if (den_ != 1) throw error(errc::non_integral_coefficients, "rational " + str() + " is not an integer");
  if (num_ > std::numeric_limits<long long>::max() || num_ < std::numeric_limits<long long>::min())
    throw error(errc::internal_invariant_violation, "rational exceeds 64 bits");
  return static_cast<long long>(num_);
}

std::string Rational::str() const {
  std::string s = int128_str(num_);
  if (den_ != 1) s += "/" + int128_str(den_);
  return s;
}

}  // namespace rrv
