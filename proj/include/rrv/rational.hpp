#pragma once

#include <cstdint>
#include <string>

#include "rrv/error.hpp"

namespace rrv {

// Exact rational arithmetic on 128 bit integers. Inputs stay far below the
// overflow threshold (point counts and prime abscissae), but every operation
// still checks and throws rather than wrapping silently.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n) {}
  Rational(__int128 n, __int128 d);

  __int128 num() const { return num_; }
  __int128 den() const { return den_; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return Rational(-num_, den_); }
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  long long to_int64() const;

  std::string str() const;

 private:
  __int128 num_ = 0;
  __int128 den_ = 1;
};

}  // namespace rrv
