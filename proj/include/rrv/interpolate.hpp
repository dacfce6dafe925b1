#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rrv/rational.hpp"

namespace rrv {

// Dense integer polynomial, coefficients lowest degree first, no trailing
// zeros. The empty vector is the zero polynomial (degree -1).
struct IntegerPolynomial {
  std::vector<long long> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  long long eval(long long x) const;
  bool operator==(const IntegerPolynomial&) const = default;
  std::string str(const std::string& var = "q") const;
};

IntegerPolynomial poly_add(const IntegerPolynomial& a, const IntegerPolynomial& b);
IntegerPolynomial poly_mul(const IntegerPolynomial& a, const IntegerPolynomial& b);

// Unique polynomial through all samples, by Newton divided differences over
// the rationals. Coefficients lowest degree first, trimmed. Abscissae must be
// distinct. Exact: no rounding anywhere.
std::vector<Rational> interpolate_rational(
    const std::vector<std::pair<long long, long long>>& samples);

}  // namespace rrv
