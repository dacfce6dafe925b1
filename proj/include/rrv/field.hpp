#pragma once

#include <cstdint>

#include "rrv/error.hpp"

namespace rrv::ff {

// Prime field F_p for 2 <= p <= 31. Elements are residues 0..p-1 in machine
// words; the inverse table is shared per p, so the object is two words and
// freely copyable.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return (a * b) % p_; }
  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw error(errc::singular_matrix, "inverse of zero");
    return inv_[a];
  }
  // Reduces any signed value into 0..p-1.
  std::uint32_t reduce(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_ = 0;
  const std::uint32_t* inv_ = nullptr;  // shared table, index < p
};

}  // namespace rrv::ff
