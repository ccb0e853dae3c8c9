#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "unitroot/error.hpp"

namespace unitroot {

using Residue = std::int64_t;

inline Residue mod_reduce(Residue x, Residue m) {
  Residue r = x % m;
  return r < 0 ? r + m : r;
}

inline Residue mul_mod(Residue a, Residue b, Residue m) {
  return static_cast<Residue>((static_cast<__int128>(a) * b) % m);
}

inline Residue add_mod(Residue a, Residue b, Residue m) {
  Residue s = a + b;
  return s >= m ? s - m : s;
}

inline Residue sub_mod(Residue a, Residue b, Residue m) {
  Residue s = a - b;
  return s < 0 ? s + m : s;
}

inline Residue pow_mod(Residue base, std::uint64_t e, Residue m) {
  Residue result = 1 % m;
  base = mod_reduce(base, m);
  while (e) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

/// Inverse of a modulo m via extended Euclid; requires gcd(a, m) == 1.
inline Residue inv_mod(Residue a, Residue m) {
  Residue r0 = m, r1 = mod_reduce(a, m);
  Residue s0 = 0, s1 = 1;
  while (r1 != 0) {
    Residue q = r0 / r1;
    Residue t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw Error(ErrorKind::NonUnitDeterminant, "residue is not invertible");
  return mod_reduce(s0, m);
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

/// Integer power with overflow detection.
inline std::int64_t checked_pow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::int64_t>::max() / b)
      throw Error(ErrorKind::SizeGuardExceeded, "integer power overflows 64 bits");
    r *= b;
  }
  return r;
}

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// n! split as p^v * u with u a unit, tabulated for 0..max_n with u mod p^k.
/// Multinomial coefficients mod p^k follow without big integers.
class FactorialTable {
 public:
  FactorialTable(std::int64_t p, Residue modulus, std::int64_t max_n)
      : p_(p), modulus_(modulus), val_(max_n + 1), unit_(max_n + 1) {
    val_[0] = 0;
    unit_[0] = 1 % modulus;
    for (std::int64_t n = 1; n <= max_n; ++n) {
      std::int64_t x = n, v = 0;
      while (x % p == 0) {
        x /= p;
        ++v;
      }
      val_[n] = val_[n - 1] + v;
      unit_[n] = mul_mod(unit_[n - 1], mod_reduce(x, modulus), modulus);
    }
  }

  std::int64_t max_n() const { return static_cast<std::int64_t>(val_.size()) - 1; }
  std::int64_t valuation(std::int64_t n) const { return val_.at(n); }
  Residue unit(std::int64_t n) const { return unit_.at(n); }

  /// top! / prod(parts_k!) mod p^k; the caller guarantees this is an integer.
  template <class Range>
  Residue multinomial(std::int64_t top, const Range& parts) const {
    std::int64_t v = valuation(top);
    Residue num = unit(top);
    Residue den = 1 % modulus_;
    for (auto part : parts) {
      if (part <= 1) continue;
      v -= valuation(part);
      den = mul_mod(den, unit(part), modulus_);
    }
    ensure(v >= 0, "multinomial coefficient is not integral");
    Residue r = mul_mod(num, inv_mod(den, modulus_), modulus_);
    for (std::int64_t i = 0; i < v && r != 0; ++i) r = mul_mod(r, p_ % modulus_, modulus_);
    return r;
  }

 private:
  std::int64_t p_;
  Residue modulus_;
  std::vector<std::int64_t> val_;
  std::vector<Residue> unit_;
};

}  // namespace unitroot
