#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unitroot/arith/modular.hpp"
#include "unitroot/error.hpp"

namespace unitroot {

/// Dense polynomial over Z/m, ascending coefficients. Helpers below keep it trimmed.
using ResiduePoly = std::vector<Residue>;

namespace fp_poly {

inline void trim(ResiduePoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

/// Remainder of f modulo a monic g, coefficients mod m.
inline ResiduePoly rem_monic(ResiduePoly f, const ResiduePoly& g, Residue m) {
  const std::size_t dg = g.size() - 1;
  for (std::size_t i = f.size(); i-- > dg;) {
    Residue c = f[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dg; ++j)
      f[i - dg + j] = sub_mod(f[i - dg + j], mul_mod(c, g[j], m), m);
  }
  f.resize(std::min(f.size(), dg));
  trim(f);
  return f;
}

/// Brute-force irreducibility over F_p: no monic factor of degree 1..deg/2.
inline bool is_irreducible(const ResiduePoly& f, std::int64_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  for (std::size_t k = 1; k <= deg / 2; ++k) {
    ResiduePoly g(k + 1, 0);
    g[k] = 1;
    const std::int64_t count = checked_pow(p, static_cast<unsigned>(k));
    for (std::int64_t idx = 0; idx < count; ++idx) {
      std::int64_t x = idx;
      for (std::size_t j = 0; j < k; ++j) {
        g[j] = x % p;
        x /= p;
      }
      if (rem_monic(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace fp_poly

/// Element of F_q in the power basis of the context modulus.
struct FqElement {
  std::vector<Residue> coeffs;
  auto operator<=>(const FqElement&) const = default;
};

/// The finite field F_{p^a} = F_p[t]/(modulus).
class FqContext {
 public:
  using value_type = FqElement;

  FqContext(std::int64_t p, int a, ResiduePoly modulus) : p_(p), a_(a), modulus_(std::move(modulus)) {
    q_ = checked_pow(p_, static_cast<unsigned>(a_));
  }

  std::int64_t p() const { return p_; }
  int degree() const { return a_; }
  std::int64_t order() const { return q_; }
  const ResiduePoly& modulus() const { return modulus_; }

  FqElement zero() const { return FqElement{std::vector<Residue>(a_, 0)}; }
  FqElement one() const { return from_int(1); }
  FqElement from_int(std::int64_t v) const {
    FqElement e = zero();
    e.coeffs[0] = mod_reduce(v, p_);
    return e;
  }
  FqElement from_coeffs(const std::vector<Residue>& c) const {
    if (static_cast<int>(c.size()) != a_)
      throw Error(ErrorKind::Validation, "F_q element needs " + std::to_string(a_) + " residues");
    FqElement e{c};
    for (auto& x : e.coeffs) x = mod_reduce(x, p_);
    return e;
  }

  bool is_zero(const FqElement& x) const {
    for (auto c : x.coeffs)
      if (c) return false;
    return true;
  }
  bool is_unit(const FqElement& x) const { return !is_zero(x); }
  bool equal(const FqElement& x, const FqElement& y) const { return x.coeffs == y.coeffs; }

  FqElement add(const FqElement& x, const FqElement& y) const {
    FqElement r = x;
    for (int i = 0; i < a_; ++i) r.coeffs[i] = add_mod(r.coeffs[i], y.coeffs[i], p_);
    return r;
  }
  FqElement sub(const FqElement& x, const FqElement& y) const {
    FqElement r = x;
    for (int i = 0; i < a_; ++i) r.coeffs[i] = sub_mod(r.coeffs[i], y.coeffs[i], p_);
    return r;
  }
  FqElement neg(const FqElement& x) const { return sub(zero(), x); }

  FqElement mul(const FqElement& x, const FqElement& y) const {
    ResiduePoly prod(2 * a_ - 1, 0);
    for (int i = 0; i < a_; ++i) {
      if (!x.coeffs[i]) continue;
      for (int j = 0; j < a_; ++j)
        prod[i + j] = add_mod(prod[i + j], mul_mod(x.coeffs[i], y.coeffs[j], p_), p_);
    }
    ResiduePoly r = fp_poly::rem_monic(std::move(prod), modulus_, p_);
    r.resize(a_, 0);
    return FqElement{std::move(r)};
  }

  FqElement pow(FqElement base, std::uint64_t e) const {
    FqElement result = one();
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  FqElement inv(const FqElement& x) const {
    if (is_zero(x)) throw Error(ErrorKind::NonUnitDeterminant, "inverse of zero in F_q");
    return pow(x, static_cast<std::uint64_t>(q_ - 2));
  }

  /// Elements in lexicographic order of (c_0, ..., c_{a-1}).
  FqElement element(std::int64_t index) const {
    FqElement e = zero();
    for (int j = a_ - 1; j >= 0; --j) {
      e.coeffs[j] = index % p_;
      index /= p_;
    }
    return e;
  }
  std::int64_t index_of(const FqElement& x) const {
    std::int64_t idx = 0;
    for (int j = 0; j < a_; ++j) idx = idx * p_ + x.coeffs[j];
    return idx;
  }

  /// True if x lies in the prime subfield.
  bool in_prime_field(const FqElement& x) const {
    for (int j = 1; j < a_; ++j)
      if (x.coeffs[j]) return false;
    return true;
  }

 private:
  std::int64_t p_;
  int a_;
  ResiduePoly modulus_;
  std::int64_t q_;
};

/// Lexicographically least monic irreducible of degree a over F_p, scanning (c_0, ..., c_{a-1}) ascending.
inline ResiduePoly default_modulus(std::int64_t p, int a) {
  const std::int64_t count = checked_pow(p, static_cast<unsigned>(a));
  ResiduePoly f(a + 1, 0);
  f[a] = 1;
  for (std::int64_t idx = 0; idx < count; ++idx) {
    std::int64_t x = idx;
    for (int j = a - 1; j >= 0; --j) {
      f[j] = x % p;
      x /= p;
    }
    if (fp_poly::is_irreducible(f, p)) return f;
  }
  throw Error(ErrorKind::Internal, "no irreducible polynomial found");
}

inline FqContext build_fq(std::int64_t p, int a, std::optional<ResiduePoly> modulus = std::nullopt) {
  if (!is_prime(p)) throw Error(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
  if (a < 1) throw Error(ErrorKind::Validation, "extension degree must be >= 1");
  if (!modulus) return FqContext(p, a, default_modulus(p, a));
  ResiduePoly f = *modulus;
  for (auto& c : f) c = mod_reduce(c, p);
  if (static_cast<int>(f.size()) != a + 1 || f.back() != 1)
    throw Error(ErrorKind::Validation, "modulus must be monic of degree " + std::to_string(a));
  if (!fp_poly::is_irreducible(f, p)) throw Error(ErrorKind::ReducibleModulus, "supplied modulus is reducible");
  return FqContext(p, a, std::move(f));
}

}  // namespace unitroot
