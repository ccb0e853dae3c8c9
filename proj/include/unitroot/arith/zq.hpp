#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "unitroot/arith/fq.hpp"
#include "unitroot/arith/matrix.hpp"
#include "unitroot/arith/modular.hpp"

namespace unitroot {

/// Element of the unramified ring Z_q / p^(m+g), power basis of the lifted modulus.
struct ZqElement {
  std::vector<Residue> coeffs;
  auto operator<=>(const ZqElement&) const = default;
};

using ZqMatrix = Matrix<ZqElement>;

/// Ascending coefficient list over Z_q.
struct ZqPolynomial {
  std::vector<ZqElement> coeffs;
  bool operator==(const ZqPolynomial&) const = default;
};

/// Fixed-precision model of Z_q: target precision m plus g guard digits.
class PadicContext {
 public:
  using value_type = ZqElement;

  static constexpr int kDefaultGuard = 2;

  PadicContext(FqContext field, int precision, int guard = kDefaultGuard)
      : field_(std::move(field)), m_(precision), g_(guard) {
    if (m_ < 1) throw Error(ErrorKind::Validation, "precision must be >= 1");
    if (g_ < 0) throw Error(ErrorKind::Validation, "guard digits must be >= 0");
    modulus_ = checked_pow(field_.p(), static_cast<unsigned>(m_ + g_));
    if (modulus_ > (std::int64_t{1} << 62) / field_.p())
      throw Error(ErrorKind::SizeGuardExceeded, "p^(m+g) too large for 64-bit residues");
    target_ = checked_pow(field_.p(), static_cast<unsigned>(m_));
    lifted_ = field_.modulus();  // coefficients already in [0, p)
  }

  const FqContext& field() const { return field_; }
  std::int64_t p() const { return field_.p(); }
  int degree() const { return field_.degree(); }
  int precision() const { return m_; }
  int guard() const { return g_; }
  int working_digits() const { return m_ + g_; }
  Residue modulus() const { return modulus_; }
  Residue target_modulus() const { return target_; }
  const ResiduePoly& lifted_modulus() const { return lifted_; }

  ZqElement zero() const { return ZqElement{std::vector<Residue>(degree(), 0)}; }
  ZqElement one() const { return from_int(1); }
  ZqElement from_int(std::int64_t v) const {
    ZqElement e = zero();
    e.coeffs[0] = mod_reduce(v, modulus_);
    return e;
  }
  ZqElement from_coeffs(std::vector<Residue> c) const {
    ensure(static_cast<int>(c.size()) == degree(), "Z_q element has wrong length");
    for (auto& x : c) x = mod_reduce(x, modulus_);
    return ZqElement{std::move(c)};
  }
  /// Naive lift: residues of c taken as integers in [0, p).
  ZqElement lift(const FqElement& c) const { return from_coeffs(c.coeffs); }

  FqElement reduce(const ZqElement& x) const {
    FqElement e = field_.zero();
    for (int i = 0; i < degree(); ++i) e.coeffs[i] = x.coeffs[i] % p();
    return e;
  }

  /// Reduction mod p^k, k <= m+g.
  ZqElement truncate(ZqElement x, int k) const {
    const Residue pk = checked_pow(p(), static_cast<unsigned>(k));
    for (auto& c : x.coeffs) c %= pk;
    return x;
  }

  bool is_zero(const ZqElement& x) const {
    for (auto c : x.coeffs)
      if (c) return false;
    return true;
  }
  bool is_unit(const ZqElement& x) const { return !field_.is_zero(reduce(x)); }
  bool equal(const ZqElement& x, const ZqElement& y) const { return x.coeffs == y.coeffs; }

  ZqElement add(const ZqElement& x, const ZqElement& y) const {
    ZqElement r = x;
    for (int i = 0; i < degree(); ++i) r.coeffs[i] = add_mod(r.coeffs[i], y.coeffs[i], modulus_);
    return r;
  }
  ZqElement sub(const ZqElement& x, const ZqElement& y) const {
    ZqElement r = x;
    for (int i = 0; i < degree(); ++i) r.coeffs[i] = sub_mod(r.coeffs[i], y.coeffs[i], modulus_);
    return r;
  }
  ZqElement neg(const ZqElement& x) const { return sub(zero(), x); }

  ZqElement mul(const ZqElement& x, const ZqElement& y) const {
    const int a = degree();
    if (a == 1) return ZqElement{{mul_mod(x.coeffs[0], y.coeffs[0], modulus_)}};
    ResiduePoly prod(2 * a - 1, 0);
    for (int i = 0; i < a; ++i) {
      if (!x.coeffs[i]) continue;
      for (int j = 0; j < a; ++j)
        prod[i + j] = add_mod(prod[i + j], mul_mod(x.coeffs[i], y.coeffs[j], modulus_), modulus_);
    }
    ResiduePoly r = fp_poly::rem_monic(std::move(prod), lifted_, modulus_);
    r.resize(a, 0);
    return ZqElement{std::move(r)};
  }

  ZqElement scale(const ZqElement& x, Residue s) const {
    ZqElement r = x;
    s = mod_reduce(s, modulus_);
    for (auto& c : r.coeffs) c = mul_mod(c, s, modulus_);
    return r;
  }

  ZqElement pow(ZqElement base, std::uint64_t e) const {
    ZqElement result = one();
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  /// Inverse of a unit: F_q inverse, then Newton y <- y(2 - xy) until full precision.
  ZqElement inv(const ZqElement& x) const {
    if (!is_unit(x)) throw Error(ErrorKind::NonUnitDeterminant, "Z_q element is not a unit");
    ZqElement y = lift(field_.inv(reduce(x)));
    const ZqElement two = from_int(2);
    for (int digits = 1; digits < working_digits(); digits *= 2) y = mul(y, sub(two, mul(x, y)));
    return y;
  }

  /// Frobenius-invariant lift: iterate x -> x^q exactly m+g times from the naive lift.
  ZqElement teichmueller(const FqElement& c) const {
    ensure(static_cast<int>(c.coeffs.size()) == degree(), "Teichmueller: element from another field");
    ZqElement x = lift(c);
    const auto q = static_cast<std::uint64_t>(field_.order());
    for (int i = 0; i < working_digits(); ++i) x = pow(x, q);
    ensure(equal(pow(x, q), x), "Teichmueller iteration did not reach a fixed point");
    return x;
  }

 private:
  FqContext field_;
  int m_;
  int g_;
  Residue modulus_;
  Residue target_;
  ResiduePoly lifted_;
};

inline ZqElement teichmueller_lift(const FqElement& c, const PadicContext& ctx) { return ctx.teichmueller(c); }

inline ZqMatrix zq_matrix_inverse(const ZqMatrix& m, const PadicContext& ctx) { return inverse(ctx, m); }

/// Coefficientwise reduction of a polynomial mod p^k, trailing zeros dropped.
inline ZqPolynomial truncate(const ZqPolynomial& f, const PadicContext& ctx, int k) {
  ZqPolynomial out;
  for (const auto& c : f.coeffs) out.coeffs.push_back(ctx.truncate(c, k));
  while (!out.coeffs.empty() && ctx.is_zero(out.coeffs.back())) out.coeffs.pop_back();
  return out;
}

inline bool equal_mod(const ZqPolynomial& f, const ZqPolynomial& g, const PadicContext& ctx, int k) {
  return truncate(f, ctx, k) == truncate(g, ctx, k);
}

/// Embed an integer polynomial (exact coefficients given mod p^(m+g)).
inline ZqPolynomial embed_integer_poly(const ResiduePoly& f, const PadicContext& ctx) {
  ZqPolynomial out;
  for (auto c : f) out.coeffs.push_back(ctx.from_int(c));
  return out;
}

}  // namespace unitroot
