#pragma once

#include <cstdint>
#include <vector>

#include "unitroot/arith/fq.hpp"
#include "unitroot/arith/modular.hpp"

namespace unitroot {

/// F_{p^k} for point counting: elements are discrete logarithms to a fixed
/// primitive element, with a Zech table for addition, so every field operation is
/// a table lookup. kZero marks the zero element.
class CountingField {
 public:
  using Elem = std::int32_t;
  static constexpr Elem kZero = -1;
  static constexpr std::int64_t kMaxOrder = std::int64_t{1} << 21;

  CountingField(std::int64_t p, int k) : p_(p), k_(k), q_(checked_pow(p, static_cast<unsigned>(k))) {
    if (q_ > kMaxOrder) throw Error(ErrorKind::EnumerationBudgetExceeded, "counting field too large");
    const FqContext field(p, k, default_modulus(p, k));
    const std::int64_t order = q_ - 1;
    const auto factors = prime_factors(order);
    FqElement gen;
    for (std::int64_t idx = 1; idx < q_; ++idx) {
      const FqElement c = field.element(idx);
      bool primitive = true;
      for (auto r : factors)
        if (field.equal(field.pow(c, static_cast<std::uint64_t>(order / r)), field.one())) {
          primitive = false;
          break;
        }
      if (primitive) {
        gen = c;
        break;
      }
    }
    exp_.resize(order);
    log_.assign(q_, kZero);
    FqElement x = field.one();
    for (std::int64_t e = 0; e < order; ++e) {
      const auto idx = digits_index(x);
      exp_[e] = static_cast<std::int32_t>(idx);
      log_[idx] = static_cast<Elem>(e);
      x = field.mul(x, gen);
    }
    zech_.resize(order);
    for (std::int64_t e = 0; e < order; ++e) {
      std::int64_t idx = exp_[e];
      const std::int64_t c0 = idx % p;
      idx += ((c0 + 1) % p) - c0;  // add 1 to the constant digit
      zech_[e] = log_[idx];
    }
    neg_one_ = (p == 2) ? 0 : static_cast<Elem>(order / 2);
  }

  std::int64_t p() const { return p_; }
  int degree() const { return k_; }
  std::int64_t order() const { return q_; }

  Elem zero() const { return kZero; }
  Elem one() const { return 0; }
  bool is_zero(Elem x) const { return x == kZero; }

  Elem mul(Elem x, Elem y) const {
    if (x == kZero || y == kZero) return kZero;
    std::int64_t s = static_cast<std::int64_t>(x) + y;
    const std::int64_t ord = q_ - 1;
    return static_cast<Elem>(s >= ord ? s - ord : s);
  }
  Elem add(Elem x, Elem y) const {
    if (x == kZero) return y;
    if (y == kZero) return x;
    const std::int64_t ord = q_ - 1;
    std::int64_t d = static_cast<std::int64_t>(y) - x;
    if (d < 0) d += ord;
    const Elem z = zech_[d];
    if (z == kZero) return kZero;
    std::int64_t s = static_cast<std::int64_t>(x) + z;
    return static_cast<Elem>(s >= ord ? s - ord : s);
  }
  Elem neg(Elem x) const { return mul(x, neg_one_); }
  Elem sub(Elem x, Elem y) const { return add(x, neg(y)); }
  Elem inv(Elem x) const {
    ensure(x != kZero, "inverse of zero in counting field");
    return x == 0 ? 0 : static_cast<Elem>((q_ - 1) - x);
  }
  Elem pow(Elem x, std::uint64_t e) const {
    if (x == kZero) return e == 0 ? one() : kZero;
    return static_cast<Elem>((static_cast<unsigned __int128>(x) * e) % static_cast<std::uint64_t>(q_ - 1));
  }

  /// Image of an integer in the prime field.
  Elem from_int(std::int64_t v) const { return log_[mod_reduce(v, p_)]; }

  /// All elements: zero then the powers of the generator.
  Elem element(std::int64_t index) const { return index == 0 ? kZero : static_cast<Elem>(index - 1); }

 private:
  std::int64_t digits_index(const FqElement& x) const {
    std::int64_t idx = 0;
    for (int j = k_ - 1; j >= 0; --j) idx = idx * p_ + x.coeffs[j];
    return idx;
  }

  std::int64_t p_;
  int k_;
  std::int64_t q_;
  std::vector<std::int32_t> exp_;
  std::vector<Elem> log_;
  std::vector<Elem> zech_;
  Elem neg_one_ = 0;
};

/// Field embedding F_q -> F_{q^s}: send the power-basis generator to a root of the
/// F_q modulus found by scanning the larger field.
class FieldEmbedding {
 public:
  FieldEmbedding(const FqContext& small, const CountingField& big) : big_(&big), p_(small.p()) {
    const auto& mod = small.modulus();
    for (std::int64_t idx = 0; idx < big.order(); ++idx) {
      const auto r = big.element(idx);
      auto acc = big.zero();
      for (std::size_t j = mod.size(); j-- > 0;) acc = big.add(big.mul(acc, r), big.from_int(mod[j]));
      if (big.is_zero(acc)) {
        root_ = r;
        found_ = true;
        break;
      }
    }
    ensure(found_, "F_q modulus has no root in the extension field");
  }

  CountingField::Elem operator()(const FqElement& c) const {
    auto acc = big_->zero();
    for (std::size_t j = c.coeffs.size(); j-- > 0;) acc = big_->add(big_->mul(acc, root_), big_->from_int(c.coeffs[j]));
    return acc;
  }

 private:
  const CountingField* big_;
  std::int64_t p_;
  CountingField::Elem root_ = CountingField::kZero;
  bool found_ = false;
};

}  // namespace unitroot
