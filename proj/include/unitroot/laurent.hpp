#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

#include "unitroot/arith/fq.hpp"
#include "unitroot/arith/modular.hpp"

namespace unitroot {

/// Sparse Laurent polynomial in N variables with exact rational coefficients,
/// keyed by exponent vector. Zero coefficients are never stored.
class LaurentPoly {
 public:
  using Key = std::vector<int>;
  using Terms = std::map<Key, mpq_class>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}

  static LaurentPoly constant(std::size_t nvars, const mpq_class& c) {
    LaurentPoly r(nvars);
    r.add_term(Key(nvars, 0), c);
    return r;
  }
  static LaurentPoly monomial(const Key& exps, const mpq_class& c) {
    LaurentPoly r(exps.size());
    r.add_term(exps, c);
    return r;
  }

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Key& k, const mpq_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  mpq_class coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? mpq_class(0) : it->second;
  }
  mpq_class constant_term() const { return coefficient(Key(nvars_, 0)); }

  LaurentPoly operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    if (r.nvars_ == 0) r.nvars_ = o.nvars_;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
  }
  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }
  LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }
  LaurentPoly operator*(const LaurentPoly& o) const {
    LaurentPoly r(nvars_ ? nvars_ : o.nvars_);
    for (const auto& [k1, c1] : terms_)
      for (const auto& [k2, c2] : o.terms_) {
        Key k(k1.size());
        for (std::size_t i = 0; i < k.size(); ++i) k[i] = k1[i] + k2[i];
        r.add_term(k, c1 * c2);
      }
    return r;
  }

  bool all_integer() const {
    for (const auto& [k, c] : terms_)
      if (c.get_den() != 1) return false;
    return true;
  }

  /// Value at a point of F_q^N; coefficients must be p-integral and variables with
  /// negative exponents nonzero.
  FqElement evaluate(const FqContext& field, const std::vector<FqElement>& point) const {
    const Residue p = field.p();
    FqElement acc = field.zero();
    for (const auto& [k, c] : terms_) {
      mpz_class num = c.get_num() % p, den = c.get_den() % p;
      if (den == 0) throw Error(ErrorKind::Validation, "coefficient not p-integral");
      Residue cr = mul_mod(mod_reduce(num.get_si(), p), inv_mod(den.get_si(), p), p);
      FqElement term = field.from_int(cr);
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] > 0) term = field.mul(term, field.pow(point[i], static_cast<std::uint64_t>(k[i])));
        if (k[i] < 0) term = field.mul(term, field.pow(field.inv(point[i]), static_cast<std::uint64_t>(-k[i])));
      }
      acc = field.add(acc, term);
    }
    return acc;
  }

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Determinant by cofactor expansion along the first row (small sizes only).
inline LaurentPoly laurent_determinant(const std::vector<std::vector<LaurentPoly>>& m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return LaurentPoly::constant(nvars, 1);
  if (n == 1) return m[0][0];
  LaurentPoly acc(nvars);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<LaurentPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<LaurentPoly> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    LaurentPoly term = m[0][c] * laurent_determinant(minor, nvars);
    acc = (c % 2) ? acc - term : acc + term;
  }
  return acc;
}

}  // namespace unitroot
