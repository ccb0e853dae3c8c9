#pragma once

#include <cstdint>
#include <vector>

#include "unitroot/zeta/counting_field.hpp"

namespace unitroot {

using FieldPoly = std::vector<CountingField::Elem>;

namespace field_poly {

inline void trim(const CountingField& F, FieldPoly& f) {
  while (!f.empty() && F.is_zero(f.back())) f.pop_back();
}

/// f mod g, g nonzero.
inline FieldPoly rem(const CountingField& F, FieldPoly f, const FieldPoly& g) {
  trim(F, f);
  const std::size_t dg = g.size() - 1;
  const auto lead_inv = F.inv(g.back());
  for (std::size_t i = f.size(); i-- > dg;) {
    if (F.is_zero(f[i])) continue;
    const auto c = F.mul(f[i], lead_inv);
    for (std::size_t j = 0; j <= dg; ++j) f[i - dg + j] = F.sub(f[i - dg + j], F.mul(c, g[j]));
  }
  if (f.size() > dg) f.resize(dg);
  trim(F, f);
  return f;
}

inline FieldPoly mulmod(const CountingField& F, const FieldPoly& a, const FieldPoly& b, const FieldPoly& g) {
  if (a.empty() || b.empty()) return {};
  FieldPoly prod(a.size() + b.size() - 1, F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (F.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = F.add(prod[i + j], F.mul(a[i], b[j]));
  }
  return rem(F, std::move(prod), g);
}

inline FieldPoly gcd(const CountingField& F, FieldPoly a, FieldPoly b) {
  trim(F, a);
  trim(F, b);
  while (!b.empty()) {
    FieldPoly r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// z^e mod g.
inline FieldPoly x_power_mod(const CountingField& F, std::uint64_t e, const FieldPoly& g) {
  FieldPoly result = rem(F, FieldPoly{F.one()}, g);
  FieldPoly base = rem(F, FieldPoly{F.zero(), F.one()}, g);
  while (e) {
    if (e & 1) result = mulmod(F, result, base, g);
    e >>= 1;
    if (e) base = mulmod(F, base, base, g);
  }
  return result;
}

/// Number of distinct roots in F of f; the zero polynomial vanishes everywhere.
inline std::int64_t count_roots(const CountingField& F, FieldPoly f) {
  trim(F, f);
  if (f.empty()) return F.order();
  if (f.size() == 1) return 0;
  if (f.size() == 2) return 1;
  // deg gcd(f, z^Q - z)
  FieldPoly h = x_power_mod(F, static_cast<std::uint64_t>(F.order()), f);
  if (h.size() < 2) h.resize(2, F.zero());
  h[1] = F.sub(h[1], F.one());
  trim(F, h);
  const FieldPoly g = gcd(F, f, h);
  return static_cast<std::int64_t>(g.size()) - 1;
}

}  // namespace field_poly

}  // namespace unitroot
