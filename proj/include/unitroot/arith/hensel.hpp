#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "unitroot/arith/fq.hpp"
#include "unitroot/arith/modular.hpp"
#include "unitroot/arith/zq.hpp"

namespace unitroot {

namespace detail {

inline ResiduePoly poly_add(const ResiduePoly& f, const ResiduePoly& g, Residue m) {
  ResiduePoly r(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = add_mod(r[i], g[i], m);
  fp_poly::trim(r);
  return r;
}

inline ResiduePoly poly_sub(const ResiduePoly& f, const ResiduePoly& g, Residue m) {
  ResiduePoly r(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = sub_mod(r[i], g[i], m);
  fp_poly::trim(r);
  return r;
}

inline ResiduePoly poly_mul(const ResiduePoly& f, const ResiduePoly& g, Residue m) {
  if (f.empty() || g.empty()) return {};
  ResiduePoly r(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] = add_mod(r[i + j], mul_mod(f[i], g[j], m), m);
  fp_poly::trim(r);
  return r;
}

inline ResiduePoly poly_reduce(ResiduePoly f, Residue m) {
  for (auto& c : f) c = mod_reduce(c, m);
  fp_poly::trim(f);
  return f;
}

/// Division with remainder by a polynomial whose leading coefficient is a unit mod m.
inline std::pair<ResiduePoly, ResiduePoly> poly_divmod(ResiduePoly f, const ResiduePoly& g, Residue m) {
  fp_poly::trim(f);
  ensure(!g.empty(), "polynomial division by zero");
  const std::size_t dg = g.size() - 1;
  if (f.size() <= dg) return {{}, f};
  const Residue lead_inv = inv_mod(g.back(), m);
  ResiduePoly q(f.size() - dg, 0);
  for (std::size_t i = f.size(); i-- > dg;) {
    const Residue c = mul_mod(f[i], lead_inv, m);
    q[i - dg] = c;
    if (!c) continue;
    for (std::size_t j = 0; j <= dg; ++j) f[i - dg + j] = sub_mod(f[i - dg + j], mul_mod(c, g[j], m), m);
  }
  f.resize(dg);
  fp_poly::trim(f);
  fp_poly::trim(q);
  return {q, f};
}

/// s, t with s f + t g = 1 over F_p, for coprime f, g.
inline std::pair<ResiduePoly, ResiduePoly> bezout_fp(const ResiduePoly& f, const ResiduePoly& g, Residue p) {
  ResiduePoly r0 = poly_reduce(f, p), r1 = poly_reduce(g, p);
  ResiduePoly s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1, p);
    r0 = std::move(r1);
    r1 = std::move(r);
    auto s2 = poly_sub(s0, poly_mul(q, s1, p), p);
    auto t2 = poly_sub(t0, poly_mul(q, t1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  ensure(r0.size() == 1, "Hensel split factors are not coprime mod p");
  const Residue c = inv_mod(r0[0], p);
  for (auto& x : s0) x = mul_mod(x, c, p);
  for (auto& x : t0) x = mul_mod(x, c, p);
  return {s0, t0};
}

}  // namespace detail

struct UnitFactor {
  ZqPolynomial rho;  // constant term 1, reduced mod p^m
  int degree = 0;
  ResiduePoly rho_integer;  // same factor as residues mod p^(m+g)
};

/// Unit-root factor of an integer polynomial P with P(0) = 1.
///
/// The reversed polynomial x^D P(1/x) is monic; mod p it splits as x^e * h with
/// h(0) != 0, where deg h counts the reciprocal roots of P that are p-adic units.
/// That coprime split is lifted quadratically; reversing the lifted h gives rho.
/// `coeffs` are the exact coefficients already reduced mod p^(m+g).
inline UnitFactor hensel_unit_factor(ResiduePoly coeffs, const PadicContext& ctx) {
  const Residue p = ctx.p();
  const Residue big = ctx.modulus();
  coeffs = detail::poly_reduce(std::move(coeffs), big);
  if (coeffs.empty() || coeffs[0] != 1) throw Error(ErrorKind::Validation, "Hensel input must have constant term 1");

  UnitFactor out;
  const std::size_t deg = coeffs.size() - 1;
  std::size_t unit_deg = 0;
  for (std::size_t i = 0; i <= deg; ++i)
    if (coeffs[i] % p) unit_deg = i;
  out.degree = static_cast<int>(unit_deg);

  ResiduePoly h_full;
  if (unit_deg == 0) {
    h_full = {1};
  } else if (unit_deg == deg) {
    h_full.assign(coeffs.rbegin(), coeffs.rend());
  } else {
    ResiduePoly f(coeffs.rbegin(), coeffs.rend());  // monic, degree deg
    const std::size_t e = deg - unit_deg;
    ResiduePoly g(e + 1, 0);
    g[e] = 1;
    ResiduePoly h(f.begin() + static_cast<std::ptrdiff_t>(e), f.end());
    h = detail::poly_reduce(h, p);
    auto [s, t] = detail::bezout_fp(g, h, p);
    Residue mod = p;
    while (mod < big) {
      const Residue next = (mod > big / mod) ? big : std::min(big, mod * mod);
      using namespace detail;
      const auto err = poly_sub(poly_reduce(f, next), poly_mul(g, h, next), next);
      auto [qq, rr] = poly_divmod(poly_mul(s, err, next), h, next);
      const auto g2 = poly_add(poly_add(g, poly_mul(t, err, next), next), poly_mul(qq, g, next), next);
      const auto h2 = poly_add(h, rr, next);
      const auto b = poly_sub(poly_add(poly_mul(s, g2, next), poly_mul(t, h2, next), next), ResiduePoly{1}, next);
      auto [c, d] = poly_divmod(poly_mul(s, b, next), h2, next);
      s = poly_sub(s, d, next);
      t = poly_sub(poly_sub(t, poly_mul(t, b, next), next), poly_mul(c, g2, next), next);
      g = g2;
      h = h2;
      mod = next;
    }
    ensure(h.size() == unit_deg + 1 && h.back() == 1, "lifted unit factor lost monicity");
    ensure(detail::poly_sub(detail::poly_mul(g, h, big), f, big).empty(), "Hensel factorization check failed");
    h_full = std::move(h);
  }
  out.rho_integer.assign(h_full.rbegin(), h_full.rend());
  ZqPolynomial rho = embed_integer_poly(out.rho_integer, ctx);
  out.rho = truncate(rho, ctx, ctx.precision());
  return out;
}

}  // namespace unitroot
