#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unitroot/arith/fq.hpp"
#include "unitroot/arith/matrix.hpp"
#include "unitroot/combinat.hpp"
#include "unitroot/instance.hpp"
#include "unitroot/laurent.hpp"

namespace unitroot {

/// multinomial: (p-1)!/prod nu_k!, i.e. coefficients of f^{p-1} (integral; constant
/// term of D is 1). literal: 1/prod nu_k!, which differs by the unit (p-1)! = -1 mod p.
enum class Normalization { multinomial, literal };

inline const char* to_string(Normalization n) { return n == Normalization::multinomial ? "multinomial" : "literal"; }

inline Normalization parse_normalization(const std::string& s) {
  if (s == "multinomial") return Normalization::multinomial;
  if (s == "literal") return Normalization::literal;
  throw Error(ErrorKind::Validation, "normalization must be 'multinomial' or 'literal'");
}

/// For each (i, j) in U x U, the exponents nu in N^N with sum_k nu_k a_k = p a_i - a_j.
struct HasseWittSupport {
  std::size_t M = 0;
  std::vector<std::vector<std::vector<std::int64_t>>> nus;  // [i*M + j] -> list of nu

  const std::vector<std::vector<std::int64_t>>& at(std::size_t i, std::size_t j) const { return nus[i * M + j]; }
};

inline HasseWittSupport hasse_witt_support(const MonomialBasis& basis, std::int64_t p) {
  HasseWittSupport s;
  s.M = basis.M;
  s.nus.resize(basis.M * basis.M);
  for (std::size_t i = 0; i < basis.M; ++i)
    for (std::size_t j = 0; j < basis.M; ++j) {
      // nu = l + p e_i with l in L_{i, -a_j}; nu_i >= 0 caps the weight at p.
      for (auto& lv : solve_lattice(basis, i, negated_augmented(basis, j), p)) {
        auto nu = lv.l;
        nu[i] += p;
        std::int64_t total = 0;
        for (auto v : nu) {
          ensure(v >= 0, "Hasse-Witt support has a negative exponent");
          total += v;
        }
        ensure(total == p - 1, "Hasse-Witt support violates sum nu_k = p-1");
        s.nus[i * basis.M + j].push_back(std::move(nu));
      }
    }
  return s;
}

inline mpz_class factorial(std::int64_t n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

/// Exact rational coefficient attached to nu.
inline mpq_class hw_coefficient(const std::vector<std::int64_t>& nu, std::int64_t p, Normalization norm) {
  mpz_class den = 1;
  for (auto v : nu) den *= factorial(v);
  mpq_class c(norm == Normalization::multinomial ? factorial(p - 1) : mpz_class(1), den);
  c.canonicalize();
  return c;
}

struct HasseWittMatrix {
  Matrix<FqElement> entries;
  Normalization normalization = Normalization::multinomial;
};

/// Hbar(lambda) over F_q.
inline HasseWittMatrix hasse_witt(const FqContext& field, const MonomialBasis& basis, const HasseWittSupport& support,
                                  const std::vector<FqElement>& lambda,
                                  Normalization norm = Normalization::multinomial) {
  const std::int64_t p = field.p();
  HasseWittMatrix h{Matrix<FqElement>(basis.M, basis.M, field.zero()), norm};
  for (std::size_t i = 0; i < basis.M; ++i)
    for (std::size_t j = 0; j < basis.M; ++j) {
      FqElement acc = field.zero();
      for (const auto& nu : support.at(i, j)) {
        const mpq_class c = hw_coefficient(nu, p, norm);
        const mpz_class num = mpz_class(c.get_num() % p), den = mpz_class(c.get_den() % p);
        const Residue cr = mul_mod(mod_reduce(num.get_si(), p), inv_mod(den.get_si(), p), p);
        if (!cr) continue;
        FqElement term = field.from_int(cr);
        for (std::size_t k = 0; k < nu.size(); ++k)
          if (nu[k]) term = field.mul(term, field.pow(lambda[k], static_cast<std::uint64_t>(nu[k])));
        acc = field.add(acc, term);
      }
      h.entries(i, j) = acc;
    }
  return h;
}

inline HasseWittMatrix hasse_witt(const ProblemInstance& inst, Normalization norm = Normalization::multinomial) {
  const auto s = setup(inst);
  return hasse_witt(s.field, s.basis, hasse_witt_support(s.basis, inst.p), inst.coefficients, norm);
}

/// Componentwise lambda^(p^e).
inline std::vector<FqElement> frobenius_twist(const FqContext& field, const std::vector<FqElement>& lambda, int e) {
  std::vector<FqElement> out;
  const auto pe = static_cast<std::uint64_t>(checked_pow(field.p(), static_cast<unsigned>(e)));
  for (const auto& c : lambda) out.push_back(field.pow(c, pe));
  return out;
}

/// Bbar(lambda) = C(lambda^p)^{-1} Hbar(lambda) C(lambda), C = diag(lambda_1..lambda_M).
inline Matrix<FqElement> b_form(const FqContext& field, const MonomialBasis& basis, const Matrix<FqElement>& h,
                                const std::vector<FqElement>& lambda) {
  Matrix<FqElement> b = h;
  for (std::size_t i = 0; i < basis.M; ++i) {
    const FqElement scale_row = field.inv(field.pow(lambda[i], static_cast<std::uint64_t>(field.p())));
    for (std::size_t j = 0; j < basis.M; ++j) b(i, j) = field.mul(field.mul(scale_row, h(i, j)), lambda[j]);
  }
  return b;
}

struct FrobeniusCharpoly {
  ResiduePoly h_form;  // det(I - t Hbar(lambda^{p^{a-1}}) ... Hbar(lambda)) over F_p
  std::optional<ResiduePoly> b_form;  // same with Bbar, when lambda_k != 0 for k <= M
  Matrix<FqElement> product;
};

inline ResiduePoly prime_field_charpoly(const FqContext& field, const Matrix<FqElement>& a) {
  ResiduePoly out;
  for (const auto& c : reversed_charpoly(field, a)) {
    ensure(field.in_prime_field(c), "characteristic polynomial has coefficients outside F_p");
    out.push_back(c.coeffs[0]);
  }
  return out;
}

inline FrobeniusCharpoly hw_frobenius_charpoly(const ProblemInstance& inst,
                                               Normalization norm = Normalization::multinomial) {
  const auto s = setup(inst);
  const auto support = hasse_witt_support(s.basis, inst.p);
  const auto& field = s.field;
  const std::size_t M = s.basis.M;

  bool units = true;
  for (std::size_t k = 0; k < M; ++k) units = units && field.is_unit(inst.coefficients[k]);

  auto h_prod = identity(field, M);
  std::optional<Matrix<FqElement>> b_prod;
  if (units) b_prod = identity(field, M);
  for (int e = 0; e < inst.a; ++e) {
    const auto tw = frobenius_twist(field, inst.coefficients, e);
    const auto h = hasse_witt(field, s.basis, support, tw, norm).entries;
    h_prod = multiply(field, h, h_prod);
    if (b_prod) b_prod = multiply(field, b_form(field, s.basis, h, tw), *b_prod);
  }
  FrobeniusCharpoly out{prime_field_charpoly(field, h_prod), std::nullopt, h_prod};
  if (b_prod) {
    out.b_form = prime_field_charpoly(field, *b_prod);
    ensure(*out.b_form == out.h_form, "H-form and B-form Frobenius characteristic polynomials differ");
  }
  while (out.h_form.size() > 1 && out.h_form.back() == 0) out.h_form.pop_back();
  if (out.b_form)
    while (out.b_form->size() > 1 && out.b_form->back() == 0) out.b_form->pop_back();
  return out;
}

struct OrdinarityResult {
  bool ordinary = false;
  FqElement determinant;
};

/// Dbar(lambda) != 0, tested as det Hbar(lambda) != 0 (they differ by a product of
/// powers of the interior coefficients).
inline OrdinarityResult ordinarity_check(const ProblemInstance& inst) {
  const auto s = setup(inst);
  require_unit_interior(inst, s);
  const auto h = hasse_witt(s.field, s.basis, hasse_witt_support(s.basis, inst.p), inst.coefficients).entries;
  const auto det = determinant(s.field, h);
  return OrdinarityResult{s.field.is_unit(det), det};
}

struct SymbolicBD {
  std::vector<std::vector<LaurentPoly>> H;
  std::vector<std::vector<LaurentPoly>> B;
  LaurentPoly D;
  mpq_class constant_term;
};

/// Exact H(Lambda), B(Lambda) = Lambda_i^{-p} Lambda_j H_ij(Lambda) and D = det B.
inline SymbolicBD symbolic_BD(const MonomialBasis& basis, std::int64_t p,
                              Normalization norm = Normalization::multinomial) {
  if (basis.N > 15 || p > 5) throw Error(ErrorKind::SizeGuardExceeded, "symbolic mode limited to N <= 15, p <= 5");
  if (!is_prime(p)) throw Error(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
  const auto support = hasse_witt_support(basis, p);
  const std::size_t M = basis.M, N = basis.N;
  SymbolicBD out;
  out.H.assign(M, std::vector<LaurentPoly>(M, LaurentPoly(N)));
  out.B.assign(M, std::vector<LaurentPoly>(M, LaurentPoly(N)));
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < M; ++j)
      for (const auto& nu : support.at(i, j)) {
        LaurentPoly::Key k(nu.begin(), nu.end());
        const mpq_class c = hw_coefficient(nu, p, norm);
        out.H[i][j].add_term(k, c);
        k[i] -= static_cast<int>(p);
        k[j] += 1;
        out.B[i][j].add_term(k, c);
      }
  out.D = laurent_determinant(out.B, N);
  out.constant_term = out.D.constant_term();
  return out;
}

}  // namespace unitroot
