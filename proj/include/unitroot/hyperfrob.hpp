#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unitroot/arith/matrix.hpp"
#include "unitroot/arith/modular.hpp"
#include "unitroot/arith/zq.hpp"
#include "unitroot/combinat.hpp"
#include "unitroot/hassewitt.hpp"
#include "unitroot/instance.hpp"

namespace unitroot {

/// One monomial of a series F_ij: Lambda^exponent with integer coefficient
/// (-1)^s s! / prod_{k != i} parts_k!, where s = sum of parts. For the diagonal the
/// parts are l_k; off the diagonal they are l with l_j lowered by one.
struct SeriesTerm {
  std::vector<std::int64_t> exponent;
  std::int64_t weight = 0;  // -l_i
  std::int64_t degree = 0;  // s
};

/// Lattice support of F(Lambda) up to a degree cap, per matrix entry.
class SeriesSupport {
 public:
  SeriesSupport(const MonomialBasis& basis, std::int64_t cap) : M_(basis.M), cap_(cap), terms_(basis.M * basis.M) {
    for (std::size_t i = 0; i < M_; ++i)
      for (std::size_t j = 0; j < M_; ++j) {
        auto& out = terms_[i * M_ + j];
        const bool diag = i == j;
        // F_ij = Lambda_j * (series over L_{i,-a_j}); the diagonal uses L_i itself.
        auto sols = solve_lattice(basis, i, diag ? zero_target(basis) : negated_augmented(basis, j),
                                  diag ? cap : cap + 1);
        for (auto& lv : sols) {
          SeriesTerm t;
          t.exponent = lv.l;
          std::int64_t s = 0;
          for (std::size_t k = 0; k < lv.l.size(); ++k)
            if (k != i) s += lv.l[k];
          t.degree = s;
          if (!diag) t.exponent[j] += 1;
          t.weight = -t.exponent[i];
          out.push_back(std::move(t));
        }
      }
  }

  std::size_t M() const { return M_; }
  std::int64_t cap() const { return cap_; }
  const std::vector<SeriesTerm>& at(std::size_t i, std::size_t j) const { return terms_[i * M_ + j]; }

 private:
  std::size_t M_;
  std::int64_t cap_;
  std::vector<std::vector<SeriesTerm>> terms_;
};

/// Integer coefficient of a term reduced mod p^(m+g).
inline Residue series_coefficient(const SeriesTerm& t, std::size_t i, std::size_t j, const FactorialTable& fact,
                                  Residue modulus) {
  std::vector<std::int64_t> parts;
  parts.reserve(t.exponent.size());
  for (std::size_t k = 0; k < t.exponent.size(); ++k) {
    if (k == i) continue;
    parts.push_back(k == j && i != j ? t.exponent[k] - 1 : t.exponent[k]);
  }
  Residue c = fact.multinomial(t.degree, parts);
  return (t.degree % 2) ? mod_reduce(-c, modulus) : c;
}

struct TruncatedSeriesMatrix {
  ZqMatrix value;
  std::int64_t cap = 0;  // degree cap s <= cap
  int twist = 0;         // evaluation point lambda-hat^{p^twist}
};

/// F(lambda-hat) truncated to degree s <= cap, entries mod p^(m+g).
inline TruncatedSeriesMatrix eval_F(const MonomialBasis& basis, const SeriesSupport& support,
                                    const std::vector<ZqElement>& point, std::int64_t cap, const PadicContext& ctx,
                                    int twist = 0) {
  ensure(cap <= support.cap(), "series support computed for a smaller cap");
  const std::size_t M = basis.M, N = basis.N;
  for (std::size_t k = 0; k < M; ++k)
    if (!ctx.is_unit(point[k]))
      throw Error(ErrorKind::NonUnitPivotCoordinate, "interior coordinate " + basis.monomial_name(k) + " is not a unit");

  const std::int64_t maxe = std::max<std::int64_t>(cap, 0) + 1;
  std::vector<std::vector<ZqElement>> pw(N);
  for (std::size_t k = 0; k < N; ++k) {
    pw[k].push_back(ctx.one());
    for (std::int64_t e = 1; e <= maxe; ++e) pw[k].push_back(ctx.mul(pw[k].back(), point[k]));
  }
  std::vector<std::vector<ZqElement>> inv_pw(M);
  for (std::size_t i = 0; i < M; ++i) {
    const ZqElement inv = ctx.inv(point[i]);
    inv_pw[i].push_back(ctx.one());
    for (std::int64_t e = 1; e <= maxe; ++e) inv_pw[i].push_back(ctx.mul(inv_pw[i].back(), inv));
  }

  const FactorialTable fact(ctx.p(), ctx.modulus(), maxe);
  TruncatedSeriesMatrix out{ZqMatrix(M, M, ctx.zero()), cap, twist};
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < M; ++j) {
      ZqElement acc = ctx.zero();
      for (const auto& t : support.at(i, j)) {
        if (t.degree > cap) break;  // sorted by weight; degree = weight, or weight - 1 off the diagonal
        const Residue c = series_coefficient(t, i, j, fact, ctx.modulus());
        if (!c) continue;
        ZqElement v = ctx.scale(inv_pw[i][t.weight], c);
        for (std::size_t k = 0; k < N; ++k)
          if (k != i && t.exponent[k]) v = ctx.mul(v, pw[k][t.exponent[k]]);
        acc = ctx.add(acc, v);
      }
      out.value(i, j) = acc;
    }
  return out;
}

/// Degree caps for the two factors of F(lambda^p)^{-1} F(lambda). The cap on F(lambda)
/// is W with p | W+1; the cap on F(lambda^p) is (W+1)/p - 1. Default W = p^m - 1.
struct Truncation {
  std::int64_t numerator = 0;
  std::int64_t denominator = 0;

  static Truncation for_precision(std::int64_t p, int m) {
    return from_cap(p, checked_pow(p, static_cast<unsigned>(m)) - 1, m);
  }
  static Truncation from_cap(std::int64_t p, std::int64_t cap, int m) {
    const std::int64_t minimal = checked_pow(p, static_cast<unsigned>(m)) - 1;
    if (cap < minimal || (cap + 1) % p != 0)
      throw Error(ErrorKind::Validation, "truncation W must satisfy W >= p^m - 1 and p | W+1 (got " +
                                             std::to_string(cap) + ")");
    return Truncation{cap, (cap + 1) / p - 1};
  }
};

struct FrobeniusMatrix {
  ZqMatrix value;
  int precision = 0;
  Truncation truncation;
};

/// Teichmueller lifts of lambda, raised componentwise to p^twist.
inline std::vector<ZqElement> teichmueller_point(const std::vector<FqElement>& lambda, const PadicContext& ctx,
                                                 int twist = 0) {
  std::vector<ZqElement> out;
  const auto pe = static_cast<std::uint64_t>(checked_pow(ctx.p(), static_cast<unsigned>(twist)));
  for (const auto& c : lambda) out.push_back(ctx.pow(ctx.teichmueller(c), pe));
  return out;
}

/// Precomputed state for evaluating the Frobenius matrix of one instance.
class HyperFrobenius {
 public:
  HyperFrobenius(const ProblemInstance& inst, const PadicContext& ctx, std::optional<std::int64_t> cap = std::nullopt)
      : inst_(inst),
        setup_(setup(inst)),
        ctx_(ctx),
        trunc_(cap ? Truncation::from_cap(inst.p, *cap, ctx.precision())
                   : Truncation::for_precision(inst.p, ctx.precision())),
        support_(setup_.basis, trunc_.numerator) {
    require_unit_interior(inst_, setup_);
  }

  const MonomialBasis& basis() const { return setup_.basis; }
  const Truncation& truncation() const { return trunc_; }
  const SeriesSupport& support() const { return support_; }

  /// F(lambda-hat^{p^{e+1}})^{-1} F(lambda-hat^{p^e}).
  FrobeniusMatrix frobenius_matrix(int e = 0) const {
    const auto here = teichmueller_point(inst_.coefficients, ctx_, e);
    const auto there = teichmueller_point(inst_.coefficients, ctx_, e + 1);
    const auto num = eval_F(setup_.basis, support_, here, trunc_.numerator, ctx_, e);
    const auto den = eval_F(setup_.basis, support_, there, trunc_.denominator, ctx_, e + 1);
    ZqMatrix den_inv;
    try {
      den_inv = zq_matrix_inverse(den.value, ctx_);
    } catch (const Error&) {
      throw Error(ErrorKind::NonUnitDeterminant, "truncated F(lambda^p) is not invertible");
    }
    return FrobeniusMatrix{multiply(ctx_, den_inv, num.value), ctx_.precision(), trunc_};
  }

  /// F(lambda^{p^{a-1}}) ... F(lambda), descending twists.
  ZqMatrix frobenius_product() const {
    auto prod = identity(ctx_, setup_.basis.M);
    for (int e = 0; e < inst_.a; ++e) prod = multiply(ctx_, frobenius_matrix(e).value, prod);
    return prod;
  }

  /// det(I - t * product) mod p^m.
  ZqPolynomial unit_root_charpoly() const {
    const auto prod = frobenius_product();
    ensure(ctx_.is_unit(determinant(ctx_, prod)), "Frobenius product has non-unit determinant");
    ZqPolynomial cp{reversed_charpoly(ctx_, prod)};
    return truncate(cp, ctx_, ctx_.precision());
  }

 private:
  ProblemInstance inst_;
  InstanceSetup setup_;
  PadicContext ctx_;
  Truncation trunc_;
  SeriesSupport support_;
};

/// Gate on ordinarity, then det(I - t F(lambda^{p^{a-1}})...F(lambda)) mod p^m.
inline ZqPolynomial unit_root_charpoly(const ProblemInstance& inst, const PadicContext& ctx,
                                       std::optional<std::int64_t> cap = std::nullopt) {
  const auto ord = ordinarity_check(inst);
  if (!ord.ordinary) throw Error(ErrorKind::NonOrdinary, "Hasse-Witt determinant vanishes; instance outside the domain");
  return HyperFrobenius(inst, ctx, cap).unit_root_charpoly();
}

}  // namespace unitroot
