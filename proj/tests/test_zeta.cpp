#include <gtest/gtest.h>

#include <map>
#include <random>

#include "regression_instances.hpp"
#include "unitroot/zeta/zeta.hpp"

using namespace unitroot;
using regression::hesse;

namespace {

// Affine cone count over F_q with FqContext arithmetic: #{x in F_q^{n+1} : f(x) = 0}.
std::int64_t brute_affine(const ProblemInstance& inst) {
  const auto s = setup(inst);
  const auto& F = s.field;
  const int vars = inst.n + 1;
  std::vector<std::int64_t> idx(vars, 0);
  std::int64_t total = 0;
  while (true) {
    std::vector<FqElement> x;
    for (auto i : idx) x.push_back(F.element(i));
    auto v = F.zero();
    for (std::size_t k = 0; k < s.basis.N; ++k) {
      auto term = inst.coefficients[k];
      for (int t = 0; t < vars && !F.is_zero(term); ++t)
        term = F.mul(term, F.pow(x[t], static_cast<std::uint64_t>(s.basis.exponents[k][t])));
      v = F.add(v, term);
    }
    total += F.is_zero(v) ? 1 : 0;
    int t = 0;
    while (t < vars && ++idx[t] == F.order()) idx[t++] = 0;
    if (t == vars) break;
  }
  return total;
}

// Same polynomial over F_{p^s}; coefficients must lie in F_p.
ProblemInstance over_extension(const ProblemInstance& inst, int s) {
  std::vector<std::int64_t> l;
  for (const auto& c : inst.coefficients) l.push_back(c.coeffs[0]);
  return make_instance(inst.p, s, inst.n, inst.d, inst.m, l);
}

// N_aff mod p from f^{p-1} (prime field): -sum over x of f(x)^{p-1}, using
// sum_{x in F_p} x^e = -1 when e > 0 and (p-1) | e, else 0.
Residue chevalley_warning_mod_p(const ProblemInstance& inst) {
  const auto s = setup(inst);
  const std::int64_t p = inst.p;
  std::map<Exponent, Residue> power{{Exponent(inst.n + 1, 0), 1}};
  for (std::int64_t r = 0; r < p - 1; ++r) {
    std::map<Exponent, Residue> next;
    for (const auto& [e1, c1] : power)
      for (std::size_t k = 0; k < s.basis.N; ++k) {
        const Residue c2 = inst.coefficients[k].coeffs[0];
        if (!c2) continue;
        Exponent e(e1.size());
        for (std::size_t t = 0; t < e.size(); ++t) e[t] = e1[t] + s.basis.exponents[k][t];
        next[e] = mod_reduce(next[e] + c1 * c2, p);
      }
    power = std::move(next);
  }
  Residue sum = 0;
  for (const auto& [e, c] : power) {
    bool ok = true;
    for (int v : e) ok = ok && v > 0 && v % (p - 1) == 0;
    if (ok) sum = mod_reduce(sum + ((inst.n + 1) % 2 ? -c : c), p);
  }
  return mod_reduce(-sum, p);
}

ProblemInstance x0_cubed(std::int64_t p) {
  const auto b = enumerate_basis(2, 3);
  std::vector<std::int64_t> l(b.N, 0);
  l[b.index_of({3, 0, 0})] = 1;
  return make_instance(p, 1, 2, 3, 2, l);
}

std::vector<long> as_longs(const IntegerPoly& f) {
  std::vector<long> out;
  for (const auto& c : f) out.push_back(c.get_si());
  return out;
}

}  // namespace

TEST(Counting, Examples) {
  EXPECT_EQ(count_points(x0_cubed(5), 1), 6);
  EXPECT_EQ(count_points(hesse(5, 1, 2), 1), 7);
  EXPECT_EQ(count_points(hesse(5, 1, 1), 1), 6);
}

TEST(Counting, MatchesBruteForceAndHomogeneity) {
  std::mt19937_64 rng(77);
  struct Case {
    std::int64_t p;
    int n, d, s;
  };
  for (const auto& c : std::vector<Case>{{2, 2, 3, 1}, {2, 2, 3, 3}, {3, 2, 3, 2}, {5, 2, 3, 1}, {3, 2, 4, 1},
                                         {2, 2, 4, 2}, {3, 1, 3, 2}, {2, 3, 4, 1}, {3, 3, 4, 1}}) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto inst = random_instance(c.p, 1, c.n, c.d, 2, rng);
      const auto N = count_points(inst, c.s);
      const auto ext = over_extension(inst, c.s);
      const auto q = checked_pow(c.p, static_cast<unsigned>(c.s));
      EXPECT_EQ(brute_affine(ext), 1 + (q - 1) * N) << "p=" << c.p << " n=" << c.n << " d=" << c.d << " s=" << c.s;
      EXPECT_EQ(count_points(ext, 1), N);
      if (c.s == 1) {
        EXPECT_EQ(mod_reduce(1 + (q - 1) * N, c.p), chevalley_warning_mod_p(inst));
      }
    }
  }
}

TEST(Counting, BudgetGuard) {
  try {
    count_points(hesse(5, 1, 2), 12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EnumerationBudgetExceeded);
  }
}

TEST(Smoothness, Probe) {
  EXPECT_EQ(smoothness_probe(x0_cubed(5), 2).verdict, Smoothness::singular);
  EXPECT_EQ(smoothness_probe(hesse(5, 1, 2), 2).verdict, Smoothness::singular);   // 2^3 = -27 mod 5
  EXPECT_EQ(smoothness_probe(hesse(2, 1, 1), 2).verdict, Smoothness::singular);   // (1:1:1)
  EXPECT_EQ(smoothness_probe(hesse(5, 1, 3), 2).verdict, Smoothness::likely_smooth);
  EXPECT_EQ(smoothness_probe(hesse(5, 1, 3), 1).verdict, Smoothness::inconclusive);
}

TEST(ZetaNumerator, SmoothCurves) {
  const auto c3 = fit_zeta(hesse(5, 1, 3));
  EXPECT_EQ(c3.numerator.method, "functional-equation");
  EXPECT_EQ(as_longs(c3.numerator.Q), (std::vector<long>{1, -3, 5}));
  const auto c1 = fit_zeta(hesse(5, 1, 1));
  EXPECT_EQ(as_longs(c1.numerator.Q), (std::vector<long>{1, 0, 5}));
}

TEST(ZetaNumerator, SingularHesseIsATriangle) {
  // one F_5-line plus two conjugate lines: N_s = q^s + 2 (s odd), 3 q^s (s even)
  const auto z = fit_zeta(hesse(5, 1, 2));
  for (std::size_t s = 1; s <= z.counts.size(); ++s) {
    const auto qs = checked_pow(5, static_cast<unsigned>(s));
    EXPECT_EQ(z.counts[s - 1], s % 2 ? qs + 2 : 3 * qs);
  }
  EXPECT_EQ(z.numerator.method, "pade");
  EXPECT_EQ(as_longs(z.numerator.Q), (std::vector<long>{1, 1}));
  EXPECT_EQ(as_longs(z.numerator.R), (std::vector<long>{1, 0, -25}));

  const auto z2 = fit_zeta(hesse(5, 2, 2));
  EXPECT_EQ(z2.source, "prime-field base change");
  EXPECT_GE(z2.direct_counts, 3);
  EXPECT_EQ(as_longs(z2.numerator.Q), (std::vector<long>{1, -1}));
  EXPECT_EQ(as_longs(z2.numerator.R), (std::vector<long>{1, -50, 625}));
}

TEST(ZetaNumerator, RationalFitReproducesCounts) {
  std::mt19937_64 rng(5);
  for (std::int64_t p : {2, 3}) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto inst = random_instance(p, 1, 2, 3, 2, rng);
      const auto z = fit_zeta(inst);
      const auto again = counts_from_rational(p, 2, z.numerator.Q, z.numerator.R, z.counts.size());
      EXPECT_EQ(again, z.counts);
    }
  }
}

TEST(ZetaNumerator, ErrorsOnInconsistentCounts) {
  // N_1 = 7 then a count incompatible with an elliptic curve over F_5
  EXPECT_THROW(numerator_functional_equation(5, 2, 3, {7, 1000}), Error);
}

TEST(UnitFactor, Examples) {
  const auto ctx = padic_context(hesse(5, 1, 2), 2);
  const auto a = unit_factor_of_numerator({1, 1, 5}, ctx);
  EXPECT_EQ(a.degree, 1);
  EXPECT_EQ(ctx.truncate(a.rho.coeffs[1], 2).coeffs[0], 21);
  EXPECT_EQ(unit_factor_of_numerator({1, 0, 5}, ctx).degree, 0);
  EXPECT_EQ(unit_factor_of_zeta(hesse(5, 1, 1), ctx).degree, 0);
}

TEST(UnitFactor, UnitDegreeLawAndReductionModP) {
  std::mt19937_64 rng(909);
  struct Case {
    std::int64_t p;
    int d, trials;
  };
  for (const auto& c : std::vector<Case>{{2, 3, 8}, {3, 3, 8}, {5, 3, 8}, {2, 4, 4}, {3, 4, 3}}) {
    for (int trial = 0; trial < c.trials; ++trial) {
      const auto inst = random_instance(c.p, 1, 2, c.d, 2, rng);
      const auto ctx = padic_context(inst, 2);
      const auto z = compute_zeta(inst, ctx);
      const auto M = static_cast<int>(enumerate_basis(2, c.d).M);
      const bool ordinary = ordinarity_check(inst).ordinary;
      EXPECT_EQ(z.unit_degree == M, ordinary) << "p=" << c.p << " d=" << c.d;
      EXPECT_LE(z.unit_degree, M);
      // Q mod p, trailing zeros dropped, is the Hasse-Witt characteristic polynomial
      auto red = reduce_integer_poly(z.numerator.Q, c.p);
      while (red.size() > 1 && red.back() == 0) red.pop_back();
      EXPECT_EQ(red, hw_frobenius_charpoly(inst).h_form) << "p=" << c.p << " d=" << c.d;
      // R = 1 mod p
      for (std::size_t i = 1; i < z.numerator.R.size(); ++i) EXPECT_EQ(z.numerator.R[i] % c.p, 0);
    }
  }
}
