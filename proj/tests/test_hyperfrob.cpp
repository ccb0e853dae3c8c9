#include <gmpxx.h>
#include <gtest/gtest.h>

#include <random>

#include "regression_instances.hpp"
#include "unitroot/hyperfrob.hpp"
#include "unitroot/zeta/zeta.hpp"

using namespace unitroot;
using regression::hesse;

namespace {

ResiduePoly prime_coeffs(const ZqPolynomial& f) {
  ResiduePoly out;
  for (const auto& c : f.coeffs) {
    for (std::size_t j = 1; j < c.coeffs.size(); ++j) EXPECT_EQ(c.coeffs[j], 0);
    out.push_back(c.coeffs[0]);
  }
  return out;
}

std::vector<ProblemInstance> regression_set() {
  return {hesse(5, 1, 2), hesse(5, 2, 2), hesse(5, 1, 3), hesse(3, 1, 1), hesse(2, 1, 1), regression::ordinary_quartic()};
}

}  // namespace

TEST(Series, ZeroCapIsIdentity) {
  std::mt19937_64 rng(2);
  for (auto [p, n, d] : std::vector<std::tuple<std::int64_t, int, int>>{{5, 2, 3}, {3, 2, 4}, {2, 2, 4}}) {
    const auto inst = random_instance(p, 1, n, d, 2, rng);
    const auto ctx = padic_context(inst, 2);
    const auto s = setup(inst);
    const SeriesSupport support(s.basis, 0);
    const auto F = eval_F(s.basis, support, teichmueller_point(inst.coefficients, ctx), 0, ctx);
    EXPECT_TRUE(matrices_equal(ctx, F.value, identity(ctx, s.basis.M)));
  }
}

TEST(Series, HesseWeightThreeTerm) {
  const auto b = enumerate_basis(2, 3);
  const SeriesSupport support(b, 3);
  std::vector<std::int64_t> l(b.N, 0);
  l[0] = -3;
  for (const Exponent& e : {Exponent{3, 0, 0}, Exponent{0, 3, 0}, Exponent{0, 0, 3}}) l[b.index_of(e)] = 1;
  const FactorialTable fact(5, 625, 10);
  bool found = false;
  for (const auto& t : support.at(0, 0))
    if (t.exponent == l) {
      found = true;
      EXPECT_EQ(t.degree, 3);
      EXPECT_EQ(series_coefficient(t, 0, 0, fact, 625), 625 - 6);
    }
  EXPECT_TRUE(found);
}

TEST(Series, CoefficientsAreIntegers) {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {1, 3}}) {
    const auto b = enumerate_basis(n, d);
    const SeriesSupport support(b, 8);
    const std::int64_t p = 3;
    const Residue mod = 729;
    const FactorialTable fact(p, mod, 16);
    for (std::size_t i = 0; i < b.M; ++i)
      for (std::size_t j = 0; j < b.M; ++j)
        for (const auto& t : support.at(i, j)) {
          mpz_class num, den = 1;
          mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(t.degree));
          for (std::size_t k = 0; k < b.N; ++k) {
            if (k == i) continue;
            const auto part = (k == j && i != j) ? t.exponent[k] - 1 : t.exponent[k];
            ASSERT_GE(part, 0);
            mpz_class f;
            mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(part));
            den *= f;
          }
          ASSERT_TRUE(mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()));
          mpz_class c = num / den;
          if (t.degree % 2) c = -c;
          c %= mod;
          if (c < 0) c += mod;
          EXPECT_EQ(series_coefficient(t, i, j, fact, mod), c.get_si());
        }
  }
}

TEST(Frobenius, PrecisionOneMatchesHasseWitt) {
  std::mt19937_64 rng(101);
  struct Case {
    std::int64_t p;
    int a, n, d;
  };
  int checked = 0;
  for (const auto& c : std::vector<Case>{{2, 1, 2, 3}, {3, 1, 2, 3}, {5, 1, 2, 3}, {2, 2, 2, 3}, {3, 2, 2, 3},
                                         {2, 1, 2, 4}, {3, 1, 2, 4}, {2, 2, 2, 4}}) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto inst = random_instance(c.p, c.a, c.n, c.d, 1, rng);
      if (!ordinarity_check(inst).ordinary) continue;
      const auto ctx = padic_context(inst, 1);
      auto cp = prime_coeffs(unit_root_charpoly(inst, ctx));
      auto hw = hw_frobenius_charpoly(inst);
      EXPECT_EQ(cp, hw.h_form) << "p=" << c.p << " a=" << c.a << " d=" << c.d;
      ASSERT_TRUE(hw.b_form.has_value());
      EXPECT_EQ(cp, *hw.b_form);
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(Frobenius, HesseScalarModP) {
  const auto inst = hesse(5, 1, 2, 1);
  const auto ctx = padic_context(inst, 1);
  const auto F = HyperFrobenius(inst, ctx).frobenius_matrix();
  EXPECT_EQ(ctx.truncate(F.value(0, 0), 1).coeffs[0], 4);
}

TEST(Frobenius, PrecisionCoherence) {
  for (const auto& inst : regression_set()) {
    if (!ordinarity_check(inst).ordinary) continue;
    const auto hi = padic_context(inst, 2);
    const auto lo = padic_context(inst, 1);
    const auto r2 = unit_root_charpoly(inst, hi);
    const auto r1 = unit_root_charpoly(inst, lo);
    EXPECT_EQ(prime_coeffs(truncate(r2, hi, 1)), prime_coeffs(truncate(r1, lo, 1))) << "p=" << inst.p;
  }
}

TEST(Frobenius, TruncationStability) {
  for (const auto& inst : regression_set()) {
    if (!ordinarity_check(inst).ordinary) continue;
    const auto ctx = padic_context(inst, 2);
    const std::int64_t W = inst.p * inst.p - 1;
    const auto base = unit_root_charpoly(inst, ctx, W);
    const auto wider = unit_root_charpoly(inst, ctx, W + inst.p);
    EXPECT_TRUE(equal_mod(base, wider, ctx, 2)) << "p=" << inst.p << " a=" << inst.a;
  }
}

TEST(Frobenius, Gates) {
  const auto ss = hesse(5, 1, 1);
  try {
    unit_root_charpoly(ss, padic_context(ss, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonOrdinary);
  }
  const auto zero = hesse(5, 1, 0);
  try {
    HyperFrobenius(zero, padic_context(zero, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroUnitCoefficient);
  }
  EXPECT_THROW(Truncation::from_cap(5, 23, 2), Error);  // below p^m - 1
  EXPECT_THROW(Truncation::from_cap(5, 25, 2), Error);  // p does not divide W+1
  const auto t = Truncation::from_cap(5, 29, 2);
  EXPECT_EQ(t.denominator, 5);
}

TEST(Frobenius, AgreesWithOracleOnRandomOrdinaryInstances) {
  struct Case {
    std::int64_t p;
    int a, d, trials;
  };
  std::mt19937_64 rng(4242);
  int checked = 0;
  for (const auto& c : std::vector<Case>{{2, 1, 3, 10}, {3, 1, 3, 10}, {5, 1, 3, 10}, {2, 2, 3, 6},
                                         {3, 2, 3, 4}, {2, 1, 4, 6}, {3, 1, 4, 4}, {2, 2, 4, 3}}) {
    for (int trial = 0; trial < c.trials; ++trial) {
      const auto inst = random_instance(c.p, c.a, 2, c.d, 2, rng);
      if (!ordinarity_check(inst).ordinary) continue;
      const auto ctx = padic_context(inst, 2);
      const auto oracle = compute_zeta(inst, ctx);
      const auto theorem = unit_root_charpoly(inst, ctx);
      EXPECT_TRUE(equal_mod(oracle.unit.rho, theorem, ctx, 2))
          << "p=" << c.p << " a=" << c.a << " d=" << c.d << " smoothness=" << to_string(oracle.smoothness.verdict);
      ++checked;
    }
  }
  EXPECT_GT(checked, 25);
}
