#include <gmpxx.h>
#include <gtest/gtest.h>

#include <random>

#include "unitroot/arith/fq.hpp"
#include "unitroot/arith/hensel.hpp"
#include "unitroot/arith/matrix.hpp"
#include "unitroot/arith/modular.hpp"
#include "unitroot/arith/zq.hpp"

using namespace unitroot;

namespace {

PadicContext prime_ctx(std::int64_t p, int m, int guard = PadicContext::kDefaultGuard) {
  return PadicContext(build_fq(p, 1), m, guard);
}

std::vector<Residue> coeffs_mod(const ZqPolynomial& f, const PadicContext& ctx, int k) {
  std::vector<Residue> out;
  for (const auto& c : truncate(f, ctx, k).coeffs) out.push_back(c.coeffs[0]);
  return out;
}

// det(I - tA) over Q by Faddeev-LeVerrier; oracle for Berkowitz.
std::vector<mpq_class> leverrier_reversed(const std::vector<std::vector<long>>& a) {
  const std::size_t n = a.size();
  using Mat = std::vector<std::vector<mpq_class>>;
  Mat A(n, std::vector<mpq_class>(n)), Mk(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A[i][j] = a[i][j];
  std::vector<mpq_class> c(n + 1, 0);  // char poly x^n + c1 x^{n-1} + ... ; reversed = 1 + c1 t + ...
  c[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Mat next(n, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < n; ++l) next[i][j] += A[i][l] * Mk[l][j];
        if (i == j) next[i][j] += c[k - 1];
      }
    Mk = next;
    mpq_class tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += A[i][l] * Mk[l][i];
    c[k] = -tr / static_cast<long>(k);
  }
  return c;
}

}  // namespace

TEST(Modular, BasicOps) {
  EXPECT_EQ(mod_reduce(-3, 25), 22);
  EXPECT_EQ(inv_mod(7, 25), 18);
  EXPECT_EQ(pow_mod(2, 5, 25), 7);
  EXPECT_THROW(inv_mod(5, 25), Error);
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(49999));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(49));
}

TEST(Modular, MultinomialMatchesExact) {
  for (std::int64_t p : {2, 3, 5, 7}) {
    const Residue mod = checked_pow(p, 4);
    const FactorialTable fact(p, mod, 40);
    std::mt19937_64 rng(11 + p);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::int64_t> parts;
      std::int64_t top = 0;
      const int k = 1 + static_cast<int>(rng() % 5);
      for (int i = 0; i < k; ++i) {
        parts.push_back(static_cast<std::int64_t>(rng() % 9));
        top += parts.back();
      }
      mpz_class exact;
      mpz_fac_ui(exact.get_mpz_t(), static_cast<unsigned long>(top));
      for (auto v : parts) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(v));
        exact /= f;
      }
      exact %= mod;
      EXPECT_EQ(fact.multinomial(top, parts), exact.get_si());
    }
  }
}

TEST(FiniteField, CanonicalModuli) {
  EXPECT_EQ(build_fq(5, 1).modulus().size(), 2u);
  EXPECT_EQ(default_modulus(2, 2), (ResiduePoly{1, 1, 1}));
  EXPECT_NO_THROW(build_fq(5, 2, ResiduePoly{2, 0, 1}));
  try {
    build_fq(5, 2, ResiduePoly{1, 0, 1});  // t^2 + 1 = (t-2)(t+2)
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ReducibleModulus);
  }
  try {
    build_fq(6, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonPrime);
  }
}

TEST(FiniteField, IrreducibilityAgreesWithRootScan) {
  // degree 2 and 3: irreducible iff no root in F_p
  for (std::int64_t p : {2, 3, 5}) {
    for (int deg : {2, 3}) {
      const std::int64_t count = checked_pow(p, static_cast<unsigned>(deg));
      for (std::int64_t idx = 0; idx < count; ++idx) {
        ResiduePoly f(deg + 1, 0);
        f[deg] = 1;
        std::int64_t x = idx;
        for (int j = 0; j < deg; ++j, x /= p) f[j] = x % p;
        bool has_root = false;
        for (Residue r = 0; r < p && !has_root; ++r) {
          Residue v = 0;
          for (int j = deg; j >= 0; --j) v = mod_reduce(v * r + f[j], p);
          has_root = v == 0;
        }
        EXPECT_EQ(fp_poly::is_irreducible(f, p), !has_root) << "p=" << p << " idx=" << idx;
      }
    }
  }
}

TEST(FiniteField, GroupStructure) {
  for (auto [p, a] : std::vector<std::pair<std::int64_t, int>>{{2, 3}, {3, 2}, {5, 2}, {7, 2}}) {
    const auto F = build_fq(p, a);
    const auto q = F.order();
    for (std::int64_t i = 1; i < q; ++i) {
      const auto x = F.element(i);
      EXPECT_EQ(F.index_of(x), i);
      EXPECT_TRUE(F.equal(F.mul(x, F.inv(x)), F.one()));
      EXPECT_TRUE(F.equal(F.pow(x, static_cast<std::uint64_t>(q - 1)), F.one()));
    }
    std::mt19937_64 rng(p * 10 + a);
    for (int t = 0; t < 200; ++t) {
      const auto x = F.element(static_cast<std::int64_t>(rng() % q));
      const auto y = F.element(static_cast<std::int64_t>(rng() % q));
      const auto z = F.element(static_cast<std::int64_t>(rng() % q));
      EXPECT_TRUE(F.equal(F.mul(x, F.add(y, z)), F.add(F.mul(x, y), F.mul(x, z))));
      // Frobenius is additive
      EXPECT_TRUE(F.equal(F.pow(F.add(x, y), static_cast<std::uint64_t>(p)),
                          F.add(F.pow(x, static_cast<std::uint64_t>(p)), F.pow(y, static_cast<std::uint64_t>(p)))));
    }
  }
}

TEST(Teichmueller, Examples) {
  const auto ctx = prime_ctx(5, 2);
  EXPECT_EQ(ctx.truncate(ctx.teichmueller(FqElement{{1}}), 2).coeffs[0], 1);
  EXPECT_EQ(ctx.truncate(ctx.teichmueller(FqElement{{0}}), 2).coeffs[0], 0);
  EXPECT_EQ(ctx.truncate(ctx.teichmueller(FqElement{{2}}), 2).coeffs[0], 7);
}

TEST(Teichmueller, FixedPointAndMultiplicativeOnSmallFields) {
  for (auto [p, a] : std::vector<std::pair<std::int64_t, int>>{
           {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}, {7, 1}, {7, 2}}) {
    const PadicContext ctx(build_fq(p, a), 2);
    const auto& F = ctx.field();
    const auto q = static_cast<std::uint64_t>(F.order());
    std::vector<ZqElement> lifts;
    for (std::int64_t i = 0; i < F.order(); ++i) {
      const auto c = F.element(i);
      const auto t = ctx.teichmueller(c);
      EXPECT_TRUE(ctx.equal(ctx.pow(t, q), t));
      EXPECT_TRUE(F.equal(ctx.reduce(t), c));
      lifts.push_back(t);
    }
    for (std::int64_t i = 0; i < F.order(); ++i)
      for (std::int64_t j = 0; j < F.order(); ++j) {
        const auto prod = F.mul(F.element(i), F.element(j));
        EXPECT_TRUE(ctx.equal(ctx.mul(lifts[i], lifts[j]), lifts[F.index_of(prod)])) << "q=" << q;
      }
  }
}

TEST(PadicContext, InverseAndTruncation) {
  const PadicContext ctx(build_fq(3, 2), 3);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    ZqElement x{{static_cast<Residue>(rng() % ctx.modulus()), static_cast<Residue>(rng() % ctx.modulus())}};
    if (!ctx.is_unit(x)) continue;
    EXPECT_TRUE(ctx.equal(ctx.mul(x, ctx.inv(x)), ctx.one()));
    const auto x2 = ctx.truncate(x, 2);
    EXPECT_TRUE(ctx.equal(ctx.truncate(x2, 1), ctx.truncate(x, 1)));
  }
}

TEST(Matrix, InverseExamples) {
  const auto ctx = prime_ctx(5, 2);
  ZqMatrix seven(1, 1, ctx.from_int(7));
  EXPECT_EQ(ctx.truncate(zq_matrix_inverse(seven, ctx)(0, 0), 2).coeffs[0], 18);
  const auto I = identity(ctx, 3);
  EXPECT_TRUE(matrices_equal(ctx, zq_matrix_inverse(I, ctx), I));
  ZqMatrix sing(2, 2, ctx.from_int(5));
  sing(0, 0) = ctx.from_int(1);
  sing(0, 1) = ctx.from_int(2);
  sing(1, 0) = ctx.from_int(3);
  sing(1, 1) = ctx.from_int(6);  // det = 0 mod 5
  try {
    zq_matrix_inverse(sing, ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonUnitDeterminant);
  }
}

TEST(Matrix, RandomInverseRoundTrip) {
  const PadicContext ctx(build_fq(5, 2), 2);
  std::mt19937_64 rng(17);
  int done = 0;
  while (done < 30) {
    const std::size_t n = 1 + rng() % 4;
    ZqMatrix A(n, n, ctx.zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        A(i, j) = ZqElement{{static_cast<Residue>(rng() % ctx.modulus()), static_cast<Residue>(rng() % ctx.modulus())}};
    if (!ctx.is_unit(determinant(ctx, A))) continue;
    EXPECT_TRUE(matrices_equal(ctx, multiply(ctx, A, zq_matrix_inverse(A, ctx)), identity(ctx, n)));
    ++done;
  }
}

TEST(Matrix, BerkowitzMatchesLeverrier) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<std::vector<long>> a(n, std::vector<long>(n));
    for (auto& row : a)
      for (auto& v : row) v = static_cast<long>(rng() % 41) - 20;
    const auto ref = leverrier_reversed(a);
    const auto ctx = prime_ctx(7, 3);
    ZqMatrix A(n, n, ctx.zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = ctx.from_int(a[i][j]);
    const auto cp = reversed_charpoly(ctx, A);
    ASSERT_EQ(cp.size(), n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      ASSERT_EQ(ref[k].get_den(), 1);
      mpz_class r = ref[k].get_num() % ctx.modulus();
      if (r < 0) r += ctx.modulus();
      EXPECT_EQ(cp[k].coeffs[0], r.get_si());
    }
  }
}

TEST(Hensel, Examples) {
  const auto ctx = prime_ctx(5, 2);
  const auto a = hensel_unit_factor({1, 1, 5}, ctx);
  EXPECT_EQ(a.degree, 1);
  EXPECT_EQ(coeffs_mod(a.rho, ctx, 2), (std::vector<Residue>{1, 21}));  // 1 - 4t
  const auto b = hensel_unit_factor({1, 0, 5}, ctx);
  EXPECT_EQ(b.degree, 0);
  EXPECT_EQ(coeffs_mod(b.rho, ctx, 2), (std::vector<Residue>{1}));
  const auto c = hensel_unit_factor({1, 24}, ctx);
  EXPECT_EQ(c.degree, 1);
  EXPECT_EQ(coeffs_mod(c.rho, ctx, 2), (std::vector<Residue>{1, 24}));
}

TEST(Hensel, RecoversPlantedUnitFactor) {
  // P = U * V with U(0) = V(0) = 1, top coefficient of U a unit, V = 1 mod p:
  // the unit factor of P is U.
  for (std::int64_t p : {2, 3, 5, 7}) {
    const auto ctx = prime_ctx(p, 3);
    const Residue big = ctx.modulus();
    std::mt19937_64 rng(31 * p);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t du = rng() % 4, dv = 1 + rng() % 3;
      ResiduePoly U{1}, V{1};
      for (std::size_t i = 1; i <= du; ++i) U.push_back(static_cast<Residue>(rng() % big));
      if (du && U.back() % p == 0) U.back() += 1;
      for (std::size_t i = 1; i <= dv; ++i) V.push_back(p * static_cast<Residue>(rng() % (big / p)));
      const auto P = detail::poly_mul(U, V, big);
      const auto f = hensel_unit_factor(P, ctx);
      EXPECT_EQ(f.degree, static_cast<int>(du));
      EXPECT_TRUE(equal_mod(f.rho, embed_integer_poly(U, ctx), ctx, ctx.precision())) << "p=" << p;
    }
  }
}
