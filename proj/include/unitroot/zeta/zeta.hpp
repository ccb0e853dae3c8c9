#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unitroot/arith/fq.hpp"
#include "unitroot/arith/hensel.hpp"
#include "unitroot/arith/zq.hpp"
#include "unitroot/combinat.hpp"
#include "unitroot/instance.hpp"
#include "unitroot/zeta/counting_field.hpp"
#include "unitroot/zeta/root_count.hpp"

namespace unitroot {

/// Maximum number of lines (univariate root counts) a single scan may visit.
inline constexpr std::int64_t kLineBudget = 2'000'000;

/// Homogeneous form as a list of (coefficient, exponent) terms.
struct Form {
  struct Term {
    FqElement coeff;
    Exponent exps;
  };
  std::vector<Term> terms;
};

inline Form hypersurface_form(const ProblemInstance& inst, const InstanceSetup& s) {
  Form f;
  for (std::size_t k = 0; k < s.basis.N; ++k)
    if (!s.field.is_zero(inst.coefficients[k])) f.terms.push_back({inst.coefficients[k], s.basis.exponents[k]});
  return f;
}

/// Formal partial derivative d/dx_i, coefficients reduced mod p.
inline Form partial_derivative(const Form& f, const FqContext& field, int i) {
  Form out;
  for (const auto& t : f.terms) {
    const int e = t.exps[i];
    if (e % field.p() == 0) continue;
    Form::Term nt{field.mul(t.coeff, field.from_int(e)), t.exps};
    nt.exps[i] -= 1;
    out.terms.push_back(std::move(nt));
  }
  return out;
}

namespace detail {

struct EmbeddedTerm {
  CountingField::Elem coeff;
  Exponent exps;
};

inline std::vector<EmbeddedTerm> embed_form(const Form& f, const FieldEmbedding& emb) {
  std::vector<EmbeddedTerm> out;
  for (const auto& t : f.terms) out.push_back({emb(t.coeff), t.exps});
  return out;
}

inline std::int64_t line_count(std::int64_t q, int n) {
  std::int64_t total = 0, qq = 1;
  for (int c = n - 1; c >= 0; --c) {
    total += qq;
    if (c > 0) {
      if (qq > kLineBudget / q) return kLineBudget + 1;
      qq *= q;
    }
  }
  return total;
}

/// Visit every line {x_0 = .. = x_{c-1} = 0, x_c = 1, x_{c+1..n-1} fixed} of P^n(F)
/// with each form restricted to it as a polynomial in x_n, then the point (0:..:0:1).
template <class LineVisitor, class PointVisitor>
void chart_scan(const CountingField& F, int n, const std::vector<std::vector<EmbeddedTerm>>& forms,
                LineVisitor&& on_line, PointVisitor&& on_point) {
  if (line_count(F.order(), n) > kLineBudget)
    throw Error(ErrorKind::EnumerationBudgetExceeded,
                "point enumeration over F_" + std::to_string(F.order()) + " exceeds the line budget");
  std::vector<CountingField::Elem> x(static_cast<std::size_t>(n) + 1, F.zero());
  std::vector<FieldPoly> polys(forms.size());
  for (int c = 0; c < n; ++c) {
    const int nfree = n - 1 - c;
    std::vector<std::int64_t> idx(nfree, 0);
    for (int j = 0; j < c; ++j) x[j] = F.zero();
    x[c] = F.one();
    while (true) {
      for (int t = 0; t < nfree; ++t) x[c + 1 + t] = F.element(idx[t]);
      for (std::size_t fi = 0; fi < forms.size(); ++fi) {
        auto& poly = polys[fi];
        poly.assign(1, F.zero());
        for (const auto& term : forms[fi]) {
          bool vanishes = false;
          for (int j = 0; j < c && !vanishes; ++j) vanishes = term.exps[j] > 0;
          if (vanishes) continue;
          auto v = term.coeff;
          for (int j = c + 1; j < n && !F.is_zero(v); ++j)
            if (term.exps[j]) v = F.mul(v, F.pow(x[j], static_cast<std::uint64_t>(term.exps[j])));
          const auto e = static_cast<std::size_t>(term.exps[n]);
          if (poly.size() <= e) poly.resize(e + 1, F.zero());
          poly[e] = F.add(poly[e], v);
        }
        field_poly::trim(F, poly);
      }
      on_line(polys);
      int t = 0;
      while (t < nfree && ++idx[t] == F.order()) idx[t++] = 0;
      if (t == nfree) break;
    }
  }
  std::vector<CountingField::Elem> values;
  for (const auto& form : forms) {
    auto v = F.zero();
    for (const auto& term : form) {
      bool on_axis = true;
      for (int j = 0; j < n; ++j) on_axis = on_axis && term.exps[j] == 0;
      if (on_axis) v = F.add(v, term.coeff);
    }
    values.push_back(v);
  }
  on_point(values);
}

}  // namespace detail

/// Number of points of the hypersurface in P^n(F_{q^s}).
inline std::int64_t count_points(const ProblemInstance& inst, int s) {
  const auto st = setup(inst);
  if (s < 1) throw Error(ErrorKind::Validation, "extension degree s must be >= 1");
  if (static_cast<double>(inst.a) * s * std::log2(static_cast<double>(inst.p)) > 21.0)
    throw Error(ErrorKind::EnumerationBudgetExceeded, "counting field F_{q^s} too large");
  const CountingField F(inst.p, inst.a * s);
  const FieldEmbedding emb(st.field, F);
  const std::vector<std::vector<detail::EmbeddedTerm>> forms{detail::embed_form(hypersurface_form(inst, st), emb)};
  std::int64_t total = 0;
  detail::chart_scan(
      F, inst.n, forms, [&](const std::vector<FieldPoly>& polys) { total += field_poly::count_roots(F, polys[0]); },
      [&](const std::vector<CountingField::Elem>& values) { total += F.is_zero(values[0]) ? 1 : 0; });
  return total;
}

enum class Smoothness { likely_smooth, singular, inconclusive };

inline const char* to_string(Smoothness s) {
  switch (s) {
    case Smoothness::likely_smooth: return "likely-smooth";
    case Smoothness::singular: return "singular";
    case Smoothness::inconclusive: return "inconclusive";
  }
  return "?";
}

/// Degree of P for a smooth hypersurface: ((d-1)^{n+1} + (-1)^{n+1}(d-1)) / d.
inline std::int64_t smooth_degree_bound(int n, int d) {
  std::int64_t t = checked_pow(d - 1, static_cast<unsigned>(n + 1));
  t += ((n + 1) % 2 ? -1 : 1) * (d - 1);
  return t / d;
}

struct SmoothnessReport {
  Smoothness verdict = Smoothness::inconclusive;
  int searched_through = 0;  // largest s fully searched
  std::optional<int> singular_at;
};

/// Search for common zeros of f and all partials over F_{q^s}, s = 1..s_bound.
inline SmoothnessReport smoothness_probe(const ProblemInstance& inst, int s_bound) {
  const auto st = setup(inst);
  const Form f = hypersurface_form(inst, st);
  std::vector<Form> system{f};
  for (int i = 0; i <= inst.n; ++i) system.push_back(partial_derivative(f, st.field, i));
  SmoothnessReport rep;
  for (int s = 1; s <= s_bound; ++s) {
    if (static_cast<double>(inst.a) * s * std::log2(static_cast<double>(inst.p)) > 21.0) break;
    const std::int64_t q = checked_pow(inst.p, static_cast<unsigned>(inst.a * s));
    if (detail::line_count(q, inst.n) > kLineBudget) break;
    const CountingField F(inst.p, inst.a * s);
    const FieldEmbedding emb(st.field, F);
    std::vector<std::vector<detail::EmbeddedTerm>> forms;
    for (const auto& g : system) forms.push_back(detail::embed_form(g, emb));
    bool hit = false;
    detail::chart_scan(
        F, inst.n, forms,
        [&](const std::vector<FieldPoly>& polys) {
          if (hit) return;
          FieldPoly g = polys[0];
          for (std::size_t i = 1; i < polys.size(); ++i) g = field_poly::gcd(F, g, polys[i]);
          if (field_poly::count_roots(F, g) > 0) hit = true;
        },
        [&](const std::vector<CountingField::Elem>& values) {
          bool all = true;
          for (auto v : values) all = all && F.is_zero(v);
          hit = hit || all;
        });
    if (hit) {
      rep.verdict = Smoothness::singular;
      rep.singular_at = s;
      return rep;
    }
    rep.searched_through = s;
  }
  rep.verdict = rep.searched_through >= smooth_degree_bound(inst.n, inst.d) ? Smoothness::likely_smooth
                                                                           : Smoothness::inconclusive;
  return rep;
}

using IntegerPoly = std::vector<mpz_class>;

/// Power series of P(t) = (Z(t)(1-t)...(1-q^{n-1}t))^{(-1)^n} from N_1..N_S, exact.
inline IntegerPoly zeta_series(std::int64_t q, int n, const std::vector<std::int64_t>& counts) {
  const std::size_t S = counts.size();
  std::vector<mpq_class> logc(S + 1, 0);
  for (std::size_t s = 1; s <= S; ++s) {
    mpz_class trivial = 0, qs;
    mpz_ui_pow_ui(qs.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(s));
    mpz_class qis = 1;
    for (int i = 0; i < n; ++i) {
      trivial += qis;
      qis *= qs;
    }
    mpq_class c(mpz_class(counts[s - 1]) - trivial, mpz_class(static_cast<long>(s)));
    c.canonicalize();
    logc[s] = (n % 2) ? mpq_class(-c) : c;
  }
  std::vector<mpq_class> ser(S + 1, 0);
  ser[0] = 1;
  for (std::size_t k = 1; k <= S; ++k) {
    mpq_class acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += mpq_class(static_cast<long>(j)) * logc[j] * ser[k - j];
    ser[k] = acc / mpq_class(static_cast<long>(k));
  }
  IntegerPoly out;
  for (auto& c : ser) {
    c.canonicalize();
    if (c.get_den() != 1) throw Error(ErrorKind::InconsistentCounts, "zeta series has non-integral coefficients");
    out.push_back(c.get_num());
  }
  return out;
}

inline void trim(IntegerPoly& f) {
  while (f.size() > 1 && f.back() == 0) f.pop_back();
}

inline IntegerPoly series_mul(const IntegerPoly& a, const IntegerPoly& b, std::size_t order) {
  IntegerPoly out(order + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// Q/R with deg Q = dq, deg R = dr matching the series through order S, if any.
inline std::optional<std::pair<IntegerPoly, IntegerPoly>> pade(const IntegerPoly& series, std::size_t dq,
                                                               std::size_t dr) {
  const std::size_t S = series.size() - 1;
  auto at = [&](std::ptrdiff_t k) { return k < 0 ? mpz_class(0) : series[static_cast<std::size_t>(k)]; };
  // rows: k = dq+1..S, sum_{j=0}^{dr} r_j s_{k-j} = 0 with r_0 = 1
  std::vector<std::vector<mpq_class>> rows;
  for (std::size_t k = dq + 1; k <= S; ++k) {
    std::vector<mpq_class> row(dr + 1);
    for (std::size_t j = 1; j <= dr; ++j) row[j - 1] = at(static_cast<std::ptrdiff_t>(k) - static_cast<std::ptrdiff_t>(j));
    row[dr] = -at(static_cast<std::ptrdiff_t>(k));
    rows.push_back(std::move(row));
  }
  std::vector<mpq_class> r(dr, 0);
  std::size_t rank = 0;
  std::vector<std::size_t> pivcol;
  for (std::size_t c = 0; c < dr && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t rr = 0; rr < rows.size(); ++rr) {
      if (rr == rank || rows[rr][c] == 0) continue;
      const mpq_class f = rows[rr][c] / rows[rank][c];
      for (std::size_t cc = c; cc <= dr; ++cc) rows[rr][cc] -= f * rows[rank][cc];
    }
    pivcol.push_back(c);
    ++rank;
  }
  for (std::size_t rr = rank; rr < rows.size(); ++rr)
    if (rows[rr][dr] != 0) return std::nullopt;
  for (std::size_t i = 0; i < rank; ++i) r[pivcol[i]] = rows[i][dr] / rows[i][pivcol[i]];

  IntegerPoly R{1};
  for (auto& c : r) {
    c.canonicalize();
    if (c.get_den() != 1) return std::nullopt;
    R.push_back(c.get_num());
  }
  IntegerPoly Q = series_mul(series, R, dq);
  trim(Q);
  trim(R);
  // exact check through order S
  const IntegerPoly lhs = series_mul(series, R, S);
  for (std::size_t k = 0; k <= S; ++k)
    if (lhs[k] != (k < Q.size() ? Q[k] : mpz_class(0))) return std::nullopt;
  return std::make_pair(Q, R);
}

struct ZetaNumerator {
  IntegerPoly Q;  // numerator, Q(0) = 1
  IntegerPoly R;  // denominator, R(0) = 1
  std::string method;  // "functional-equation" or "pade"
  bool denominator_check = true;  // R == 1 mod q
};

inline constexpr std::size_t kPadeSpare = 2;

/// Smooth surfaces of curves: Q has degree B and satisfies Q(t) = q^{B/2} t^B Q(1/(qt)),
/// so N_1..N_{B/2} determine it; any further counts are cross-checks.
inline std::optional<ZetaNumerator> numerator_functional_equation(std::int64_t q, int n, int d,
                                                                  const std::vector<std::int64_t>& counts) {
  if (n != 2) return std::nullopt;
  const auto B = static_cast<std::size_t>(smooth_degree_bound(n, d));
  const std::size_t g = B / 2;
  if (counts.size() < g) return std::nullopt;
  const IntegerPoly series = zeta_series(q, n, counts);
  IntegerPoly Q(B + 1, 0);
  for (std::size_t i = 0; i <= g; ++i) Q[i] = series[i];
  for (std::size_t i = 0; i < g; ++i) {
    mpz_class qp;
    mpz_ui_pow_ui(qp.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(g - i));
    Q[B - i] = qp * Q[i];
  }
  for (std::size_t k = 0; k < series.size(); ++k)
    if (series[k] != (k <= B ? Q[k] : mpz_class(0)))
      throw Error(ErrorKind::InconsistentCounts, "counts disagree with the smooth functional equation");
  trim(Q);
  return ZetaNumerator{Q, IntegerPoly{1}, "functional-equation", true};
}

/// Lowest-degree Q/R reproducing the series with at least kPadeSpare unused coefficients.
inline std::optional<ZetaNumerator> numerator_pade(std::int64_t q, int n, const std::vector<std::int64_t>& counts) {
  const IntegerPoly series = zeta_series(q, n, counts);
  const std::size_t S = counts.size();
  for (std::size_t T = 0; T + kPadeSpare <= S; ++T)
    for (std::size_t dr = 0; dr <= T; ++dr) {
      auto fit = pade(series, T - dr, dr);
      if (!fit) continue;
      ZetaNumerator z{fit->first, fit->second, "pade", true};
      for (std::size_t i = 1; i < z.R.size(); ++i)
        if (z.R[i] % q != 0) z.denominator_check = false;
      return z;
    }
  return std::nullopt;
}

/// Reconstruct P = Q/R from counts (see ZetaSummary for the policy).
inline ZetaNumerator zeta_numerator(const ProblemInstance& inst, const std::vector<std::int64_t>& counts, bool smooth) {
  const std::int64_t q = checked_pow(inst.p, static_cast<unsigned>(inst.a));
  if (smooth) {
    if (auto z = numerator_functional_equation(q, inst.n, inst.d, counts)) return *z;
    const auto B = static_cast<std::size_t>(smooth_degree_bound(inst.n, inst.d));
    if (auto z = numerator_pade(q, inst.n, counts); z && z->R.size() == 1 && z->Q.size() <= B + 1) return *z;
    throw Error(ErrorKind::InconsistentCounts, "counts do not determine a polynomial of the smooth degree");
  }
  if (auto z = numerator_pade(q, inst.n, counts)) return *z;
  throw Error(ErrorKind::InconsistentCounts, "no rational function fits the counts with spare coefficients");
}

struct ZetaSummary {
  std::vector<std::int64_t> counts;  // N_s over F_{q^s}, s = 1..
  int direct_counts = 0;             // leading entries of `counts` obtained by enumeration
  std::string source = "direct";     // or "prime-field base change"
  SmoothnessReport smoothness;
  ZetaNumerator numerator;
  UnitFactor unit;
  int unit_degree = 0;
};

inline ResiduePoly reduce_integer_poly(const IntegerPoly& f, Residue modulus) {
  ResiduePoly out;
  for (const auto& c : f) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), mpz_class(static_cast<long>(modulus)).get_mpz_t());
    out.push_back(r.get_si());
  }
  return out;
}

/// Hensel unit factor of Q at the context precision.
inline UnitFactor unit_factor_of_numerator(const IntegerPoly& Q, const PadicContext& ctx) {
  return hensel_unit_factor(reduce_integer_poly(Q, ctx.modulus()), ctx);
}

/// N_1..N_K implied by P = Q/R over F_q.
inline std::vector<std::int64_t> counts_from_rational(std::int64_t q, int n, const IntegerPoly& Q, const IntegerPoly& R,
                                                      std::size_t K) {
  IntegerPoly P(K + 1, 0);  // Q / R, R(0) = 1
  for (std::size_t k = 0; k <= K; ++k) {
    mpz_class acc = k < Q.size() ? Q[k] : mpz_class(0);
    for (std::size_t j = 1; j < R.size() && j <= k; ++j) acc -= R[j] * P[k - j];
    P[k] = acc;
  }
  // k l_k = k P_k - sum_{j<k} j l_j P_{k-j}; here store k l_k directly.
  std::vector<mpz_class> kl(K + 1, 0);
  std::vector<std::int64_t> out;
  for (std::size_t k = 1; k <= K; ++k) {
    mpz_class acc = mpz_class(static_cast<long>(k)) * P[k];
    for (std::size_t j = 1; j < k; ++j) acc -= kl[j] * P[k - j];
    kl[k] = acc;
    mpz_class trivial = 0, qk, qik = 1;
    mpz_ui_pow_ui(qk.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(k));
    for (int i = 0; i < n; ++i) {
      trivial += qik;
      qik *= qk;
    }
    const mpz_class N = trivial + ((n % 2) ? mpz_class(-acc) : acc);
    if (!N.fits_slong_p()) throw Error(ErrorKind::EnumerationBudgetExceeded, "point count overflows 64 bits");
    out.push_back(N.get_si());
  }
  return out;
}

namespace detail {

inline bool affordable(const ProblemInstance& inst, int s) {
  if (static_cast<double>(inst.a) * s * std::log2(static_cast<double>(inst.p)) > 21.0) return false;
  return line_count(checked_pow(inst.p, static_cast<unsigned>(inst.a * s)), inst.n) <= kLineBudget;
}

inline bool prime_field_coefficients(const ProblemInstance& inst, const FqContext& field) {
  for (const auto& c : inst.coefficients)
    if (!field.in_prime_field(c)) return false;
  return true;
}

inline void fit_direct(const ProblemInstance& inst, ZetaSummary& out) {
  const auto B = static_cast<int>(smooth_degree_bound(inst.n, inst.d));
  const std::int64_t q = checked_pow(inst.p, static_cast<unsigned>(inst.a));
  out.smoothness = smoothness_probe(inst, B);
  if (out.smoothness.verdict == Smoothness::likely_smooth) {
    const int need = (inst.n == 2) ? B / 2 : B + static_cast<int>(kPadeSpare);
    for (int s = 1; s <= std::max(need, B); ++s) {
      if (!affordable(inst, s)) {
        if (s <= need) throw Error(ErrorKind::EnumerationBudgetExceeded, "not enough point counts affordable");
        break;
      }
      out.counts.push_back(count_points(inst, s));
    }
    out.direct_counts = static_cast<int>(out.counts.size());
    out.numerator = zeta_numerator(inst, out.counts, true);
    return;
  }
  std::optional<ZetaNumerator> fit;
  for (int s = 1; affordable(inst, s); ++s) {
    out.counts.push_back(count_points(inst, s));
    auto z = numerator_pade(q, inst.n, out.counts);
    if (!z) {
      fit.reset();
      continue;
    }
    if (fit && fit->Q == z->Q && fit->R == z->R) break;  // confirmed by an extra count
    fit = z;
  }
  out.direct_counts = static_cast<int>(out.counts.size());
  if (!fit) throw Error(ErrorKind::InconsistentCounts, "no rational function fits the affordable counts");
  out.numerator = *fit;
}

}  // namespace detail

/// Count points and reconstruct P = Q/R, without the p-adic step.
///
/// Smooth plane curves use the functional equation from N_1..N_g, with further
/// counts up to deg Q as cross-checks when affordable. Other instances use Pade
/// reconstruction, adding counts until a fit with spare coefficients repeats.
/// When a > 1 and every coefficient lies in F_p, P is first fitted over F_p and
/// the counts over F_{q^s} are derived from it; direct counts that fit the budget
/// must agree.
inline ZetaSummary fit_zeta(const ProblemInstance& inst) {
  const auto st = setup(inst);
  ZetaSummary out;
  if (inst.a == 1 || !detail::prime_field_coefficients(inst, st.field)) {
    detail::fit_direct(inst, out);
    return out;
  }
  ProblemInstance base{inst.p, 1, inst.n, inst.d, inst.m, std::nullopt, {}};
  for (const auto& c : inst.coefficients) base.coefficients.push_back(FqElement{{c.coeffs[0]}});
  const ZetaSummary b = fit_zeta(base);
  const std::size_t spare = kPadeSpare + 1;
  const std::size_t S = b.numerator.Q.size() + b.numerator.R.size() + spare;
  const auto all = counts_from_rational(inst.p, inst.n, b.numerator.Q, b.numerator.R, S * inst.a);
  for (std::size_t s = 1; s <= S; ++s) out.counts.push_back(all[s * inst.a - 1]);
  for (int s = 1; s <= static_cast<int>(S) && detail::affordable(inst, s); ++s) {
    if (count_points(inst, s) != out.counts[s - 1])
      throw Error(ErrorKind::InconsistentCounts, "direct count over F_{q^" + std::to_string(s) +
                                                     "} disagrees with the prime-field zeta function");
    out.direct_counts = s;
  }
  out.source = "prime-field base change";
  out.smoothness = b.smoothness;
  const std::int64_t q = st.field.order();
  if (out.smoothness.verdict == Smoothness::likely_smooth) {
    out.numerator = zeta_numerator(inst, out.counts, true);
  } else {
    auto z = numerator_pade(q, inst.n, out.counts);
    if (!z) throw Error(ErrorKind::InconsistentCounts, "no rational function fits the base-changed counts");
    out.numerator = *z;
  }
  return out;
}

/// Full oracle: fit_zeta, then the Hensel unit factor rho mod p^m.
inline ZetaSummary compute_zeta(const ProblemInstance& inst, const PadicContext& ctx) {
  ZetaSummary out = fit_zeta(inst);
  out.unit = unit_factor_of_numerator(out.numerator.Q, ctx);
  out.unit_degree = out.unit.degree;
  return out;
}

inline UnitFactor unit_factor_of_zeta(const ProblemInstance& inst, const PadicContext& ctx) {
  return compute_zeta(inst, ctx).unit;
}

}  // namespace unitroot
