#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "unitroot/arith/fq.hpp"
#include "unitroot/arith/zq.hpp"
#include "unitroot/combinat.hpp"

namespace unitroot {

/// One hypersurface f = sum_k lambda_k x^{b_k} over F_{p^a}, coefficients in canonical monomial order.
struct ProblemInstance {
  std::int64_t p = 0;
  int a = 1;
  int n = 0;
  int d = 0;
  int m = 2;  // requested p-adic precision
  std::optional<ResiduePoly> modulus;  // F_q modulus; default when absent
  std::vector<FqElement> coefficients;

  bool operator==(const ProblemInstance&) const = default;
};

/// Shared derived data for an instance: the field and the monomial basis.
struct InstanceSetup {
  FqContext field;
  MonomialBasis basis;
};

inline InstanceSetup setup(const ProblemInstance& inst) {
  FqContext field = build_fq(inst.p, inst.a, inst.modulus);
  MonomialBasis basis = enumerate_basis(inst.n, inst.d);
  if (inst.coefficients.size() != basis.N)
    throw Error(ErrorKind::Validation, "expected " + std::to_string(basis.N) + " coefficients for (n=" +
                                           std::to_string(inst.n) + ", d=" + std::to_string(inst.d) + "), got " +
                                           std::to_string(inst.coefficients.size()));
  for (const auto& c : inst.coefficients) {
    if (static_cast<int>(c.coeffs.size()) != inst.a)
      throw Error(ErrorKind::Validation, "each coefficient needs " + std::to_string(inst.a) + " residues");
    for (auto r : c.coeffs)
      if (r < 0 || r >= inst.p) throw Error(ErrorKind::Validation, "coefficient residue outside [0, p)");
  }
  if (inst.m < 1) throw Error(ErrorKind::Validation, "precision m must be >= 1");
  return InstanceSetup{std::move(field), std::move(basis)};
}

/// Unit-root commands need lambda_k != 0 on the interior block.
inline void require_unit_interior(const ProblemInstance& inst, const InstanceSetup& s) {
  for (std::size_t k = 0; k < s.basis.M; ++k)
    if (s.field.is_zero(inst.coefficients[k]))
      throw Error(ErrorKind::ZeroUnitCoefficient,
                  "coefficient of interior monomial " + s.basis.monomial_name(k) + " is zero");
}

/// Z_q context matching the instance field.
inline PadicContext padic_context(const ProblemInstance& inst, int precision, int guard = PadicContext::kDefaultGuard) {
  return PadicContext(build_fq(inst.p, inst.a, inst.modulus), precision, guard);
}

/// Seeded random instance with nonzero interior coefficients.
template <class Rng>
ProblemInstance random_instance(std::int64_t p, int a, int n, int d, int m, Rng& rng) {
  ProblemInstance inst{p, a, n, d, m, std::nullopt, {}};
  const auto basis = enumerate_basis(n, d);
  std::uniform_int_distribution<std::int64_t> digit(0, p - 1);
  for (std::size_t k = 0; k < basis.N; ++k) {
    FqElement c{std::vector<Residue>(a, 0)};
    do {
      for (auto& r : c.coeffs) r = digit(rng);
    } while (k < basis.M && std::all_of(c.coeffs.begin(), c.coeffs.end(), [](Residue r) { return r == 0; }));
    inst.coefficients.push_back(std::move(c));
  }
  return inst;
}

/// Convenience: coefficients given as prime-field integers.
inline ProblemInstance make_instance(std::int64_t p, int a, int n, int d, int m, const std::vector<std::int64_t>& lambda) {
  ProblemInstance inst{p, a, n, d, m, std::nullopt, {}};
  for (auto v : lambda) {
    FqElement c{std::vector<Residue>(a, 0)};
    c.coeffs[0] = mod_reduce(v, p);
    inst.coefficients.push_back(std::move(c));
  }
  return inst;
}

}  // namespace unitroot
