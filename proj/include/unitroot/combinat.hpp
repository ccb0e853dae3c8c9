#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "unitroot/error.hpp"

namespace unitroot {

using Exponent = std::vector<int>;

/// All degree-d monomials in x_0..x_n in canonical order: the interior block U
/// (every exponent positive) first, then the rest; each block ascending lex.
/// Row/column indices of every matrix and every coefficient list use this order.
struct MonomialBasis {
  int n = 0;
  int d = 0;
  std::vector<Exponent> exponents;  // b_k, length n+1
  std::vector<Exponent> augmented;  // a_k = (b_k, 1), length n+2
  std::size_t N = 0;
  std::size_t M = 0;

  std::size_t index_of(const Exponent& b) const {
    auto it = std::find(exponents.begin(), exponents.end(), b);
    if (it == exponents.end()) throw Error(ErrorKind::Validation, "monomial not of degree d");
    return static_cast<std::size_t>(it - exponents.begin());
  }

  std::string monomial_name(std::size_t k) const {
    std::string s;
    for (int i = 0; i <= n; ++i) {
      if (!exponents[k][i]) continue;
      if (!s.empty()) s += '*';
      s += "x" + std::to_string(i);
      if (exponents[k][i] > 1) s += "^" + std::to_string(exponents[k][i]);
    }
    return s;
  }
};

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline MonomialBasis enumerate_basis(int n, int d) {
  if (n < 1) throw Error(ErrorKind::Validation, "dimension n must be >= 1");
  if (d < n + 1)
    throw Error(ErrorKind::DegreeTooSmall, "d >= n+1 required (d=" + std::to_string(d) + ", n=" + std::to_string(n) + ")");
  std::vector<Exponent> all;
  Exponent cur(n + 1, 0);
  // Lex-ascending compositions of d into n+1 parts.
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == n) {
      cur[pos] = rem;
      all.push_back(cur);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      cur[pos] = v;
      self(self, pos + 1, rem - v);
    }
  };
  rec(rec, 0, d);

  MonomialBasis basis;
  basis.n = n;
  basis.d = d;
  auto interior = [](const Exponent& b) { return std::all_of(b.begin(), b.end(), [](int e) { return e > 0; }); };
  std::stable_partition(all.begin(), all.end(), interior);
  basis.exponents = all;
  basis.N = all.size();
  basis.M = static_cast<std::size_t>(std::count_if(all.begin(), all.end(), interior));
  for (const auto& b : all) {
    Exponent a = b;
    a.push_back(1);
    basis.augmented.push_back(std::move(a));
  }
  ensure(static_cast<std::int64_t>(basis.N) == binomial(d + n, n), "basis size differs from C(d+n, n)");
  ensure(static_cast<std::int64_t>(basis.M) == binomial(d - 1, n), "interior size differs from C(d-1, n)");
  return basis;
}

/// An integer relation l with pivot i: l_i = -weight <= 0 and l_k >= 0 elsewhere.
struct LatticeVector {
  std::vector<std::int64_t> l;
  std::size_t pivot = 0;
  std::int64_t weight = 0;
  bool operator==(const LatticeVector&) const = default;
};

/// Upper bound on the size of one lattice enumeration.
inline constexpr std::size_t kMaxLatticeSolutions = 2'000'000;

/// Elements of L_{i,u} = { l : sum_k l_k a_k = u, l_i <= 0, l_k >= 0 (k != i) } with
/// weight -l_i <= cap, ordered by weight then lexicographically on l.
///
/// Depth-first over the non-pivot coordinates; a partial assignment is pruned when
/// the remaining target cannot be reached by the remaining monomials (per-coordinate
/// min/max of b_jk times the number of factors still to place).
inline std::vector<LatticeVector> solve_lattice(const MonomialBasis& basis, std::size_t pivot,
                                                const std::vector<std::int64_t>& target, std::int64_t cap,
                                                std::size_t max_solutions = kMaxLatticeSolutions) {
  const std::size_t N = basis.N;
  const std::size_t dim = static_cast<std::size_t>(basis.n) + 2;
  ensure(pivot < N, "pivot index out of range");
  ensure(target.size() == dim, "target vector has wrong length");
  if (cap < 0) return {};

  std::vector<std::size_t> vars;
  for (std::size_t k = 0; k < N; ++k)
    if (k != pivot) vars.push_back(k);
  const std::size_t nv = vars.size();

  // suffix bounds over vars[pos..]
  std::vector<std::vector<int>> suf_min(nv + 1, std::vector<int>(dim, 1 << 20));
  std::vector<std::vector<int>> suf_max(nv + 1, std::vector<int>(dim, -1));
  for (std::size_t pos = nv; pos-- > 0;)
    for (std::size_t j = 0; j < dim; ++j) {
      const int v = basis.augmented[vars[pos]][j];
      suf_min[pos][j] = std::min(suf_min[pos + 1][j], v);
      suf_max[pos][j] = std::max(suf_max[pos + 1][j], v);
    }

  std::vector<LatticeVector> out;
  std::vector<std::int64_t> l(N, 0);
  std::vector<std::int64_t> rem(dim);

  auto feasible = [&](std::size_t pos) {
    const std::int64_t count = rem[dim - 1];
    if (count < 0) return false;
    if (pos == nv) {
      for (auto r : rem)
        if (r) return false;
      return true;
    }
    for (std::size_t j = 0; j + 1 < dim; ++j) {
      if (rem[j] < 0) return false;
      if (rem[j] > count * suf_max[pos][j] || rem[j] < count * suf_min[pos][j]) return false;
    }
    return true;
  };

  auto dfs = [&](auto&& self, std::size_t pos, std::int64_t weight) -> void {
    if (!feasible(pos)) return;
    if (pos == nv) {
      if (out.size() >= max_solutions)
        throw Error(ErrorKind::SizeGuardExceeded, "lattice enumeration exceeds " + std::to_string(max_solutions) +
                                                      " solutions; lower the precision or truncation");
      out.push_back(LatticeVector{l, pivot, weight});
      return;
    }
    const std::size_t k = vars[pos];
    const auto& ak = basis.augmented[k];
    std::int64_t hi = rem[dim - 1];
    for (std::size_t j = 0; j + 1 < dim; ++j)
      if (ak[j] > 0) hi = std::min<std::int64_t>(hi, rem[j] / ak[j]);
    if (pos + 1 == nv) {
      // last free coordinate is forced
      const std::int64_t v = rem[dim - 1];
      if (v > hi) return;
      l[k] = v;
      for (std::size_t j = 0; j < dim; ++j) rem[j] -= v * ak[j];
      self(self, pos + 1, weight);
      for (std::size_t j = 0; j < dim; ++j) rem[j] += v * ak[j];
      l[k] = 0;
      return;
    }
    for (std::int64_t v = 0; v <= hi; ++v) {
      l[k] = v;
      for (std::size_t j = 0; j < dim; ++j) rem[j] -= v * ak[j];
      self(self, pos + 1, weight);
      for (std::size_t j = 0; j < dim; ++j) rem[j] += v * ak[j];
    }
    l[k] = 0;
  };

  for (std::int64_t w = 0; w <= cap; ++w) {
    for (std::size_t j = 0; j < dim; ++j) rem[j] = target[j] + w * basis.augmented[pivot][j];
    l.assign(N, 0);
    l[pivot] = -w;
    if (nv == 0) {
      if (std::all_of(rem.begin(), rem.end(), [](std::int64_t r) { return r == 0; }))
        out.push_back(LatticeVector{l, pivot, w});
      continue;
    }
    dfs(dfs, 0, w);
  }
  return out;
}

/// Target vector -a_j, the shifted form used for Hasse-Witt supports and off-diagonal series.
inline std::vector<std::int64_t> negated_augmented(const MonomialBasis& basis, std::size_t j) {
  std::vector<std::int64_t> t;
  for (int v : basis.augmented[j]) t.push_back(-v);
  return t;
}

inline std::vector<std::int64_t> zero_target(const MonomialBasis& basis) {
  return std::vector<std::int64_t>(static_cast<std::size_t>(basis.n) + 2, 0);
}

}  // namespace unitroot
