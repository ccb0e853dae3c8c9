#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "unitroot/hassewitt.hpp"
#include "unitroot/hyperfrob.hpp"
#include "unitroot/instance.hpp"
#include "unitroot/zeta/zeta.hpp"

namespace unitroot::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kValidation = 2,
  kNonOrdinary = 3,
  kOracle = 4,
  kDisagreement = 5,
};

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Validation:
    case ErrorKind::NonPrime:
    case ErrorKind::ReducibleModulus:
    case ErrorKind::DegreeTooSmall:
    case ErrorKind::ZeroUnitCoefficient:
    case ErrorKind::NonUnitPivotCoordinate:
    case ErrorKind::SizeGuardExceeded:
      return kValidation;
    case ErrorKind::NonOrdinary: return kNonOrdinary;
    case ErrorKind::InconsistentCounts:
    case ErrorKind::EnumerationBudgetExceeded:
      return kOracle;
    case ErrorKind::NonUnitDeterminant:
    case ErrorKind::Internal:
      return kInternal;
  }
  return kInternal;
}

// ---- config ----

inline Residue parse_residue(const Json& v) {
  if (v.is_number_integer()) return v.get<Residue>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::size_t used = 0;
    Residue r = 0;
    try {
      r = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorKind::Validation, "residue '" + s + "' is not an integer");
    return r;
  }
  throw Error(ErrorKind::Validation, "residues must be integers or decimal strings");
}

template <class T>
T required(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorKind::Validation, std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::Validation, std::string("field '") + key + "' has the wrong type");
  }
}

/// Validated instance from a schema-1 config document. Defaults: a = 1, m = 2.
inline ProblemInstance parse_config(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::Validation, "config must be a JSON object");
  if (doc.contains("schema") && doc.at("schema") != kSchema)
    throw Error(ErrorKind::Validation, "unsupported config schema (expected 1)");
  ProblemInstance inst;
  inst.p = required<std::int64_t>(doc, "p");
  inst.a = doc.contains("a") ? required<int>(doc, "a") : 1;
  inst.n = required<int>(doc, "n");
  inst.d = required<int>(doc, "d");
  inst.m = doc.contains("m") ? required<int>(doc, "m") : 2;
  if (!is_prime(inst.p)) throw Error(ErrorKind::NonPrime, std::to_string(inst.p) + " is not prime");
  if (inst.a < 1) throw Error(ErrorKind::Validation, "a must be >= 1");
  if (doc.contains("modulus")) {
    ResiduePoly mod;
    for (const auto& c : doc.at("modulus")) mod.push_back(parse_residue(c));
    inst.modulus = mod;
  }
  if (!doc.contains("coefficients") || !doc.at("coefficients").is_array())
    throw Error(ErrorKind::Validation, "missing coefficient list");
  for (const auto& c : doc.at("coefficients")) {
    FqElement e;
    if (c.is_array())
      for (const auto& r : c) e.coeffs.push_back(parse_residue(r));
    else
      e.coeffs.push_back(parse_residue(c));
    inst.coefficients.push_back(std::move(e));
  }
  setup(inst);
  return inst;
}

inline Json residues_json(const std::vector<Residue>& r) {
  Json out = Json::array();
  for (auto v : r) out.push_back(std::to_string(v));
  return out;
}

inline Json emit_config(const ProblemInstance& inst) {
  Json doc;
  doc["schema"] = kSchema;
  doc["p"] = inst.p;
  doc["a"] = inst.a;
  doc["n"] = inst.n;
  doc["d"] = inst.d;
  doc["m"] = inst.m;
  if (inst.modulus) doc["modulus"] = residues_json(*inst.modulus);
  Json coeffs = Json::array();
  for (const auto& c : inst.coefficients) coeffs.push_back(residues_json(c.coeffs));
  doc["coefficients"] = coeffs;
  return doc;
}

// ---- report pieces ----

inline Json element_json(const FqElement& x) { return residues_json(x.coeffs); }
inline Json element_json(const ZqElement& x) { return residues_json(x.coeffs); }

template <class T>
Json matrix_json(const Matrix<T>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(element_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

inline Json poly_json(const ZqPolynomial& f) {
  Json out = Json::array();
  for (const auto& c : f.coeffs) out.push_back(element_json(c));
  return out;
}

inline Json integer_poly_json(const IntegerPoly& f) {
  Json out = Json::array();
  for (const auto& c : f) out.push_back(c.get_str());
  return out;
}

inline Json basis_json(const MonomialBasis& b) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < b.N; ++k)
    rows.push_back(Json{{"index", k}, {"monomial", b.monomial_name(k)}, {"exponents", b.exponents[k]}, {"interior", k < b.M}});
  return Json{{"N", b.N}, {"M", b.M}, {"ordering", "interior block first, then lexicographic"}, {"monomials", rows}};
}

struct Options {
  std::optional<int> precision;
  std::optional<std::int64_t> truncation;
  Normalization normalization = Normalization::multinomial;
  int jobs = 1;
};

struct Report {
  Json body;    // deterministic payload
  Json timing;  // wall-clock seconds per stage, kept out of `body`
  int exit_code = kOk;

  Json document() const {
    Json d = body;
    d["timing"] = timing;
    return d;
  }
};

class StageClock {
 public:
  explicit StageClock(Json& sink) : sink_(sink) {}
  template <class F>
  auto run(const std::string& stage, F&& f) {
    current = stage;
    const auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(stage, t0);
    } else {
      auto r = f();
      record(stage, t0);
      return r;
    }
  }
  std::string current = "setup";

 private:
  void record(const std::string& stage, std::chrono::steady_clock::time_point t0) {
    sink_[stage] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  Json& sink_;
};

inline Json hasse_witt_json(const ProblemInstance& inst, Normalization norm) {
  const auto h = hasse_witt(inst, norm);
  const auto s = setup(inst);
  const auto cp = hw_frobenius_charpoly(inst, norm);
  Json out{{"normalization", to_string(norm)},
           {"matrix", matrix_json(h.entries)},
           {"determinant", element_json(determinant(s.field, h.entries))},
           {"ordinary", s.field.is_unit(determinant(s.field, h.entries))},
           {"charpoly", residues_json(cp.h_form)}};
  out["charpoly_b_form"] = cp.b_form ? residues_json(*cp.b_form) : Json(nullptr);
  return out;
}

inline Json zeta_json(const ZetaSummary& z) {
  return Json{{"counts", z.counts},
              {"direct_counts", z.direct_counts},
              {"source", z.source},
              {"smoothness", to_string(z.smoothness.verdict)},
              {"reconstruction", z.numerator.method},
              {"numerator", integer_poly_json(z.numerator.Q)},
              {"denominator", integer_poly_json(z.numerator.R)},
              {"denominator_check", z.numerator.denominator_check},
              {"unit_factor", poly_json(z.unit.rho)},
              {"unit_degree", z.unit_degree}};
}

inline Json unit_roots_json(const HyperFrobenius& hf, const ZqPolynomial& rho) {
  return Json{{"truncation", {{"numerator_cap", hf.truncation().numerator}, {"denominator_cap", hf.truncation().denominator}}},
              {"rho", poly_json(rho)}};
}

inline const char* kNormalizationNote =
    "multinomial: H_ij sums (p-1)!/prod nu_k! lambda^nu; literal drops (p-1)!, i.e. multiplies H by -1 mod p";

/// Run one command. Module errors come back as a report with an "error" object
/// naming the stage, and the mapped exit status.
inline Report run_command(const std::string& command, ProblemInstance inst, const Options& opt = {}) {
  Report rep;
  rep.timing = Json::object();
  StageClock clock(rep.timing);
  Json& body = rep.body;
  body["schema"] = kSchema;
  body["command"] = command;
  try {
    if (opt.precision) inst.m = *opt.precision;
    body["instance"] = emit_config(inst);
    const auto st = clock.run("setup", [&] { return setup(inst); });
    if (command == "basis") {
      body["basis"] = basis_json(st.basis);
    } else if (command == "hasse-witt") {
      body["hasse_witt"] = clock.run("hasse-witt", [&] { return hasse_witt_json(inst, opt.normalization); });
      body["normalization_note"] = kNormalizationNote;
    } else if (command == "zeta") {
      const auto ctx = padic_context(inst, inst.m);
      body["zeta"] = clock.run("zeta", [&] { return zeta_json(compute_zeta(inst, ctx)); });
    } else if (command == "unit-roots") {
      require_unit_interior(inst, st);
      const auto ctx = padic_context(inst, inst.m);
      const auto ord = clock.run("ordinarity", [&] { return ordinarity_check(inst); });
      if (!ord.ordinary) throw Error(ErrorKind::NonOrdinary, "Hasse-Witt determinant vanishes; instance outside the domain");
      clock.run("unit-roots", [&] {
        const HyperFrobenius hf(inst, ctx, opt.truncation);
        body["unit_roots"] = unit_roots_json(hf, hf.unit_root_charpoly());
      });
    } else if (command == "verify") {
      require_unit_interior(inst, st);
      const auto ctx = padic_context(inst, inst.m);
      body["basis"] = Json{{"N", st.basis.N}, {"M", st.basis.M}, {"ordering", "interior block first, then lexicographic"}};
      std::future<ZetaSummary> pending;
      if (opt.jobs > 1) pending = std::async(std::launch::async, [&] { return compute_zeta(inst, ctx); });
      const auto zeta = clock.run("zeta", [&] { return pending.valid() ? pending.get() : compute_zeta(inst, ctx); });
      body["zeta"] = zeta_json(zeta);
      body["hasse_witt"] = clock.run("hasse-witt", [&] { return hasse_witt_json(inst, Normalization::multinomial); });
      body["normalization_note"] = kNormalizationNote;
      clock.current = "ordinarity";
      if (!body["hasse_witt"]["ordinary"].get<bool>())
        throw Error(ErrorKind::NonOrdinary, "Hasse-Witt determinant vanishes; instance outside the domain");
      const HyperFrobenius hf(inst, ctx, opt.truncation);
      const auto rho = clock.run("unit-roots", [&] { return hf.unit_root_charpoly(); });
      body["unit_roots"] = unit_roots_json(hf, rho);
      Json levels = Json::array();
      bool all = true;
      for (int k = 1; k <= inst.m; ++k) {
        const bool ok = equal_mod(zeta.unit.rho, rho, ctx, k);
        all = all && ok;
        levels.push_back(Json{{"precision", k}, {"agree", ok}});
      }
      body["agreement"] = Json{{"levels", levels}, {"agree", all}};
      if (!all) rep.exit_code = kDisagreement;
    } else {
      throw Error(ErrorKind::Validation, "unknown command '" + command + "'");
    }
  } catch (const Error& e) {
    body["error"] = Json{{"kind", to_string(e.kind())}, {"stage", clock.current}, {"message", e.what()}};
    rep.exit_code = exit_code_for(e.kind());
  } catch (const std::exception& e) {
    body["error"] = Json{{"kind", "Internal"}, {"stage", clock.current}, {"message", e.what()}};
    rep.exit_code = kInternal;
  }
  return rep;
}

}  // namespace unitroot::cli
