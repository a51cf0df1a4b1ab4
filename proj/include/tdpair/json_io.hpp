#pragma once

// JSON encodings for fields, scalars, parameter sequences and arrays,
// words, elements, certificates and reports.

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "tdpair/error.hpp"
#include "tdpair/field.hpp"
#include "tdpair/mu.hpp"
#include "tdpair/params.hpp"
#include "tdpair/relators.hpp"
#include "tdpair/words.hpp"

namespace tdpair::io {

using Json = nlohmann::ordered_json;

inline Json to_json(const FieldCtx& ctx) {
  if (ctx.is_rational()) return Json{{"kind", "rational"}};
  return Json{{"kind", "prime"}, {"p", ctx.modulus()}};
}

inline FieldCtx field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw Error(Errc::ParseError, "field must be {\"kind\": ...}");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "rational") return FieldCtx::rational();
  if (kind == "prime") {
    if (!j.contains("p") || !j["p"].is_number_unsigned()) throw Error(Errc::ParseError, "prime field needs integer \"p\"");
    return FieldCtx::prime(j["p"].get<std::uint64_t>());
  }
  throw Error(Errc::ParseError, "unknown field kind '" + kind + "'");
}

inline FieldElement scalar_from_json(const Json& j, const FieldCtx& ctx) {
  if (j.is_string()) return FieldElement::parse(j.get<std::string>(), ctx);
  if (j.is_number_integer()) return FieldElement::parse(j.dump(), ctx);
  throw Error(Errc::ParseError, "scalar must be a string or an integer");
}

inline Json to_json(const FieldElement& x) { return x.to_string(); }

inline std::vector<FieldElement> scalars_from_json(const Json& j, const FieldCtx& ctx, const char* what) {
  if (!j.is_array()) throw Error(Errc::ParseError, std::string(what) + " must be an array");
  std::vector<FieldElement> out;
  for (const auto& x : j) out.push_back(scalar_from_json(x, ctx));
  return out;
}

inline Json scalars_to_json(const std::vector<FieldElement>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x.to_string());
  return a;
}

/// Field comes from the document when present, else from `fallback`.
inline ParameterSequence sequence_from_json(const Json& j, const FieldCtx& fallback) {
  if (!j.is_object()) throw Error(Errc::ParseError, "parameter sequence must be an object");
  FieldCtx ctx = j.contains("field") ? field_from_json(j["field"]) : fallback;
  if (!j.contains("theta") || !j.contains("theta_star")) {
    throw Error(Errc::ParseError, "parameter sequence needs \"theta\" and \"theta_star\"");
  }
  auto p = ParameterSequence::make(scalars_from_json(j["theta"], ctx, "theta"),
                                   scalars_from_json(j["theta_star"], ctx, "theta_star"), ctx);
  if (j.contains("d")) {
    if (!j["d"].is_number_unsigned() || j["d"].get<std::size_t>() != p.d) {
      throw Error(Errc::DimensionMismatch, "\"d\" disagrees with the sequence lengths");
    }
  }
  return p;
}

inline Json to_json(const ParameterSequence& p) {
  return Json{{"d", p.d},
              {"field", to_json(p.ctx)},
              {"theta", scalars_to_json(p.theta)},
              {"theta_star", scalars_to_json(p.theta_star)}};
}

inline ParameterArray array_from_json(const Json& j, const FieldCtx& fallback) {
  ParameterArray arr{sequence_from_json(j, fallback), {}};
  if (!j.contains("zeta")) throw Error(Errc::ParseError, "parameter array needs \"zeta\"");
  arr.zeta = scalars_from_json(j["zeta"], arr.seq.ctx, "zeta");
  if (arr.zeta.size() != arr.seq.d + 1) throw Error(Errc::DimensionMismatch, "zeta must have d+1 entries");
  return arr;
}

inline Json to_json(const ParameterArray& arr) {
  Json j = to_json(arr.seq);
  j["zeta"] = scalars_to_json(arr.zeta);
  return j;
}

inline Json to_json(const FeasibilityReport& r) {
  Json j{{"feasible", r.feasible},
         {"distinct_theta", r.distinct_theta},
         {"distinct_theta_star", r.distinct_theta_star},
         {"ratios_equal", r.ratios_equal}};
  j["beta_plus_one"] = r.beta_plus_one ? Json(r.beta_plus_one->to_string()) : Json(nullptr);
  return j;
}

inline Json to_json(const QRacahWitness& w) {
  Json j{{"is_qracah", w.is_qracah},
         {"beta", w.beta.to_string()},
         {"omega", w.omega.to_string()},
         {"omega_star", w.omega_star.to_string()}};
  j["bc"] = w.bc ? Json(w.bc->to_string()) : Json(nullptr);
  j["bstar_cstar"] = w.bstar_cstar ? Json(w.bstar_cstar->to_string()) : Json(nullptr);
  return j;
}

inline Json to_json(const ValidationReport& r) {
  Json j{{"valid", r.valid},
         {"condition_i", r.condition_i},
         {"condition_ii", r.condition_ii},
         {"condition_iii", r.condition_iii},
         {"zeta0_is_one", r.zeta0_is_one},
         {"zeta_d_nonzero", r.zeta_d_nonzero},
         {"sum_nonzero", r.sum_nonzero}};
  j["sum"] = r.sum ? Json(r.sum->to_string()) : Json(nullptr);
  return j;
}

inline Json to_json(const WordType& t) {
  if (t.trivial()) return Json{{"trivial", true}};
  if (auto n = t.bracket_n()) return Json{{"n", *n}};
  return Json{{"length", t.length}, {"begin", t.begin.to_string()}, {"end", t.end.to_string()}};
}

inline Generator generator_from_text(const std::string& s) {
  Word w = Word::parse(s);
  if (w.length() != 1) throw Error(Errc::ParseError, "expected a single generator, got '" + s + "'");
  return w.begin();
}

inline WordType type_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::ParseError, "type must be an object");
  if (j.contains("trivial") && j["trivial"].get<bool>()) return WordType::trivial_type();
  if (j.contains("n")) return bracket_type(j["n"].get<std::size_t>());
  if (!j.contains("length") || !j.contains("begin") || !j.contains("end")) {
    throw Error(Errc::ParseError, "type needs n, or length/begin/end");
  }
  return WordType::make(j["length"].get<std::size_t>(), generator_from_text(j["begin"].get<std::string>()),
                        generator_from_text(j["end"].get<std::string>()));
}

inline Json to_json(const TElement& x) {
  Json a = Json::array();
  for (const auto& [w, c] : x.terms()) a.push_back(Json{{"word", w.to_string()}, {"coeff", c.to_string()}});
  return a;
}

inline TElement element_from_json(const Json& j, const FieldCtx& ctx) {
  if (!j.is_array()) throw Error(Errc::ParseError, "element must be a list of {word, coeff}");
  TElement x(ctx);
  for (const auto& term : j) {
    x.add_term(Word::parse(term.at("word").get<std::string>()), scalar_from_json(term.at("coeff"), ctx));
  }
  return x;
}

inline Json to_json(const DirectnessCertificate& c) {
  return Json{{"lambda", to_json(c.lambda)},
              {"d", c.d},
              {"field", to_json(c.field)},
              {"dim", c.dim_T_lambda},
              {"zigzag", c.dim_Z_lambda},
              {"relators", c.relator_count},
              {"rank", c.rank_R_lambda},
              {"lower_bound_holds", c.lower_bound_holds},
              {"direct", c.direct},
              {"p_digest", c.p_digest}};
}

inline Json to_json(const MuReport& r) {
  Json certs = Json::array();
  for (const auto& c : r.per_n) certs.push_back(to_json(c));
  Json chain = Json::array();
  for (const auto& s : mu_equivalence_chain()) chain.push_back(s);
  return Json{{"p_digest", r.p_digest},
              {"n_max", r.n_max},
              {"evidence_up_to_n_max", r.evidence_up_to_n_max},
              {"certificates", certs},
              {"equivalence_chain", chain},
              {"limitation", r.limitation}};
}

inline Json to_json(const PsiReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"identity", c.name}, {"in_R", c.in_R}});
  return Json{{"all_pass", r.all_pass}, {"checks", checks}};
}

inline std::string certificate_tsv_header() {
  return "lambda\td\tfield\tdim\tzigzag\trelators\trank\tdirect\tp_digest";
}

inline std::string to_tsv(const DirectnessCertificate& c) {
  return c.lambda.to_string() + "\t" + std::to_string(c.d) + "\t" + c.field.to_string() + "\t" +
         std::to_string(c.dim_T_lambda) + "\t" + std::to_string(c.dim_Z_lambda) + "\t" +
         std::to_string(c.relator_count) + "\t" + std::to_string(c.rank_R_lambda) + "\t" +
         (c.direct ? "true" : "false") + "\t" + c.p_digest;
}

}  // namespace tdpair::io
