#pragma once

// Command-line front end. Exit codes: 0 verified/valid, 1 refuted, 2 input error.
// A JSON report (or TSV table) is written to `out` in every case.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tdpair/error.hpp"
#include "tdpair/field.hpp"
#include "tdpair/json_io.hpp"
#include "tdpair/mu.hpp"
#include "tdpair/params.hpp"
#include "tdpair/relators.hpp"
#include "tdpair/scan.hpp"
#include "tdpair/words.hpp"

namespace tdpair::cli {

enum ExitCode : int { kOk = 0, kRefuted = 1, kInputError = 2 };

using io::Json;

struct JobSpec {
  std::string command;
  std::string input_path;
  std::string inline_json;
  std::string field = "rational";
  std::optional<std::size_t> d;
  std::optional<std::size_t> n;
  std::size_t n_max = 3;
  std::string lambda;
  std::uint64_t seed = 1;
  std::size_t samples = 10;
  std::size_t max_length = 5;
  std::string format = "json";
  bool count_only = false;
  bool random = false;
  std::size_t max_psi_d = kPsiDefaultMaxDiameter;
  std::string word;
  // Scalars for the generators, as text.
  std::string vartheta, beta, t0, t1, t2, s0, s1, s2;
  std::string q, alpha, b, c, alpha_star, b_star, c_star;
};

/// "n=2", "trivial", or "len=5,begin=E0,end=e1".
inline WordType parse_lambda(const std::string& text) {
  if (text == "trivial") return WordType::trivial_type();
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(Errc::ParseError, "bad lambda item '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  auto number = [](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(Errc::ParseError, "bad lambda number '" + s + "'");
    }
    return static_cast<std::size_t>(std::stoull(s));
  };
  if (kv.size() == 1 && kv.count("n")) return bracket_type(number(kv["n"]));
  std::string len = kv.count("len") ? kv["len"] : kv.count("length") ? kv["length"] : "";
  if (len.empty() || !kv.count("begin") || !kv.count("end")) {
    throw Error(Errc::ParseError, "lambda must be n=N, trivial, or len=L,begin=G,end=G");
  }
  return WordType::make(number(len), io::generator_from_text(kv["begin"]), io::generator_from_text(kv["end"]));
}

namespace detail {

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline Json load_json(const JobSpec& job) {
  std::string text;
  if (!job.inline_json.empty()) {
    text = job.inline_json;
  } else if (!job.input_path.empty()) {
    std::ifstream in(job.input_path);
    if (!in) throw Error(Errc::ParseError, "cannot read " + job.input_path);
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  } else {
    throw Error(Errc::InvalidArgument, job.command + " needs --input or --json");
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

inline std::size_t require_d(const JobSpec& job) {
  if (!job.d) throw Error(Errc::InvalidArgument, job.command + " needs --d");
  return *job.d;
}

inline FieldElement scalar(const std::string& text, const char* flag, const FieldCtx& ctx) {
  if (text.empty()) throw Error(Errc::InvalidArgument, std::string("missing --") + flag);
  return FieldElement::parse(text, ctx);
}

inline void check_d(const JobSpec& job, const ParameterSequence& p) {
  if (job.d && *job.d != p.d) {
    throw Error(Errc::DimensionMismatch, "--d " + std::to_string(*job.d) + " but input has d=" + std::to_string(p.d));
  }
}

inline WordType job_lambda(const JobSpec& job) {
  if (!job.lambda.empty()) return parse_lambda(job.lambda);
  if (job.n) return bracket_type(*job.n);
  throw Error(Errc::InvalidArgument, job.command + " needs --lambda or --n");
}

inline int cmd_feas_check(const JobSpec& job, const FieldCtx& ctx, std::ostream& out) {
  auto p = io::sequence_from_json(load_json(job), ctx);
  check_d(job, p);
  auto r = check_feasible(p);
  emit(out, io::to_json(r));
  return r.feasible ? kOk : kRefuted;
}

inline int cmd_qracah(const JobSpec& job, const FieldCtx& ctx, std::ostream& out) {
  if (!job.input_path.empty() || !job.inline_json.empty()) {
    auto p = io::sequence_from_json(load_json(job), ctx);
    check_d(job, p);
    auto w = qracah_witness(p);
    emit(out, io::to_json(w));
    return w.is_qracah ? kOk : kRefuted;
  }
  std::size_t d = require_d(job);
  auto p = qracah_construct(scalar(job.q, "q", ctx), scalar(job.alpha, "alpha", ctx), scalar(job.b, "b", ctx),
                            scalar(job.c, "c", ctx), scalar(job.alpha_star, "alpha-star", ctx),
                            scalar(job.b_star, "b-star", ctx), scalar(job.c_star, "c-star", ctx), d);
  Json j{{"sequence", io::to_json(p)}};
  j["witness"] = d >= 3 ? io::to_json(qracah_witness(p)) : Json(nullptr);
  emit(out, j);
  return kOk;
}

inline int cmd_gen_geometric(const JobSpec& job, const FieldCtx& ctx, std::ostream& out) {
  auto p = geometric_sequence(scalar(job.vartheta, "vartheta", ctx), require_d(job));
  emit(out, io::to_json(p));
  return kOk;
}

inline int cmd_gen_recurrence(const JobSpec& job, const FieldCtx& ctx, std::ostream& out) {
  std::size_t d = require_d(job);
  if (job.random) {
    std::mt19937_64 rng(job.seed);
    emit(out, io::to_json(random_feasible(d, ctx, rng)));
    return kOk;
  }
  FieldElement beta = scalar(job.beta, "beta", ctx);
  auto theta = recurrence_sequence(beta, scalar(job.t0, "t0", ctx), scalar(job.t1, "t1", ctx),
                                   scalar(job.t2, "t2", ctx), d);
  if (job.s0.empty() && job.s1.empty() && job.s2.empty()) {
    emit(out, Json{{"d", d}, {"field", io::to_json(ctx)}, {"values", io::scalars_to_json(theta)}});
    return kOk;
  }
  auto theta_star = recurrence_sequence(beta, scalar(job.s0, "s0", ctx), scalar(job.s1, "s1", ctx),
                                        scalar(job.s2, "s2", ctx), d);
  auto p = ParameterSequence::make(theta, theta_star, ctx);
  auto r = check_feasible(p);
  Json j = io::to_json(p);
  j["feasibility"] = io::to_json(r);
  emit(out, j);
  return r.feasible ? kOk : kRefuted;
}

inline int cmd_validate_array(const JobSpec& job, const FieldCtx& ctx, std::ostream& out) {
  auto arr = io::array_from_json(load_json(job), ctx);
  check_d(job, arr.seq);
  auto r = validate_parameter_array(arr);
  emit(out, io::to_json(r));
  return r.valid ? kOk : kRefuted;
}

inline int cmd_words(const JobSpec& job, std::ostream& out) {
  std::size_t d = require_d(job);
  WordType t = job_lambda(job);
  auto ws = enumerate_words(t, d);
  if (job.count_only) {
    out << ws.size() << '\n';
    return kOk;
  }
  Json list = Json::array();
  for (const auto& w : ws) list.push_back(w.to_string());
  emit(out, Json{{"lambda", io::to_json(t)}, {"d", d}, {"count", ws.size()}, {"words", list}});
  return kOk;
}

inline int cmd_zigzag(const JobSpec& job, std::ostream& out) {
  if (!job.word.empty()) {
    Word w = Word::parse(job.word);
    Json j{{"word", w.to_string()}, {"is_zigzag", is_zigzag(w)}, {"is_zigzag_via_signs", is_zigzag_via_signs(w)}};
    j["kappa"] = (!w.is_constant() && is_zigzag(w)) ? Json(kappa_of(w)) : Json(nullptr);
    j["bracket_zigzag"] = type_of(w).bracket_n() ? Json(is_bracket_zigzag(w)) : Json(nullptr);
    emit(out, j);
    return is_zigzag(w) ? kOk : kRefuted;
  }
  std::size_t d = require_d(job);
  WordType t = job_lambda(job);
  auto ws = enumerate_zigzag(t, d);
  if (job.count_only) {
    out << ws.size() << '\n';
    return kOk;
  }
  Json list = Json::array();
  for (const auto& w : ws) list.push_back(w.to_string());
  emit(out, Json{{"lambda", io::to_json(t)}, {"d", d}, {"count", ws.size()}, {"words", list}});
  return kOk;
}

inline int cmd_directness(const JobSpec& job, const FieldCtx& ctx, std::ostream& out) {
  auto p = io::sequence_from_json(load_json(job), ctx);
  check_d(job, p);
  auto c = directness_check(job_lambda(job), p);
  if (job.format == "tsv") {
    out << io::certificate_tsv_header() << '\n' << io::to_tsv(c) << '\n';
  } else {
    emit(out, io::to_json(c));
  }
  return c.direct ? kOk : kRefuted;
}

inline int cmd_mu_verify(const JobSpec& job, const FieldCtx& ctx, std::ostream& out) {
  auto p = io::sequence_from_json(load_json(job), ctx);
  check_d(job, p);
  auto r = mu_verification(p, job.n_max);
  if (job.format == "tsv") {
    out << io::certificate_tsv_header() << '\n';
    for (const auto& c : r.per_n) out << io::to_tsv(c) << '\n';
  } else {
    emit(out, io::to_json(r));
  }
  return r.evidence_up_to_n_max ? kOk : kRefuted;
}

inline int cmd_psi_check(const JobSpec& job, const FieldCtx& ctx, std::ostream& out) {
  auto p = io::sequence_from_json(load_json(job), ctx);
  check_d(job, p);
  auto r = verify_psi_identities(p, job.max_psi_d);
  emit(out, io::to_json(r));
  return r.all_pass ? kOk : kRefuted;
}

inline int cmd_conjecture_scan(const JobSpec& job, const FieldCtx& ctx, std::ostream& out) {
  auto s = conjecture_scan(require_d(job), job.max_length, job.samples, job.seed, ctx);
  if (job.format == "tsv") {
    out << "sample\t" << io::certificate_tsv_header() << '\n';
    for (std::size_t i = 0; i < s.certificates.size(); ++i) {
      out << i / std::max<std::size_t>(1, s.types) << '\t' << io::to_tsv(s.certificates[i]) << '\n';
    }
  } else {
    Json failures = Json::array();
    for (const auto& f : s.failures) {
      failures.push_back(Json{{"certificate", io::to_json(f.certificate)}, {"p", io::to_json(f.p)}});
    }
    emit(out, Json{{"d", s.d},
                   {"max_length", s.max_length},
                   {"samples", s.samples},
                   {"seed", s.seed},
                   {"field", io::to_json(s.field)},
                   {"types", s.types},
                   {"total", s.total},
                   {"direct", s.direct},
                   {"lower_bound_violations", s.lower_bound_violations},
                   {"failures", failures}});
  }
  return s.failures.empty() && s.lower_bound_violations == 0 ? kOk : kRefuted;
}

inline bool is_refutation(Errc code) {
  return code == Errc::NotFeasible || code == Errc::RootOfUnity || code == Errc::NotDistinct ||
         code == Errc::ConstraintViolated;
}

}  // namespace detail

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{
      "feas-check", "qracah",     "gen-geometric", "gen-recurrence", "validate-array", "words",
      "zigzag",     "directness", "mu-verify",     "psi-check",      "conjecture-scan"};
  return names;
}

/// Runs one job and writes its report.
inline int execute(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    FieldCtx ctx = FieldCtx::parse(job.field);
    if (job.format != "json" && job.format != "tsv") throw Error(Errc::InvalidArgument, "--format must be json or tsv");
    const std::string& c = job.command;
    if (c == "feas-check") return detail::cmd_feas_check(job, ctx, out);
    if (c == "qracah") return detail::cmd_qracah(job, ctx, out);
    if (c == "gen-geometric") return detail::cmd_gen_geometric(job, ctx, out);
    if (c == "gen-recurrence") return detail::cmd_gen_recurrence(job, ctx, out);
    if (c == "validate-array") return detail::cmd_validate_array(job, ctx, out);
    if (c == "words") return detail::cmd_words(job, out);
    if (c == "zigzag") return detail::cmd_zigzag(job, out);
    if (c == "directness") return detail::cmd_directness(job, ctx, out);
    if (c == "mu-verify") return detail::cmd_mu_verify(job, ctx, out);
    if (c == "psi-check") return detail::cmd_psi_check(job, ctx, out);
    if (c == "conjecture-scan") return detail::cmd_conjecture_scan(job, ctx, out);
    throw Error(Errc::InvalidArgument, "unknown command '" + c + "'");
  } catch (const Error& e) {
    const bool refuted = detail::is_refutation(e.code());
    detail::emit(out, Json{{"ok", false}, {"error", std::string(errc_name(e.code()))}, {"message", e.what()}});
    if (!refuted) err << "error: " << e.what() << '\n';
    return refuted ? kRefuted : kInputError;
  } catch (const std::exception& e) {
    detail::emit(out, Json{{"ok", false}, {"error", "InvalidArgument"}, {"message", e.what()}});
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

/// Parses argv-style arguments (without the program name) and executes.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification toolkit for sharp tridiagonal systems", "tdp"};
  app.require_subcommand(1);
  JobSpec job;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--field", job.field, "rational | prime:P")->capture_default_str();
    sub->add_option("--d", job.d, "diameter");
  };
  auto with_input = [&](CLI::App* sub) {
    sub->add_option("--input", job.input_path, "JSON file with the parameter sequence");
    sub->add_option("--json", job.inline_json, "inline JSON instead of --input");
  };
  auto with_lambda = [&](CLI::App* sub) {
    sub->add_option("--lambda", job.lambda, "type: n=N | trivial | len=L,begin=G,end=G");
    sub->add_option("--n", job.n, "shorthand for --lambda n=N");
  };
  auto with_format = [&](CLI::App* sub) {
    sub->add_option("--format", job.format, "json | tsv")->capture_default_str();
  };

  auto* feas = app.add_subcommand("feas-check", "feasibility of (theta; theta*)");
  common(feas);
  with_input(feas);

  auto* qr = app.add_subcommand("qracah", "q-Racah witness of a sequence, or construction from q, alpha, b, c, ...");
  common(qr);
  with_input(qr);
  qr->add_option("--q", job.q);
  qr->add_option("--alpha", job.alpha);
  qr->add_option("--b", job.b);
  qr->add_option("--c", job.c);
  qr->add_option("--alpha-star", job.alpha_star);
  qr->add_option("--b-star", job.b_star);
  qr->add_option("--c-star", job.c_star);

  auto* geo = app.add_subcommand("gen-geometric", "theta_i = theta*_i = vartheta^i");
  common(geo);
  geo->add_option("--vartheta", job.vartheta)->required();

  auto* rec = app.add_subcommand("gen-recurrence", "three-term recurrence extension, or a random feasible sequence");
  common(rec);
  rec->add_option("--beta", job.beta);
  rec->add_option("--t0", job.t0);
  rec->add_option("--t1", job.t1);
  rec->add_option("--t2", job.t2);
  rec->add_option("--s0", job.s0, "theta*_0 (optional)");
  rec->add_option("--s1", job.s1, "theta*_1 (optional)");
  rec->add_option("--s2", job.s2, "theta*_2 (optional)");
  rec->add_flag("--random", job.random, "sample a random feasible sequence");
  rec->add_option("--seed", job.seed)->capture_default_str();

  auto* val = app.add_subcommand("validate-array", "classification conditions for a parameter array");
  common(val);
  with_input(val);

  auto* words = app.add_subcommand("words", "words of a type");
  common(words);
  with_lambda(words);
  words->add_flag("--count-only", job.count_only);

  auto* zz = app.add_subcommand("zigzag", "zigzag words of a type, or verdicts for --word");
  common(zz);
  with_lambda(zz);
  zz->add_flag("--count-only", job.count_only);
  zz->add_option("--word", job.word, "e.g. \"E0 e2 E0 e1 E0\"");

  auto* dir = app.add_subcommand("directness", "rank certificate for R_lambda + Z_lambda being direct");
  common(dir);
  with_input(dir);
  with_lambda(dir);
  with_format(dir);

  auto* mu = app.add_subcommand("mu-verify", "directness of [0..n_max]");
  common(mu);
  with_input(mu);
  with_format(mu);
  mu->add_option("--n-max", job.n_max)->capture_default_str();

  auto* psi = app.add_subcommand("psi-check", "central-element identities modulo R");
  common(psi);
  with_input(psi);
  psi->add_option("--max-d", job.max_psi_d, "largest diameter accepted")->capture_default_str();

  auto* scan = app.add_subcommand("conjecture-scan", "directness over all types up to a length");
  common(scan);
  with_format(scan);
  scan->add_option("--max-length", job.max_length)->capture_default_str();
  scan->add_option("--samples", job.samples)->capture_default_str();
  scan->add_option("--seed", job.seed)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    detail::emit(out, Json{{"ok", false}, {"error", "ParseError"}, {"message", e.what()}});
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  for (auto* sub : app.get_subcommands()) job.command = sub->get_name();
  return execute(job, out, err);
}

}  // namespace tdpair::cli
