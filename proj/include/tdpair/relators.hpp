#pragma once

// The ideal R(p) spanned by relators u a*^k v and u a^k v, its homogeneous
// pieces R_lambda as relator matrices over the word basis, and rank
// certificates for the sum T_lambda = R_lambda + Z_lambda being direct.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "tdpair/error.hpp"
#include "tdpair/field.hpp"
#include "tdpair/linalg.hpp"
#include "tdpair/params.hpp"
#include "tdpair/sparse_matrix.hpp"
#include "tdpair/words.hpp"

namespace tdpair {

struct APowerVector {
  bool starred = false;
  std::size_t k = 0;
  std::vector<FieldElement> coeffs;
};

/// Coefficients of a^k = sum theta_l^k e_l (or a*^k with theta*); k = 0 is all ones.
inline APowerVector a_power(const ParameterSequence& p, std::size_t k, bool starred) {
  APowerVector v{starred, k, {}};
  for (const auto& t : starred ? p.theta_star : p.theta) v.coeffs.push_back(t.pow(k));
  return v;
}

/// C inserts a*^k between a nonstarred end(u) and begin(v); CStar inserts a^k
/// between two starred generators.
enum class RelatorFamily { C, CStar };

struct RelatorSpec {
  RelatorFamily family = RelatorFamily::C;
  Word u;
  Word v;
  std::size_t k = 0;

  std::string to_string() const {
    return std::string(family == RelatorFamily::C ? "C" : "C*") + "(" + u.to_string() + " | " +
           v.to_string() + " | k=" + std::to_string(k) + ")";
  }

  friend bool operator==(const RelatorSpec&, const RelatorSpec&) = default;
};

inline bool relator_spec_valid(const RelatorSpec& s, std::size_t d) {
  if (s.u.trivial() || s.v.trivial()) return false;
  if (s.u.max_index() > d || s.v.max_index() > d) return false;
  Generator e = s.u.end(), b = s.v.begin();
  Family f = s.family == RelatorFamily::C ? Family::Nonstarred : Family::Starred;
  if (e.family != f || b.family != f) return false;
  long gap = std::labs(static_cast<long>(e.index) - static_cast<long>(b.index));
  return static_cast<long>(s.k) < gap;
}

/// Every relator spec whose relator is homogeneous of type t, ordered by the
/// length of u, then u, then v, then k.
inline std::vector<RelatorSpec> enumerate_relator_specs(const WordType& t, std::size_t d) {
  require_consistent(t, d);
  std::vector<RelatorSpec> specs;
  if (t.length < 3) return specs;
  for (std::size_t len_u = 1; len_u + 2 <= t.length; ++len_u) {
    const std::size_t len_v = t.length - 1 - len_u;
    const Family mid = len_u % 2 == 1 ? t.begin.family : other(t.begin.family);
    const RelatorFamily fam = mid == Family::Nonstarred ? RelatorFamily::C : RelatorFamily::CStar;
    for (std::uint32_t i = 0; i <= d; ++i) {
      WordType tu = WordType::make(len_u, t.begin, {mid, i});
      if (!tu.consistent()) continue;
      for (std::uint32_t j = 0; j <= d; ++j) {
        const std::size_t gap = i > j ? i - j : j - i;
        if (gap == 0) continue;
        WordType tv = WordType::make(len_v, {mid, j}, t.end);
        if (!tv.consistent()) continue;
        auto us = enumerate_words(tu, d);
        auto vs = enumerate_words(tv, d);
        for (const auto& u : us) {
          for (const auto& v : vs) {
            for (std::size_t k = 0; k < gap; ++k) specs.push_back(RelatorSpec{fam, u, v, k});
          }
        }
      }
    }
  }
  return specs;
}

/// sum_l coeff_l * u g_l v with g_l = E_l (family C) or e_l (family CStar).
inline TElement expand_relator(const RelatorSpec& s, const ParameterSequence& p) {
  if (!relator_spec_valid(s, p.d)) throw Error(Errc::DimensionMismatch, "relator spec invalid for d=" + std::to_string(p.d));
  const bool insert_starred = s.family == RelatorFamily::C;
  APowerVector ap = a_power(p, s.k, insert_starred);
  TElement out(p.ctx);
  for (std::size_t l = 0; l <= p.d; ++l) {
    Family f = insert_starred ? Family::Starred : Family::Nonstarred;
    Word g = Word::generator({f, static_cast<std::uint32_t>(l)});
    Word w = *word_mul(*word_mul(s.u, g), s.v);
    out.add_term(w, ap.coeffs[l]);
  }
  return out;
}

namespace detail {

/// Column of relator s over the word basis of its type.
inline std::vector<Entry> relator_column(const RelatorSpec& s, const ParameterSequence& p) {
  const bool insert_starred = s.family == RelatorFamily::C;
  const auto& seq = insert_starred ? p.theta_star : p.theta;
  const std::size_t len = s.u.length() + 1 + s.v.length();
  std::vector<std::uint8_t> idx(len);
  std::copy(s.u.indices().begin(), s.u.indices().end(), idx.begin());
  std::copy(s.v.indices().begin(), s.v.indices().end(), idx.begin() + s.u.length() + 1);
  std::vector<Entry> col;
  col.reserve(p.d + 1);
  for (std::size_t l = 0; l <= p.d; ++l) {
    idx[s.u.length()] = static_cast<std::uint8_t>(l);
    Word w(s.u.begin_family(), idx);
    col.push_back(Entry{static_cast<std::uint32_t>(word_position(w, p.d)), seq[l].pow(s.k)});
  }
  return col;
}

}  // namespace detail

/// Rows are the words of type t in canonical order, one column per relator spec.
inline SparseMatrix relator_matrix(const WordType& t, const ParameterSequence& p) {
  require_feasible(p);
  const std::size_t rows = type_dimension(t, p.d);
  SparseMatrix m(p.ctx, rows);
  for (const auto& s : enumerate_relator_specs(t, p.d)) m.push_column(detail::relator_column(s, p));
  return m;
}

/// Indicator columns of the zigzag words of type t.
inline SparseMatrix zigzag_matrix(const WordType& t, std::size_t d, const FieldCtx& ctx) {
  SparseMatrix m(ctx, type_dimension(t, d));
  for (const auto& w : enumerate_zigzag(t, d)) {
    m.push_column({Entry{static_cast<std::uint32_t>(word_position(w, d)), FieldElement::one(ctx)}});
  }
  return m;
}

/// Stable FNV-1a digest of the field and both sequences.
inline std::string parameter_digest(const ParameterSequence& p) {
  std::string text = p.ctx.to_string() + ";" + std::to_string(p.d) + ";";
  for (const auto& x : p.theta) text += x.to_string() + ",";
  text += ";";
  for (const auto& x : p.theta_star) text += x.to_string() + ",";
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

struct DirectnessCertificate {
  WordType lambda;
  std::size_t d = 0;
  FieldCtx field;
  std::string p_digest;
  std::size_t dim_T_lambda = 0;
  std::size_t dim_Z_lambda = 0;
  std::size_t relator_count = 0;
  std::size_t rank_R_lambda = 0;
  /// rank >= dim - zigzag, which always holds since T_lambda = R_lambda + Z_lambda.
  bool lower_bound_holds = false;
  bool direct = false;
};

inline DirectnessCertificate directness_check(const WordType& t, const ParameterSequence& p) {
  require_feasible(p);
  require_consistent(t, p.d);
  DirectnessCertificate c;
  c.lambda = t;
  c.d = p.d;
  c.field = p.ctx;
  c.p_digest = parameter_digest(p);
  c.dim_T_lambda = type_dimension(t, p.d);
  c.dim_Z_lambda = enumerate_zigzag(t, p.d).size();
  SparseMatrix m = relator_matrix(t, p);
  c.relator_count = m.ncols();
  c.rank_R_lambda = rank(m);
  c.lower_bound_holds = c.rank_R_lambda + c.dim_Z_lambda >= c.dim_T_lambda;
  c.direct = c.rank_R_lambda + c.dim_Z_lambda == c.dim_T_lambda;
  return c;
}

/// Same verdict through colspan(R_lambda) and colspan(Z_lambda) intersecting trivially.
inline bool directness_by_intersection(const WordType& t, const ParameterSequence& p) {
  require_feasible(p);
  return sum_is_direct(relator_matrix(t, p), zigzag_matrix(t, p.d, p.ctx));
}

/// Coordinates of a homogeneous element over the word basis of type t.
inline SparseVector component_vector(const TElement& x, const WordType& t, std::size_t d) {
  std::vector<Entry> v;
  for (const auto& [w, c] : x.terms()) {
    if (type_of(w) == t) v.push_back(Entry{static_cast<std::uint32_t>(word_position(w, d)), c});
  }
  return canonical_vector(std::move(v));
}

/// Membership in R, decided component by component.
inline bool in_R(const TElement& x, const ParameterSequence& p) {
  require_feasible(p);
  require_same_ctx(x.ctx(), p.ctx);
  for (const auto& t : x.support_types()) {
    if (!t.fits_diameter(p.d)) throw Error(Errc::DimensionMismatch, "element uses indices above d");
    for (const auto& [w, c] : x.terms()) {
      if (type_of(w) == t && w.max_index() > p.d) throw Error(Errc::DimensionMismatch, "element uses indices above d");
    }
    if (t.length < 3) return false;  // no relators below length 3, and the component is nonzero
    if (!in_span(relator_matrix(t, p), component_vector(x, t, p.d)).member) return false;
  }
  return true;
}

struct IdentityCheck {
  std::string name;
  bool in_R = false;
};

struct PsiReport {
  std::vector<IdentityCheck> checks;
  bool all_pass = false;
};

inline constexpr std::size_t kPsiDefaultMaxDiameter = 2;

/// Lifts Delta = 1 - sum e_i, Delta* = 1 - sum E_i and psi = (Delta - Delta*)^2
/// to the free algebra and checks that each identity's difference lies in R.
inline PsiReport verify_psi_identities(const ParameterSequence& p,
                                       std::size_t max_diameter = kPsiDefaultMaxDiameter) {
  require_feasible(p);
  if (p.d > max_diameter) {
    throw Error(Errc::UnsupportedDiameter, "psi checks limited to d <= " + std::to_string(max_diameter));
  }
  const FieldCtx& ctx = p.ctx;
  const TElement one = TElement::one(ctx);
  const TElement delta = one - TElement::family_sum(Family::Nonstarred, p.d, ctx);
  const TElement delta_star = one - TElement::family_sum(Family::Starred, p.d, ctx);
  const TElement diff = delta - delta_star;
  const TElement psi = diff * diff;

  PsiReport report;
  auto check = [&](std::string name, const TElement& x) {
    report.checks.push_back({std::move(name), in_R(x, p)});
  };
  check("Delta^2 - Delta", delta * delta - delta);
  check("Delta*^2 - Delta*", delta_star * delta_star - delta_star);
  for (std::uint32_t i = 0; i <= p.d; ++i) {
    const TElement e = TElement::generator(nonstarred(i), ctx);
    const TElement es = TElement::generator(starred(i), ctx);
    const std::string si = std::to_string(i);
    check("e" + si + " Delta", e * delta);
    check("Delta e" + si, delta * e);
    check("E" + si + " Delta*", es * delta_star);
    check("Delta* E" + si, delta_star * es);
    for (std::uint32_t j = 0; j <= p.d; ++j) {
      const TElement f = TElement::generator(nonstarred(j), ctx);
      const TElement fs = TElement::generator(starred(j), ctx);
      const std::string sj = std::to_string(j);
      TElement lhs = e * delta_star * f;
      if (i == j) lhs -= psi * e;
      check("e" + si + " Delta* e" + sj + (i == j ? " - psi e" + si : ""), lhs);
      TElement lhs_star = es * delta * fs;
      if (i == j) lhs_star -= psi * es;
      check("E" + si + " Delta E" + sj + (i == j ? " - psi E" + si : ""), lhs_star);
    }
    check("e" + si + " psi - psi e" + si, e * psi - psi * e);
    check("E" + si + " psi - psi E" + si, es * psi - psi * es);
  }
  report.all_pass = true;
  for (const auto& c : report.checks) report.all_pass = report.all_pass && c.in_R;
  return report;
}

}  // namespace tdpair
