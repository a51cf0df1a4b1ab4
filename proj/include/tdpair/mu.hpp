#pragma once

// Polynomial side of the mu-isomorphism: monomials of F[x_0..x_d], the
// interleaving map onto zigzag words of type [n], the change-of-basis matrix
// x_i -> sum_j tau_i(theta_j) x_j, and finite-range verification reports.

#include <cstdint>
#include <string>
#include <vector>

#include "tdpair/error.hpp"
#include "tdpair/linalg.hpp"
#include "tdpair/params.hpp"
#include "tdpair/relators.hpp"
#include "tdpair/words.hpp"

namespace tdpair {

/// Variable indices stored nonincreasing; the empty monomial is 1.
class Monomial {
 public:
  Monomial() = default;

  explicit Monomial(std::vector<std::uint32_t> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end(), std::greater<>());
  }

  std::size_t degree() const noexcept { return indices_.size(); }
  const std::vector<std::uint32_t>& indices() const noexcept { return indices_; }

  std::string to_string() const {
    if (indices_.empty()) return "1";
    std::string s;
    for (auto i : indices_) {
      if (!s.empty()) s += ' ';
      s += "x" + std::to_string(i);
    }
    return s;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> indices_;
};

/// All degree-n monomials in x_0..x_d, in decreasing lexicographic order of
/// their index tuples; there are C(n+d, d) of them.
inline std::vector<Monomial> monomials(std::size_t n, std::size_t d) {
  std::vector<Monomial> out;
  std::vector<std::uint32_t> cur;
  cur.reserve(n);
  auto rec = [&](auto&& self, std::uint32_t cap) -> void {
    if (cur.size() == n) {
      out.emplace_back(cur);
      return;
    }
    for (std::uint32_t i = cap + 1; i-- > 0;) {
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, static_cast<std::uint32_t>(d));
  return out;
}

/// 1 -> E0, y_1...y_n -> E0 y_1 E0 y_2 ... E0 y_n E0.
inline Word natural_map(const Monomial& m) {
  std::vector<std::uint8_t> idx{0};
  for (auto i : m.indices()) {
    if (i > kMaxDiameter) throw Error(Errc::InvalidArgument, "variable index too large");
    idx.push_back(static_cast<std::uint8_t>(i));
    idx.push_back(0);
  }
  return Word(Family::Starred, std::move(idx));
}

inline Monomial natural_inverse(const Word& w) {
  if (!type_of(w).bracket_n() || !is_zigzag(w)) {
    throw Error(Errc::NotZigzagBracketType, w.to_string());
  }
  std::vector<std::uint32_t> idx;
  for (std::size_t pos = 1; pos < w.length(); pos += 2) idx.push_back(w.indices()[pos]);
  return Monomial(std::move(idx));
}

/// d x d matrix with (i, j) entry tau_i(theta_j), 1 <= i, j <= d, stored with
/// zero-based row i-1 and column j-1.
inline SparseMatrix phi_matrix(const ParameterSequence& p) {
  require_feasible(p);
  if (p.d < 1) throw Error(Errc::UnsupportedDiameter, "phi matrix needs d >= 1");
  SparseMatrix m(p.ctx, p.d);
  for (std::size_t j = 1; j <= p.d; ++j) {
    std::vector<Entry> col;
    for (std::size_t i = 1; i <= p.d; ++i) {
      col.push_back(Entry{static_cast<std::uint32_t>(i - 1), tau_eval(TauKind::Tau, i, p.theta[j], p)});
    }
    m.push_column(std::move(col));
  }
  return m;
}

struct PhiMatrixCheck {
  bool upper_triangular = false;
  bool diagonal_nonzero = false;
  std::size_t rank = 0;
};

inline PhiMatrixCheck check_phi_matrix(const ParameterSequence& p) {
  SparseMatrix m = phi_matrix(p);
  PhiMatrixCheck c;
  c.upper_triangular = true;
  c.diagonal_nonzero = true;
  for (std::size_t j = 0; j < m.ncols(); ++j) {
    for (const auto& e : m.column(j)) {
      if (e.row > j) c.upper_triangular = false;
    }
    if (m.at(j, j).is_zero()) c.diagonal_nonzero = false;
  }
  c.rank = rank(m);
  return c;
}

inline constexpr const char* kMuLimitation =
    "finite evidence: directness verified only for 0 <= n <= n_max at this (p, F); "
    "the isomorphism statement quantifies over all n";

inline const std::vector<std::string>& mu_equivalence_chain() {
  static const std::vector<std::string> chain{
      "nu~ : P -> E0 T~ E0 is an isomorphism iff [n] is (p,F)-direct for every n >= 0",
      "mu is an isomorphism iff nu is an isomorphism (phi is invertible)",
      "nu is an isomorphism iff nu~ is an isomorphism",
  };
  return chain;
}

struct MuReport {
  std::string p_digest;
  std::size_t n_max = 0;
  std::vector<DirectnessCertificate> per_n;
  /// True iff every [n] with n <= n_max is direct.
  bool evidence_up_to_n_max = false;
  std::string limitation = kMuLimitation;
};

inline MuReport mu_verification(const ParameterSequence& p, std::size_t n_max) {
  require_feasible(p);
  MuReport r;
  r.p_digest = parameter_digest(p);
  r.n_max = n_max;
  r.evidence_up_to_n_max = true;
  for (std::size_t n = 0; n <= n_max; ++n) {
    r.per_n.push_back(directness_check(bracket_type(n), p));
    r.evidence_up_to_n_max = r.evidence_up_to_n_max && r.per_n.back().direct;
  }
  return r;
}

}  // namespace tdpair
