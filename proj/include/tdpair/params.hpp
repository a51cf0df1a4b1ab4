#pragma once

// Eigenvalue / dual eigenvalue sequences and parameter arrays of sharp
// tridiagonal systems.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tdpair/error.hpp"
#include "tdpair/field.hpp"

namespace tdpair {

struct ParameterSequence {
  std::size_t d = 0;
  std::vector<FieldElement> theta;
  std::vector<FieldElement> theta_star;
  FieldCtx ctx;

  static ParameterSequence make(std::vector<FieldElement> theta, std::vector<FieldElement> theta_star,
                                const FieldCtx& ctx) {
    if (theta.empty() || theta.size() != theta_star.size()) {
      throw Error(Errc::DimensionMismatch, "theta and theta_star must both have d+1 entries");
    }
    for (const auto& x : theta) require_same_ctx(ctx, x.ctx());
    for (const auto& x : theta_star) require_same_ctx(ctx, x.ctx());
    ParameterSequence p;
    p.d = theta.size() - 1;
    p.theta = std::move(theta);
    p.theta_star = std::move(theta_star);
    p.ctx = ctx;
    return p;
  }

  friend bool operator==(const ParameterSequence&, const ParameterSequence&) = default;
};

struct FeasibilityReport {
  bool distinct_theta = false;
  bool distinct_theta_star = false;
  bool ratios_equal = false;
  std::optional<FieldElement> beta_plus_one;
  bool feasible = false;
};

namespace detail {

inline bool all_distinct(const std::vector<FieldElement>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (xs[i] == xs[j]) return false;
    }
  }
  return true;
}

/// (t_{i-2} - t_{i+1}) / (t_{i-1} - t_i), or nullopt on a zero denominator.
inline std::optional<FieldElement> difference_ratio(const std::vector<FieldElement>& t, std::size_t i) {
  FieldElement den = t[i - 1] - t[i];
  if (den.is_zero()) return std::nullopt;
  return (t[i - 2] - t[i + 1]) / den;
}

}  // namespace detail

inline FeasibilityReport check_feasible(const ParameterSequence& p) {
  FeasibilityReport r;
  r.distinct_theta = detail::all_distinct(p.theta);
  r.distinct_theta_star = detail::all_distinct(p.theta_star);
  r.ratios_equal = true;
  if (p.d >= 3) {
    std::optional<FieldElement> common;
    for (std::size_t i = 2; i + 1 <= p.d && r.ratios_equal; ++i) {
      for (const auto* seq : {&p.theta, &p.theta_star}) {
        auto v = detail::difference_ratio(*seq, i);
        if (!v || (common && !(*common == *v))) {
          r.ratios_equal = false;
          break;
        }
        common = v;
      }
    }
    if (r.ratios_equal) r.beta_plus_one = common;
  }
  r.feasible = r.distinct_theta && r.distinct_theta_star && r.ratios_equal;
  return r;
}

inline void require_feasible(const ParameterSequence& p) {
  if (!check_feasible(p).feasible) throw Error(Errc::NotFeasible, "parameter sequence is not feasible");
}

/// theta_i = theta*_i = vartheta^i.
inline ParameterSequence geometric_sequence(const FieldElement& vartheta, std::size_t d) {
  const FieldCtx& ctx = vartheta.ctx();
  if (vartheta.is_zero()) throw Error(Errc::InvalidArgument, "vartheta must be nonzero");
  std::vector<FieldElement> t;
  FieldElement power = FieldElement::one(ctx);
  for (std::size_t i = 0; i <= d; ++i) {
    if (i > 0 && power.is_one()) {
      throw Error(Errc::RootOfUnity, "vartheta^" + std::to_string(i) + " = 1");
    }
    t.push_back(power);
    power *= vartheta;
  }
  return ParameterSequence::make(t, t, ctx);
}

/// t_i = (beta+1) t_{i-1} - (beta+1) t_{i-2} + t_{i-3} for 3 <= i <= d.
inline std::vector<FieldElement> recurrence_sequence(const FieldElement& beta, const FieldElement& t0,
                                                     const FieldElement& t1, const FieldElement& t2,
                                                     std::size_t d) {
  const FieldElement b1 = beta + FieldElement::one(beta.ctx());
  std::vector<FieldElement> t{t0, t1, t2};
  for (const auto& x : t) require_same_ctx(beta.ctx(), x.ctx());
  for (std::size_t i = 3; i <= d; ++i) t.push_back(b1 * t[i - 1] - b1 * t[i - 2] + t[i - 3]);
  t.resize(d + 1);
  return t;
}

struct QRacahWitness {
  FieldElement beta;
  FieldElement omega;
  FieldElement omega_star;
  bool is_qracah = false;
  std::optional<FieldElement> bc;
  std::optional<FieldElement> bstar_cstar;
};

namespace detail {

/// (t0-t1)^2 - beta (t0-t1)(t1-t2) + (t1-t2)^2
inline FieldElement omega_form(const FieldElement& beta, const std::vector<FieldElement>& t) {
  FieldElement x = t[0] - t[1];
  FieldElement y = t[1] - t[2];
  return x * x - beta * x * y + y * y;
}

}  // namespace detail

/// Decides membership in the q-Racah family through beta, omega and omega*;
/// q itself is never computed.
inline QRacahWitness qracah_witness(const ParameterSequence& p) {
  if (p.d < 3) throw Error(Errc::UnsupportedDiameter, "q-Racah detection needs d >= 3");
  FeasibilityReport f = check_feasible(p);
  if (!f.feasible) throw Error(Errc::NotFeasible, "parameter sequence is not feasible");
  const FieldElement one = FieldElement::one(p.ctx);
  const FieldElement two = FieldElement::from_integer(2, p.ctx);
  QRacahWitness w;
  w.beta = *f.beta_plus_one - one;
  w.omega = detail::omega_form(w.beta, p.theta);
  w.omega_star = detail::omega_form(w.beta, p.theta_star);
  const FieldElement four = FieldElement::from_integer(4, p.ctx);
  w.is_qracah = !(w.beta * w.beta == four) && !w.omega.is_zero() && !w.omega_star.is_zero();
  if (w.is_qracah) {
    FieldElement bm2 = w.beta - two;
    FieldElement den = bm2 * bm2 * (w.beta + two);
    w.bc = w.omega / den;
    w.bstar_cstar = w.omega_star / den;
  }
  return w;
}

/// theta_i = alpha + b q^{2i-d} + c q^{d-2i}, and the same for theta*.
inline ParameterSequence qracah_construct(const FieldElement& q, const FieldElement& alpha,
                                          const FieldElement& b, const FieldElement& c,
                                          const FieldElement& alpha_star, const FieldElement& b_star,
                                          const FieldElement& c_star, std::size_t d) {
  const FieldCtx& ctx = q.ctx();
  for (const auto* x : {&alpha, &b, &c, &alpha_star, &b_star, &c_star}) require_same_ctx(ctx, x->ctx());
  const FieldElement one = FieldElement::one(ctx);
  if (q.is_zero()) throw Error(Errc::ConstraintViolated, "q != 0");
  FieldElement q2 = q * q;
  if (q2 == one) throw Error(Errc::ConstraintViolated, "q^2 != 1");
  if (q2 == -one) throw Error(Errc::ConstraintViolated, "q^2 != -1");
  if ((b * b_star * c * c_star).is_zero()) throw Error(Errc::ConstraintViolated, "b b* c c* != 0");

  // q^{2i-d} = q^{-d} q2^i and q^{d-2i} = q^d q2^{-i}
  const FieldElement qd = q.pow(d);
  const FieldElement qd_inv = qd.inv();
  const FieldElement q2_inv = q2.inv();
  std::vector<FieldElement> theta, theta_star;
  FieldElement up = qd_inv, down = qd;
  for (std::size_t i = 0; i <= d; ++i) {
    theta.push_back(alpha + b * up + c * down);
    theta_star.push_back(alpha_star + b_star * up + c_star * down);
    up *= q2;
    down *= q2_inv;
  }
  if (!detail::all_distinct(theta) || !detail::all_distinct(theta_star)) {
    throw Error(Errc::NotDistinct, "q-Racah parameters give repeated eigenvalues");
  }
  return ParameterSequence::make(std::move(theta), std::move(theta_star), ctx);
}

enum class TauKind { Tau, Eta, TauStar, EtaStar };

/// tau_i = (x - t_0)...(x - t_{i-1}), eta_i = (x - t_d)...(x - t_{d-i+1});
/// starred kinds use theta*.
inline FieldElement tau_eval(TauKind kind, std::size_t i, const FieldElement& x, const ParameterSequence& p) {
  if (i > p.d) throw Error(Errc::IndexOutOfRange, "polynomial index exceeds d");
  require_same_ctx(x.ctx(), p.ctx);
  const bool star = kind == TauKind::TauStar || kind == TauKind::EtaStar;
  const bool from_top = kind == TauKind::Eta || kind == TauKind::EtaStar;
  const auto& t = star ? p.theta_star : p.theta;
  FieldElement acc = FieldElement::one(p.ctx);
  for (std::size_t h = 0; h < i; ++h) acc *= x - t[from_top ? p.d - h : h];
  return acc;
}

struct ParameterArray {
  ParameterSequence seq;
  std::vector<FieldElement> zeta;
};

struct ValidationReport {
  bool condition_i = false;   // distinct eigenvalues and dual eigenvalues
  bool condition_ii = false;  // common difference ratio
  bool zeta0_is_one = false;
  bool zeta_d_nonzero = false;
  bool sum_nonzero = false;
  bool condition_iii = false;
  std::optional<FieldElement> sum;
  /// Conditions (i)-(iii) all hold: a sharp TD system with this parameter
  /// array exists and is unique up to isomorphism.
  bool valid = false;
};

inline ValidationReport validate_parameter_array(const ParameterArray& arr) {
  const ParameterSequence& p = arr.seq;
  if (arr.zeta.size() != p.d + 1) throw Error(Errc::DimensionMismatch, "zeta must have d+1 entries");
  for (const auto& z : arr.zeta) require_same_ctx(p.ctx, z.ctx());
  ValidationReport r;
  FeasibilityReport f = check_feasible(p);
  r.condition_i = f.distinct_theta && f.distinct_theta_star;
  r.condition_ii = f.ratios_equal;
  r.zeta0_is_one = arr.zeta[0].is_one();
  r.zeta_d_nonzero = !arr.zeta[p.d].is_zero();
  FieldElement s = FieldElement::zero(p.ctx);
  for (std::size_t i = 0; i <= p.d; ++i) {
    s += tau_eval(TauKind::Eta, p.d - i, p.theta[0], p) *
         tau_eval(TauKind::EtaStar, p.d - i, p.theta_star[0], p) * arr.zeta[i];
  }
  r.sum_nonzero = !s.is_zero();
  r.sum = s;
  r.condition_iii = r.zeta0_is_one && r.zeta_d_nonzero && r.sum_nonzero;
  r.valid = r.condition_i && r.condition_ii && r.condition_iii;
  return r;
}

// ---------------------------------------------------------------------------
// Random sampling

/// Uniform draw from the field; over Q a small fraction num/den with
/// |num| <= 20 and 1 <= den <= 5.
inline FieldElement random_element(const FieldCtx& ctx, std::mt19937_64& rng) {
  if (ctx.is_prime()) {
    std::uniform_int_distribution<std::uint64_t> dist(0, ctx.modulus() - 1);
    return FieldElement::from_integer(mpz_class(std::to_string(dist(rng))), ctx);
  }
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 5);
  int n = num(rng);
  int m = den(rng);
  return FieldElement::from_integer(n, ctx) / FieldElement::from_integer(m, ctx);
}

inline constexpr int kSamplingAttempts = 64;

/// Draws beta and two independent starting triples, extends both by the
/// three-term recurrence and keeps the first feasible result.
inline ParameterSequence random_feasible(std::size_t d, const FieldCtx& ctx, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < kSamplingAttempts; ++attempt) {
    FieldElement beta = random_element(ctx, rng);
    std::vector<FieldElement> s(6);
    for (auto& x : s) x = random_element(ctx, rng);
    auto theta = recurrence_sequence(beta, s[0], s[1], s[2], d);
    auto theta_star = recurrence_sequence(beta, s[3], s[4], s[5], d);
    auto p = ParameterSequence::make(std::move(theta), std::move(theta_star), ctx);
    if (check_feasible(p).feasible) return p;
  }
  throw Error(Errc::NotFeasible, "no feasible sequence after " + std::to_string(kSamplingAttempts) + " draws");
}

/// Random admissible q-Racah input: q, b, c, b*, c* nonzero small integers
/// (q outside {0, +-1}), alphas arbitrary; retried until distinct.
struct QRacahInput {
  FieldElement q, alpha, b, c, alpha_star, b_star, c_star;
};

inline QRacahInput random_qracah_input(const FieldCtx& ctx, std::mt19937_64& rng) {
  auto nonzero = [&] {
    for (;;) {
      FieldElement x = random_element(ctx, rng);
      if (!x.is_zero()) return x;
    }
  };
  QRacahInput in;
  for (;;) {
    in.q = nonzero();
    FieldElement q2 = in.q * in.q;
    FieldElement one = FieldElement::one(ctx);
    if (!(q2 == one) && !(q2 == -one)) break;
  }
  in.alpha = random_element(ctx, rng);
  in.b = nonzero();
  in.c = nonzero();
  in.alpha_star = random_element(ctx, rng);
  in.b_star = nonzero();
  in.c_star = nonzero();
  return in;
}

inline ParameterSequence random_qracah(std::size_t d, const FieldCtx& ctx, std::mt19937_64& rng,
                                       QRacahInput* used = nullptr) {
  for (int attempt = 0; attempt < kSamplingAttempts; ++attempt) {
    QRacahInput in = random_qracah_input(ctx, rng);
    try {
      auto p = qracah_construct(in.q, in.alpha, in.b, in.c, in.alpha_star, in.b_star, in.c_star, d);
      if (used) *used = in;
      return p;
    } catch (const Error& e) {
      if (e.code() != Errc::NotDistinct) throw;
    }
  }
  throw Error(Errc::NotDistinct, "no distinct q-Racah sequence after " + std::to_string(kSamplingAttempts) + " draws");
}

}  // namespace tdpair
