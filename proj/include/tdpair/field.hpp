#pragma once

// Exact scalars: arbitrary-precision rationals and prime fields GF(p), p < 2^62.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "tdpair/error.hpp"

namespace tdpair {

namespace modp {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;  // a, b < 2^62 so no wrap
  return s >= p ? s - p : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t neg(std::uint64_t a, std::uint64_t p) { return a == 0 ? 0 : p - a; }

/// Inverse of a nonzero residue by the extended Euclidean algorithm.
inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  __int128 t = 0, new_t = 1;
  __int128 r = p, new_r = a;
  while (new_r != 0) {
    __int128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

inline std::uint64_t reduce(const mpz_class& n, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace modp

class FieldCtx {
 public:
  enum class Kind { Rational, Prime };

  static constexpr std::uint64_t kMaxPrime = std::uint64_t{1} << 62;

  FieldCtx() = default;

  static FieldCtx rational() { return FieldCtx{}; }

  static FieldCtx prime(std::uint64_t p) {
    if (p < 2 || p >= kMaxPrime) {
      throw Error(Errc::InvalidArgument, "prime modulus must satisfy 2 <= p < 2^62");
    }
    mpz_class z(std::to_string(p));
    // BPSW; deterministic below 2^64.
    if (mpz_probab_prime_p(z.get_mpz_t(), 30) == 0) {
      throw Error(Errc::InvalidArgument, std::to_string(p) + " is not prime");
    }
    FieldCtx ctx;
    ctx.kind_ = Kind::Prime;
    ctx.p_ = p;
    return ctx;
  }

  /// Parses "rational" or "prime:P".
  static FieldCtx parse(std::string_view text) {
    if (text == "rational" || text == "Q") return rational();
    constexpr std::string_view prefix = "prime:";
    if (text.substr(0, prefix.size()) == prefix) {
      std::string digits(text.substr(prefix.size()));
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw Error(Errc::ParseError, "bad prime modulus '" + digits + "'");
      }
      return prime(std::stoull(digits));
    }
    throw Error(Errc::ParseError, "unknown field '" + std::string(text) + "'");
  }

  Kind kind() const noexcept { return kind_; }
  bool is_rational() const noexcept { return kind_ == Kind::Rational; }
  bool is_prime() const noexcept { return kind_ == Kind::Prime; }
  std::uint64_t modulus() const noexcept { return p_; }

  std::string to_string() const {
    return is_rational() ? std::string("rational") : "prime:" + std::to_string(p_);
  }

  friend bool operator==(const FieldCtx&, const FieldCtx&) = default;

 private:
  Kind kind_ = Kind::Rational;
  std::uint64_t p_ = 0;
};

inline void require_same_ctx(const FieldCtx& a, const FieldCtx& b) {
  if (!(a == b)) {
    throw Error(Errc::CtxMismatch, a.to_string() + " vs " + b.to_string());
  }
}

/// A ctx-tagged field value kept in canonical form: reduced fraction with
/// positive denominator, or residue in [0, p).
class FieldElement {
 public:
  FieldElement() : value_(mpq_class(0)) {}

  static FieldElement from_integer(const mpz_class& n, const FieldCtx& ctx) {
    if (ctx.is_rational()) return FieldElement(ctx, mpq_class(n));
    return FieldElement(ctx, modp::reduce(n, ctx.modulus()));
  }

  static FieldElement from_integer(long long n, const FieldCtx& ctx) {
    return from_integer(mpz_class(std::to_string(n)), ctx);
  }

  static FieldElement zero(const FieldCtx& ctx) { return from_integer(0, ctx); }
  static FieldElement one(const FieldCtx& ctx) { return from_integer(1, ctx); }

  static FieldElement from_rational(const mpq_class& q, const FieldCtx& ctx) {
    if (ctx.is_rational()) {
      mpq_class c = q;
      c.canonicalize();
      return FieldElement(ctx, std::move(c));
    }
    return from_integer(q.get_num(), ctx) / from_integer(q.get_den(), ctx);
  }

  /// Accepts "n" or "n/m" with optional sign. In GF(p) a fraction denotes n * m^-1.
  static FieldElement parse(std::string_view text, const FieldCtx& ctx) {
    std::string s(text);
    auto valid_int = [](const std::string& t) {
      std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
      return t.size() > start && t.find_first_not_of("0123456789", start) == std::string::npos;
    };
    auto to_mpz = [](std::string t) {
      if (!t.empty() && t[0] == '+') t.erase(0, 1);
      return mpz_class(t);
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) {
      throw Error(Errc::ParseError, "malformed scalar '" + s + "'");
    }
    mpz_class n = to_mpz(num), m = to_mpz(den);
    if (m == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + s + "'");
    return from_integer(n, ctx) / from_integer(m, ctx);
  }

  const FieldCtx& ctx() const noexcept { return ctx_; }

  bool is_zero() const {
    if (ctx_.is_rational()) return sgn(rational()) == 0;
    return residue() == 0;
  }
  bool is_one() const {
    if (ctx_.is_rational()) return rational() == 1;
    return residue() == 1;
  }

  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }

  FieldElement operator-() const {
    if (ctx_.is_rational()) return FieldElement(ctx_, mpq_class(-rational()));
    return FieldElement(ctx_, modp::neg(residue(), ctx_.modulus()));
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_ctx(a.ctx_, b.ctx_);
    if (a.ctx_.is_rational()) return FieldElement(a.ctx_, mpq_class(a.rational() + b.rational()));
    return FieldElement(a.ctx_, modp::add(a.residue(), b.residue(), a.ctx_.modulus()));
  }

  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same_ctx(a.ctx_, b.ctx_);
    if (a.ctx_.is_rational()) return FieldElement(a.ctx_, mpq_class(a.rational() - b.rational()));
    return FieldElement(a.ctx_, modp::sub(a.residue(), b.residue(), a.ctx_.modulus()));
  }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_ctx(a.ctx_, b.ctx_);
    if (a.ctx_.is_rational()) return FieldElement(a.ctx_, mpq_class(a.rational() * b.rational()));
    return FieldElement(a.ctx_, modp::mul(a.residue(), b.residue(), a.ctx_.modulus()));
  }

  FieldElement inv() const {
    if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
    if (ctx_.is_rational()) return FieldElement(ctx_, mpq_class(1 / rational()));
    return FieldElement(ctx_, modp::inv(residue(), ctx_.modulus()));
  }

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    require_same_ctx(a.ctx_, b.ctx_);
    return a * b.inv();
  }

  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

  /// Nonnegative integer power; pow(0) is 1 (including 0^0).
  FieldElement pow(unsigned long k) const {
    FieldElement result = one(ctx_);
    FieldElement base = *this;
    while (k > 0) {
      if (k & 1UL) result *= base;
      k >>= 1;
      if (k > 0) base *= base;
    }
    return result;
  }

  /// "num/den" (den omitted when 1) or the decimal residue.
  std::string to_string() const {
    if (ctx_.is_rational()) {
      const mpq_class& q = rational();
      if (q.get_den() == 1) return q.get_num().get_str();
      return q.get_num().get_str() + "/" + q.get_den().get_str();
    }
    return std::to_string(residue());
  }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    if (!(a.ctx_ == b.ctx_)) return false;
    if (a.ctx_.is_rational()) return a.rational() == b.rational();
    return a.residue() == b.residue();
  }

 private:
  FieldElement(const FieldCtx& ctx, mpq_class q) : ctx_(ctx), value_(std::move(q)) {}
  FieldElement(const FieldCtx& ctx, std::uint64_t r) : ctx_(ctx), value_(r) {}

  FieldCtx ctx_;
  std::variant<mpq_class, std::uint64_t> value_;
};

enum class ArithOp { Add, Sub, Mul, Div, Neg, Inv };

/// Dispatching form of the field operations; unary ops ignore `b`.
inline FieldElement arith(ArithOp op, const FieldElement& a, const FieldElement* b = nullptr) {
  auto rhs = [&]() -> const FieldElement& {
    if (b == nullptr) throw Error(Errc::InvalidArgument, "binary operation needs two operands");
    return *b;
  };
  switch (op) {
    case ArithOp::Add: return a + rhs();
    case ArithOp::Sub: return a - rhs();
    case ArithOp::Mul: return a * rhs();
    case ArithOp::Div: return a / rhs();
    case ArithOp::Neg: return -a;
    case ArithOp::Inv: return a.inv();
  }
  throw Error(Errc::InvalidArgument, "unknown operation");
}

}  // namespace tdpair
