// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "test_oracles.hpp"
#include "tdpair/json_io.hpp"
#include "tdpair/mu.hpp"
#include "tdpair/params.hpp"
#include "tdpair/relators.hpp"
#include "tdpair/scan.hpp"
#include "tdpair/words.hpp"

using namespace tdpair;

namespace {

const FieldCtx Q = FieldCtx::rational();
const FieldCtx GF = FieldCtx::prime(1000003);

/// Collects failure messages for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 20) failures.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failed = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  double s = seconds_since(t0);
  if (limit_s > 0 && s > limit_s) c.failures.push_back("time " + std::to_string(s) + " s exceeds limit");
  const bool ok = c.failures.empty();
  if (!ok) ++failed;
  std::cout << (ok ? "PASS" : "FAIL") << "  " << id << ". " << title << "  (" << s << " s)\n";
  for (const auto& f : c.failures) std::cout << "      " << f << '\n';
  std::cout.flush();
}

std::vector<Word> all_words(std::size_t len, std::size_t d) {
  if (len == 0) return {Word()};
  std::vector<Word> out;
  std::vector<std::uint8_t> idx(len, 0);
  for (;;) {
    out.emplace_back(Family::Starred, idx);
    out.emplace_back(Family::Nonstarred, idx);
    std::size_t pos = len;
    while (pos > 0 && idx[pos - 1] == d) idx[--pos] = 0;
    if (pos == 0) break;
    ++idx[pos - 1];
  }
  return out;
}

std::string where(std::size_t d, std::size_t n) { return "d=" + std::to_string(d) + " n=" + std::to_string(n); }

}  // namespace

int main() {
  std::cout << "tdpair acceptance suite\n";

  criterion(1, "word, zigzag and monomial counts; natural map is a bijection", 5, [](Check& c) {
    for (std::size_t d = 1; d <= 3; ++d) {
      for (std::size_t n = 0; n <= 4; ++n) {
        const auto words = enumerate_words(bracket_type(n), d);
        const std::uint64_t expected = n == 0 ? 1 : oracle::ipow(d + 1, 2 * n - 1);
        c.expect(words.size() == expected, "word count " + where(d, n));
        const auto zz = enumerate_zigzag(bracket_type(n), d);
        const auto ms = monomials(n, d);
        const auto binom = oracle::binomial(n + d, d);
        c.expect(zz.size() == binom, "zigzag count " + where(d, n));
        c.expect(ms.size() == binom, "monomial count " + where(d, n));
        std::set<Word> image;
        for (const auto& m : ms) {
          Word w = natural_map(m);
          image.insert(w);
          c.expect(natural_inverse(w) == m, "inverse " + m.to_string());
        }
        c.expect(image == std::set<Word>(zz.begin(), zz.end()), "image != zigzag set " + where(d, n));
      }
    }
  });

  criterion(2, "zigzag definition, sign characterization and [n] test agree; kappa unique", 30, [](Check& c) {
    std::size_t checked = 0;
    for (std::size_t d = 0; d <= 3; ++d) {
      for (std::size_t len = 0; len <= 6; ++len) {
        for (const auto& w : all_words(len, d)) {
          ++checked;
          const bool z = is_zigzag(w);
          c.expect(z == is_zigzag_via_signs(w), "sign test disagrees on " + w.to_string());
          if (type_of(w).bracket_n()) c.expect(z == is_bracket_zigzag(w), "[n] test disagrees on " + w.to_string());
          if (z && !w.is_constant()) {
            try {
              std::size_t k = kappa_of(w);  // throws unless exactly one kappa fits
              c.expect(k >= 2 && k <= w.length(), "kappa out of range on " + w.to_string());
            } catch (const Error& e) {
              c.expect(false, e.what());
            }
          }
        }
      }
    }
    c.expect(checked > 0, "no words checked");
  });

  // Criteria 3 and 4 share the same runs.
  std::vector<std::pair<std::string, ParameterSequence>> cases;
  for (std::size_t d = 1; d <= 3; ++d) {
    cases.emplace_back("geometric 2 over Q, d=" + std::to_string(d),
                       geometric_sequence(FieldElement::from_integer(2, Q), d));
    auto f = [](long x) { return FieldElement::from_integer(x, Q); };
    cases.emplace_back("q-Racah over Q, d=" + std::to_string(d),
                       qracah_construct(f(2), f(0), f(1), f(2), f(0), f(1), f(3), d));
    std::mt19937_64 rng(1000 + d);
    for (int s = 0; s < 20; ++s) {
      cases.emplace_back("random GF(1000003) #" + std::to_string(s) + ", d=" + std::to_string(d),
                         random_feasible(d, GF, rng));
    }
  }
  std::vector<DirectnessCertificate> certs;
  double slowest = 0;

  criterion(3, "[n] is direct for d in 1..3, n in 0..3 (geometric, q-Racah, 20 random GF(1000003))", 600,
            [&](Check& c) {
              for (const auto& [name, p] : cases) {
                for (std::size_t n = 0; n <= 3; ++n) {
                  auto t0 = Clock::now();
                  auto cert = directness_check(bracket_type(n), p);
                  double s = seconds_since(t0);
                  slowest = std::max(slowest, s);
                  c.expect(s <= 10, name + " n=" + std::to_string(n) + " took " + std::to_string(s) + " s");
                  c.expect(cert.direct, "not direct: " + name + " n=" + std::to_string(n) + " " +
                                            io::to_json(cert).dump() + " p=" + io::to_json(p).dump());
                  certs.push_back(cert);
                }
              }
              struct Anchor {
                std::size_t d, n, dim, zigzag, rank;
              };
              for (auto a : {Anchor{1, 2, 8, 3, 5}, Anchor{2, 2, 27, 6, 21}, Anchor{3, 2, 64, 10, 54}}) {
                auto cert = directness_check(bracket_type(a.n), geometric_sequence(FieldElement::from_integer(2, Q), a.d));
                c.expect(cert.dim_T_lambda == a.dim && cert.dim_Z_lambda == a.zigzag && cert.rank_R_lambda == a.rank,
                         "anchor " + where(a.d, a.n) + " got " + io::to_json(cert).dump());
              }
              std::cout << "      " << certs.size() << " certificates, slowest case " << slowest << " s\n";
            });

  criterion(4, "rank_R >= dim - zigzag in every run of criterion 3", 0, [&](Check& c) {
    c.expect(!certs.empty(), "no certificates from criterion 3");
    for (const auto& cert : certs) {
      c.expect(cert.rank_R_lambda + cert.dim_Z_lambda >= cert.dim_T_lambda && cert.lower_bound_holds,
               "lower bound violated: " + io::to_json(cert).dump());
    }
  });

  criterion(5, "psi identities lie in R for d in 1..2, 5 random GF(1000003) sequences each", 120, [](Check& c) {
    std::mt19937_64 rng(2024);
    for (std::size_t d = 1; d <= 2; ++d) {
      for (int s = 0; s < 5; ++s) {
        auto p = random_feasible(d, GF, rng);
        auto r = verify_psi_identities(p);
        for (const auto& chk : r.checks) {
          c.expect(chk.in_R, chk.name + " fails for " + io::to_json(p).dump());
        }
        c.expect(r.all_pass && !r.checks.empty(), "psi report incomplete");
      }
    }
  });

  criterion(6, "phi matrix upper triangular, nonzero diagonal, rank d (50 random per d in 1..4)", 10, [](Check& c) {
    std::mt19937_64 rng(66);
    for (std::size_t d = 1; d <= 4; ++d) {
      for (int s = 0; s < 50; ++s) {
        auto p = random_feasible(d, s % 2 ? Q : GF, rng);
        auto chk = check_phi_matrix(p);
        auto m = phi_matrix(p);
        c.expect(chk.upper_triangular && chk.diagonal_nonzero && chk.rank == d && oracle::dense_rank(m) == d,
                 "phi check fails for " + io::to_json(p).dump());
      }
    }
  });

  criterion(7, "parameter-array validator", 0, [](Check& c) {
    auto f = [](long x) { return FieldElement::from_integer(x, Q); };
    auto zero = ParameterSequence::make({f(0)}, {f(0)}, Q);
    c.expect(validate_parameter_array({zero, {f(1)}}).valid, "d=0 trivial array invalid");
    auto p1 = ParameterSequence::make({f(0), f(1)}, {f(0), f(1)}, Q);
    for (long num = -12; num <= 12; ++num) {
      for (long den : {1, 2, 3}) {
        FieldElement z = f(num) / f(den);
        bool expected = !z.is_zero() && !(z + f(1)).is_zero();
        c.expect(validate_parameter_array({p1, {f(1), z}}).valid == expected, "d=1 zeta1=" + z.to_string());
        c.expect(!validate_parameter_array({p1, {f(2), z}}).valid, "zeta0=2 accepted");
      }
    }
    std::mt19937_64 rng(77);
    for (int s = 0; s < 40; ++s) {
      std::size_t d = s % 5;
      auto p = random_feasible(d, s % 2 ? Q : GF, rng);
      std::vector<FieldElement> zeta;
      for (std::size_t i = 0; i <= d; ++i) zeta.push_back(random_element(p.ctx, rng));
      if (zeta[0].is_one()) zeta[0] = zeta[0] + zeta[0];
      auto r = validate_parameter_array({p, zeta});
      c.expect(!r.valid && !r.zeta0_is_one, "zeta0 != 1 accepted");
    }
  });

  criterion(8, "q-Racah construct/witness round trip (20 random over Q); beta = 2 rejected", 0, [](Check& c) {
    std::mt19937_64 rng(88);
    for (int s = 0; s < 20; ++s) {
      QRacahInput in;
      std::size_t d = 3 + s % 4;
      auto p = random_qracah(d, Q, rng, &in);
      auto w = qracah_witness(p);
      c.expect(w.is_qracah, "constructed sequence not recognised: " + io::to_json(p).dump());
      c.expect(w.bc && *w.bc == in.b * in.c, "bc not recovered");
      c.expect(w.bstar_cstar && *w.bstar_cstar == in.b_star * in.c_star, "b*c* not recovered");
      auto q2 = in.q * in.q;
      c.expect(w.beta == q2 + q2.inv(), "beta != q^2 + q^-2");
    }
    for (std::size_t d = 3; d <= 6; ++d) {
      for (int s = 0; s < 5; ++s) {
        FieldElement a = random_element(Q, rng), b = random_element(Q, rng), a2 = random_element(Q, rng),
                     b2 = random_element(Q, rng);
        if (b.is_zero() || b2.is_zero()) continue;
        std::vector<FieldElement> t, ts;
        for (std::size_t i = 0; i <= d; ++i) {
          t.push_back(a + FieldElement::from_integer(static_cast<long long>(i), Q) * b);
          ts.push_back(a2 + FieldElement::from_integer(static_cast<long long>(i), Q) * b2);
        }
        auto w = qracah_witness(ParameterSequence::make(t, ts, Q));
        c.expect(w.beta == FieldElement::from_integer(2, Q) && !w.is_qracah, "arithmetic sequence accepted");
      }
    }
  });

  criterion(9, "conjecture_scan(d=2, max_length=5, samples=10, GF(1000003)) has no failures", 300, [](Check& c) {
    auto s = conjecture_scan(2, 5, 10, 1, GF);
    std::cout << "      " << s.total << " cases over " << s.types << " types, " << s.direct << " direct\n";
    c.expect(s.total == 10 * s.types && s.total > 0, "scan incomplete");
    c.expect(s.lower_bound_violations == 0, "lower bound violations");
    for (const auto& f : s.failures) {
      c.expect(false, "counterexample certificate " + io::to_json(f.certificate).dump() + " p=" + io::to_json(f.p).dump());
    }
  });

  std::cout << (failed == 0 ? "ALL CRITERIA PASS" : std::to_string(failed) + " CRITERIA FAILED") << '\n';
  return failed == 0 ? 0 : 1;
}
