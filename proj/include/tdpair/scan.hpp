#pragma once

// Evidence gathering for directness over every consistent type up to a
// length bound, with random feasible parameter sequences.

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "tdpair/params.hpp"
#include "tdpair/relators.hpp"
#include "tdpair/words.hpp"

namespace tdpair {

/// Worker count: hardware concurrency, capped by TDP_THREADS when set.
inline std::size_t thread_budget() {
  std::size_t n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TDP_THREADS")) {
    char* end = nullptr;
    unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<std::size_t>(n, cap);
  }
  return n;
}

/// Evaluates fn(i) for i in [0, count) on up to `threads` workers; results
/// keep index order.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t count, std::size_t threads, Fn fn) {
  std::vector<Result> out(count);
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = next++; i < count; i = next++) out[i] = fn(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

/// Every consistent nontrivial type of length <= max_length with indices <= d.
inline std::vector<WordType> all_types(std::size_t d, std::size_t max_length) {
  std::vector<WordType> types;
  for (std::size_t len = 1; len <= max_length; ++len) {
    for (Family bf : {Family::Starred, Family::Nonstarred}) {
      for (std::uint32_t bi = 0; bi <= d; ++bi) {
        Family ef = len % 2 == 1 ? bf : other(bf);
        for (std::uint32_t ei = 0; ei <= d; ++ei) {
          WordType t = WordType::make(len, {bf, bi}, {ef, ei});
          if (t.consistent()) types.push_back(t);
        }
      }
    }
  }
  return types;
}

struct ScanFailure {
  DirectnessCertificate certificate;
  ParameterSequence p;
};

struct ScanSummary {
  std::size_t d = 0;
  std::size_t max_length = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  FieldCtx field;
  std::size_t types = 0;
  std::size_t total = 0;
  std::size_t direct = 0;
  std::size_t lower_bound_violations = 0;
  std::vector<DirectnessCertificate> certificates;  // sample-major, then type order
  std::vector<ScanFailure> failures;
};

inline ScanSummary conjecture_scan(std::size_t d, std::size_t max_length, std::size_t samples,
                                   std::uint64_t seed, const FieldCtx& ctx,
                                   std::size_t threads = thread_budget()) {
  if (max_length < 1) throw Error(Errc::InvalidArgument, "max_length must be >= 1");
  ScanSummary s;
  s.d = d;
  s.max_length = max_length;
  s.samples = samples;
  s.seed = seed;
  s.field = ctx;
  const auto types = all_types(d, max_length);
  s.types = types.size();
  if (samples == 0) return s;

  std::mt19937_64 rng(seed);
  std::vector<ParameterSequence> ps;
  for (std::size_t i = 0; i < samples; ++i) ps.push_back(random_feasible(d, ctx, rng));

  const std::size_t cases = samples * types.size();
  s.certificates = parallel_map<DirectnessCertificate>(cases, threads, [&](std::size_t i) {
    return directness_check(types[i % types.size()], ps[i / types.size()]);
  });
  s.total = cases;
  for (std::size_t i = 0; i < cases; ++i) {
    const auto& c = s.certificates[i];
    if (!c.lower_bound_holds) ++s.lower_bound_violations;
    if (c.direct) {
      ++s.direct;
    } else {
      s.failures.push_back({c, ps[i / types.size()]});
    }
  }
  return s;
}

}  // namespace tdpair
