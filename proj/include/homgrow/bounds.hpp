#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homgrow/bigint.hpp"

namespace homgrow {

struct BoundSpec {
  std::uint64_t b1 = 0;
  std::uint64_t b2 = 0;
  std::uint64_t n = 0;
  std::uint64_t ell = 0;
  std::uint32_t p = 2;
};

/// Lower bound on b1(K; F_p) for K with G/K elementary abelian of rank n.
/// Empty sums (l = 0) are zero. May be negative.
BigInt thm16_bound(const BoundSpec& spec);

/// The same expression without the b2 term: the number of test loops.
BigInt test_loop_count(std::uint64_t b1, std::uint64_t n, std::uint64_t ell,
                       std::uint32_t p);

/// b1 * sum_{i <= l} C(n, i), the number of spanning cochains c(A, y).
BigInt level_space_size(std::uint64_t b1, std::uint64_t n, std::uint64_t ell);

/// r * sum_{i < l} C(n, i), the number of constraint coordinates (r1, E).
BigInt constraint_count(std::uint64_t r, std::uint64_t n, std::uint64_t ell);

/// thm16_bound for l = 0..n.
std::vector<BigInt> level_sweep(std::uint64_t b1, std::uint64_t b2,
                                std::uint64_t n, std::uint32_t p);

struct BestLevel {
  std::uint64_t ell = 0;
  BigInt bound;
};

/// Smallest argmax over l of thm16_bound.
BestLevel best_level(std::uint64_t b1, std::uint64_t b2, std::uint64_t n,
                     std::uint32_t p);

/// C(b1, 2) + b1 - b2.
BigInt thm41_value(std::uint64_t b1, std::uint64_t b2);
/// thm16_bound(b1, b2, n = b1, l = 1, p = 2) == thm41_value(b1, b2).
bool thm41_consistency(std::uint64_t b1, std::uint64_t b2);

enum class Verdict { Holds, Fails, Undecided };
std::string to_string(Verdict v);

struct RecurrenceState {
  std::size_t i = 0;  // 1-based
  BigInt x;
  BigInt sigma;
  /// 2^sigma_i <= lambda 2^x_i x_i (log2 x_i)^(2/3), decided with certified
  /// bounds on log2 x_i.
  Verdict claim2 = Verdict::Undecided;
};

struct RecurrenceTrace {
  std::vector<RecurrenceState> states;
  std::string stop_reason;  // empty when all steps ran
};

/// Largest x_i for which the next iterate is still computed exactly.
inline constexpr std::uint64_t kRecurrenceHorizon = std::uint64_t{1} << 16;

/// x_{i+1} = x_i C(x_i, floor(x_i/2)) - 2^{x_i} max(1, 1 + cap), starting at
/// x_1; `steps` further iterates.
RecurrenceTrace derived2_recurrence(const BigInt& x1, std::int64_t cap,
                                    std::size_t steps,
                                    const Rational& lambda = Rational(79, 100));

/// x C(x, floor(x/2)) >= lambda 2^x sqrt(x), exactly (by squaring).
bool stirling_inequality(std::uint64_t x, const Rational& lambda);

/// Smallest x in [lo, hi] from which the inequality holds through hi.
std::optional<std::uint64_t> stirling_threshold(const Rational& lambda,
                                                std::uint64_t lo,
                                                std::uint64_t hi);

struct B2B1Step {
  std::size_t i = 0;
  BigInt b1;
  BigInt next_floor;  // b_i p - n^2/2 - 3n/2 (always an integer)
  std::uint64_t log_index = 0;  // log_p [G_1 : G_i] = n (i - 1)
  /// floor(log_p b_i) / log_p [G_1 : G_i], a lower bound on the growth
  /// exponent; absent at i = 1.
  std::optional<Rational> exponent_lo;
};

struct B2B1Trace {
  std::uint64_t n = 0;  // m + p - 1
  std::vector<B2B1Step> steps;
  std::string stop_reason;
};

/// b_{i+1} = C(n,2) + (b_i - n)(n+1) - m b_i with n = m + p - 1. Throws
/// InvariantViolation if an iterate falls below the simplified floor.
B2B1Trace b2b1_iteration(const BigInt& b1_0, std::uint64_t m, std::uint32_t p,
                         std::size_t steps);

/// Certified enclosure [lo, hi] of log2(x) for x > 0, to 2^-bits.
struct Interval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
};
Interval log2_interval(const Rational& x, unsigned bits = 64);
Interval sqrt_interval(const Interval& x, unsigned bits = 64);

enum class GrowthMode { Thm11, Thm17, Ceiling, Power };
GrowthMode parse_growth_mode(const std::string& name);
std::string to_string(GrowthMode m);

struct GrowthValue {
  GrowthMode mode = GrowthMode::Thm11;
  BigInt n;
  std::uint64_t base = 2;  // power modes: value = base^exponent
  Interval exponent;       // power modes
  Interval ratio;          // Thm17: n / (sqrt(log2 n) log2 log2 n)
  std::optional<BigInt> value;  // when the value is an exact, printable integer
};

/// thm11: 2^{n / (sqrt(log2 n) log2 log2 n)}; thm17: the ratio itself;
/// ceiling: k^{n log2 n}; power: k^n. The iterated-log modes need n >= 16.
GrowthValue growth_floors(GrowthMode mode, const BigInt& n,
                          std::uint64_t k = 2);

/// p^b1, the subnormal-count floor.
BigInt subnormal_floor(std::uint64_t b1, std::uint32_t p);
/// Number of subspaces of F_p^b1 (sum of Gaussian binomials).
BigInt subspace_count(std::uint64_t b1, std::uint32_t p);

}  // namespace homgrow
