#include "homgrow/bounds.hpp"

#include <stdexcept>

#include "homgrow/errors.hpp"
#include "homgrow/fp_matrix.hpp"

namespace homgrow {

namespace mp = boost::multiprecision;

namespace {

// sum_{r = lo}^{hi} C(n, r); empty when hi < lo.
BigInt binomial_sum(std::int64_t n, std::int64_t lo, std::int64_t hi) {
  BigInt s = 0;
  for (std::int64_t r = std::max<std::int64_t>(lo, 0); r <= hi && r <= n; ++r) {
    s += binomial(n, r);
  }
  return s;
}

BigInt floor_of(const Rational& q) {
  BigInt n = mp::numerator(q);
  const BigInt d = mp::denominator(q);
  BigInt f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

BigInt ceil_of(const Rational& q) { return -floor_of(-q); }

}  // namespace

std::string to_decimal(const Rational& value, int digits) {
  const bool negative = value < 0;
  const Rational a = negative ? Rational(-value) : value;
  const BigInt num = mp::numerator(a);
  const BigInt den = mp::denominator(a);
  const BigInt whole = num / den;
  std::string out = (negative ? "-" : "") + whole.str();
  if (digits > 0) {
    const BigInt frac = (num - whole * den) * pow_big(10, digits) / den;
    std::string f = frac.str();
    out += "." + std::string(digits - f.size(), '0') + f;
  }
  return out;
}

BigInt thm16_bound(const BoundSpec& s) {
  if (s.ell > s.n || s.n > s.b1) {
    throw InvariantViolation("bound needs 0 <= l <= n <= b1 (got l = " +
                             std::to_string(s.ell) + ", n = " +
                             std::to_string(s.n) + ", b1 = " +
                             std::to_string(s.b1) + ")");
  }
  if (!is_prime(s.p)) {
    throw InvariantViolation(std::to_string(s.p) + " is not prime");
  }
  const auto n = static_cast<std::int64_t>(s.n);
  const auto l = static_cast<std::int64_t>(s.ell);
  const BigInt b2_term = BigInt(s.b2) * binomial_sum(n, 0, l - 1);
  return test_loop_count(s.b1, s.n, s.ell, s.p) - b2_term;
}

BigInt test_loop_count(std::uint64_t b1, std::uint64_t n_, std::uint64_t ell,
                       std::uint32_t p) {
  const auto n = static_cast<std::int64_t>(n_);
  const auto l = static_cast<std::int64_t>(ell);
  if (p == 2) {
    return BigInt(b1) * binomial_sum(n, 0, l) - binomial_sum(n, 1, l + 1);
  }
  BigInt first = 0;
  for (std::int64_t r = 2; r <= l + 1 && r <= n; ++r) {
    first += binomial(n, r) * (r - 1);
  }
  return first + (BigInt(b1) - BigInt(n_)) * binomial_sum(n, 0, l);
}

BigInt level_space_size(std::uint64_t b1, std::uint64_t n, std::uint64_t ell) {
  return BigInt(b1) * binomial_sum(static_cast<std::int64_t>(n), 0,
                                   static_cast<std::int64_t>(ell));
}

BigInt constraint_count(std::uint64_t r, std::uint64_t n, std::uint64_t ell) {
  return BigInt(r) * binomial_sum(static_cast<std::int64_t>(n), 0,
                                  static_cast<std::int64_t>(ell) - 1);
}

std::vector<BigInt> level_sweep(std::uint64_t b1, std::uint64_t b2,
                                std::uint64_t n, std::uint32_t p) {
  std::vector<BigInt> out;
  for (std::uint64_t l = 0; l <= n; ++l) {
    out.push_back(thm16_bound({b1, b2, n, l, p}));
  }
  return out;
}

BestLevel best_level(std::uint64_t b1, std::uint64_t b2, std::uint64_t n,
                     std::uint32_t p) {
  const auto sweep = level_sweep(b1, b2, n, p);
  BestLevel best{0, sweep[0]};
  for (std::uint64_t l = 1; l < sweep.size(); ++l) {
    if (sweep[l] > best.bound) best = {l, sweep[l]};
  }
  return best;
}

BigInt thm41_value(std::uint64_t b1, std::uint64_t b2) {
  return binomial(static_cast<std::int64_t>(b1), 2) + BigInt(b1) - BigInt(b2);
}

bool thm41_consistency(std::uint64_t b1, std::uint64_t b2) {
  return thm16_bound({b1, b2, b1, 1, 2}) == thm41_value(b1, b2);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Undecided: return "undecided";
  }
  return "undecided";
}

namespace {

// 2^s <= lambda x (log2 x)^(2/3), cubed to stay rational.
Verdict claim2_verdict(const BigInt& sigma_prev, const BigInt& x,
                       const Rational& lambda) {
  if (x <= 1) return Verdict::Fails;
  const auto s = static_cast<unsigned>(sigma_prev);
  const Rational lhs = Rational(pow_big(2, 3ULL * s));
  const Rational rhs_base = lambda * lambda * lambda * Rational(x * x * x);
  const Interval l = log2_interval(Rational(x), 32);
  if (lhs <= rhs_base * l.lo * l.lo) return Verdict::Holds;
  if (lhs > rhs_base * l.hi * l.hi) return Verdict::Fails;
  return Verdict::Undecided;
}

}  // namespace

RecurrenceTrace derived2_recurrence(const BigInt& x1, std::int64_t cap,
                                    std::size_t steps, const Rational& lambda) {
  RecurrenceTrace out;
  BigInt x = x1;
  BigInt sigma_prev = 0;
  const BigInt penalty_factor = std::max<std::int64_t>(1, 1 + cap);
  for (std::size_t i = 1;; ++i) {
    RecurrenceState st;
    st.i = i;
    st.x = x;
    st.sigma = sigma_prev + x;
    st.claim2 = claim2_verdict(sigma_prev, x, lambda);
    out.states.push_back(st);
    if (i > steps) break;
    if (x <= 0) {
      out.stop_reason = "x_" + std::to_string(i) +
                        " <= 0: the recurrence no longer increases";
      break;
    }
    if (x > kRecurrenceHorizon) {
      out.stop_reason = "x_" + std::to_string(i) + " > " +
                        std::to_string(kRecurrenceHorizon) +
                        ": the next iterate would have about x_" +
                        std::to_string(i) + " bits";
      break;
    }
    const auto xi = static_cast<std::int64_t>(x);
    sigma_prev = st.sigma;
    x = x * binomial(xi, xi / 2) - pow_big(2, static_cast<std::uint64_t>(xi)) * penalty_factor;
  }
  return out;
}

bool stirling_inequality(std::uint64_t x, const Rational& lambda) {
  const auto xi = static_cast<std::int64_t>(x);
  const BigInt lhs = BigInt(x) * binomial(xi, xi / 2);
  const BigInt num = mp::numerator(lambda);
  const BigInt den = mp::denominator(lambda);
  // (x C)^2 den^2 >= num^2 4^x x
  return lhs * lhs * den * den >= num * num * pow_big(4, x) * x;
}

std::optional<std::uint64_t> stirling_threshold(const Rational& lambda,
                                                std::uint64_t lo,
                                                std::uint64_t hi) {
  std::optional<std::uint64_t> first;
  for (std::uint64_t x = lo; x <= hi; ++x) {
    if (stirling_inequality(x, lambda)) {
      if (!first) first = x;
    } else {
      first.reset();
    }
  }
  return first;
}

B2B1Trace b2b1_iteration(const BigInt& b1_0, std::uint64_t m, std::uint32_t p,
                         std::size_t steps) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  B2B1Trace out;
  out.n = m + p - 1;
  const auto n = static_cast<std::int64_t>(out.n);
  const BigInt cn2 = binomial(n, 2);
  BigInt b = b1_0;
  for (std::size_t i = 1;; ++i) {
    B2B1Step st;
    st.i = i;
    st.b1 = b;
    st.next_floor = (2 * b * p - BigInt(n) * n - 3 * BigInt(n)) / 2;
    st.log_index = out.n * (i - 1);
    if (i > 1 && b > 0) {
      std::uint64_t k = 0;
      BigInt pk = p;
      while (pk <= b) {
        pk *= p;
        ++k;
      }
      st.exponent_lo = Rational(BigInt(k), BigInt(st.log_index));
    }
    out.steps.push_back(st);
    if (i > steps) break;
    if (b <= 0) {
      out.stop_reason = "b_" + std::to_string(i) + " <= 0";
      break;
    }
    const BigInt next = cn2 + (b - n) * (n + 1) - BigInt(m) * b;
    if (next < st.next_floor) {
      throw InvariantViolation("b2/b1 iterate " + next.str() +
                               " is below the floor " + st.next_floor.str());
    }
    b = next;
  }
  return out;
}

Interval log2_interval(const Rational& x, unsigned bits) {
  if (x <= 0) throw std::invalid_argument("log2 of a non-positive number");
  const BigInt num = mp::numerator(x);
  const BigInt den = mp::denominator(x);
  // x = m 2^e with 1 <= m < 2.
  std::int64_t e = static_cast<std::int64_t>(mp::msb(num)) -
                   static_cast<std::int64_t>(mp::msb(den));
  auto scaled = [&](std::int64_t k) {
    return k >= 0 ? Rational(num, den * pow_big(2, static_cast<std::uint64_t>(k)))
                  : Rational(num * pow_big(2, static_cast<std::uint64_t>(-k)), den);
  };
  Rational m = scaled(e);
  if (m < 1) {
    --e;
    m = scaled(e);
  }
  if (m == 1) return {Rational(e), Rational(e)};
  const unsigned f = bits + 16;
  const BigInt one = pow_big(2, f);
  const BigInt two = one * 2;
  BigInt lo = floor_of(m * Rational(one));
  BigInt hi = ceil_of(m * Rational(one));
  BigInt lo_bits = 0;
  BigInt hi_bits = 0;
  for (unsigned k = 0; k < bits; ++k) {
    lo = (lo * lo) >> f;
    hi = (hi * hi + one - 1) >> f;
    lo_bits <<= 1;
    hi_bits <<= 1;
    if (lo >= two) {
      lo_bits += 1;
      lo >>= 1;
    }
    if (hi >= two) {
      hi_bits += 1;
      hi = (hi + 1) >> 1;
    }
  }
  const BigInt scale = pow_big(2, bits);
  return {Rational(e) + Rational(lo_bits, scale),
          Rational(e) + Rational(hi_bits + 1, scale)};
}

Interval sqrt_interval(const Interval& x, unsigned bits) {
  if (x.lo < 0) throw std::invalid_argument("sqrt of a negative number");
  if (x.exact()) {
    const BigInt num = mp::numerator(x.lo);
    const BigInt den = mp::denominator(x.lo);
    const BigInt rn = mp::sqrt(num);
    const BigInt rd = mp::sqrt(den);
    if (rn * rn == num && rd * rd == den) {
      return {Rational(rn, rd), Rational(rn, rd)};
    }
  }
  const BigInt scale = pow_big(2, bits);
  const BigInt scale2 = scale * scale;
  const BigInt lo = mp::sqrt(floor_of(x.lo * Rational(scale2)));
  const BigInt hi_sq = ceil_of(x.hi * Rational(scale2));
  BigInt hi = mp::sqrt(hi_sq);
  if (hi * hi < hi_sq) hi += 1;
  return {Rational(lo, scale), Rational(hi, scale)};
}

GrowthMode parse_growth_mode(const std::string& name) {
  if (name == "thm11") return GrowthMode::Thm11;
  if (name == "thm17") return GrowthMode::Thm17;
  if (name == "ceiling") return GrowthMode::Ceiling;
  if (name == "power") return GrowthMode::Power;
  throw std::invalid_argument("unknown growth mode '" + name +
                              "' (expected thm11, thm17, ceiling or power)");
}

std::string to_string(GrowthMode m) {
  switch (m) {
    case GrowthMode::Thm11: return "thm11";
    case GrowthMode::Thm17: return "thm17";
    case GrowthMode::Ceiling: return "ceiling";
    case GrowthMode::Power: return "power";
  }
  return "thm11";
}

namespace {

constexpr std::uint64_t kPrintableBits = std::uint64_t{1} << 20;

// n / (sqrt(log2 n) log2 log2 n)
Interval iterated_log_ratio(const BigInt& n) {
  const Interval l = log2_interval(Rational(n));
  const Interval s = sqrt_interval(l);
  const Interval ll{log2_interval(l.lo).lo, log2_interval(l.hi).hi};
  const Rational d_lo = s.lo * ll.lo;
  const Rational d_hi = s.hi * ll.hi;
  return {Rational(n) / d_hi, Rational(n) / d_lo};
}

bool is_integer(const Rational& q) { return mp::denominator(q) == 1; }

}  // namespace

GrowthValue growth_floors(GrowthMode mode, const BigInt& n, std::uint64_t k) {
  GrowthValue out;
  out.mode = mode;
  out.n = n;
  if ((mode == GrowthMode::Thm11 || mode == GrowthMode::Thm17) && n < 16) {
    throw std::invalid_argument("n = " + n.str() +
                                " is too small for the iterated logarithm (need n >= 16)");
  }
  if (k < 2 && mode != GrowthMode::Thm11 && mode != GrowthMode::Thm17) {
    throw std::invalid_argument("k must be at least 2");
  }
  switch (mode) {
    case GrowthMode::Thm17:
      out.base = 1;
      out.ratio = iterated_log_ratio(n);
      break;
    case GrowthMode::Thm11: {
      out.base = 2;
      out.exponent = iterated_log_ratio(n);
      out.ratio = out.exponent;
      if (out.exponent.exact() && is_integer(out.exponent.lo) &&
          out.exponent.lo >= 0 && out.exponent.lo <= Rational(kPrintableBits)) {
        out.value = pow_big(2, static_cast<std::uint64_t>(floor_of(out.exponent.lo)));
      }
      break;
    }
    case GrowthMode::Ceiling: {
      if (n < 1) throw std::invalid_argument("n must be at least 1");
      out.base = k;
      const Interval l = log2_interval(Rational(n));
      out.exponent = {Rational(n) * l.lo, Rational(n) * l.hi};
      // k = 2^a gives k^{n log2 n} = n^{a n} exactly.
      if ((k & (k - 1)) == 0) {
        const std::uint64_t a = mp::msb(BigInt(k));
        const Rational bits = Rational(a) * out.exponent.hi;
        if (bits <= Rational(kPrintableBits)) {
          out.value = mp::pow(n, static_cast<unsigned>(a * static_cast<std::uint64_t>(n)));
        }
      } else if (out.exponent.exact() && is_integer(out.exponent.lo) &&
                 Rational(64) * out.exponent.lo <= Rational(kPrintableBits)) {
        out.value = pow_big(k, static_cast<std::uint64_t>(floor_of(out.exponent.lo)));
      }
      break;
    }
    case GrowthMode::Power: {
      if (n < 0) throw std::invalid_argument("n must be non-negative");
      out.base = k;
      out.exponent = {Rational(n), Rational(n)};
      if (n * 64 <= kPrintableBits) {
        out.value = pow_big(k, static_cast<std::uint64_t>(n));
      }
      break;
    }
  }
  return out;
}

BigInt subnormal_floor(std::uint64_t b1, std::uint32_t p) {
  return pow_big(p, b1);
}

BigInt subspace_count(std::uint64_t b1, std::uint32_t p) {
  BigInt total = 0;
  for (std::uint64_t k = 0; k <= b1; ++k) total += gaussian_binomial(b1, k, p);
  return total;
}

}  // namespace homgrow
