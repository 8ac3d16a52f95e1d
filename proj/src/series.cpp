#include "homgrow/series.hpp"

#include "homgrow/epimorphism.hpp"
#include "homgrow/errors.hpp"

namespace homgrow {

DerivedStep derived_p_step(const Presentation& pres, std::uint32_t p,
                           std::uint64_t budget) {
  const Epimorphism epi = full_mod_p_epi(pres, p);
  const CoverComplex c = build_cover(pres, epi, budget);
  DerivedStep out;
  out.n = epi.n;
  out.cover = cover_betti(c);
  out.next = reidemeister_schreier(c);
  out.rewritten = complex_betti(out.next, p);
  if (out.cover.b1 != out.rewritten.b1 || out.cover.b2 != out.rewritten.b2) {
    throw InvariantViolation("cover Betti numbers (" + std::to_string(out.cover.b1) + ", " +
                             std::to_string(out.cover.b2) +
                             ") differ from the rewritten presentation (" +
                             std::to_string(out.rewritten.b1) + ", " +
                             std::to_string(out.rewritten.b2) + ")");
  }
  return out;
}

BigInt SeriesStep::index(std::uint32_t p) const {
  return pow_big(p, static_cast<std::uint64_t>(index_exponent));
}

GrowthTrace run_series(const Presentation& pres, std::uint32_t p,
                       std::size_t max_steps, std::uint64_t budget) {
  GrowthTrace out;
  out.p = p;
  if (max_steps == 0) return out;
  Presentation current = pres;
  const ComplexBetti first = complex_betti(pres, p);
  SeriesStep step;
  step.i = 1;
  step.index_exponent = 0;
  step.b1 = first.b1;
  step.b2 = first.b2;
  step.generators = pres.generator_count();
  step.relators = pres.relator_count();
  out.steps.push_back(step);
  while (out.steps.size() < max_steps) {
    const SeriesStep& prev = out.steps.back();
    if (prev.b1 == 0) {
      out.stop_reason = "b1 = 0 at step " + std::to_string(prev.i) +
                        ": the series is constant";
      break;
    }
    DerivedStep d;
    try {
      d = derived_p_step(current, p, budget);
    } catch (const BudgetExceeded& e) {
      out.stop_reason = "step " + std::to_string(prev.i + 1) + " needs a cover of " +
                        e.required() + " cells (budget " + e.allowed() + ")";
      break;
    }
    SeriesStep next;
    next.i = prev.i + 1;
    next.index_exponent = prev.index_exponent + d.n;
    next.b1 = d.rewritten.b1;
    next.b2 = d.rewritten.b2;
    next.generators = d.next.generator_count();
    next.relators = d.next.relator_count();
    next.betti_agree = d.cover.b1 == d.rewritten.b1 && d.cover.b2 == d.rewritten.b2;
    const auto sweep = level_sweep(prev.b1, prev.b2, prev.b1, p);
    const auto best = best_level(prev.b1, prev.b2, prev.b1, p);
    next.predicted = best.bound;
    next.level_star = best.ell;
    for (std::uint64_t l = 0; l < sweep.size(); ++l) {
      if (sweep[l] > BigInt(next.b1)) next.violated_levels.push_back(l);
    }
    out.steps.push_back(next);
    current = std::move(d.next);
  }
  return out;
}

std::vector<RatioPoint> ratio_points(const GrowthTrace& trace) {
  std::vector<RatioPoint> out;
  for (const auto& s : trace.steps) out.push_back({s.i, s.index_exponent, BigInt(s.b1)});
  return out;
}

std::vector<RatioPoint> ratio_points(const RecurrenceTrace& rec) {
  std::vector<RatioPoint> out;
  BigInt sigma = 0;
  for (const auto& s : rec.states) {
    if (s.x <= 0) break;
    out.push_back({s.i, sigma, s.x});
    sigma = s.sigma;
  }
  return out;
}

namespace {

constexpr std::uint64_t kWritableIndexBits = std::uint64_t{1} << 16;

Interval scale(const Interval& a, const Rational& k) {
  return {a.lo * k, a.hi * k};
}

}  // namespace

std::vector<RatioRow> thm17_ratio_report(std::uint32_t p,
                                         const std::vector<RatioPoint>& points) {
  std::vector<RatioRow> out;
  if (points.size() < 2) return out;
  const Interval log2p = log2_interval(Rational(p));
  std::optional<Interval> previous;
  for (const auto& s : points) {
    RatioRow row;
    row.i = s.i;
    row.index_exponent = s.index_exponent;
    row.b1 = s.b1;
    row.trend = "n/a";
    // log2 index
    const Interval l = scale(log2p, Rational(s.index_exponent));
    if (l.hi < 16 || s.b1 == 0) {
      out.push_back(row);
      continue;
    }
    const Interval ll{log2_interval(l.lo).lo, log2_interval(l.hi).hi};
    const Interval lb = log2_interval(Rational(s.b1));
    const Interval lll{log2_interval(ll.lo).lo, log2_interval(ll.hi).hi};
    // log2 b1 + log2(l)/2 + log2 log2 l - l
    row.log2_ratio = Interval{lb.lo + ll.lo / 2 + lll.lo - l.hi,
                              lb.hi + ll.hi / 2 + lll.hi - l.lo};
    if (s.index_exponent * (p == 2 ? 1 : 64) <= kWritableIndexBits) {
      const BigInt index = pow_big(p, static_cast<std::uint64_t>(s.index_exponent));
      const Interval sq = sqrt_interval(l);
      row.ratio = Interval{Rational(s.b1) * sq.lo * ll.lo / Rational(index),
                           Rational(s.b1) * sq.hi * ll.hi / Rational(index)};
    }
    if (previous) {
      if (row.log2_ratio->hi < previous->lo) {
        row.trend = "down";
      } else if (row.log2_ratio->lo > previous->hi) {
        row.trend = "up";
      } else {
        row.trend = "unknown";
      }
    } else {
      row.trend = "first";
    }
    previous = row.log2_ratio;
    out.push_back(row);
  }
  return out;
}

}  // namespace homgrow
