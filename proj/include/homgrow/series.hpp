#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homgrow/bigint.hpp"
#include "homgrow/bounds.hpp"
#include "homgrow/cover.hpp"
#include "homgrow/presentation.hpp"

namespace homgrow {

/// One step of the derived p-series: G_i -> G_{i+1} = [G_i,G_i] G_i^p.
struct DerivedStep {
  Presentation next;
  std::uint32_t n = 0;          // b1(G_i; F_p), the rank of G_i / G_{i+1}
  ComplexBetti cover;           // of the cover
  ComplexBetti rewritten;       // of the Reidemeister-Schreier presentation
};

/// Throws BudgetExceeded when the cover is too large and InvariantViolation
/// when b1 = 0 or the two Betti computations disagree.
DerivedStep derived_p_step(const Presentation& pres, std::uint32_t p,
                           std::uint64_t budget = kDefaultCellBudget);

struct SeriesStep {
  std::size_t i = 0;           // 1-based
  BigInt index_exponent;       // [G : G_i] = p^index_exponent
  std::uint64_t b1 = 0;
  std::uint64_t b2 = 0;        // complex-level
  std::size_t generators = 0;
  std::size_t relators = 0;
  /// Best level bound predicted from step i - 1; absent at i = 1.
  std::optional<BigInt> predicted;
  std::optional<std::uint64_t> level_star;
  bool betti_agree = true;     // cover and rewritten presentation
  /// Levels whose bound from step i - 1 exceeded b1.
  std::vector<std::uint64_t> violated_levels;

  BigInt index(std::uint32_t p) const;
};

struct GrowthTrace {
  std::uint32_t p = 2;
  std::vector<SeriesStep> steps;
  std::string stop_reason;  // empty when max_steps were all run
};

/// Iterates derived_p_step from `pres` for at most max_steps steps (counting
/// the starting presentation as step 1).
GrowthTrace run_series(const Presentation& pres, std::uint32_t p,
                       std::size_t max_steps,
                       std::uint64_t budget = kDefaultCellBudget);

/// (i, log_p [G : G_i], b1_i) for the ratio table.
struct RatioPoint {
  std::size_t i = 0;
  BigInt index_exponent;
  BigInt b1;
};

std::vector<RatioPoint> ratio_points(const GrowthTrace& trace);
/// Points of the recurrence with index 2^{sigma_{i-1}}, up to the first
/// non-positive x_i.
std::vector<RatioPoint> ratio_points(const RecurrenceTrace& rec);

struct RatioRow {
  std::size_t i = 0;
  BigInt index_exponent;
  BigInt b1;
  /// b1 sqrt(log2 index) log2 log2 index / index, when index is small enough
  /// to write out.
  std::optional<Interval> ratio;
  /// log2 of the same ratio.
  std::optional<Interval> log2_ratio;
  /// "up", "down" or "unknown" against the previous row with a value.
  std::string trend;
};

/// One row per point; rows with index below 2^16 carry no values. Empty for
/// fewer than two points.
std::vector<RatioRow> thm17_ratio_report(std::uint32_t p,
                                         const std::vector<RatioPoint>& points);

}  // namespace homgrow
