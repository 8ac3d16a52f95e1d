#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "homgrow/bigint.hpp"
#include "homgrow/bounds.hpp"
#include "homgrow/presentation.hpp"
#include "homgrow/series.hpp"

namespace homgrow {

inline constexpr std::size_t kDefaultIndexLimit = 8;
inline constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;

/// Complete coset table of a finite-index subgroup; coset 0 is the subgroup.
/// Column 2g is generator g, column 2g + 1 its inverse.
struct CosetTable {
  std::size_t index = 0;
  std::vector<std::vector<std::uint32_t>> rows;

  std::uint32_t act(std::uint32_t coset, const Letter& l) const {
    return rows[coset][2 * l.gen + (l.sign < 0 ? 1 : 0)];
  }
  std::uint32_t act(std::uint32_t coset, const Word& w) const;
};

/// Calls visit once per subgroup of index <= n_max, with its standardized
/// table. Throws std::invalid_argument when n_max exceeds index_limit and
/// BudgetExceeded after node_budget search nodes. Returns the node count.
std::uint64_t for_each_subgroup(const Presentation& pres, std::size_t n_max,
                                const std::function<void(const CosetTable&)>& visit,
                                std::size_t index_limit = kDefaultIndexLimit,
                                std::uint64_t node_budget = kDefaultNodeBudget);

struct SubgroupCensus {
  std::size_t n_max = 0;
  std::vector<std::uint64_t> exact;       // exact[k - 1]: subgroups of index k
  std::vector<std::uint64_t> cumulative;  // cumulative[n - 1] = s_n
  std::uint64_t nodes = 0;
};

SubgroupCensus low_index(const Presentation& pres, std::size_t n_max,
                         std::size_t index_limit = kDefaultIndexLimit,
                         std::uint64_t node_budget = kDefaultNodeBudget);

/// Schreier generators "x_c" for the non-tree entries of a breadth-first
/// spanning tree, relators r read from every coset. Relators that rewrite to
/// the empty word are dropped.
Presentation schreier_presentation(const Presentation& pres, const CosetTable& t);

/// True when the subgroup is normal with quotient (Z/p)^n for some n.
bool elementary_abelian_quotient(const CosetTable& t, std::uint32_t p);

struct FloorRow {
  std::size_t i = 0;
  BigInt n;           // p [G : G_i]
  BigInt floor;       // p^{b1_i}
  BigInt certified;   // subgroups between G_{i+1} and G_i of index <= p in G_i
  BigInt sharpened_n; // [G : G_{i+1}]
  BigInt sharpened;   // subspaces of F_p^{b1_i}
};

std::vector<FloorRow> subnormal_floor_census(const GrowthTrace& trace);

struct CensusRow {
  std::size_t n = 0;
  std::uint64_t s_n = 0;
  BigInt power_floor;      // largest p^{b1_i} with p [G:G_i] <= n
  BigInt certified_floor;  // largest certified or sharpened count in range
  GrowthValue ceiling;     // k^{n log2 n}
  bool violation = false;  // s_n < certified_floor
};

std::vector<CensusRow> compare_with_floor(const SubgroupCensus& census,
                                          const std::vector<FloorRow>& floors,
                                          std::uint64_t k = 2);

}  // namespace homgrow
