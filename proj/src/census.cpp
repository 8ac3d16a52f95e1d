#include "homgrow/census.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>

#include "homgrow/errors.hpp"

namespace homgrow {

std::uint32_t CosetTable::act(std::uint32_t coset, const Word& w) const {
  for (const Letter& l : w.letters()) coset = act(coset, l);
  return coset;
}

namespace {

constexpr std::uint32_t kUndefined = std::numeric_limits<std::uint32_t>::max();

std::size_t column(const Letter& l) { return 2 * l.gen + (l.sign < 0 ? 1 : 0); }
std::size_t inverse_column(std::size_t col) { return col ^ 1U; }

struct State {
  std::size_t count = 1;
  std::vector<std::uint32_t> cells;  // max_index x columns
};

class Search {
 public:
  Search(const Presentation& pres, std::size_t n_max, std::uint64_t budget,
         const std::function<void(const CosetTable&)>& visit)
      : pres_(pres),
        cols_(2 * pres.generator_count()),
        n_max_(n_max),
        budget_(budget),
        visit_(visit) {}

  std::uint64_t run() {
    State s;
    s.cells.assign(n_max_ * cols_, kUndefined);
    descend(std::move(s));
    return nodes_;
  }

 private:
  std::uint32_t& at(State& s, std::size_t c, std::size_t col) const {
    return s.cells[c * cols_ + col];
  }

  bool define(State& s, std::size_t c, std::size_t col, std::uint32_t d) const {
    std::uint32_t& back = at(s, d, inverse_column(col));
    if (back != kUndefined && back != c) return false;
    at(s, c, col) = d;
    back = static_cast<std::uint32_t>(c);
    return true;
  }

  // Scans every relator from every coset, filling single gaps, until nothing
  // changes. False on a contradiction.
  bool close(State& s) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t c = 0; c < s.count; ++c) {
        for (const Word& r : pres_.relators) {
          const auto& ls = r.letters();
          const std::size_t len = ls.size();
          std::uint32_t f = static_cast<std::uint32_t>(c);
          std::size_t i = 0;
          while (i < len && at(s, f, column(ls[i])) != kUndefined) {
            f = at(s, f, column(ls[i]));
            ++i;
          }
          if (i == len) {
            if (f != c) return false;
            continue;
          }
          std::uint32_t b = static_cast<std::uint32_t>(c);
          std::size_t j = len;
          while (j > i && at(s, b, inverse_column(column(ls[j - 1]))) != kUndefined) {
            b = at(s, b, inverse_column(column(ls[j - 1])));
            --j;
          }
          if (j == i) {
            if (f != b) return false;
          } else if (j == i + 1) {
            if (!define(s, f, column(ls[i]), b)) return false;
            changed = true;
          }
        }
      }
    }
    return true;
  }

  void descend(State s) {
    if (++nodes_ > budget_) {
      throw BudgetExceeded("more than " + std::to_string(budget_),
                           std::to_string(budget_), "search node");
    }
    if (!close(s)) return;
    std::size_t c = 0;
    std::size_t col = 0;
    bool found = false;
    for (c = 0; c < s.count && !found; ++c) {
      for (col = 0; col < cols_; ++col) {
        if (at(s, c, col) == kUndefined) {
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) {
      CosetTable t;
      t.index = s.count;
      t.rows.resize(s.count);
      for (std::size_t k = 0; k < s.count; ++k) {
        t.rows[k].assign(s.cells.begin() + static_cast<std::ptrdiff_t>(k * cols_),
                         s.cells.begin() + static_cast<std::ptrdiff_t>((k + 1) * cols_));
      }
      visit_(t);
      return;
    }
    for (std::uint32_t d = 0; d < s.count; ++d) {
      if (at(s, d, inverse_column(col)) != kUndefined) continue;
      State next = s;
      define(next, c, col, d);
      descend(std::move(next));
    }
    if (s.count < n_max_) {
      const auto d = static_cast<std::uint32_t>(s.count);
      ++s.count;
      define(s, c, col, d);
      descend(std::move(s));
    }
  }

  const Presentation& pres_;
  std::size_t cols_;
  std::size_t n_max_;
  std::uint64_t budget_;
  const std::function<void(const CosetTable&)>& visit_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::uint64_t for_each_subgroup(const Presentation& pres, std::size_t n_max,
                                const std::function<void(const CosetTable&)>& visit,
                                std::size_t index_limit, std::uint64_t node_budget) {
  if (n_max > index_limit) {
    throw std::invalid_argument("index " + std::to_string(n_max) + " exceeds the limit " +
                                std::to_string(index_limit));
  }
  if (n_max == 0) return 0;
  return Search(pres, n_max, node_budget, visit).run();
}

SubgroupCensus low_index(const Presentation& pres, std::size_t n_max,
                         std::size_t index_limit, std::uint64_t node_budget) {
  SubgroupCensus out;
  out.n_max = n_max;
  out.exact.assign(n_max, 0);
  out.nodes = for_each_subgroup(
      pres, n_max, [&](const CosetTable& t) { ++out.exact[t.index - 1]; }, index_limit,
      node_budget);
  std::uint64_t total = 0;
  for (std::uint64_t a : out.exact) {
    total += a;
    out.cumulative.push_back(total);
  }
  return out;
}

Presentation schreier_presentation(const Presentation& pres, const CosetTable& t) {
  const std::size_t gens = pres.generator_count();
  // tree[c * gens + g]: the positive edge c --g--> c.g lies in the tree
  std::vector<bool> tree(t.index * gens, false);
  std::vector<bool> seen(t.index, false);
  std::deque<std::uint32_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::uint32_t c = queue.front();
    queue.pop_front();
    for (std::size_t col = 0; col < 2 * gens; ++col) {
      const std::uint32_t d = t.rows[c][col];
      if (seen[d]) continue;
      seen[d] = true;
      queue.push_back(d);
      const std::size_t g = col / 2;
      tree[(col % 2 == 0 ? c : d) * gens + g] = true;
    }
  }
  Presentation out;
  std::vector<std::int64_t> id(t.index * gens, -1);
  for (std::size_t c = 0; c < t.index; ++c) {
    for (std::size_t g = 0; g < gens; ++g) {
      if (tree[c * gens + g]) continue;
      id[c * gens + g] = static_cast<std::int64_t>(out.generators.size());
      out.generators.push_back(pres.generators[g] + "_" + std::to_string(c));
    }
  }
  for (std::uint32_t c = 0; c < t.index; ++c) {
    for (const Word& r : pres.relators) {
      std::vector<Letter> raw;
      std::uint32_t cur = c;
      for (const Letter& l : r.letters()) {
        const std::uint32_t next = t.act(cur, l);
        const std::uint32_t source = l.sign > 0 ? cur : next;
        const std::int64_t k = id[source * gens + l.gen];
        if (k >= 0) raw.push_back({static_cast<GeneratorId>(k), l.sign});
        cur = next;
      }
      if (cur != c) throw InvariantViolation("relator does not close in the coset table");
      Word w = Word::reduce(raw).cyclically_reduced();
      if (!w.empty()) out.relators.push_back(std::move(w));
    }
  }
  return out;
}

bool elementary_abelian_quotient(const CosetTable& t, std::uint32_t p) {
  const std::size_t gens = t.rows.empty() ? 0 : t.rows[0].size() / 2;
  for (std::size_t g = 0; g < gens; ++g) {
    for (std::uint32_t c = 0; c < t.index; ++c) {
      std::uint32_t x = c;
      for (std::uint32_t k = 0; k < p; ++k) x = t.rows[x][2 * g];
      if (x != c) return false;
      for (std::size_t h = g + 1; h < gens; ++h) {
        if (t.rows[t.rows[c][2 * g]][2 * h] != t.rows[t.rows[c][2 * h]][2 * g]) return false;
      }
    }
  }
  return true;
}

std::vector<FloorRow> subnormal_floor_census(const GrowthTrace& trace) {
  std::vector<FloorRow> out;
  const std::uint32_t p = trace.p;
  for (const SeriesStep& s : trace.steps) {
    FloorRow row;
    row.i = s.i;
    const BigInt index = s.index(p);
    row.n = index * p;
    row.floor = subnormal_floor(s.b1, p);
    row.certified = 1 + (row.floor - 1) / (p - 1);
    row.sharpened_n = index * row.floor;
    row.sharpened = subspace_count(s.b1, p);
    out.push_back(row);
  }
  return out;
}

std::vector<CensusRow> compare_with_floor(const SubgroupCensus& census,
                                          const std::vector<FloorRow>& floors,
                                          std::uint64_t k) {
  std::vector<CensusRow> out;
  for (std::size_t n = 1; n <= census.n_max; ++n) {
    CensusRow row;
    row.n = n;
    row.s_n = census.cumulative[n - 1];
    row.power_floor = 1;
    row.certified_floor = 1;
    for (const FloorRow& f : floors) {
      if (f.n <= n) {
        row.power_floor = std::max(row.power_floor, f.floor);
        row.certified_floor = std::max(row.certified_floor, f.certified);
      }
      if (f.sharpened_n <= n) row.certified_floor = std::max(row.certified_floor, f.sharpened);
    }
    row.ceiling = growth_floors(GrowthMode::Ceiling, BigInt(n), k);
    row.violation = BigInt(row.s_n) < row.certified_floor;
    out.push_back(row);
  }
  return out;
}

}  // namespace homgrow
