#include "homgrow/epimorphism.hpp"

#include <algorithm>
#include <sstream>

#include "homgrow/errors.hpp"
#include "homgrow/presentation.hpp"

namespace homgrow {

FpVector Epimorphism::image(const Word& w) const {
  FpVector out(n, 0);
  for (const Letter& l : w.letters()) {
    const FpVector& img = images.at(l.gen);
    for (std::uint32_t i = 0; i < n; ++i) {
      out[i] = l.sign > 0 ? (out[i] + img[i]) % p : (out[i] + p - img[i]) % p;
    }
  }
  return out;
}

Epimorphism parse_epimorphism(std::string_view text, std::uint32_t p,
                              std::size_t generator_count) {
  Epimorphism epi;
  epi.p = p;
  std::vector<std::string> rows;
  {
    std::string cur;
    for (char c : text) {
      if (c == ';') {
        rows.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    rows.push_back(cur);
  }
  // A trailing ';' leaves an empty final row.
  if (rows.size() > 1 &&
      rows.back().find_first_not_of(" \t\r\n") == std::string::npos) {
    rows.pop_back();
  }
  if (generator_count == 0 &&
      std::string(text).find_first_not_of(" \t\r\n") == std::string::npos) {
    return epi;
  }
  if (rows.size() != generator_count) {
    throw ParseError("epimorphism has " + std::to_string(rows.size()) +
                         " rows, expected one per generator (" +
                         std::to_string(generator_count) + ")",
                     1, 1);
  }
  std::size_t column = 1;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::istringstream in(rows[r]);
    FpVector row;
    std::string tok;
    while (in >> tok) {
      long long v = 0;
      std::size_t used = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw ParseError("bad epimorphism entry '" + tok + "'", 1,
                         column + rows[r].find(tok));
      }
      const long long m = static_cast<long long>(p);
      row.push_back(static_cast<std::uint32_t>(((v % m) + m) % m));
    }
    if (r == 0) {
      epi.n = static_cast<std::uint32_t>(row.size());
    } else if (row.size() != epi.n) {
      throw ParseError("epimorphism row " + std::to_string(r + 1) + " has " +
                           std::to_string(row.size()) + " entries, expected " +
                           std::to_string(epi.n),
                       1, column);
    }
    epi.images.push_back(std::move(row));
    column += rows[r].size() + 1;
  }
  return epi;
}

std::string format_epimorphism(const Epimorphism& epi) {
  std::string out;
  for (std::size_t r = 0; r < epi.images.size(); ++r) {
    if (r) out += "; ";
    for (std::size_t c = 0; c < epi.images[r].size(); ++c) {
      if (c) out += " ";
      out += std::to_string(epi.images[r][c]);
    }
  }
  return out;
}

void validate_epimorphism(const Presentation& pres, const Epimorphism& epi) {
  if (!is_prime(epi.p)) {
    throw InvariantViolation("epimorphism modulus " + std::to_string(epi.p) +
                             " is not prime");
  }
  if (epi.images.size() != pres.generator_count()) {
    throw InvariantViolation("epimorphism has " +
                             std::to_string(epi.images.size()) +
                             " images for " +
                             std::to_string(pres.generator_count()) +
                             " generators");
  }
  for (std::size_t g = 0; g < epi.images.size(); ++g) {
    if (epi.images[g].size() != epi.n ||
        std::any_of(epi.images[g].begin(), epi.images[g].end(),
                    [&](auto x) { return x >= epi.p; })) {
      throw InvariantViolation("image of '" + pres.generators[g] +
                               "' is not a reduced vector of length " +
                               std::to_string(epi.n));
    }
  }
  for (std::size_t r = 0; r < pres.relator_count(); ++r) {
    const FpVector img = epi.image(pres.relators[r]);
    if (std::any_of(img.begin(), img.end(), [](auto x) { return x != 0; })) {
      throw InvariantViolation(
          "relator " + std::to_string(r + 1) + " (" +
          format_word(pres.relators[r], pres.generators) +
          ") does not map to 0; the map is not defined on the group");
    }
  }
  if (span_rank(epi.images, epi.n, epi.p) != epi.n) {
    throw InvariantViolation("generator images do not span F_" +
                             std::to_string(epi.p) + "^" +
                             std::to_string(epi.n) + "; the map is not onto");
  }
}

namespace {

// Rows are the cohomology classes u_1..u_b (functionals on generators
// vanishing on every relator).
std::vector<FpVector> cohomology_basis(const Presentation& pres,
                                       std::uint32_t p) {
  const FpMatrix dual = relator_matrix(pres, p).transpose();
  return rank_and_kernel(dual).kernel;
}

Epimorphism from_functionals(const std::vector<FpVector>& rows,
                             std::size_t gen_count, std::uint32_t p) {
  Epimorphism epi;
  epi.p = p;
  epi.n = static_cast<std::uint32_t>(rows.size());
  epi.images.assign(gen_count, FpVector(rows.size(), 0));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t g = 0; g < gen_count; ++g) epi.images[g][k] = rows[k][g];
  }
  return epi;
}

}  // namespace

Epimorphism full_mod_p_epi(const Presentation& pres, std::uint32_t p) {
  const auto basis = cohomology_basis(pres, p);
  if (basis.empty()) {
    throw InvariantViolation("no mod-p homology: b1(G; F_" + std::to_string(p) +
                             ") = 0");
  }
  return from_functionals(basis, pres.generator_count(), p);
}

std::vector<Epimorphism> all_epimorphisms(const Presentation& pres,
                                          std::uint32_t p, std::uint32_t n) {
  std::vector<Epimorphism> out;
  const auto basis = cohomology_basis(pres, p);
  const std::size_t b = basis.size();
  if (n > b) return out;
  const std::size_t gens = pres.generator_count();

  // Each n-dimensional quotient of H_1 = F_p^b is the row space of a unique
  // n x b matrix in reduced row echelon form. Enumerate pivot sets in
  // lexicographic order, then free entries as base-p counters.
  std::vector<std::size_t> pivots(n);
  for (std::size_t i = 0; i < n; ++i) pivots[i] = i;
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> free_slots;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = pivots[r] + 1; c < b; ++c) {
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) {
          free_slots.emplace_back(r, c);
        }
      }
    }
    std::vector<std::uint32_t> counter(free_slots.size(), 0);
    while (true) {
      std::vector<FpVector> m(n, FpVector(b, 0));
      for (std::size_t r = 0; r < n; ++r) m[r][pivots[r]] = 1;
      for (std::size_t s = 0; s < free_slots.size(); ++s) {
        m[free_slots[s].first][free_slots[s].second] = counter[s];
      }
      // Compose: functional_r = sum_c m[r][c] * u_c.
      std::vector<FpVector> rows(n, FpVector(gens, 0));
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < b; ++c) {
          if (!m[r][c]) continue;
          for (std::size_t g = 0; g < gens; ++g) {
            rows[r][g] = static_cast<std::uint32_t>(
                (rows[r][g] + static_cast<std::uint64_t>(m[r][c]) * basis[c][g]) %
                p);
          }
        }
      }
      out.push_back(from_functionals(rows, gens, p));
      std::size_t s = 0;
      while (s < counter.size() && ++counter[s] == p) counter[s++] = 0;
      if (s == counter.size()) break;
    }
    // Next pivot combination.
    std::size_t i = n;
    while (i > 0 && pivots[i - 1] == b - n + (i - 1)) --i;
    if (i == 0) break;
    ++pivots[i - 1];
    for (std::size_t j = i; j < n; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  return out;
}

}  // namespace homgrow
