#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "homgrow/fp_matrix.hpp"
#include "homgrow/word.hpp"

namespace homgrow {

struct Presentation;

/// G ->> (Z/p)^n given by the image of every generator.
struct Epimorphism {
  std::uint32_t p = 2;
  std::uint32_t n = 0;
  std::vector<FpVector> images;  // one length-n vector per generator

  FpVector image(const Word& w) const;

  bool operator==(const Epimorphism&) const = default;
};

/// Parses "1 0 0; 0 1 0" (rows = generators, columns = coordinates).
Epimorphism parse_epimorphism(std::string_view text, std::uint32_t p,
                              std::size_t generator_count);

std::string format_epimorphism(const Epimorphism& epi);

/// Throws InvariantViolation unless every relator maps to 0 and the images
/// span F_p^n.
void validate_epimorphism(const Presentation& pres, const Epimorphism& epi);

/// Projection onto H_1(G; F_p); its kernel on G is [G,G]G^p. Pivot-free
/// generators map to standard basis vectors.
Epimorphism full_mod_p_epi(const Presentation& pres, std::uint32_t p);

/// Every epimorphism onto (Z/p)^n up to automorphisms of the target, i.e.
/// one per normal subgroup K with G/K elementary abelian of rank n.
std::vector<Epimorphism> all_epimorphisms(const Presentation& pres,
                                          std::uint32_t p, std::uint32_t n);

}  // namespace homgrow
