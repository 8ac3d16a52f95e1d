#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homgrow/bigint.hpp"
#include "homgrow/fp_matrix.hpp"
#include "homgrow/word.hpp"

namespace homgrow {

struct Epimorphism;

/// Finite presentation <X | R>. Relators are reduced and nonempty.
struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  std::size_t generator_count() const { return generators.size(); }
  std::size_t relator_count() const { return relators.size(); }

  bool operator==(const Presentation&) const = default;
};

/// A presentation file may also carry an `epi:` matrix block.
struct PresentationFile {
  Presentation presentation;
  std::optional<std::string> epi_text;
};

PresentationFile parse_presentation_file(std::string_view text);
Presentation parse_presentation(std::string_view text);
Presentation load_presentation(const std::string& path);
std::string format_presentation(const Presentation& p);

/// Betti numbers of the presentation 2-complex over F_p.
struct ComplexBetti {
  std::uint64_t b0 = 0;
  std::uint64_t b1 = 0;
  std::uint64_t b2 = 0;
  std::uint32_t p = 2;

  bool operator==(const ComplexBetti&) const = default;
};

/// The |X| x |R| matrix whose columns are relator exponent vectors mod p.
FpMatrix relator_matrix(const Presentation& pres, std::uint32_t p);

ComplexBetti complex_betti(const Presentation& pres, std::uint32_t p);

/// |X| - |R| of this particular presentation.
std::int64_t deficiency(const Presentation& pres);

/// Complex-level proxies for the b2/b1 inequalities used on 3- and
/// 4-manifold groups.
struct Section8Report {
  ComplexBetti betti;
  std::int64_t b2_minus_b1 = 0;
  Rational b2_over_b1_plus_1;
  bool b2_le_b1 = false;             // b2 <= b1
  bool b2_minus_b1_le_minus1 = false;  // b2 - b1 <= -1
  bool b2_le_2b1_minus_2 = false;    // b2 <= 2 b1 - 2
};

Section8Report check_section8_conditions(const Presentation& pres,
                                         std::uint32_t p);

/// Witness words f(x3), keyed by generator index.
using Witnesses = std::map<GeneratorId, Word>;

/// `x3 = word` lines; blank lines and `#` comments ignored.
Witnesses parse_witnesses(std::string_view text,
                          const std::vector<std::string>& names);
Witnesses load_witnesses(const std::string& path,
                         const std::vector<std::string>& names);

struct GeneratorPartition {
  std::vector<GeneratorId> x1;
  std::vector<GeneratorId> x2;
  std::vector<GeneratorId> x3;
};

/// Presentation split as (X1, X2, X3; R1, R2, R3) with checked weight
/// conditions. Words are never rewritten: the partition only labels them.
struct NormalizedPresentation {
  Presentation base;
  std::uint32_t p = 2;
  std::vector<GeneratorId> x1;  // declaration order; basis of G/K
  std::vector<GeneratorId> x2;
  std::vector<GeneratorId> x3;
  std::vector<std::size_t> r1;
  std::vector<std::size_t> r2;
  std::vector<std::size_t> r3;
  Witnesses witnesses;

  /// X1 followed by X2, sorted in declaration order.
  std::vector<GeneratorId> x12() const;
};

/// Validates the partition (derived from the epimorphism when omitted) and
/// classifies relators. Throws InvariantViolation naming the offending
/// relator or generator when a checkable condition fails.
NormalizedPresentation normalize_witnessed(
    const Presentation& pres, std::uint32_t p, const Epimorphism& epi,
    const std::optional<GeneratorPartition>& partition,
    const Witnesses& witnesses);

}  // namespace homgrow
