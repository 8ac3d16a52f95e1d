#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace homgrow {

/// Position of a generator in its presentation's generator list.
using GeneratorId = std::uint32_t;

struct Letter {
  GeneratorId gen = 0;
  std::int8_t sign = 1;  // +1 or -1

  Letter inverse() const { return {gen, static_cast<std::int8_t>(-sign)}; }
  auto operator<=>(const Letter&) const = default;
};

/// Freely reduced word in a free group. Every constructor reduces, so no
/// stored word ever contains a cancelling pair.
class Word {
 public:
  Word() = default;

  static Word reduce(std::span<const Letter> raw);
  static Word generator(GeneratorId gen, int power = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word pow(int k) const;
  /// Removes cancelling prefix/suffix pairs (conjugates toward the core).
  Word cyclically_reduced() const;

  Word operator*(const Word& rhs) const;
  Word& operator*=(const Word& rhs);

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

/// [a,b] = a^-1 b^-1 a b.
Word commutator(const Word& a, const Word& b);

/// Signed occurrence count of every generator, reduced mod p.
std::vector<std::uint32_t> exponent_vector(const Word& w,
                                           std::size_t gen_count,
                                           std::uint32_t p);

/// Integral signed occurrence count of every generator.
std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t gen_count);

/// Membership in [F,F]F^p: all exponent sums vanish mod p.
bool in_gamma2(const Word& w, std::uint32_t p);

/// w_E: the generators of E concatenated in increasing order.
Word ordered_product(std::span<const GeneratorId> subset);

/// Parses `[a,b]*c^-2` style text. `line`/`column` offset error positions
/// when the text is a fragment of a larger file.
Word parse_word(std::string_view text, const std::vector<std::string>& names,
                std::size_t line = 1, std::size_t column = 1);

/// Renders in the same syntax, grouping runs as powers; identity is "1".
std::string format_word(const Word& w, const std::vector<std::string>& names);

}  // namespace homgrow
