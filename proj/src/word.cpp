#include "homgrow/word.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>

#include "homgrow/errors.hpp"
#include "word_parser.hpp"

namespace homgrow {

Word Word::reduce(std::span<const Letter> raw) {
  Word out;
  out.letters_.reserve(raw.size());
  for (const Letter& l : raw) {
    if (!out.letters_.empty() && out.letters_.back().gen == l.gen &&
        out.letters_.back().sign == -l.sign) {
      out.letters_.pop_back();
    } else {
      out.letters_.push_back(l);
    }
  }
  return out;
}

Word Word::generator(GeneratorId gen, int power) {
  Word out;
  const auto sign = static_cast<std::int8_t>(power < 0 ? -1 : 1);
  const auto count = static_cast<std::size_t>(power < 0 ? -static_cast<long>(power) : power);
  out.letters_.assign(count, Letter{gen, sign});
  return out;
}

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.letters_.push_back(it->inverse());
  }
  return out;
}

Word Word::pow(int k) const {
  const Word base = k < 0 ? inverse() : *this;
  const long count = k < 0 ? -static_cast<long>(k) : k;
  std::vector<Letter> raw;
  raw.reserve(base.size() * static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    raw.insert(raw.end(), base.letters_.begin(), base.letters_.end());
  }
  return reduce(raw);
}

Word Word::cyclically_reduced() const {
  std::size_t lo = 0;
  std::size_t hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo].gen == letters_[hi - 1].gen &&
         letters_[lo].sign == -letters_[hi - 1].sign) {
    ++lo;
    --hi;
  }
  Word out;
  out.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(lo),
                      letters_.begin() + static_cast<std::ptrdiff_t>(hi));
  return out;
}

Word Word::operator*(const Word& rhs) const {
  Word out = *this;
  out *= rhs;
  return out;
}

Word& Word::operator*=(const Word& rhs) {
  for (const Letter& l : rhs.letters_) {
    if (!letters_.empty() && letters_.back().gen == l.gen &&
        letters_.back().sign == -l.sign) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
  return *this;
}

Word commutator(const Word& a, const Word& b) {
  return a.inverse() * b.inverse() * a * b;
}

std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t gen_count) {
  std::vector<std::int64_t> sums(gen_count, 0);
  for (const Letter& l : w.letters()) {
    if (l.gen >= gen_count) {
      throw std::out_of_range("word references generator " +
                              std::to_string(l.gen) + " outside a list of " +
                              std::to_string(gen_count));
    }
    sums[l.gen] += l.sign;
  }
  return sums;
}

std::vector<std::uint32_t> exponent_vector(const Word& w,
                                           std::size_t gen_count,
                                           std::uint32_t p) {
  const auto sums = exponent_sums(w, gen_count);
  std::vector<std::uint32_t> out(gen_count);
  const auto mod = static_cast<std::int64_t>(p);
  for (std::size_t i = 0; i < gen_count; ++i) {
    out[i] = static_cast<std::uint32_t>(((sums[i] % mod) + mod) % mod);
  }
  return out;
}

bool in_gamma2(const Word& w, std::uint32_t p) {
  std::map<GeneratorId, std::int64_t> sums;
  for (const Letter& l : w.letters()) sums[l.gen] += l.sign;
  return std::all_of(sums.begin(), sums.end(), [p](const auto& kv) {
    return kv.second % static_cast<std::int64_t>(p) == 0;
  });
}

Word ordered_product(std::span<const GeneratorId> subset) {
  std::vector<Letter> raw;
  raw.reserve(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i > 0 && subset[i] <= subset[i - 1]) {
      throw std::invalid_argument("w_E needs a strictly increasing subset");
    }
    raw.push_back({subset[i], 1});
  }
  return Word::reduce(raw);
}

Word parse_word(std::string_view text, const std::vector<std::string>& names,
                std::size_t line, std::size_t column) {
  detail::WordReader reader(text, names, line, column);
  Word w = reader.read_word();
  reader.skip_space();
  if (!reader.at_end()) reader.fail("unexpected trailing input");
  return w;
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  const auto& ls = w.letters();
  std::size_t i = 0;
  while (i < ls.size()) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    const long power = static_cast<long>(j - i) * ls[i].sign;
    if (!out.empty()) out += '*';
    out += ls[i].gen < names.size() ? names[ls[i].gen]
                                    : "g" + std::to_string(ls[i].gen);
    if (power != 1) out += "^" + std::to_string(power);
    i = j;
  }
  return out;
}

namespace detail {

bool is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) {
    return false;
  }
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

WordReader::WordReader(std::string_view text,
                       const std::vector<std::string>& names,
                       std::size_t line, std::size_t column_base)
    : text_(text), names_(names), line_(line), column_base_(column_base) {}

void WordReader::fail(const std::string& message) const {
  throw ParseError(message, line_, column());
}

char WordReader::peek() const {
  return pos_ < text_.size() ? text_[pos_] : '\0';
}

void WordReader::skip_space() {
  while (pos_ < text_.size() &&
         std::isspace(static_cast<unsigned char>(text_[pos_]))) {
    ++pos_;
  }
}

bool WordReader::at_end() {
  skip_space();
  return pos_ >= text_.size();
}

bool WordReader::consume(char c) {
  skip_space();
  if (peek() == c) {
    ++pos_;
    return true;
  }
  return false;
}

Word WordReader::read_word() {
  Word w = read_factor();
  while (consume('*')) w *= read_factor();
  return w;
}

Word WordReader::read_factor() {
  Word base = read_atom();
  if (consume('^')) return base.pow(read_exponent());
  return base;
}

int WordReader::read_exponent() {
  skip_space();
  bool negative = false;
  if (peek() == '-') {
    negative = true;
    ++pos_;
  } else if (peek() == '+') {
    ++pos_;
  }
  if (!std::isdigit(static_cast<unsigned char>(peek()))) {
    fail("expected an integer exponent");
  }
  long value = 0;
  while (std::isdigit(static_cast<unsigned char>(peek()))) {
    value = value * 10 + (peek() - '0');
    if (value > 1'000'000) fail("exponent too large");
    ++pos_;
  }
  return static_cast<int>(negative ? -value : value);
}

Word WordReader::read_atom() {
  skip_space();
  const char c = peek();
  if (c == '(') {
    ++pos_;
    Word inner = read_word();
    if (!consume(')')) fail("expected ')'");
    return inner;
  }
  if (c == '[') {
    ++pos_;
    Word a = read_word();
    if (!consume(',')) fail("expected ',' inside commutator");
    Word b = read_word();
    if (!consume(']')) fail("expected ']'");
    return commutator(a, b);
  }
  if (c == '1') {
    ++pos_;
    return Word{};
  }
  if (std::isalpha(static_cast<unsigned char>(c))) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
      pos_ = start;
      fail("unknown generator '" + std::string(name) + "'");
    }
    return Word::generator(static_cast<GeneratorId>(it - names_.begin()));
  }
  if (c == '\0') fail("unexpected end of word");
  fail(std::string("unexpected character '") + c + "'");
}

}  // namespace detail
}  // namespace homgrow
