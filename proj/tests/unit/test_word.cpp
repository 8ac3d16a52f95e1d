#include "doctest.h"

#include "homgrow/errors.hpp"
#include "homgrow/word.hpp"
#include "support.hpp"

using namespace homgrow;

namespace {
const std::vector<std::string> kABC{"a", "b", "c"};
const std::vector<std::string> kX{"x1", "x2", "x3"};
Word w(const std::string& s, const std::vector<std::string>& names = kABC) {
  return parse_word(s, names);
}
}  // namespace

TEST_CASE("free reduction") {
  CHECK(w("a*a^-1").empty());
  CHECK(w("a*b*b^-1*a") == w("a^2"));
  const Word raw = w("x3^-1*x3^-1*x1^-1*x3*x1", kX);
  CHECK(raw.size() == 5);
  CHECK(Word::reduce(raw.letters()) == raw);
}

TEST_CASE("reduce is idempotent and never lengthens") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    std::vector<Letter> raw;
    for (int k = 0; k < 30; ++k) {
      raw.push_back({static_cast<GeneratorId>(rng() % 3),
                     static_cast<std::int8_t>((rng() & 1U) ? 1 : -1)});
    }
    const Word once = Word::reduce(raw);
    CHECK(once.size() <= raw.size());
    CHECK(Word::reduce(once.letters()) == once);
  }
}

TEST_CASE("commutator convention") {
  CHECK(commutator(w("a"), w("a")).empty());
  CHECK(commutator(w("x3", kX), w("x1", kX)) == w("x3^-1*x1^-1*x3*x1", kX));
  CHECK(w("[a,b]") == commutator(w("a"), w("b")));
  // x3^-1 [x3,x1] spelled out.
  CHECK(w("x3^-1*[x3,x1]", kX) == w("x3^-1*x3^-1*x1^-1*x3*x1", kX));
}

TEST_CASE("exponent vectors") {
  CHECK(exponent_vector(w("x1^2*x3^2", kX), 3, 2) == std::vector<std::uint32_t>{0, 0, 0});
  CHECK(exponent_vector(Word(), 3, 5) == std::vector<std::uint32_t>{0, 0, 0});
  CHECK(exponent_vector(w("a^2*b"), 2, 3) == std::vector<std::uint32_t>{2, 1});
  CHECK(exponent_vector(w("a^-1"), 1, 5) == std::vector<std::uint32_t>{4});
  CHECK(exponent_sums(w("a^-3*b*c^2"), 3) == std::vector<std::int64_t>{-3, 1, 2});
}

TEST_CASE("exponent vector is a homomorphism and respects inverses") {
  std::mt19937_64 rng(12);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int i = 0; i < 200; ++i) {
      const Word u = testing::random_word(rng, 3, 12);
      const Word v = testing::random_word(rng, 3, 12);
      const auto eu = exponent_vector(u, 3, p);
      const auto ev = exponent_vector(v, 3, p);
      const auto euv = exponent_vector(u * v, 3, p);
      const auto einv = exponent_vector(u.inverse(), 3, p);
      for (int g = 0; g < 3; ++g) {
        CHECK(euv[g] == (eu[g] + ev[g]) % p);
        CHECK(einv[g] == (p - eu[g]) % p);
      }
    }
  }
}

TEST_CASE("in_gamma2") {
  CHECK(in_gamma2(w("x1^2*x3^2", kX), 2));
  CHECK_FALSE(in_gamma2(w("x1", kX), 2));
  std::mt19937_64 rng(13);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int i = 0; i < 300; ++i) {
      const Word u = testing::random_word(rng, 3, 8);
      const Word v = testing::random_word(rng, 3, 8);
      const Word x = testing::random_word(rng, 3, 8);
      CHECK(in_gamma2(commutator(u, v) * x.pow(static_cast<int>(p)), p));
    }
  }
}

TEST_CASE("ordered products") {
  CHECK(ordered_product(std::vector<GeneratorId>{}).empty());
  CHECK(ordered_product(std::vector<GeneratorId>{0, 1}) == w("x1*x2", kX));
  CHECK(ordered_product(std::vector<GeneratorId>{1}) == w("x2", kX));
  CHECK_THROWS_AS(ordered_product(std::vector<GeneratorId>{1, 0}),
                  std::invalid_argument);
}

TEST_CASE("word syntax") {
  CHECK(w("(a*b)^-2") == w("b^-1*a^-1*b^-1*a^-1"));
  CHECK(w("1").empty());
  CHECK(format_word(w("a^3*b^-1*[a,c]"), kABC) == "a^3*b^-1*a^-1*c^-1*a*c");
  CHECK(format_word(Word(), kABC) == "1");
  std::mt19937_64 rng(14);
  for (int i = 0; i < 100; ++i) {
    const Word u = testing::random_word(rng, 3, 15);
    CHECK(parse_word(format_word(u, kABC), kABC) == u);
  }
  CHECK_THROWS_AS(w("a**b"), ParseError);
  CHECK_THROWS_AS(w("a*z"), ParseError);
  CHECK_THROWS_AS(w("[a,b"), ParseError);
  try {
    w("a * q");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 5);
  }
}
