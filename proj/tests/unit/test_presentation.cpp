#include "doctest.h"

#include <filesystem>

#include "homgrow/epimorphism.hpp"
#include "homgrow/errors.hpp"
#include "homgrow/presentation.hpp"
#include "support.hpp"

using namespace homgrow;

TEST_CASE("parsing presentations") {
  const auto ex = parse_presentation(
      "# worked example\ngens: x1 x2 x3\nrels: x3^-1*[x3,x1], x1^2*x3^2\n");
  CHECK(ex.generator_count() == 3);
  CHECK(ex.relator_count() == 2);
  const auto free2 = parse_presentation("gens: a b\nrels:\n");
  CHECK(free2.generator_count() == 2);
  CHECK(free2.relator_count() == 0);
  CHECK_THROWS_AS(parse_presentation("gens: a b\nrels: a**b\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrels: a*a^-1\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrels: b\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("gens: a a\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("rels: a\n"), ParseError);
  try {
    parse_presentation("gens: a b\n\nrels: a, b*c\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 12);
  }
  const auto multi = parse_presentation("gens: a b\nrels: a^2,\n  b^3, [a,b]\n");
  CHECK(multi.relator_count() == 3);
  const auto trivial = parse_presentation("gens:\nrels:\n");
  CHECK(trivial.generator_count() == 0);
  const auto file = parse_presentation_file("gens: a b\nepi: 1 0; 0 1\n");
  REQUIRE(file.epi_text.has_value());
  CHECK(parse_epimorphism(*file.epi_text, 2, 2).n == 2);
}

TEST_CASE("corpus round trip") {
  for (const auto& entry :
       std::filesystem::directory_iterator(HOMGROW_CORPUS_DIR)) {
    if (entry.path().extension() != ".pres") continue;
    const auto p = load_presentation(entry.path().string());
    CHECK(parse_presentation(format_presentation(p)) == p);
  }
}

TEST_CASE("complex Betti numbers") {
  CHECK(complex_betti(testing::load("worked.pres"), 2) == ComplexBetti{1, 2, 1, 2});
  CHECK(complex_betti(testing::load("f3.pres"), 2) == ComplexBetti{1, 3, 0, 2});
  CHECK(complex_betti(testing::load("genus2.pres"), 2) == ComplexBetti{1, 4, 1, 2});
  CHECK(complex_betti(testing::load("z2xz2.pres"), 2) == ComplexBetti{1, 2, 3, 2});
  CHECK(complex_betti(testing::load("z2xz2.pres"), 3) == ComplexBetti{1, 0, 1, 3});
  CHECK(deficiency(testing::load("f3.pres")) == 3);
  CHECK(deficiency(testing::load("worked.pres")) == 1);
  CHECK(deficiency(testing::load("genus2.pres")) == 3);
}

TEST_CASE("Euler characteristic and rank-nullity on random presentations") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    Presentation pres;
    const std::size_t gens = 1 + rng() % 4;
    for (std::size_t g = 0; g < gens; ++g) pres.generators.push_back("g" + std::to_string(g));
    const std::size_t rels = rng() % 5;
    while (pres.relators.size() < rels) {
      Word w = testing::random_word(rng, gens, 9);
      if (!w.empty()) pres.relators.push_back(w);
    }
    for (std::uint32_t p : {2u, 3u, 5u}) {
      const auto b = complex_betti(pres, p);
      CHECK(b.b1 + pres.relator_count() == b.b2 + pres.generator_count());
      CHECK(1 - static_cast<long>(gens) + static_cast<long>(rels) ==
            static_cast<long>(b.b0) - static_cast<long>(b.b1) + static_cast<long>(b.b2));
    }
  }
}

TEST_CASE("complex-level b2/b1 conditions") {
  const auto ex = check_section8_conditions(testing::load("worked.pres"), 2);
  CHECK(ex.b2_minus_b1 == -1);
  CHECK(ex.b2_minus_b1_le_minus1);
  CHECK(check_section8_conditions(testing::load("f2.pres"), 2).b2_minus_b1 == -2);
  const auto z2 = check_section8_conditions(testing::load("z2xz2.pres"), 2);
  CHECK(z2.betti.b1 == 2);
  CHECK(z2.betti.b2 == 3);
  CHECK_FALSE(z2.b2_minus_b1_le_minus1);
  CHECK(z2.b2_over_b1_plus_1 == Rational(1));
  for (const char* name : {"f2.pres", "f3.pres", "genus2.pres", "bs13.pres",
                           "worked.pres", "f2xf2.pres"}) {
    const auto pres = testing::load(name);
    for (std::uint32_t p : {2u, 3u}) {
      CHECK(check_section8_conditions(pres, p).b2_minus_b1 <= -deficiency(pres));
    }
  }
}

TEST_CASE("normalization of the worked example") {
  const auto pres = testing::load("worked_normalized.pres");
  const auto wit = load_witnesses(testing::corpus("worked_normalized.wit"),
                                  pres.generators);
  const auto epi = full_mod_p_epi(pres, 2);
  const auto np = normalize_witnessed(pres, 2, epi, std::nullopt, wit);
  CHECK(np.x1 == std::vector<GeneratorId>{0, 1});
  CHECK(np.x2.empty());
  CHECK(np.x3 == std::vector<GeneratorId>{2});
  CHECK(np.r3 == std::vector<std::size_t>{0});
  CHECK(np.r1 == std::vector<std::size_t>{1});
  CHECK(np.r2.empty());
  CHECK(np.base == pres);
  // The original spelling has the wrong witness for x3.
  CHECK_THROWS_AS(normalize_witnessed(testing::load("worked.pres"), 2, epi,
                                      std::nullopt, wit),
                  InvariantViolation);
  CHECK_THROWS_AS(normalize_witnessed(pres, 2, epi, std::nullopt, {}),
                  InvariantViolation);
}

TEST_CASE("normalization without X3") {
  const auto g2 = testing::load("genus2.pres");
  const auto np = normalize_witnessed(g2, 2, full_mod_p_epi(g2, 2), std::nullopt, {});
  CHECK(np.x1.size() == 4);
  CHECK(np.r1 == std::vector<std::size_t>{0});
  CHECK(np.r2.empty());
  CHECK(np.r3.empty());
  const auto f3 = testing::load("f3.pres");
  const auto nf = normalize_witnessed(f3, 2, full_mod_p_epi(f3, 2), std::nullopt, {});
  CHECK(nf.r1.empty());
  CHECK(nf.x1.size() == 3);
  // A proper quotient leaves a generator in X2.
  const auto e = parse_epimorphism("1; 0; 0", 2, 3);
  const auto nq = normalize_witnessed(f3, 2, e, std::nullopt, {});
  CHECK(nq.x1 == std::vector<GeneratorId>{0});
  CHECK(nq.x2 == std::vector<GeneratorId>{1, 2});
  // A relator outside [F,F]F^p is named in the error.
  const auto bad = parse_presentation("gens: a b\nrels: a^2*b^3\n");
  try {
    normalize_witnessed(bad, 2, parse_epimorphism("1; 0", 2, 2),
                        GeneratorPartition{{0}, {1}, {}}, {});
    FAIL("expected an invariant violation");
  } catch (const InvariantViolation& ex) {
    CHECK(std::string(ex.what()).find("relator 1") != std::string::npos);
    CHECK(std::string(ex.what()).find("'b'") != std::string::npos);
  }
}

TEST_CASE("epimorphisms") {
  const auto f3 = testing::load("f3.pres");
  const auto full = full_mod_p_epi(f3, 2);
  CHECK(full.n == 3);
  CHECK(full.images == std::vector<FpVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto ex = full_mod_p_epi(testing::load("worked.pres"), 2);
  CHECK(ex.n == 2);
  CHECK(ex.images[2] == FpVector{0, 0});
  CHECK(full_mod_p_epi(testing::load("z.pres"), 2).n == 1);
  CHECK_THROWS_AS(full_mod_p_epi(testing::load("z2xz2.pres"), 3), InvariantViolation);
  CHECK_THROWS_AS(validate_epimorphism(f3, parse_epimorphism("1 0; 1 0; 1 0", 2, 3)),
                  InvariantViolation);
  CHECK_THROWS_AS(parse_epimorphism("1 0; 1", 2, 2), ParseError);
  CHECK(format_epimorphism(full) == "1 0 0; 0 1 0; 0 0 1");
  // Number of n-dimensional quotients = number of n-dimensional subspaces.
  for (std::uint32_t n = 0; n <= 3; ++n) {
    CHECK(all_epimorphisms(f3, 2, n).size() == gaussian_binomial(3, n, 2));
    for (const auto& e : all_epimorphisms(f3, 2, n)) validate_epimorphism(f3, e);
  }
  CHECK(all_epimorphisms(f3, 3, 2).size() == gaussian_binomial(3, 2, 3));
  CHECK(all_epimorphisms(f3, 2, 4).empty());
}
