#include "doctest.h"

#include "homgrow/cover.hpp"
#include "homgrow/errors.hpp"
#include "support.hpp"

using namespace homgrow;

namespace {

CoverComplex full_cover(const std::string& name, std::uint32_t p = 2) {
  const auto pres = testing::load(name);
  return build_cover(pres, full_mod_p_epi(pres, p));
}

bool is_zero_product(const FpMatrix& a, const FpMatrix& b) {
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const auto col = a.multiply(b.transpose().row(j));
    if (std::any_of(col.begin(), col.end(), [](auto x) { return x != 0; })) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("cell counts") {
  const auto f3 = full_cover("f3.pres");
  CHECK(f3.vertex_count() == 8);
  CHECK(f3.edge_count() == 24);
  CHECK(f3.face_count() == 0);
  const auto z = full_cover("z.pres");
  CHECK(z.vertex_count() == 2);
  CHECK(z.edge_count() == 2);
  const auto g2 = full_cover("genus2.pres");
  CHECK(g2.vertex_count() == 16);
  CHECK(g2.edge_count() == 64);
  CHECK(g2.face_count() == 16);
}

TEST_CASE("budget") {
  const auto g2 = testing::load("genus2.pres");
  CHECK_THROWS_AS(build_cover(g2, full_mod_p_epi(g2, 2), 16 * 6 - 1), BudgetExceeded);
  CHECK_NOTHROW(build_cover(g2, full_mod_p_epi(g2, 2), 16 * 6));
  try {
    build_cover(g2, full_mod_p_epi(g2, 2), 10);
  } catch (const BudgetExceeded& e) {
    CHECK(e.required() == "96");
    CHECK(e.allowed() == "10");
  }
}

TEST_CASE("cover Betti numbers") {
  // Nielsen-Schreier: 1 + 8 (3 - 1).
  CHECK(cover_betti(full_cover("f3.pres")).b1 == 17);
  CHECK(cover_betti(full_cover("z.pres")).b1 == 1);
  // Genus-17 surface: b1 = 34, b2 = 1.
  const auto g2 = cover_betti(full_cover("genus2.pres"));
  CHECK(g2.b1 == 34);
  CHECK(g2.b2 == 1);
  CHECK(cover_betti(full_cover("genus2.pres", 3)).b1 == 2 + 81 * 2);
}

TEST_CASE("boundary maps compose to zero and Betti numbers match dense ranks") {
  for (const char* name : {"genus2.pres", "worked.pres", "z2xz2.pres", "bs13.pres",
                           "f2xf2.pres", "worked_normalized.pres"}) {
    for (std::uint32_t p : {2u, 3u}) {
      const auto pres = testing::load(name);
      if (complex_betti(pres, p).b1 == 0) continue;
      const auto c = build_cover(pres, full_mod_p_epi(pres, p));
      const FpMatrix d1 = boundary1(c);
      const FpMatrix d2 = boundary2(c);
      CHECK(is_zero_product(d1, d2));
      const auto r1 = rank(d1);
      const auto r2 = rank(d2);
      const auto b = cover_betti(c);
      CHECK(b.b0 == c.vertex_count() - r1);
      CHECK(b.b1 == c.edge_count() - r1 - r2);
      CHECK(b.b2 == c.face_count() - r2);
    }
  }
}

TEST_CASE("Euler characteristic multiplies under covers") {
  for (const char* name : {"f2.pres", "f3.pres", "f4.pres", "genus2.pres", "genus3.pres",
                           "worked.pres", "bs13.pres", "z2.pres", "z2xz2.pres",
                           "f2xf2.pres", "z.pres"}) {
    const auto pres = testing::load(name);
    const auto base = complex_betti(pres, 2);
    for (std::uint32_t n = 1; n <= base.b1; ++n) {
      for (const auto& epi : all_epimorphisms(pres, 2, n)) {
        const auto c = build_cover(pres, epi);
        const auto b = cover_betti(c);
        const long chi = 1 - static_cast<long>(pres.generator_count()) +
                         static_cast<long>(pres.relator_count());
        CHECK(static_cast<long>(b.b0) - static_cast<long>(b.b1) + static_cast<long>(b.b2) ==
              static_cast<long>(c.vertex_count()) * chi);
        // Level 1 of the bound gives b1(K) >= C(b1,2) + b1 - b2, which is at
        // least b1 exactly when C(b1,2) >= b2; (Z/2)^2 is the counterexample
        // without it.
        if (n == base.b1 && base.b1 * (base.b1 - 1) / 2 >= base.b2) {
          CHECK(b.b1 >= base.b1);
        }
      }
    }
  }
}

TEST_CASE("vertex coordinates") {
  const auto c = full_cover("f3.pres");
  const std::vector<GeneratorId> x1{0, 1, 2};
  for (GeneratorId j : x1) CHECK(vertex_eval(c, x1, 0, j) == 0);
  const auto v = c.forward(0, 0);
  CHECK(vertex_eval(c, x1, v, 0) == 1);
  CHECK(vertex_eval(c, x1, v, 1) == 0);
  // Path independence: x1 x2 and x2 x1 x3 x3 end at the same vertex.
  const std::vector<std::string> names{"x1", "x2", "x3"};
  const auto a = c.trace(parse_word("x1*x2", names), 0).end;
  const auto b = c.trace(parse_word("x2*x1*x3^2", names), 0).end;
  CHECK(a == b);
  const VertexCoordinates coords(c, x1);
  for (std::size_t j = 0; j < 3; ++j) CHECK(coords(a, j) == coords(b, j));
  CHECK(coords.vertex_with({1, 1, 0}) == a);
  // A non-standard basis.
  const auto e = parse_epimorphism("1 1; 0 1; 0 0", 3, 3);
  const auto c3 = build_cover(testing::load("f3.pres"), e);
  const VertexCoordinates k(c3, {0, 1});
  for (std::uint32_t u = 0; u < c3.vertex_count(); ++u) {
    CHECK(k.vertex_with({k(u, 0), k(u, 1)}) == u);
  }
}

TEST_CASE("word evaluation") {
  const auto c = full_cover("f3.pres");
  std::mt19937_64 rng(41);
  Cochain z(c.edge_count());
  for (auto& x : z) x = static_cast<std::uint32_t>(rng() % 2);
  CHECK(evaluate_word(c, z, Word(), 0) == 0);
  Cochain ind(c.edge_count(), 0);
  ind[c.edge_index(0, 0)] = 1;
  CHECK(evaluate_word(c, ind, Word::generator(0), 0) == 1);
  const auto c3 = full_cover("genus2.pres", 3);
  Cochain z3(c3.edge_count());
  for (auto& x : z3) x = static_cast<std::uint32_t>(rng() % 3);
  const auto& epi = c3.epimorphism();
  for (int t = 0; t < 200; ++t) {
    const Word g = testing::random_word(rng, 4, 10);
    const Word h = testing::random_word(rng, 4, 10);
    const auto base = static_cast<std::uint32_t>(rng() % c3.vertex_count());
    const auto mid = c3.translate(base, epi.image(g));
    CHECK(evaluate_word(c3, z3, g * h, base) ==
          (evaluate_word(c3, z3, g, base) + evaluate_word(c3, z3, h, mid)) % 3);
  }
}

TEST_CASE("Reidemeister-Schreier") {
  const auto f3 = reidemeister_schreier(full_cover("f3.pres"));
  CHECK(f3.generator_count() == 17);
  CHECK(f3.relator_count() == 0);
  const auto z = reidemeister_schreier(full_cover("z.pres"));
  CHECK(z.generator_count() == 1);
  const auto gc = full_cover("genus2.pres");
  const auto g2 = reidemeister_schreier(gc);
  CHECK(g2.generator_count() == 49);
  CHECK(g2.relator_count() == 16);
  CHECK(complex_betti(g2, 2).b1 == 34);
  for (const char* name : {"worked.pres", "bs13.pres", "z2xz2.pres", "f2xf2.pres",
                           "genus3.pres"}) {
    for (std::uint32_t p : {2u, 3u}) {
      const auto pres = testing::load(name);
      if (complex_betti(pres, p).b1 == 0) continue;
      const auto c = build_cover(pres, full_mod_p_epi(pres, p));
      const auto rs = reidemeister_schreier(c);
      CHECK(rs.generator_count() == c.edge_count() - c.vertex_count() + 1);
      const auto a = complex_betti(rs, p);
      const auto b = cover_betti(c);
      CHECK(a.b1 == b.b1);
      CHECK(a.b2 == b.b2);
      CHECK(parse_presentation(format_presentation(rs)) == rs);
    }
  }
}

TEST_CASE("tree paths end where they claim") {
  const auto c = full_cover("genus3.pres");
  for (std::uint32_t v = 0; v < c.vertex_count(); ++v) {
    CHECK(c.trace(c.tree_path(v), 0).end == v);
  }
}
