#include "doctest.h"

#include <random>
#include <set>

#include "homgrow/fp_matrix.hpp"

using namespace homgrow;

namespace {

FpMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c,
                       std::uint32_t p, double density = 0.5) {
  FpMatrix m(r, c, p);
  std::bernoulli_distribution nz(density);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (nz(rng)) m.set(i, j, static_cast<std::uint32_t>(1 + rng() % (p - 1)));
    }
  }
  return m;
}

// Subspaces of F_2^n counted by collecting the distinct spans of all
// k-subsets of nonzero vectors (feasible for n <= 4).
std::size_t brute_force_subspaces(unsigned n, unsigned k) {
  std::set<std::set<unsigned>> spaces;
  const unsigned total = 1U << n;
  std::vector<unsigned> pick(k);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned start,
                                                    unsigned depth) {
    if (depth == k) {
      std::set<unsigned> span{0};
      for (unsigned v : pick) {
        std::set<unsigned> next = span;
        for (unsigned s : span) next.insert(s ^ v);
        span = next;
      }
      if (span.size() == (1U << k)) spaces.insert(span);
      return;
    }
    for (unsigned v = start; v < total; ++v) {
      pick[depth] = v;
      rec(v + 1, depth + 1);
    }
  };
  rec(1, 0);
  return spaces.size();
}

}  // namespace

TEST_CASE("rank and kernel basics") {
  const FpMatrix zero(3, 3, 2);
  auto rk = rank_and_kernel(zero);
  CHECK(rk.rank == 0);
  CHECK(rk.kernel.size() == 3);
  for (std::size_t n : {1u, 5u, 70u}) {
    auto id = rank_and_kernel(FpMatrix::identity(n, 3));
    CHECK(id.rank == n);
    CHECK(id.kernel.empty());
  }
  // Relator columns (0,0,1) and (0,0,0) of the worked example.
  FpMatrix d2(3, 2, 2);
  d2.set(2, 0, 1);
  rk = rank_and_kernel(d2);
  CHECK(rk.rank == 1);
  CHECK(rk.kernel.size() == 1);
  CHECK_THROWS_AS(FpMatrix(2, 2, 4), std::invalid_argument);
}

TEST_CASE("kernel vectors are independent and annihilated") {
  std::mt19937_64 rng(21);
  for (std::uint32_t p : {2u, 3u, 7u}) {
    for (int t = 0; t < 20; ++t) {
      const FpMatrix m = random_matrix(rng, 1 + rng() % 12, 1 + rng() % 12, p, 0.3);
      const auto rk = rank_and_kernel(m);
      CHECK(rk.rank + rk.kernel.size() == m.cols());
      CHECK(span_rank(rk.kernel, m.cols(), p) == rk.kernel.size());
      for (const auto& v : rk.kernel) {
        const auto mv = m.multiply(v);
        CHECK(std::all_of(mv.begin(), mv.end(), [](auto x) { return x == 0; }));
      }
      CHECK(rank(m) == rank(m.transpose()));
    }
  }
}

TEST_CASE("solve") {
  const FpMatrix id = FpMatrix::identity(4, 5);
  const FpVector b{1, 2, 3, 4};
  CHECK(solve(id, b) == b);
  FpMatrix m(2, 2, 3);
  m.set(0, 0, 1);
  CHECK_FALSE(solve(m, FpVector{0, 1}).has_value());
  CHECK_THROWS_AS(solve(m, FpVector{1}), std::invalid_argument);
  std::mt19937_64 rng(22);
  for (std::uint32_t p : {2u, 5u}) {
    for (int t = 0; t < 30; ++t) {
      const FpMatrix a = random_matrix(rng, 1 + rng() % 10, 1 + rng() % 10, p);
      FpVector x(a.cols());
      for (auto& v : x) v = static_cast<std::uint32_t>(rng() % p);
      const FpVector ax = a.multiply(x);
      const auto sol = solve(a, ax);
      REQUIRE(sol.has_value());
      CHECK(a.multiply(*sol) == ax);
    }
  }
}

TEST_CASE("packed and generic elimination agree bit for bit") {
  std::mt19937_64 rng(23);
  for (std::size_t n : {1u, 63u, 64u, 65u, 200u, 2048u}) {
    const FpMatrix m = random_matrix(rng, n, n + n / 3, 2, n > 500 ? 0.02 : 0.3);
    const auto a = row_reduce(m, Engine::Packed2);
    const auto b = row_reduce(m, Engine::Generic);
    CHECK(a.pivots == b.pivots);
    CHECK(a.reduced == b.reduced);
  }
  CHECK_THROWS_AS(row_reduce(FpMatrix(2, 2, 3), Engine::Packed2),
                  std::invalid_argument);
}

TEST_CASE("gaussian binomials") {
  CHECK(gaussian_binomial(2, 1, 2) == 3);
  CHECK(gaussian_binomial(4, 2, 2) == 35);
  CHECK(gaussian_binomial(4, 2, 2) == brute_force_subspaces(4, 2));
  CHECK(gaussian_binomial(4, 1, 2) == brute_force_subspaces(4, 1));
  CHECK(gaussian_binomial(3, 2, 2) == brute_force_subspaces(3, 2));
  CHECK(gaussian_binomial(9, 0, 7) == 1);
  CHECK(gaussian_binomial(2, 3, 2) == 0);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (unsigned n = 0; n < 9; ++n) {
      for (unsigned k = 0; k <= n; ++k) {
        CHECK(gaussian_binomial(n, k, p) == gaussian_binomial(n, n - k, p));
      }
    }
  }
}
