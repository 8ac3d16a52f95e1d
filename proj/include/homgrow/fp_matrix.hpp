#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "homgrow/bigint.hpp"

namespace homgrow {

using FpVector = std::vector<std::uint32_t>;

bool is_prime(std::uint64_t p);

/// Dense matrix over F_p. For p = 2 rows are packed 64 entries per word;
/// otherwise every entry is a 32-bit residue.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);

  static FpMatrix identity(std::size_t n, std::uint32_t p);
  /// Builds from row vectors; entries are reduced mod p.
  static FpMatrix from_rows(const std::vector<FpVector>& rows, std::size_t cols,
                            std::uint32_t p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t prime() const { return p_; }
  bool packed() const { return p_ == 2; }

  std::uint32_t at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, std::uint32_t value);
  void add(std::size_t r, std::size_t c, std::uint32_t value);

  FpVector row(std::size_t r) const;
  FpMatrix transpose() const;
  FpVector multiply(std::span<const std::uint32_t> x) const;

  bool operator==(const FpMatrix& other) const;

 private:
  friend class FpEliminator;

  std::size_t words_per_row() const { return (cols_ + 63) / 64; }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint32_t p_ = 2;
  std::vector<std::uint64_t> bits_;     // p == 2
  std::vector<std::uint32_t> entries_;  // p odd
};

/// Which elimination kernel to run. `Auto` picks the packed path for p = 2.
enum class Engine { Auto, Generic, Packed2 };

struct RankKernel {
  std::size_t rank = 0;
  std::vector<FpVector> kernel;  // basis of {v : M v = 0}
};

struct RowEchelon {
  FpMatrix reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form with first-nonzero-in-column-order pivoting.
RowEchelon row_reduce(const FpMatrix& m, Engine engine = Engine::Auto);

std::size_t rank(const FpMatrix& m, Engine engine = Engine::Auto);

RankKernel rank_and_kernel(const FpMatrix& m, Engine engine = Engine::Auto);

/// Some x with M x = b, or nullopt when inconsistent. Free variables are 0.
std::optional<FpVector> solve(const FpMatrix& m,
                              std::span<const std::uint32_t> b);

/// Rank of the span of the given vectors (all of length `dim`).
std::size_t span_rank(const std::vector<FpVector>& vectors, std::size_t dim,
                      std::uint32_t p);

/// Number of k-dimensional subspaces of F_p^n.
BigInt gaussian_binomial(std::uint64_t n, std::uint64_t k, std::uint32_t p);

/// Modular inverse of a nonzero residue.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

}  // namespace homgrow
