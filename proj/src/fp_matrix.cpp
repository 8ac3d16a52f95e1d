#include "homgrow/fp_matrix.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

namespace homgrow {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  // Fermat: a^(p-2).
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  std::uint64_t e = p - 2;
  while (e > 0) {
    if (e & 1U) result = result * base % p;
    base = base * base % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p) {
  if (!is_prime(p)) {
    throw std::invalid_argument("FpMatrix needs a prime modulus, got " +
                                std::to_string(p));
  }
  if (p == 2) {
    bits_.assign(rows * words_per_row(), 0);
  } else {
    entries_.assign(rows * cols, 0);
  }
}

FpMatrix FpMatrix::identity(std::size_t n, std::uint32_t p) {
  FpMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<FpVector>& rows,
                             std::size_t cols, std::uint32_t p) {
  FpMatrix m(rows.size(), cols, p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw std::invalid_argument("row length mismatch in FpMatrix::from_rows");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c] % p != 0) m.set(r, c, rows[r][c] % p);
    }
  }
  return m;
}

std::uint32_t FpMatrix::at(std::size_t r, std::size_t c) const {
  if (p_ == 2) {
    return static_cast<std::uint32_t>(
        (bits_[r * words_per_row() + c / 64] >> (c % 64)) & 1U);
  }
  return entries_[r * cols_ + c];
}

void FpMatrix::set(std::size_t r, std::size_t c, std::uint32_t value) {
  value %= p_;
  if (p_ == 2) {
    auto& word = bits_[r * words_per_row() + c / 64];
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    word = value ? (word | mask) : (word & ~mask);
    return;
  }
  entries_[r * cols_ + c] = value;
}

void FpMatrix::add(std::size_t r, std::size_t c, std::uint32_t value) {
  set(r, c, static_cast<std::uint32_t>(
                (static_cast<std::uint64_t>(at(r, c)) + value % p_) % p_));
}

FpVector FpMatrix::row(std::size_t r) const {
  FpVector out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = at(r, c);
  return out;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(cols_, rows_, p_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto v = at(r, c);
      if (v) t.set(c, r, v);
    }
  }
  return t;
}

FpVector FpMatrix::multiply(std::span<const std::uint32_t> x) const {
  if (x.size() != cols_) {
    throw std::invalid_argument("dimension mismatch in FpMatrix::multiply");
  }
  FpVector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc = (acc + static_cast<std::uint64_t>(at(r, c)) * (x[c] % p_)) % p_;
    }
    out[r] = static_cast<std::uint32_t>(acc);
  }
  return out;
}

bool FpMatrix::operator==(const FpMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && p_ == other.p_ &&
         bits_ == other.bits_ && entries_ == other.entries_;
}

// Elimination kernels. Both run Gauss-Jordan with the pivot taken as the
// first row (at or below the current rank) holding a nonzero entry in the
// leftmost remaining column, so the two paths pick identical pivots.
class FpEliminator {
 public:
  static std::vector<std::size_t> generic(std::vector<std::uint32_t>& a,
                                          std::size_t rows, std::size_t cols,
                                          std::uint32_t p, bool full) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
      std::size_t pivot = r;
      while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
      if (pivot == rows) continue;
      if (pivot != r) {
        std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pivot * cols),
                         a.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * cols),
                         a.begin() + static_cast<std::ptrdiff_t>(r * cols));
      }
      std::uint32_t* prow = &a[r * cols];
      const std::uint64_t inv = inverse_mod(prow[c], p);
      for (std::size_t j = c; j < cols; ++j) {
        prow[j] = static_cast<std::uint32_t>(prow[j] * inv % p);
      }
      for (std::size_t i = full ? 0 : r + 1; i < rows; ++i) {
        if (i == r) continue;
        std::uint32_t* row = &a[i * cols];
        const std::uint32_t f = row[c];
        if (f == 0) continue;
        const std::uint64_t neg = p - f;
        for (std::size_t j = c; j < cols; ++j) {
          if (prow[j] != 0) {
            row[j] = static_cast<std::uint32_t>((row[j] + neg * prow[j]) % p);
          }
        }
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  static std::vector<std::size_t> packed(std::vector<std::uint64_t>& a,
                                         std::size_t rows, std::size_t cols,
                                         bool full) {
    const std::size_t wpr = (cols + 63) / 64;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
      const std::size_t w = c / 64;
      const std::uint64_t mask = std::uint64_t{1} << (c % 64);
      std::size_t pivot = r;
      while (pivot < rows && (a[pivot * wpr + w] & mask) == 0) ++pivot;
      if (pivot == rows) continue;
      if (pivot != r) {
        std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pivot * wpr),
                         a.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * wpr),
                         a.begin() + static_cast<std::ptrdiff_t>(r * wpr));
      }
      const std::uint64_t* prow = &a[r * wpr];
      for (std::size_t i = full ? 0 : r + 1; i < rows; ++i) {
        if (i == r) continue;
        std::uint64_t* row = &a[i * wpr];
        if ((row[w] & mask) == 0) continue;
        for (std::size_t j = w; j < wpr; ++j) row[j] ^= prow[j];
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  static std::vector<std::size_t> run(FpMatrix& m, Engine engine, bool full) {
    const bool use_packed =
        engine == Engine::Packed2 || (engine == Engine::Auto && m.p_ == 2);
    if (use_packed) {
      if (m.p_ != 2) {
        throw std::invalid_argument("packed elimination needs p = 2");
      }
      return packed(m.bits_, m.rows_, m.cols_, full);
    }
    if (m.p_ != 2) return generic(m.entries_, m.rows_, m.cols_, m.p_, full);
    // Generic path on F_2 data: unpack, eliminate, repack.
    std::vector<std::uint32_t> dense(m.rows_ * m.cols_);
    for (std::size_t r = 0; r < m.rows_; ++r) {
      for (std::size_t c = 0; c < m.cols_; ++c) dense[r * m.cols_ + c] = m.at(r, c);
    }
    auto pivots = generic(dense, m.rows_, m.cols_, 2, full);
    for (std::size_t r = 0; r < m.rows_; ++r) {
      for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, dense[r * m.cols_ + c]);
    }
    return pivots;
  }
};

RowEchelon row_reduce(const FpMatrix& m, Engine engine) {
  RowEchelon out{m, {}};
  out.pivots = FpEliminator::run(out.reduced, engine, true);
  return out;
}

std::size_t rank(const FpMatrix& m, Engine engine) {
  FpMatrix work = m;
  return FpEliminator::run(work, engine, false).size();
}

RankKernel rank_and_kernel(const FpMatrix& m, Engine engine) {
  const RowEchelon ech = row_reduce(m, engine);
  const std::uint32_t p = m.prime();
  RankKernel out;
  out.rank = ech.pivots.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    FpVector v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
      const auto entry = ech.reduced.at(i, f);
      if (entry) v[ech.pivots[i]] = (p - entry) % p;
    }
    out.kernel.push_back(std::move(v));
  }
  return out;
}

std::optional<FpVector> solve(const FpMatrix& m,
                              std::span<const std::uint32_t> b) {
  if (b.size() != m.rows()) {
    throw std::invalid_argument("solve: right-hand side has length " +
                                std::to_string(b.size()) + ", expected " +
                                std::to_string(m.rows()));
  }
  const std::uint32_t p = m.prime();
  FpMatrix aug(m.rows(), m.cols() + 1, p);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto v = m.at(r, c);
      if (v) aug.set(r, c, v);
    }
    aug.set(r, m.cols(), b[r] % p);
  }
  const RowEchelon ech = row_reduce(aug);
  if (!ech.pivots.empty() && ech.pivots.back() == m.cols()) return std::nullopt;
  FpVector x(m.cols(), 0);
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
    x[ech.pivots[i]] = ech.reduced.at(i, m.cols());
  }
  return x;
}

std::size_t span_rank(const std::vector<FpVector>& vectors, std::size_t dim,
                      std::uint32_t p) {
  return rank(FpMatrix::from_rows(vectors, dim, p));
}

BigInt gaussian_binomial(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  if (k > n) return 0;
  BigInt num = 1;
  BigInt den = 1;
  const BigInt pn = pow_big(p, n);
  const BigInt pk = pow_big(p, k);
  BigInt pi = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    num *= pn - pi;
    den *= pk - pi;
    pi *= p;
  }
  return num / den;
}

}  // namespace homgrow
