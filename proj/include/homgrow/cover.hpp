#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "homgrow/bigint.hpp"
#include "homgrow/epimorphism.hpp"
#include "homgrow/fp_matrix.hpp"
#include "homgrow/presentation.hpp"
#include "homgrow/word.hpp"

namespace homgrow {

/// Default limit on p^n (1 + |X| + |R|), the total cell count of a cover.
inline constexpr std::uint64_t kDefaultCellBudget = std::uint64_t{1} << 20;

/// Edge-indexed vector over F_p.
using Cochain = FpVector;

struct EdgeStep {
  std::uint32_t edge = 0;
  std::int8_t sign = 1;  // +1 forwards, -1 backwards
};

struct PathTrace {
  std::vector<EdgeStep> steps;
  std::uint32_t end = 0;
};

/// Finite cover of the presentation complex for G ->> (Z/p)^n.
///
/// Vertices are F_p^n written base p (coordinate i is digit i), basepoint 0.
/// Edge g*V + v runs from v to v + phi(g); face r*V + v is relator r read
/// from v.
class CoverComplex {
 public:
  CoverComplex(Presentation pres, Epimorphism epi);

  std::uint32_t p() const { return epi_.p; }
  std::uint32_t n() const { return epi_.n; }
  const Presentation& presentation() const { return pres_; }
  const Epimorphism& epimorphism() const { return epi_; }

  std::size_t vertex_count() const { return vertices_; }
  std::size_t edge_count() const { return vertices_ * pres_.generator_count(); }
  std::size_t face_count() const { return vertices_ * pres_.relator_count(); }

  std::uint32_t encode(const FpVector& coords) const;
  FpVector decode(std::uint32_t v) const;
  std::uint32_t translate(std::uint32_t v, const FpVector& delta) const;

  std::size_t edge_index(std::uint32_t v, GeneratorId g) const {
    return static_cast<std::size_t>(g) * vertices_ + v;
  }
  std::uint32_t edge_source(std::size_t e) const {
    return static_cast<std::uint32_t>(e % vertices_);
  }
  std::uint32_t edge_target(std::size_t e) const { return next_[e]; }
  GeneratorId edge_label(std::size_t e) const {
    return static_cast<GeneratorId>(e / vertices_);
  }

  std::uint32_t forward(std::uint32_t v, GeneratorId g) const {
    return next_[edge_index(v, g)];
  }
  std::uint32_t backward(std::uint32_t v, GeneratorId g) const {
    return prev_[edge_index(v, g)];
  }

  /// Edge path of `w` read from `base`.
  PathTrace trace(const Word& w, std::uint32_t base) const;
  PathTrace face_boundary(std::size_t face) const;

  /// Breadth-first spanning tree from the basepoint.
  bool is_tree_edge(std::size_t e) const { return tree_edge_[e]; }
  /// Word of the tree path from the basepoint to v.
  Word tree_path(std::uint32_t v) const;

 private:
  void build_tree();

  Presentation pres_;
  Epimorphism epi_;
  std::size_t vertices_ = 1;
  std::vector<std::uint32_t> next_;
  std::vector<std::uint32_t> prev_;
  std::vector<bool> tree_edge_;
  std::vector<std::int64_t> parent_edge_;  // -1 at the basepoint
  std::vector<std::int8_t> parent_sign_;
};

/// p^n (1 + |X| + |R|).
BigInt cover_cell_count(const Presentation& pres, const Epimorphism& epi);

/// Throws BudgetExceeded when the cover would exceed `budget` cells.
CoverComplex build_cover(const Presentation& pres, const Epimorphism& epi,
                         std::uint64_t budget = kDefaultCellBudget);

/// Betti numbers over F_p. rank d1 comes from connected components; rank d2
/// from the face boundaries restricted to non-tree edges.
ComplexBetti cover_betti(const CoverComplex& c);

/// Throws BudgetExceeded when a dense rows x cols matrix over F_p would not
/// fit the elimination memory limit.
void check_matrix_size(std::uint64_t rows, std::uint64_t cols, std::uint32_t p);

/// Dense boundary matrices (vertices x edges, edges x faces).
FpMatrix boundary1(const CoverComplex& c);
FpMatrix boundary2(const CoverComplex& c);

/// Coordinates c_j(v) of every vertex in the basis phi(X1).
class VertexCoordinates {
 public:
  VertexCoordinates(const CoverComplex& c, std::vector<GeneratorId> x1);

  std::uint32_t operator()(std::uint32_t v, std::size_t j) const {
    return table_[static_cast<std::size_t>(v) * x1_.size() + j];
  }
  const std::vector<GeneratorId>& x1() const { return x1_; }
  /// The vertex sum_j coords[j] phi(x1_j).
  std::uint32_t vertex_with(const FpVector& coords) const;

 private:
  const CoverComplex* cover_;
  std::vector<GeneratorId> x1_;
  std::vector<std::uint32_t> table_;
};

/// c_j(v) for a generator j of X1.
std::uint32_t vertex_eval(const CoverComplex& c,
                          const std::vector<GeneratorId>& x1, std::uint32_t v,
                          GeneratorId j);

/// Signed sum of z along the path of g from base.
std::uint32_t evaluate_word(const CoverComplex& c, const Cochain& z,
                            const Word& g, std::uint32_t base);

/// Presentation of pi_1 of the cover: one generator `<gen>_<vertex>` per
/// non-tree edge, one relator per face (freely and cyclically reduced).
Presentation reidemeister_schreier(const CoverComplex& c);

}  // namespace homgrow
