#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "homgrow/cover.hpp"
#include "homgrow/presentation.hpp"

namespace homgrow {

/// (A, y): A is a sorted list of positions in X1, y a generator of X1 or X2.
struct BasisLabel {
  std::vector<std::size_t> a;
  GeneratorId y = 0;

  bool operator==(const BasisLabel&) const = default;
};

/// (r1, E): a relator index in R1 and a sorted list of positions in X1.
struct ConstraintLabel {
  std::size_t relator = 0;
  std::vector<std::size_t> e;
};

struct TestLoop {
  BasisLabel label;
  std::uint32_t base = 0;  // c_j(base) = 1 iff j in A
  Word word;
};

struct FaceViolation {
  std::size_t candidate = 0;
  std::size_t face = 0;
  std::uint32_t value = 0;
};

/// Cocycles of level l: kernel coefficients, the cochains z before psi and
/// psi(z) after.
struct LevelCocycles {
  std::size_t level = 0;
  std::vector<BasisLabel> labels;
  std::size_t constraint_rows = 0;
  std::vector<FpVector> kernel;
  std::vector<Cochain> z;
  std::vector<Cochain> c1;
};

struct DimensionReport {
  std::size_t level = 0;
  std::size_t dim_u = 0;          // rank of the c(A, y)
  std::size_t labels = 0;         // number of c(A, y)
  std::size_t constraints = 0;    // |R1| sum_{i < l} C(n, i)
  std::size_t dim_kernel = 0;     // rank of the z before psi
  std::size_t dim_c1 = 0;         // rank of psi(z)
  std::size_t dim_quotient = 0;   // rank [C1; B1] - rank B1
  std::size_t dim_quotient_dual = 0;  // rank of C1 on the fundamental cycles
  BigInt bound;                   // level bound with b2 = |R1|
  std::size_t test_loops = 0;
  std::size_t pairing_rank = 0;
  std::size_t face_violations = 0;
};

/// The cochain constructions on the cover of a normalized presentation.
class CochainLab {
 public:
  CochainLab(NormalizedPresentation np, const Epimorphism& epi,
             std::uint64_t budget = kDefaultCellBudget);
  CochainLab(const CochainLab&) = delete;
  CochainLab& operator=(const CochainLab&) = delete;

  const CoverComplex& cover() const { return cover_; }
  const NormalizedPresentation& normalized() const { return np_; }
  const VertexCoordinates& coordinates() const { return coords_; }
  std::uint32_t p() const { return cover_.p(); }
  std::size_t n() const { return np_.x1.size(); }
  /// |X1| + |X2|.
  std::size_t b1() const { return np_.x1.size() + np_.x2.size(); }

  /// Every (A, y) with |A| <= l, ordered by |A|, then A lexicographically,
  /// then y in declaration order.
  std::vector<BasisLabel> labels(std::size_t level) const;
  std::vector<ConstraintLabel> constraint_labels(std::size_t level) const;
  std::string label_name(const BasisLabel& label) const;

  /// c_j(v) for position j of X1.
  std::uint32_t coordinate(std::uint32_t v, std::size_t j) const {
    return coords_(v, j);
  }
  /// c_j(g): the coordinate of the endpoint of g read from the basepoint.
  std::uint32_t coordinate(const Word& g, std::size_t j) const;

  Cochain basis_cochain(const BasisLabel& label) const;
  /// c(A, y) summed along w from base, without realizing the cochain.
  std::uint32_t evaluate(const BasisLabel& label, const Word& w,
                         std::uint32_t base = 0) const;
  std::uint32_t evaluate(const Cochain& z, const Word& w,
                         std::uint32_t base = 0) const;

  /// Rows (r1, E), columns labels(level): z(w_E r1 w_E^-1).
  FpMatrix phi(std::size_t level) const;
  Cochain psi(const Cochain& z) const;
  LevelCocycles build_c1(std::size_t level) const;

  /// Nonzero evaluations of the candidates around face boundaries.
  std::vector<FaceViolation> verify_cocycles(
      const std::vector<Cochain>& candidates) const;

  std::vector<TestLoop> test_loops(std::size_t level) const;
  /// Rows: test loops; columns: the cochains with the same labels.
  FpMatrix pairing_matrix(std::size_t level) const;

  /// Coboundaries of the vertex indicators.
  std::vector<Cochain> coboundary_basis() const;
  bool in_coboundaries(const Cochain& z) const;

  DimensionReport dimension_report(std::size_t level) const;

 private:
  void check_level(std::size_t level) const;

  NormalizedPresentation np_;
  CoverComplex cover_;
  VertexCoordinates coords_;
  std::vector<int> position_;  // generator -> position in X1, or -1
};

struct PropertyReport {
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::string first_failure;
};

/// A word whose path from the basepoint closes up: a random word followed
/// by the X1 letters that undo its image.
Word random_fiber_closed(const CochainLab& lab, std::mt19937_64& rng,
                         std::size_t max_len);
/// A product of relator conjugates and fiber-closed words.
Word random_closed_loop(const CochainLab& lab, std::mt19937_64& rng);

/// c(A,y)(g k g^-1 k^-1) = sum over nonempty B in A of
/// c(A-B,y)(k) prod_{j in B} c_j(g).
PropertyReport check_commutator_identity(const CochainLab& lab,
                                         std::mt19937_64& rng,
                                         std::size_t instances);
/// The single-generator case g = j for j in X1, X2 or X3.
PropertyReport check_generator_commutator(const CochainLab& lab,
                                          std::mt19937_64& rng,
                                          std::size_t instances);
/// c(A,y)(w_E k w_E^-1) = sum over B in A n E of c(A-B,y)(k).
PropertyReport check_conjugation_identity(const CochainLab& lab,
                                          std::mt19937_64& rng,
                                          std::size_t instances);
/// Every kernel cochain of level l vanishes on every R1 relator read from
/// every vertex.
PropertyReport check_relator_translates(const CochainLab& lab,
                                        std::size_t level);

}  // namespace homgrow
