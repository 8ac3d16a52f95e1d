#include "homgrow/cochain_lab.hpp"

#include <algorithm>
#include <stdexcept>

#include "homgrow/bounds.hpp"
#include "homgrow/errors.hpp"

namespace homgrow {

namespace {

// k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) + b) % p);
}

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t signed_value(std::uint32_t v, std::int8_t sign, std::uint32_t p) {
  return sign > 0 ? v % p : (p - v % p) % p;
}

// A with the positions selected by mask removed.
std::vector<std::size_t> minus_mask(const std::vector<std::size_t>& a,
                                    std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(mask >> i & 1)) out.push_back(a[i]);
  }
  return out;
}

FpMatrix rows_matrix(const std::vector<Cochain>& rows, std::size_t cols,
                     std::uint32_t p) {
  check_matrix_size(rows.size(), cols, p);
  return FpMatrix::from_rows(rows, cols, p);
}

}  // namespace

CochainLab::CochainLab(NormalizedPresentation np, const Epimorphism& epi,
                       std::uint64_t budget)
    : np_(std::move(np)),
      cover_(build_cover(np_.base, epi, budget)),
      coords_(cover_, np_.x1),
      position_(np_.base.generator_count(), -1) {
  if (np_.p != epi.p) {
    throw InvariantViolation("normalized presentation and epimorphism use different primes");
  }
  for (std::size_t i = 0; i < np_.x1.size(); ++i) {
    position_[np_.x1[i]] = static_cast<int>(i);
  }
}

void CochainLab::check_level(std::size_t level) const {
  if (level > n()) {
    throw InvariantViolation("level " + std::to_string(level) +
                             " is outside 0.." + std::to_string(n()));
  }
}

std::vector<BasisLabel> CochainLab::labels(std::size_t level) const {
  check_level(level);
  const auto ys = np_.x12();
  std::vector<BasisLabel> out;
  for (std::size_t k = 0; k <= level; ++k) {
    for (const auto& a : combinations(n(), k)) {
      for (GeneratorId y : ys) out.push_back({a, y});
    }
  }
  return out;
}

std::vector<ConstraintLabel> CochainLab::constraint_labels(std::size_t level) const {
  check_level(level);
  std::vector<ConstraintLabel> out;
  for (std::size_t r : np_.r1) {
    for (std::size_t k = 0; k + 1 <= level; ++k) {
      for (const auto& e : combinations(n(), k)) out.push_back({r, e});
    }
  }
  return out;
}

std::string CochainLab::label_name(const BasisLabel& label) const {
  const auto& names = np_.base.generators;
  std::string out = "c({";
  for (std::size_t i = 0; i < label.a.size(); ++i) {
    if (i) out += ",";
    out += names[np_.x1[label.a[i]]];
  }
  return out + "}," + names[label.y] + ")";
}

std::uint32_t CochainLab::coordinate(const Word& g, std::size_t j) const {
  const auto& epi = cover_.epimorphism();
  return coords_(cover_.translate(0, epi.image(g)), j);
}

Cochain CochainLab::basis_cochain(const BasisLabel& label) const {
  Cochain out(cover_.edge_count(), 0);
  for (std::uint32_t v = 0; v < cover_.vertex_count(); ++v) {
    std::uint32_t prod = 1;
    for (std::size_t j : label.a) prod = mul_mod(prod, coords_(v, j), p());
    out[cover_.edge_index(v, label.y)] = prod;
  }
  return out;
}

std::uint32_t CochainLab::evaluate(const BasisLabel& label, const Word& w,
                                   std::uint32_t base) const {
  std::uint32_t acc = 0;
  for (const EdgeStep& s : cover_.trace(w, base).steps) {
    if (cover_.edge_label(s.edge) != label.y) continue;
    const std::uint32_t v = cover_.edge_source(s.edge);
    std::uint32_t prod = 1;
    for (std::size_t j : label.a) prod = mul_mod(prod, coords_(v, j), p());
    acc = add_mod(acc, signed_value(prod, s.sign, p()), p());
  }
  return acc;
}

std::uint32_t CochainLab::evaluate(const Cochain& z, const Word& w,
                                   std::uint32_t base) const {
  return evaluate_word(cover_, z, w, base);
}

FpMatrix CochainLab::phi(std::size_t level) const {
  const auto cols = labels(level);
  const auto rows = constraint_labels(level);
  check_matrix_size(rows.size(), cols.size(), p());
  FpMatrix m(rows.size(), cols.size(), p());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Word& rel = np_.base.relators[rows[r].relator];
    const auto img = cover_.epimorphism().image(rel);
    if (std::any_of(img.begin(), img.end(), [](auto x) { return x != 0; })) {
      throw InvariantViolation("R1 word " + std::to_string(rows[r].relator + 1) +
                               " does not close up in the cover");
    }
    std::vector<GeneratorId> e;
    for (std::size_t j : rows[r].e) e.push_back(np_.x1[j]);
    const Word we = ordered_product(e);
    const Word loop = we * rel * we.inverse();
    for (std::size_t c = 0; c < cols.size(); ++c) {
      m.set(r, c, evaluate(cols[c], loop, 0));
    }
  }
  return m;
}

Cochain CochainLab::psi(const Cochain& z) const {
  if (z.size() != cover_.edge_count()) {
    throw std::invalid_argument("cochain length does not match the cover");
  }
  Cochain out = z;
  for (GeneratorId x3 : np_.x3) {
    const auto it = np_.witnesses.find(x3);
    if (it == np_.witnesses.end()) {
      throw InvariantViolation("witness missing for X3 generator '" +
                               np_.base.generators[x3] + "'");
    }
    for (std::uint32_t v = 0; v < cover_.vertex_count(); ++v) {
      if (z[cover_.edge_index(v, x3)] % p() != 0) {
        throw std::invalid_argument("psi expects a cochain supported on X1 and X2 edges");
      }
    }
    for (std::uint32_t v = 0; v < cover_.vertex_count(); ++v) {
      out[cover_.edge_index(v, x3)] = evaluate_word(cover_, z, it->second, v);
    }
  }
  return out;
}

LevelCocycles CochainLab::build_c1(std::size_t level) const {
  LevelCocycles out;
  out.level = level;
  out.labels = labels(level);
  check_matrix_size(out.labels.size(), cover_.edge_count(), p());
  const FpMatrix m = phi(level);
  out.constraint_rows = m.rows();
  if (m.rows() == 0) {
    for (std::size_t i = 0; i < out.labels.size(); ++i) {
      FpVector v(out.labels.size(), 0);
      v[i] = 1;
      out.kernel.push_back(std::move(v));
    }
  } else {
    out.kernel = rank_and_kernel(m).kernel;
  }
  std::vector<Cochain> basis;
  basis.reserve(out.labels.size());
  for (const auto& l : out.labels) basis.push_back(basis_cochain(l));
  for (const auto& lambda : out.kernel) {
    Cochain z(cover_.edge_count(), 0);
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      if (lambda[i] == 0) continue;
      for (std::size_t e = 0; e < z.size(); ++e) {
        if (basis[i][e]) z[e] = add_mod(z[e], mul_mod(lambda[i], basis[i][e], p()), p());
      }
    }
    out.c1.push_back(psi(z));
    out.z.push_back(std::move(z));
  }
  return out;
}

std::vector<FaceViolation> CochainLab::verify_cocycles(
    const std::vector<Cochain>& candidates) const {
  std::vector<FaceViolation> out;
  for (std::size_t f = 0; f < cover_.face_count(); ++f) {
    const PathTrace t = cover_.face_boundary(f);
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      std::uint32_t acc = 0;
      for (const EdgeStep& s : t.steps) {
        acc = add_mod(acc, signed_value(candidates[c][s.edge], s.sign, p()), p());
      }
      if (acc != 0) out.push_back({c, f, acc});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.candidate != b.candidate ? a.candidate < b.candidate : a.face < b.face;
  });
  return out;
}

std::vector<TestLoop> CochainLab::test_loops(std::size_t level) const {
  std::vector<TestLoop> out;
  for (const BasisLabel& l : labels(level)) {
    const int pos = position_[l.y];
    FpVector indicator(n(), 0);
    for (std::size_t j : l.a) indicator[j] = 1;
    const std::uint32_t base = coords_.vertex_with(indicator);
    if (l.a.empty()) {
      if (pos < 0) out.push_back({l, base, Word::generator(l.y)});
      continue;
    }
    const bool in_a = pos >= 0 && std::find(l.a.begin(), l.a.end(),
                                            static_cast<std::size_t>(pos)) != l.a.end();
    if (in_a) {
      if (p() == 2) out.push_back({l, base, Word::generator(l.y, 2)});
      continue;
    }
    if (pos >= 0 && static_cast<std::size_t>(pos) < l.a.front()) continue;
    // [y, y1^-1] = y y1^-1 y^-1 y1 with y1 the smallest element of A.
    const Word y = Word::generator(l.y);
    const Word y1 = Word::generator(np_.x1[l.a.front()]);
    out.push_back({l, base, y * y1.inverse() * y.inverse() * y1});
  }
  return out;
}

FpMatrix CochainLab::pairing_matrix(std::size_t level) const {
  const auto loops = test_loops(level);
  FpMatrix m(loops.size(), loops.size(), p());
  for (std::size_t t = 0; t < loops.size(); ++t) {
    for (std::size_t u = 0; u < loops.size(); ++u) {
      m.set(t, u, evaluate(loops[u].label, loops[t].word, loops[t].base));
    }
  }
  return m;
}

std::vector<Cochain> CochainLab::coboundary_basis() const {
  std::vector<Cochain> out(cover_.vertex_count(), Cochain(cover_.edge_count(), 0));
  for (std::size_t e = 0; e < cover_.edge_count(); ++e) {
    const auto s = cover_.edge_source(e);
    const auto t = cover_.edge_target(e);
    if (s == t) continue;
    out[t][e] = add_mod(out[t][e], 1, p());
    out[s][e] = add_mod(out[s][e], p() - 1, p());
  }
  return out;
}

bool CochainLab::in_coboundaries(const Cochain& z) const {
  check_matrix_size(cover_.edge_count(), cover_.vertex_count(), p());
  const FpMatrix b =
      rows_matrix(coboundary_basis(), cover_.edge_count(), p()).transpose();
  return solve(b, z).has_value();
}

DimensionReport CochainLab::dimension_report(std::size_t level) const {
  DimensionReport r;
  r.level = level;
  const LevelCocycles cc = build_c1(level);
  r.labels = cc.labels.size();
  r.constraints = cc.constraint_rows;
  {
    std::vector<Cochain> basis;
    for (const auto& l : cc.labels) basis.push_back(basis_cochain(l));
    r.dim_u = rank(rows_matrix(basis, cover_.edge_count(), p()));
  }
  r.dim_kernel = rank(rows_matrix(cc.z, cover_.edge_count(), p()));
  r.dim_c1 = rank(rows_matrix(cc.c1, cover_.edge_count(), p()));

  std::vector<Cochain> stacked = cc.c1;
  const auto cobound = coboundary_basis();
  stacked.insert(stacked.end(), cobound.begin(), cobound.end());
  const std::size_t rank_b = rank(rows_matrix(cobound, cover_.edge_count(), p()));
  r.dim_quotient = rank(rows_matrix(stacked, cover_.edge_count(), p())) - rank_b;

  // A cochain is a coboundary exactly when it vanishes on the fundamental
  // cycles of the spanning tree.
  std::vector<PathTrace> tree;
  for (std::uint32_t v = 0; v < cover_.vertex_count(); ++v) {
    tree.push_back(cover_.trace(cover_.tree_path(v), 0));
  }
  std::vector<std::size_t> cycles;
  for (std::size_t e = 0; e < cover_.edge_count(); ++e) {
    if (!cover_.is_tree_edge(e)) cycles.push_back(e);
  }
  std::vector<FpVector> values;
  for (const Cochain& c : cc.c1) {
    FpVector pot(cover_.vertex_count(), 0);
    for (std::uint32_t v = 0; v < cover_.vertex_count(); ++v) {
      for (const EdgeStep& s : tree[v].steps) {
        pot[v] = add_mod(pot[v], signed_value(c[s.edge], s.sign, p()), p());
      }
    }
    FpVector row;
    row.reserve(cycles.size());
    for (std::size_t e : cycles) {
      const std::uint32_t through = add_mod(pot[cover_.edge_source(e)], c[e], p());
      row.push_back(add_mod(through, (p() - pot[cover_.edge_target(e)]) % p(), p()));
    }
    values.push_back(std::move(row));
  }
  r.dim_quotient_dual = rank(rows_matrix(values, cycles.size(), p()));

  r.bound = thm16_bound({b1(), np_.r1.size(), n(), level, p()});
  r.test_loops = test_loops(level).size();
  r.pairing_rank = rank(pairing_matrix(level));
  r.face_violations = verify_cocycles(cc.c1).size();
  return r;
}

Word random_fiber_closed(const CochainLab& lab, std::mt19937_64& rng,
                         std::size_t max_len) {
  const std::size_t gens = lab.normalized().base.generator_count();
  std::vector<Letter> raw;
  const std::size_t len = max_len == 0 ? 0 : rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    raw.push_back({static_cast<GeneratorId>(rng() % gens),
                   static_cast<std::int8_t>(rng() % 2 ? 1 : -1)});
  }
  Word w = Word::reduce(raw);
  const auto& x1 = lab.normalized().x1;
  for (std::size_t j = 0; j < x1.size(); ++j) {
    const std::uint32_t c = lab.coordinate(w, j);
    if (c) w *= Word::generator(x1[j], -static_cast<int>(c));
  }
  return w;
}

Word random_closed_loop(const CochainLab& lab, std::mt19937_64& rng) {
  const auto& pres = lab.normalized().base;
  Word k;
  const std::size_t factors = 1 + rng() % 3;
  for (std::size_t i = 0; i < factors; ++i) {
    if (pres.relator_count() > 0 && rng() % 2) {
      const Word g = random_fiber_closed(lab, rng, 6) *
                     Word::generator(static_cast<GeneratorId>(rng() % pres.generator_count()));
      Word r = pres.relators[rng() % pres.relator_count()];
      if (rng() % 2) r = r.inverse();
      k *= g * r * g.inverse();
    } else {
      k *= random_fiber_closed(lab, rng, 8);
    }
  }
  return k;
}

namespace {

BasisLabel random_label(const CochainLab& lab, std::mt19937_64& rng) {
  BasisLabel l;
  for (std::size_t j = 0; j < lab.n(); ++j) {
    if (rng() % 2) l.a.push_back(j);
  }
  const auto ys = lab.normalized().x12();
  l.y = ys[rng() % ys.size()];
  return l;
}

Word random_word(const CochainLab& lab, std::mt19937_64& rng, std::size_t max_len) {
  const std::size_t gens = lab.normalized().base.generator_count();
  std::vector<Letter> raw;
  const std::size_t len = rng() % (max_len + 1);
  for (std::size_t i = 0; i < len; ++i) {
    raw.push_back({static_cast<GeneratorId>(rng() % gens),
                   static_cast<std::int8_t>(rng() % 2 ? 1 : -1)});
  }
  return Word::reduce(raw);
}

void record(PropertyReport& rep, bool ok, const std::string& what) {
  ++rep.instances;
  if (!ok) {
    if (rep.violations == 0) rep.first_failure = what;
    ++rep.violations;
  }
}

// sum over nonempty B in A of c(A-B,y)(k) prod_{j in B} c_j(g)
std::uint32_t commutator_rhs(const CochainLab& lab, const BasisLabel& l,
                             const Word& g, const Word& k) {
  const std::uint32_t p = lab.p();
  std::vector<std::uint32_t> cg;
  for (std::size_t j : l.a) cg.push_back(lab.coordinate(g, j));
  std::uint32_t acc = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << l.a.size()); ++mask) {
    std::uint32_t prod = 1;
    for (std::size_t i = 0; i < l.a.size(); ++i) {
      if (mask >> i & 1) prod = mul_mod(prod, cg[i], p);
    }
    if (prod == 0) continue;
    const std::uint32_t ck = lab.evaluate(BasisLabel{minus_mask(l.a, mask), l.y}, k, 0);
    acc = add_mod(acc, mul_mod(prod, ck, p), p);
  }
  return acc;
}

}  // namespace

PropertyReport check_commutator_identity(const CochainLab& lab,
                                         std::mt19937_64& rng,
                                         std::size_t instances) {
  PropertyReport rep;
  if (lab.b1() == 0) return rep;
  for (std::size_t t = 0; t < instances; ++t) {
    const BasisLabel l = random_label(lab, rng);
    const Word g = random_word(lab, rng, 8);
    const Word k = random_closed_loop(lab, rng);
    const Word gk = g * k * g.inverse() * k.inverse();
    const bool ok = lab.evaluate(l, gk, 0) == commutator_rhs(lab, l, g, k);
    record(rep, ok, lab.label_name(l) + " on g k g^-1 k^-1 with g = " +
                        format_word(g, lab.normalized().base.generators));
  }
  return rep;
}

PropertyReport check_generator_commutator(const CochainLab& lab,
                                          std::mt19937_64& rng,
                                          std::size_t instances) {
  PropertyReport rep;
  if (lab.b1() == 0) return rep;
  const auto& np = lab.normalized();
  for (std::size_t t = 0; t < instances; ++t) {
    const BasisLabel l = random_label(lab, rng);
    const auto j = static_cast<GeneratorId>(rng() % np.base.generator_count());
    const Word k = random_closed_loop(lab, rng);
    const Word g = Word::generator(j);
    const std::uint32_t lhs = lab.evaluate(l, g * k * g.inverse() * k.inverse(), 0);
    std::uint32_t rhs = 0;
    const auto it = std::find(np.x1.begin(), np.x1.end(), j);
    if (it != np.x1.end()) {
      const auto pos = static_cast<std::size_t>(it - np.x1.begin());
      const auto in_a = std::find(l.a.begin(), l.a.end(), pos);
      if (in_a != l.a.end()) {
        BasisLabel smaller = l;
        smaller.a.erase(smaller.a.begin() + (in_a - l.a.begin()));
        rhs = lab.evaluate(smaller, k, 0);
      }
    }
    record(rep, lhs == rhs, lab.label_name(l) + " on [" + np.base.generators[j] + ", k]");
  }
  return rep;
}

PropertyReport check_conjugation_identity(const CochainLab& lab,
                                          std::mt19937_64& rng,
                                          std::size_t instances) {
  PropertyReport rep;
  if (lab.b1() == 0) return rep;
  const auto& np = lab.normalized();
  const std::uint32_t p = lab.p();
  for (std::size_t t = 0; t < instances; ++t) {
    const BasisLabel l = random_label(lab, rng);
    std::vector<std::size_t> e;
    for (std::size_t j = 0; j < lab.n(); ++j) {
      if (rng() % 2) e.push_back(j);
    }
    std::vector<GeneratorId> egen;
    for (std::size_t j : e) egen.push_back(np.x1[j]);
    const Word we = ordered_product(egen);
    const Word k = random_closed_loop(lab, rng);
    const std::uint32_t lhs = lab.evaluate(l, we * k * we.inverse(), 0);
    // Positions of A that also lie in E.
    std::vector<std::size_t> common;
    for (std::size_t i = 0; i < l.a.size(); ++i) {
      if (std::find(e.begin(), e.end(), l.a[i]) != e.end()) common.push_back(i);
    }
    std::uint32_t rhs = 0;
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << common.size()); ++sub) {
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < common.size(); ++i) {
        if (sub >> i & 1) mask |= std::uint64_t{1} << common[i];
      }
      rhs = add_mod(rhs, lab.evaluate(BasisLabel{minus_mask(l.a, mask), l.y}, k, 0), p);
    }
    record(rep, lhs == rhs, lab.label_name(l) + " on w_E k w_E^-1");
  }
  return rep;
}

PropertyReport check_relator_translates(const CochainLab& lab, std::size_t level) {
  PropertyReport rep;
  const auto cc = lab.build_c1(level);
  const auto& np = lab.normalized();
  for (std::size_t zi = 0; zi < cc.z.size(); ++zi) {
    for (std::size_t r : np.r1) {
      for (std::uint32_t v = 0; v < lab.cover().vertex_count(); ++v) {
        const bool ok = lab.evaluate(cc.z[zi], np.base.relators[r], v) == 0;
        record(rep, ok, "kernel cochain " + std::to_string(zi) + " on relator " +
                            std::to_string(r + 1) + " at vertex " + std::to_string(v));
      }
    }
  }
  return rep;
}

}  // namespace homgrow
