#include "homgrow/cover.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

#include "homgrow/errors.hpp"

namespace homgrow {

namespace {

// Dense elimination memory guard (bits for p = 2, 32-bit words otherwise).
constexpr std::uint64_t kPackedEntryLimit = std::uint64_t{1} << 33;
constexpr std::uint64_t kWideEntryLimit = std::uint64_t{1} << 28;

}  // namespace

void check_matrix_size(std::uint64_t rows, std::uint64_t cols,
                       std::uint32_t p) {
  const std::uint64_t limit = p == 2 ? kPackedEntryLimit : kWideEntryLimit;
  if (cols != 0 && rows > limit / cols) {
    throw BudgetExceeded(
        std::to_string(rows) + " x " + std::to_string(cols) + " matrix",
        std::to_string(limit) + " matrix entries");
  }
}

CoverComplex::CoverComplex(Presentation pres, Epimorphism epi)
    : pres_(std::move(pres)), epi_(std::move(epi)) {
  validate_epimorphism(pres_, epi_);
  vertices_ = 1;
  for (std::uint32_t i = 0; i < epi_.n; ++i) vertices_ *= epi_.p;
  const std::size_t gens = pres_.generator_count();
  next_.resize(gens * vertices_);
  prev_.resize(gens * vertices_);
  FpVector neg(epi_.n);
  for (GeneratorId g = 0; g < gens; ++g) {
    for (std::uint32_t i = 0; i < epi_.n; ++i) {
      neg[i] = (epi_.p - epi_.images[g][i]) % epi_.p;
    }
    for (std::uint32_t v = 0; v < vertices_; ++v) {
      next_[edge_index(v, g)] = translate(v, epi_.images[g]);
      prev_[edge_index(v, g)] = translate(v, neg);
    }
  }
  build_tree();
}

std::uint32_t CoverComplex::encode(const FpVector& coords) const {
  std::uint64_t v = 0;
  for (std::size_t i = coords.size(); i-- > 0;) v = v * epi_.p + coords[i] % epi_.p;
  return static_cast<std::uint32_t>(v);
}

FpVector CoverComplex::decode(std::uint32_t v) const {
  FpVector out(epi_.n);
  for (std::uint32_t i = 0; i < epi_.n; ++i) {
    out[i] = v % epi_.p;
    v /= epi_.p;
  }
  return out;
}

std::uint32_t CoverComplex::translate(std::uint32_t v,
                                      const FpVector& delta) const {
  std::uint64_t out = 0;
  std::uint64_t place = 1;
  for (std::uint32_t i = 0; i < epi_.n; ++i) {
    const std::uint32_t digit = (v % epi_.p + delta[i]) % epi_.p;
    v /= epi_.p;
    out += digit * place;
    place *= epi_.p;
  }
  return static_cast<std::uint32_t>(out);
}

PathTrace CoverComplex::trace(const Word& w, std::uint32_t base) const {
  PathTrace out;
  out.steps.reserve(w.size());
  std::uint32_t u = base;
  for (const Letter& l : w.letters()) {
    if (l.sign > 0) {
      out.steps.push_back({static_cast<std::uint32_t>(edge_index(u, l.gen)), 1});
      u = forward(u, l.gen);
    } else {
      u = backward(u, l.gen);
      out.steps.push_back({static_cast<std::uint32_t>(edge_index(u, l.gen)), -1});
    }
  }
  out.end = u;
  return out;
}

PathTrace CoverComplex::face_boundary(std::size_t face) const {
  const std::size_t r = face / vertices_;
  const auto v = static_cast<std::uint32_t>(face % vertices_);
  return trace(pres_.relators.at(r), v);
}

void CoverComplex::build_tree() {
  const std::size_t gens = pres_.generator_count();
  tree_edge_.assign(edge_count(), false);
  parent_edge_.assign(vertices_, -1);
  parent_sign_.assign(vertices_, 0);
  std::vector<bool> seen(vertices_, false);
  std::deque<std::uint32_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    for (GeneratorId g = 0; g < gens; ++g) {
      const std::size_t fwd = edge_index(u, g);
      const std::uint32_t t = next_[fwd];
      if (!seen[t]) {
        seen[t] = true;
        tree_edge_[fwd] = true;
        parent_edge_[t] = static_cast<std::int64_t>(fwd);
        parent_sign_[t] = 1;
        queue.push_back(t);
      }
      const std::uint32_t s = prev_[fwd];
      if (!seen[s]) {
        seen[s] = true;
        const std::size_t back = edge_index(s, g);
        tree_edge_[back] = true;
        parent_edge_[s] = static_cast<std::int64_t>(back);
        parent_sign_[s] = -1;
        queue.push_back(s);
      }
    }
  }
}

Word CoverComplex::tree_path(std::uint32_t v) const {
  std::vector<Letter> rev;
  while (parent_edge_[v] >= 0) {
    const auto e = static_cast<std::size_t>(parent_edge_[v]);
    rev.push_back({edge_label(e), parent_sign_[v]});
    v = parent_sign_[v] > 0 ? edge_source(e) : edge_target(e);
  }
  return Word::reduce(std::vector<Letter>(rev.rbegin(), rev.rend()));
}

BigInt cover_cell_count(const Presentation& pres, const Epimorphism& epi) {
  return pow_big(epi.p, epi.n) *
         (1 + pres.generator_count() + pres.relator_count());
}

CoverComplex build_cover(const Presentation& pres, const Epimorphism& epi,
                         std::uint64_t budget) {
  const BigInt cells = cover_cell_count(pres, epi);
  if (cells > budget || pow_big(epi.p, epi.n) > 0xFFFFFFFFu) {
    throw BudgetExceeded(to_string(cells), std::to_string(budget));
  }
  return CoverComplex(pres, epi);
}

ComplexBetti cover_betti(const CoverComplex& c) {
  const std::size_t verts = c.vertex_count();
  const std::size_t edges = c.edge_count();
  const std::size_t faces = c.face_count();

  std::vector<std::uint32_t> parent(verts);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = verts;
  for (std::size_t e = 0; e < edges; ++e) {
    const auto a = find(c.edge_source(e));
    const auto b = find(c.edge_target(e));
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  if (components != 1) {
    throw InvariantViolation("cover is disconnected (" +
                             std::to_string(components) + " components)");
  }

  std::vector<std::int64_t> column(edges, -1);
  std::size_t cols = 0;
  for (std::size_t e = 0; e < edges; ++e) {
    if (!c.is_tree_edge(e)) column[e] = static_cast<std::int64_t>(cols++);
  }
  check_matrix_size(faces, cols, c.p());
  FpMatrix d2(faces, cols, c.p());
  for (std::size_t f = 0; f < faces; ++f) {
    for (const EdgeStep& s : c.face_boundary(f).steps) {
      if (column[s.edge] < 0) continue;
      d2.add(f, static_cast<std::size_t>(column[s.edge]),
             s.sign > 0 ? 1 : c.p() - 1);
    }
  }
  const std::size_t r2 = rank(d2);
  const std::size_t r1 = verts - components;
  return {components, edges - r1 - r2, faces - r2, c.p()};
}

FpMatrix boundary1(const CoverComplex& c) {
  check_matrix_size(c.vertex_count(), c.edge_count(), c.p());
  FpMatrix m(c.vertex_count(), c.edge_count(), c.p());
  for (std::size_t e = 0; e < c.edge_count(); ++e) {
    m.add(c.edge_target(e), e, 1);
    m.add(c.edge_source(e), e, c.p() - 1);
  }
  return m;
}

FpMatrix boundary2(const CoverComplex& c) {
  check_matrix_size(c.edge_count(), c.face_count(), c.p());
  FpMatrix m(c.edge_count(), c.face_count(), c.p());
  for (std::size_t f = 0; f < c.face_count(); ++f) {
    for (const EdgeStep& s : c.face_boundary(f).steps) {
      m.add(s.edge, f, s.sign > 0 ? 1 : c.p() - 1);
    }
  }
  return m;
}

VertexCoordinates::VertexCoordinates(const CoverComplex& c,
                                     std::vector<GeneratorId> x1)
    : cover_(&c), x1_(std::move(x1)) {
  const std::size_t k = x1_.size();
  std::vector<FpVector> imgs;
  for (auto g : x1_) imgs.push_back(c.epimorphism().images.at(g));
  if (k != c.n() || span_rank(imgs, c.n(), c.p()) != c.n()) {
    throw InvariantViolation("X1 images do not form a basis of F_p^n");
  }
  // phi(X1) is a basis, so stepping along X1 edges reaches every vertex
  // with coordinates incremented one unit at a time.
  table_.assign(c.vertex_count() * k, 0);
  std::vector<bool> seen(c.vertex_count(), false);
  std::deque<std::uint32_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint32_t t = c.forward(u, x1_[j]);
      if (seen[t]) continue;
      seen[t] = true;
      for (std::size_t i = 0; i < k; ++i) {
        table_[t * k + i] = table_[u * k + i];
      }
      table_[t * k + j] = (table_[t * k + j] + 1) % c.p();
      queue.push_back(t);
    }
  }
}

std::uint32_t VertexCoordinates::vertex_with(const FpVector& coords) const {
  const std::uint32_t p = cover_->p();
  FpVector sum(cover_->n(), 0);
  for (std::size_t j = 0; j < x1_.size(); ++j) {
    const FpVector& img = cover_->epimorphism().images[x1_[j]];
    for (std::size_t i = 0; i < sum.size(); ++i) {
      sum[i] = static_cast<std::uint32_t>(
          (sum[i] + static_cast<std::uint64_t>(coords[j] % p) * img[i]) % p);
    }
  }
  return cover_->encode(sum);
}

std::uint32_t vertex_eval(const CoverComplex& c,
                          const std::vector<GeneratorId>& x1, std::uint32_t v,
                          GeneratorId j) {
  const auto it = std::find(x1.begin(), x1.end(), j);
  if (it == x1.end()) {
    throw std::invalid_argument("vertex_eval: generator is not in X1");
  }
  return VertexCoordinates(c, x1)(v, static_cast<std::size_t>(it - x1.begin()));
}

std::uint32_t evaluate_word(const CoverComplex& c, const Cochain& z,
                            const Word& g, std::uint32_t base) {
  if (z.size() != c.edge_count()) {
    throw std::invalid_argument("cochain length does not match the cover");
  }
  const std::uint32_t p = c.p();
  std::uint64_t acc = 0;
  for (const EdgeStep& s : c.trace(g, base).steps) {
    const std::uint32_t v = z[s.edge] % p;
    acc += s.sign > 0 ? v : (p - v) % p;
  }
  return static_cast<std::uint32_t>(acc % p);
}

Presentation reidemeister_schreier(const CoverComplex& c) {
  const auto& base = c.presentation();
  Presentation out;
  std::vector<std::int64_t> id(c.edge_count(), -1);
  for (std::size_t e = 0; e < c.edge_count(); ++e) {
    if (c.is_tree_edge(e)) continue;
    id[e] = static_cast<std::int64_t>(out.generators.size());
    out.generators.push_back(base.generators[c.edge_label(e)] + "_" +
                             std::to_string(c.edge_source(e)));
  }
  for (std::size_t f = 0; f < c.face_count(); ++f) {
    std::vector<Letter> raw;
    for (const EdgeStep& s : c.face_boundary(f).steps) {
      if (id[s.edge] >= 0) {
        raw.push_back({static_cast<GeneratorId>(id[s.edge]), s.sign});
      }
    }
    Word w = Word::reduce(raw).cyclically_reduced();
    if (w.empty()) {
      throw InvariantViolation("face " + std::to_string(f) +
                               " rewrites to the empty word");
    }
    out.relators.push_back(std::move(w));
  }
  return out;
}

}  // namespace homgrow
