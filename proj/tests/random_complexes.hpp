// Seeded random complexes for property suites.

#ifndef SSET_TESTS_RANDOM_COMPLEXES_HPP
#define SSET_TESTS_RANDOM_COMPLEXES_HPP

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "sset/constructions.hpp"
#include "sset/factorize.hpp"

namespace sset::testing {

using VertexSet = std::vector<unsigned>;

inline std::set<VertexSet> face_closure(const std::vector<VertexSet>& generators) {
  std::set<VertexSet> out;
  for (const auto& g : generators) {
    std::uint32_t k = std::uint32_t(g.size());
    for (std::uint32_t m = 1; m < (1u << k); ++m) {
      VertexSet f;
      for (std::uint32_t b = 0; b < k; ++b)
        if (m & (1u << b)) f.push_back(g[b]);
      out.insert(f);
    }
  }
  return out;
}

/// A random nonempty face of Delta^n with at most max_size vertices.
inline VertexSet random_face(unsigned n, unsigned max_size, std::mt19937& rng) {
  VertexSet all(n + 1);
  for (unsigned k = 0; k <= n; ++k) all[k] = k;
  std::shuffle(all.begin(), all.end(), rng);
  unsigned size = 1 + unsigned(rng() % std::min(max_size, n + 1));
  VertexSet f(all.begin(), all.begin() + size);
  std::sort(f.begin(), f.end());
  return f;
}

/// Generators of a random subcomplex of Delta^n with at most max_cells cells;
/// with probability `all_vertices` every vertex is included.
inline std::vector<VertexSet> random_family(unsigned n, std::size_t max_cells, double all_vertices, std::mt19937& rng) {
  std::vector<VertexSet> gens;
  if (std::uniform_real_distribution<>(0, 1)(rng) < all_vertices)
    for (unsigned k = 0; k <= n; ++k) gens.push_back({k});
  for (int tries = 0; tries < 8; ++tries) {
    auto g = gens;
    g.push_back(random_face(n, n + 1, rng));
    if (face_closure(g).size() <= max_cells) gens = g;
  }
  if (gens.empty()) gens.push_back({0});
  return gens;
}

/// A random subfamily of the faces of `large`; keeps every vertex with
/// probability `all_vertices`.
inline std::vector<VertexSet> random_subfamily(const std::vector<VertexSet>& large, double keep, double all_vertices,
                                               std::mt19937& rng) {
  std::uniform_real_distribution<> u(0, 1);
  auto closure = face_closure(large);
  bool vertices = u(rng) < all_vertices;
  std::vector<VertexSet> out;
  for (const auto& f : closure)
    if ((vertices && f.size() == 1) || u(rng) < keep) out.push_back(f);
  if (out.empty()) out.push_back(*closure.begin());
  return out;
}

/// A random quiver on 2..max_vertices vertices (edges i -> j with i < j,
/// parallel edges allowed) with some triangles filled in.
inline SSetPtr random_quiver(unsigned max_vertices, unsigned max_edges, std::mt19937& rng) {
  SimplicialSet::Builder b;
  unsigned nv = 2 + unsigned(rng() % (max_vertices - 1));
  std::vector<CellId> v;
  for (unsigned k = 0; k < nv; ++k) v.push_back(b.add_vertex("v" + std::to_string(k)));
  unsigned ne = 1 + unsigned(rng() % max_edges);
  struct E {
    unsigned s, t;
    CellId id;
  };
  std::vector<E> edges;
  for (unsigned k = 0; k < ne; ++k) {
    unsigned s = unsigned(rng() % nv), t = unsigned(rng() % nv);
    if (s == t) continue;
    if (s > t) std::swap(s, t);
    edges.push_back({s, t, b.add_cell("e" + std::to_string(k), {Simplex(v[t]), Simplex(v[s])})});
  }
  unsigned nt = 0;
  for (const auto& f : edges)
    for (const auto& g : edges)
      for (const auto& h : edges)
        if (f.t == g.s && h.s == f.s && h.t == g.t && rng() % 3 == 0)
          b.add_cell("t" + std::to_string(nt++), {Simplex(g.id), Simplex(h.id), Simplex(f.id)});
  return b.build();
}

/// Pre-fibrant complexes obtained by running prefibrantize on random quivers
/// that are not pre-fibrant themselves.
inline std::vector<SSetPtr> random_prefibrant(std::size_t count, std::mt19937& rng) {
  std::vector<SSetPtr> out;
  while (out.size() < count) {
    SSetPtr x = random_quiver(4, 5, rng);
    if (is_prefibrant(x, 3).value != Tri::No) continue;
    PrefibrantizeOptions opt;
    opt.stages = 4;
    opt.only_unfilled = true;
    SoaTrace t = prefibrantize(x, opt);
    if (t.outcome == Outcome::Budget) continue;
    if (is_prefibrant(t.stages.back(), 3).value != Tri::Yes) continue;
    out.push_back(t.stages.back());
  }
  return out;
}

}  // namespace sset::testing

#endif  // SSET_TESTS_RANDOM_COMPLEXES_HPP
