#include "sset/function_complex.hpp"

namespace sset {

namespace {

std::vector<Simplex> flatten(const SimplicialMap& f) {
  std::vector<Simplex> out;
  for (const auto& level : f.images()) out.insert(out.end(), level.begin(), level.end());
  return out;
}

// phi o (id x theta) for theta : [m] -> [n].
SimplicialMap precompose(const SimplicialMap& phi, const FiberProduct& pn, const SimplicialSet& delta_n, unsigned n,
                         const FiberProduct& pm, const SimplicialSet& delta_m, const Monotone& theta,
                         const SSetPtr& c) {
  const SimplicialSet& dm = *pm.object();
  SimplicialMap::Images im(dm.dim() + 1);
  for (auto cell : dm.cell_ids()) {
    const auto& [a, b] = pm.components(cell);
    auto seq = delta_m.vertices(b);
    Monotone moved(seq.size());
    for (std::size_t k = 0; k < seq.size(); ++k) moved[k] = theta[seq[k]];
    im[cell.dim].push_back(phi(pn.pair(a, *standard_simplex_at(delta_n, n, moved))));
  }
  return SimplicialMap::unchecked(pm.object(), c, std::move(im));
}

Monotone vertex_at(unsigned j) { return Monotone{std::uint8_t(j)}; }

}  // namespace

std::optional<Simplex> FunctionComplex::simplex_of(unsigned n, const SimplicialMap& phi) const {
  if (int(n) > computed_up_to_) return std::nullopt;
  auto it = lookup_[n].find(flatten(phi));
  if (it == lookup_[n].end()) return std::nullopt;
  return it->second;
}

std::optional<Simplex> FunctionComplex::constant_family(const Simplex& x) const {
  unsigned n = x.dim();
  if (int(n) > computed_up_to_) return std::nullopt;
  SimplicialMap g = classifying_map(c_, x);
  const FiberProduct& pn = domains_[n];
  SimplicialMap proj = pn.projection2();
  SimplicialMap::Images im(pn.object()->dim() + 1);
  for (auto cell : pn.object()->cell_ids()) im[cell.dim].push_back(g(proj.image(cell)));
  return simplex_of(n, SimplicialMap::unchecked(pn.object(), c_, std::move(im)));
}

SimplicialMap FunctionComplex::evaluation(std::uint32_t k) const {
  if (k >= k_->count(0)) throw Error("evaluation vertex out of range");
  SimplicialMap::Images im(space_->dim() + 1);
  for (auto cell : space_->cell_ids()) {
    const FiberProduct& pn = domains_[cell.dim];
    Simplex top(CellId{cell.dim, 0});
    im[cell.dim].push_back(map_of(cell)(pn.pair(SimplicialSet::constant(k, cell.dim), top)));
  }
  return SimplicialMap(space_, c_, std::move(im));
}

FunctionComplex build_function_complex(SSetPtr c, SSetPtr k, int up_to, std::uint64_t budget, bool restricted,
                                       int word_budget) {
  if (up_to < 0) throw Error("up_to must be non-negative");
  FunctionComplex fc;
  fc.c_ = c;
  fc.k_ = k;
  fc.restricted_ = restricted;
  std::vector<char> good_edge;
  if (restricted) {
    HomotopyCategory h(c, word_budget);
    good_edge.resize(c->count(1));
    for (std::uint32_t e = 0; e < c->count(1); ++e)
      good_edge[e] = is_equivalence_edge(h, Simplex(CellId{1, e})).value == Tri::Yes;
  }
  SimplicialSet::Builder builder;
  std::vector<SSetPtr> deltas;
  for (unsigned n = 0; n <= unsigned(up_to); ++n) {
    deltas.push_back(standard_simplex(n));
    fc.domains_.emplace_back(k, deltas.back());
    const FiberProduct& pn = fc.domains_.back();
    Outcome o = Outcome::None;
    auto maps = all_maps(pn.object(), c, &o, budget);
    if (o == Outcome::Budget) {
      fc.outcome_ = Outcome::Budget;
      fc.domains_.pop_back();
      break;
    }
    fc.lookup_.emplace_back();
    fc.maps_.emplace_back();
    auto& table = fc.lookup_.back();
    for (auto& phi : maps) {
      if (restricted) {
        bool keep = true;
        if (n == 0) {
          for (std::uint32_t e = 0; e < k->count(1) && keep; ++e) {
            const Simplex& img = phi.image(CellId{1, pn.pair(Simplex(CellId{1, e}), SimplicialSet::constant(0, 1)).base.index});
            if (img.nondegenerate() && !good_edge[img.base.index]) keep = false;
          }
        } else {
          for (unsigned j = 0; j <= n && keep; ++j)
            keep = fc.lookup_[0].count(flatten(precompose(phi, pn, *deltas[n], n, fc.domains_[0], *deltas[0], vertex_at(j), c))) > 0;
        }
        if (!keep) continue;
      }
      std::optional<Simplex> nf;
      for (unsigned j = 0; j < n && !nf; ++j) {
        auto face = precompose(phi, pn, *deltas[n], n, fc.domains_[n - 1], *deltas[n - 1], coface_map(n, j), c);
        auto back = precompose(face, fc.domains_[n - 1], *deltas[n - 1], n - 1, pn, *deltas[n],
                               codegeneracy_map(n - 1, j), c);
        if (flatten(back) == flatten(phi))
          nf = builder.peek().degeneracy(fc.lookup_[n - 1].at(flatten(face)), j);
      }
      if (!nf) {
        std::vector<Simplex> faces;
        for (unsigned i = 0; i <= n && n > 0; ++i)
          faces.push_back(fc.lookup_[n - 1].at(flatten(precompose(phi, pn, *deltas[n], n, fc.domains_[n - 1], *deltas[n - 1], coface_map(n, i), c))));
        std::string name = "m" + std::to_string(n) + "_" + std::to_string(fc.maps_[n].size());
        CellId id = n == 0 ? builder.add_vertex(name) : builder.add_cell(name, faces);
        nf = Simplex(id);
        fc.maps_[n].push_back(phi);
      }
      table.emplace(flatten(phi), *nf);
    }
    fc.computed_up_to_ = int(n);
  }
  fc.space_ = builder.build();
  return fc;
}

FunctionComplex function_complex(SSetPtr c, SSetPtr k, int up_to, std::uint64_t node_budget) {
  return build_function_complex(std::move(c), std::move(k), up_to, node_budget, false, kDefaultWordBudget);
}

FunctionComplex restricted_function_complex(SSetPtr c, SSetPtr k, int up_to, std::uint64_t node_budget,
                                            int word_budget) {
  return build_function_complex(std::move(c), std::move(k), up_to, node_budget, true, word_budget);
}

}  // namespace sset
