#include "sset/factorize.hpp"

#include <algorithm>
#include <set>

namespace sset {

namespace {

struct HornFamily {
  std::vector<std::pair<unsigned, unsigned>> kinds;
  std::vector<MonoInclusion> horns;
};

HornFamily inner_horns(int min_dim, int max_dim) {
  HornFamily f;
  for (int n = std::max(2, min_dim); n <= max_dim; ++n)
    for (int i = 1; i < n; ++i) {
      f.kinds.emplace_back(unsigned(n), unsigned(i));
      f.horns.push_back(horn_inclusion(unsigned(n), unsigned(i)));
    }
  return f;
}

std::vector<unsigned> vertices_of(unsigned n, unsigned first) {
  std::vector<unsigned> v;
  for (unsigned k = first; k <= n; ++k) v.push_back(k);
  return v;
}

HornAttachment record(unsigned n, unsigned i, const SimplicialMap& alpha,
                      const std::vector<std::pair<CellId, CellId>>& created) {
  HornAttachment h{n, i, alpha, {}, {}};
  for (const auto& [gen, cell] : created) {
    if (gen.dim == n) h.top = cell;
    if (gen.dim + 1 == n) h.face = cell;
  }
  return h;
}

std::vector<std::vector<std::optional<Simplex>>> empty_fixed(const SimplicialSet& b) {
  std::vector<std::vector<std::optional<Simplex>>> fixed(std::size_t(std::max(0, b.dim() + 1)));
  for (int d = 0; d <= b.dim(); ++d) fixed[std::size_t(d)].resize(b.count(unsigned(d)));
  return fixed;
}

}  // namespace

Simplex horn_d0(const SimplicialMap& alpha, unsigned n) {
  auto cell = alpha.source().find(vertex_set_name(n, vertices_of(n, 1)));
  if (!cell) throw Error("horn has no d_0 face");
  return alpha.image(*cell);
}

StageResult soa_stage(const SSetPtr& s, int max_dim, const HornSelector& selector, const std::string& label,
                      std::uint64_t node_budget, int min_dim) {
  HornFamily family = inner_horns(min_dim, max_dim);
  SimplexIndex index(s);
  std::vector<Attachment> attachments;
  std::vector<std::pair<unsigned, unsigned>> kinds;
  for (std::size_t g = 0; g < family.horns.size(); ++g) {
    const MonoInclusion& horn = family.horns[g];
    auto [n, i] = family.kinds[g];
    Outcome o = enumerate_maps(horn.source_ptr(), index, [&](const SimplicialMap& alpha) {
      if (selector(n, i, alpha, horn, index)) {
        attachments.push_back(Attachment{&horn, alpha, label + "_" + std::to_string(attachments.size())});
        kinds.emplace_back(n, i);
      }
      return true;
    }, node_budget);
    if (o == Outcome::Budget) {
      StageResult refused;
      refused.object = s;
      refused.inclusion = MonoInclusion(SimplicialMap::identity(s));
      refused.outcome = Outcome::Budget;
      return refused;
    }
  }
  AttachResult r = attach(s, attachments);
  StageResult out;
  out.object = r.object;
  out.inclusion = r.inclusion;
  for (std::size_t a = 0; a < attachments.size(); ++a)
    out.attachments.push_back(record(kinds[a].first, kinds[a].second,
                                     SimplicialMap::unchecked(attachments[a].attaching.source_ptr(), r.object,
                                                              attachments[a].attaching.images()),
                                     r.created[a]));
  return out;
}

PrefibrantReport is_prefibrant(const SSetPtr& s, int max_dim, std::uint64_t node_budget) {
  PrefibrantReport report;
  report.max_dim = max_dim;
  report.lambda21 = fills_all(s, NamedGenerator{"horn(2,1)", horn_inclusion(2, 1)}, node_budget);
  bool budget = report.lambda21.kind == VerdictKind::Budget;
  bool refuted = report.lambda21.kind == VerdictKind::No;
  SimplexIndex index(s);
  auto pt = point();
  for (int n = 3; n <= max_dim; ++n) {
    LiftingVerdict v;
    v.checked_dim = n;
    for (unsigned i = 1; i + 1 <= unsigned(n) && v.kind != VerdictKind::No; ++i) {
      MonoInclusion horn = horn_inclusion(unsigned(n), i);
      const SimplicialSet& h = horn.source();
      for (std::uint32_t w = 0; w < s->count(0) && v.kind != VerdictKind::No; ++w) {
        auto fixed = empty_fixed(h);
        for (auto c : h.cell_ids()) {
          const auto& verts = h.cell(c).vertices;
          if (std::find(verts.begin(), verts.end(), 0u) == verts.end())
            fixed[c.dim][c.index] = SimplicialSet::constant(w, c.dim);
        }
        Outcome o = enumerate_maps(horn.source_ptr(), index, [&](const SimplicialMap& alpha) {
          LiftResult r = extend_along(alpha, horn, node_budget, &index);
          if (r.outcome == Outcome::Budget) v.kind = VerdictKind::Budget;
          if (r.outcome == Outcome::None) {
            v.kind = VerdictKind::No;
            v.generator = "horn(" + std::to_string(n) + "," + std::to_string(i) + ")";
            v.witness = LiftingProblem{horn, SimplicialMap::to_point(s, pt), alpha,
                                       SimplicialMap::to_point(horn.target_ptr(), pt)};
            return false;
          }
          return true;
        }, node_budget, &fixed);
        if (o == Outcome::Budget && v.kind != VerdictKind::No) v.kind = VerdictKind::Budget;
      }
    }
    budget = budget || v.kind == VerdictKind::Budget;
    refuted = refuted || v.kind == VerdictKind::No;
    report.constant_horns.emplace_back(unsigned(n), std::move(v));
  }
  report.value = refuted ? Tri::No : budget ? Tri::Unknown : Tri::Yes;
  return report;
}

namespace {

SoaTrace run_stages(const SSetPtr& s, int stages, int max_dim, const HornSelector& selector, const std::string& name,
                    std::uint64_t node_budget) {
  if (stages < 1) throw Error("stage count must be at least 1");
  SoaTrace trace;
  trace.selector = name;
  trace.stages.push_back(s);
  for (int m = 0; m < stages; ++m) {
    StageResult r = soa_stage(trace.stages.back(), max_dim, selector, "h" + std::to_string(m + 1), node_budget);
    if (r.outcome == Outcome::Budget) {
      trace.outcome = Outcome::Budget;
      break;
    }
    trace.stages.push_back(r.object);
    trace.maps.push_back(r.inclusion);
    trace.attachments.push_back(std::move(r.attachments));
  }
  return trace;
}

}  // namespace

SoaTrace prefibrantize(const SSetPtr& s, const PrefibrantizeOptions& options) {
  bool only_unfilled = options.only_unfilled;
  std::uint64_t budget = options.node_budget;
  HornSelector selector = [only_unfilled, budget](unsigned n, unsigned, const SimplicialMap& alpha,
                                                   const MonoInclusion& horn, SimplexIndex& index) {
    if (n > 2 && !is_constant(horn_d0(alpha, n))) return false;
    if (only_unfilled) return extend_along(alpha, horn, budget, &index).outcome == Outcome::None;
    return true;
  };
  return run_stages(s, options.stages, options.max_dim, selector,
                    only_unfilled ? "prefibrant-unfilled" : "prefibrant", options.node_budget);
}

SoaTrace complete(const SSetPtr& s, int stages, int max_dim, std::uint64_t node_budget) {
  HornSelector all = [](unsigned, unsigned, const SimplicialMap&, const MonoInclusion&, SimplexIndex&) {
    return true;
  };
  return run_stages(s, stages, max_dim, all, "inner", node_budget);
}

SaturationResult saturate_prefibrant(const SSetPtr& s, int up_to, std::uint64_t node_budget, bool horn_d0_only) {
  PrefibrantReport pre = is_prefibrant(s, up_to, node_budget);
  if (pre.value != Tri::Yes)
    throw Error(std::string("input is not pre-fibrant up to dimension ") + std::to_string(up_to) +
                (pre.value == Tri::Unknown ? " (budget exhausted)" : ""));
  SaturationResult out;
  out.up_to = up_to;
  SSetPtr t = s;
  for (int n = 3; n <= up_to; ++n) {
    HornSelector selector = [horn_d0_only](unsigned n, unsigned i, const SimplicialMap& alpha, const MonoInclusion&,
                                           SimplexIndex& index) {
      Simplex d0 = horn_d0(alpha, n);
      if (is_constant(d0)) return false;
      if (horn_d0_only) return true;
      return !is_constant(index.complex().face(d0, i - 1));
    };
    StageResult r = soa_stage(t, n, selector, "t" + std::to_string(n), node_budget, n);
    if (r.outcome == Outcome::Budget) throw BudgetError("node budget exhausted while saturating dimension " + std::to_string(n));
    t = r.object;
    // attachments of earlier dimensions keep their cell ids
    for (auto& a : out.attachments) a.map = SimplicialMap::unchecked(a.map.source_ptr(), t, a.map.images());
    for (auto& a : r.attachments) out.attachments.push_back(std::move(a));
  }
  out.object = t;
  SimplicialMap::Images inc(s->dim() + 1);
  for (auto id : s->cell_ids()) inc[id.dim].push_back(Simplex(id));
  out.inclusion = MonoInclusion(SimplicialMap(s, t, std::move(inc)));

  out.p2_holds = true;
  for (const auto& a : out.attachments)
    for (CellId c : {a.top, a.face}) {
      if (c.dim == 0) continue;
      if (is_constant(t->face(Simplex(c), 0))) {
        out.p2_holds = false;
        out.notes.push_back("new cell '" + t->name(c) + "' has constant d_0");
      }
    }

  out.hom_levels_equal = true;
  int level = std::max(0, up_to - 2);
  for (std::uint32_t x = 0; x < s->count(0); ++x)
    for (std::uint32_t y = 0; y < s->count(0); ++y) {
      UnderSpace hs = hom_left(s, x, y, level);
      UnderSpace ht = hom_left(t, x, y, level);
      for (int n = 0; n <= level; ++n) {
        std::set<Simplex> a, b;
        for (const auto& u : hs.space->simplices(unsigned(n))) a.insert(hs.to_ambient(*s, u));
        for (const auto& u : ht.space->simplices(unsigned(n))) b.insert(ht.to_ambient(*t, u));
        if (a != b) {
          out.hom_levels_equal = false;
          out.notes.push_back("hom_left(" + s->name(CellId{0, x}) + ", " + s->name(CellId{0, y}) + ") differs at level " +
                              std::to_string(n));
        }
      }
    }
  return out;
}

std::vector<CellId> cells_over_inner_horn(const SimplicialMap& q) {
  std::vector<CellId> out;
  for (auto c : q.source().cell_ids()) {
    auto v = q.target().vertices(q.image(c));
    bool low = std::all_of(v.begin(), v.end(), [](std::uint32_t k) { return k <= 1; });
    bool high = std::all_of(v.begin(), v.end(), [](std::uint32_t k) { return k >= 1; });
    if (low || high) out.push_back(c);
  }
  return out;
}

TriangleDescent descend_over_triangle(const SimplicialMap& p, int stages, int max_dim, std::uint64_t node_budget) {
  MonoInclusion horn = horn_inclusion(2, 1);
  auto iso = find_isomorphism(p.target_ptr(), horn.source_ptr());
  if (!iso) throw Error("descend_over_triangle: the base is not the horn Λ^2_1");
  SimplicialMap q = SimplicialMap::compose(horn.map(), SimplicialMap::compose(*iso, p));
  const SSetPtr& delta2 = horn.target_ptr();

  TriangleDescent out;
  out.max_dim = max_dim;
  out.stages.push_back(p.source_ptr());
  out.over.push_back(q);
  std::set<CellId> x_cells;
  for (auto c : p.source().cell_ids()) x_cells.insert(c);
  HornFamily family = inner_horns(2, max_dim);

  for (int m = 0; m < stages; ++m) {
    const SSetPtr& c = out.stages.back();
    const SimplicialMap& qc = out.over.back();
    SimplexIndex index(c);
    std::vector<Attachment> attachments;
    std::vector<Monotone> betas;
    bool budget = false;
    for (std::size_t g = 0; g < family.horns.size() && !budget; ++g) {
      const MonoInclusion& h = family.horns[g];
      Outcome o = enumerate_maps(h.source_ptr(), index, [&](const SimplicialMap& alpha) {
        Monotone beta;
        for (std::uint32_t v = 0; v < h.source().count(0); ++v)
          beta.push_back(std::uint8_t(qc.on_vertex(alpha.on_vertex(v))));
        if (std::find(beta.begin(), beta.end(), 0) == beta.end() || std::find(beta.begin(), beta.end(), 2) == beta.end())
          return true;
        attachments.push_back(Attachment{&h, alpha, "c" + std::to_string(m + 1) + "_" + std::to_string(attachments.size())});
        betas.push_back(std::move(beta));
        return true;
      }, node_budget);
      budget = o == Outcome::Budget;
    }
    if (budget) {
      out.outcome = Outcome::Budget;
      break;
    }
    AttachResult r = attach(c, attachments);
    SimplicialMap::Images im(r.object->dim() + 1);
    for (auto id : c->cell_ids()) im[id.dim].push_back(qc.image(id));
    im.resize(std::size_t(r.object->dim() + 1));
    std::map<CellId, Simplex> fresh;
    for (std::size_t a = 0; a < attachments.size(); ++a) {
      const SimplicialSet& gen = attachments[a].generator->target();
      for (const auto& [gcell, cell] : r.created[a]) {
        Monotone seq;
        for (auto v : gen.cell(gcell).vertices) seq.push_back(betas[a][v]);
        fresh[cell] = *standard_simplex_at(*delta2, 2, seq);
      }
    }
    for (auto id : r.object->cell_ids())
      if (id.index >= c->count(id.dim)) im[id.dim].push_back(fresh.at(id));
    SimplicialMap qn(r.object, delta2, std::move(im));
    auto over = cells_over_inner_horn(qn);
    if (std::set<CellId>(over.begin(), over.end()) != x_cells)
      throw InvariantError("pullback check failed at stage " + std::to_string(m + 1) +
                  ": cells over the horn differ from the input");
    out.stages.push_back(r.object);
    out.over.push_back(std::move(qn));
    out.attached.push_back(attachments.size());
  }
  SimplicialMap::Images inc(p.source().dim() + 1);
  for (auto id : p.source().cell_ids()) inc[id.dim].push_back(Simplex(id));
  out.inclusion = MonoInclusion(SimplicialMap(p.source_ptr(), out.stages.back(), std::move(inc)));
  return out;
}

PathSpace mapping_path_space(const SimplicialMap& f, int up_to, std::uint64_t node_budget) {
  PathSpace ps{restricted_function_complex(f.target_ptr(), standard_simplex(1), up_to, node_budget), std::nullopt,
               {}, {}, up_to, false, Outcome::None};
  if (ps.paths.outcome() == Outcome::Budget) {
    ps.outcome = Outcome::Budget;
    ps.up_to = ps.paths.computed_up_to();
    if (ps.up_to < 0) return ps;
  }
  SimplicialMap ev0 = ps.paths.evaluation(0);
  SimplicialMap ev1 = ps.paths.evaluation(1);
  ps.q.emplace(f, ev0, unsigned(ps.up_to));
  ps.pi = SimplicialMap::compose(ev1, ps.q->projection2());
  MonoInclusion sk = skeleton(f.source_ptr(), unsigned(ps.up_to));
  SimplicialMap::Images im(sk.source().dim() + 1);
  for (auto c : sk.source().cell_ids()) {
    Simplex x = sk.map().image(c);
    auto family = ps.paths.constant_family(f(x));
    if (!family) throw Error("internal: constant path missing from the path complex");
    im[c.dim].push_back(ps.q->pair(x, *family));
  }
  ps.i = SimplicialMap(sk.source_ptr(), ps.q->object(), std::move(im));
  ps.factorization_holds = SimplicialMap::compose(ps.pi, ps.i).images() == SimplicialMap::compose(f, sk.map()).images();
  return ps;
}

namespace {

struct NewCell {
  unsigned dim;
  std::vector<Simplex> faces;
  Simplex over;
};

class DescentSearch {
 public:
  DescentSearch(const SimplicialMap& p, const MonoInclusion& i, int max_dim, int bound, std::uint64_t budget)
      : p_(p), i_(i), max_dim_(max_dim), bound_(bound), budget_(budget), gens_(generating_family(FibrationClass::Inner, max_dim)) {}

  Outcome run(std::vector<NewCell>& cells) {
    if (++nodes_ > budget_) return Outcome::Budget;
    auto [y, q] = build(cells);
    LiftingVerdict v = has_rlp(q, gens_, max_dim_, budget_);
    if (v.kind == VerdictKind::Yes) {
      y_ = y;
      q_ = q;
      return Outcome::Found;
    }
    if (v.kind == VerdictKind::Budget) return Outcome::Budget;
    const LiftingProblem& w = *v.witness;
    const SimplicialSet& delta = w.i.target();
    unsigned n = unsigned(delta.dim());
    CellId top{n, 0};
    Simplex beta = w.v.image(top);
    if (i_.covers(beta)) return Outcome::None;
    unsigned k = 0;
    std::vector<Simplex> top_faces(n + 1);
    for (unsigned j = 0; j <= n; ++j) {
      CellId f = delta.cell_face(top, j).base;
      if (auto pre = w.i.preimage(f))
        top_faces[j] = w.u.image(*pre);
      else
        k = j;
    }
    CellId missing = delta.cell_face(top, k).base;
    std::vector<Simplex> face_faces;
    for (const auto& g : delta.cell(missing).faces) face_faces.push_back(w.u.image(*w.i.preimage(g.base)));
    Simplex face_over = w.v.image(missing);
    if (int(cells.size()) + 1 > bound_) return Outcome::None;

    bool budget = false;
    SimplexIndex index(y);
    std::vector<Simplex> existing = index.with_faces(n - 1, face_faces);
    for (const auto& cand : existing) {
      if (q(cand) != face_over) continue;
      top_faces[k] = cand;
      cells.push_back(NewCell{n, top_faces, beta});
      Outcome o = run(cells);
      cells.pop_back();
      if (o == Outcome::Found) return o;
      budget = budget || o == Outcome::Budget;
    }
    if (!i_.covers(face_over) && int(cells.size()) + 2 <= bound_) {
      CellId fresh{n - 1, std::uint32_t(y->count(n - 1))};
      cells.push_back(NewCell{n - 1, face_faces, face_over});
      top_faces[k] = Simplex(fresh);
      cells.push_back(NewCell{n, top_faces, beta});
      Outcome o = run(cells);
      cells.pop_back();
      cells.pop_back();
      if (o == Outcome::Found) return o;
      budget = budget || o == Outcome::Budget;
    }
    return budget ? Outcome::Budget : Outcome::None;
  }

  std::pair<SSetPtr, SimplicialMap> build(const std::vector<NewCell>& cells) const {
    const SimplicialSet& x = p_.source();
    SimplicialSet::Builder b;
    for (auto id : x.cell_ids()) b.add_cell(x.name(id), x.cell(id).faces);
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (cells[k].dim == 0)
        b.add_vertex("y" + std::to_string(k));
      else
        b.add_cell_unique("y" + std::to_string(k), cells[k].faces);
    }
    SSetPtr y = b.build();
    SimplicialMap::Images im(y->dim() + 1);
    for (auto id : x.cell_ids()) im[id.dim].push_back(i_.map()(p_.image(id)));
    for (const auto& c : cells) im[c.dim].push_back(c.over);
    return {y, SimplicialMap(y, i_.target_ptr(), std::move(im))};
  }

  std::uint64_t nodes() const { return nodes_; }
  SSetPtr y_;
  std::optional<SimplicialMap> q_;

 private:
  const SimplicialMap& p_;
  const MonoInclusion& i_;
  int max_dim_, bound_;
  std::uint64_t budget_;
  std::vector<NamedGenerator> gens_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

DescentSearchResult search_descent_extension(const SimplicialMap& p, const MonoInclusion& i, int max_dim,
                                             int cell_bound, std::uint64_t node_budget) {
  if (!same_complex(p.target(), i.source())) throw Error("p must land in the source of i");
  DescentSearch search(p, i, max_dim, cell_bound, node_budget);
  std::vector<NewCell> cells;
  DescentSearchResult out;
  out.outcome = search.run(cells);
  out.max_dim = max_dim;
  out.cell_bound = cell_bound;
  out.nodes = search.nodes();
  if (out.outcome == Outcome::Found) {
    out.y = search.y_;
    out.over = search.q_;
    SimplicialMap::Images inc(p.source().dim() + 1);
    for (auto id : p.source().cell_ids()) inc[id.dim].push_back(Simplex(id));
    out.from_x = MonoInclusion(SimplicialMap(p.source_ptr(), out.y, std::move(inc)));
  }
  return out;
}

}  // namespace sset
