#include "sset/lifting.hpp"

#include <set>

namespace sset {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Found: return "found";
    case Outcome::None: return "none";
    case Outcome::Budget: return "budget";
  }
  return "?";
}

const std::vector<Simplex>& SimplexIndex::with_faces(unsigned n, const std::vector<Simplex>& faces) {
  if (levels_.size() <= n) levels_.resize(n + 1);
  auto& level = levels_[n];
  if (!level) {
    level.emplace();
    for (const auto& s : x_->simplices(n)) {
      std::vector<Simplex> key;
      if (n > 0)
        for (unsigned i = 0; i <= n; ++i) key.push_back(x_->face(s, i));
      (*level)[key].push_back(s);
    }
  }
  auto it = level->find(faces);
  return it == level->end() ? empty_ : it->second;
}

std::vector<std::string> LiftingProblem::problems() const {
  std::vector<std::string> out;
  if (!same_complex(u.source(), i.source())) out.push_back("u and i have different sources");
  if (!same_complex(v.source(), i.target())) out.push_back("v does not start at the target of i");
  if (!same_complex(p.source(), u.target())) out.push_back("p does not start at the target of u");
  if (!same_complex(p.target(), v.target())) out.push_back("p and v have different targets");
  if (!out.empty()) return out;
  for (auto c : i.source().cell_ids()) {
    if (p(u.image(c)) != v(i.map().image(c)))
      out.push_back("square does not commute on cell '" + i.source().name(c) + "'");
  }
  return out;
}

namespace {

class MapSearch {
 public:
  MapSearch(const SSetPtr& b, SimplexIndex& x, const std::function<bool(const SimplicialMap&)>& visit,
            std::uint64_t budget, MapConstraint over)
      : b_(b), x_(x), visit_(visit), budget_(budget), over_(over) {
    images_.resize(b->dim() + 1);
    for (int d = 0; d <= b->dim(); ++d) images_[d].resize(b->count(unsigned(d)));
  }

  void fix(const std::vector<std::vector<std::optional<Simplex>>>& fixed) {
    for (std::size_t d = 0; d < fixed.size() && d < images_.size(); ++d)
      for (std::size_t k = 0; k < fixed[d].size() && k < images_[d].size(); ++k)
        if (fixed[d][k]) {
          images_[d][k] = fixed[d][k];
          if (over_.injective) used_.insert(*fixed[d][k]);
        }
  }

  Outcome run(std::uint64_t* nodes_used) {
    for (auto c : b_->cell_ids())
      if (!images_[c.dim][c.index]) free_.push_back(c);
    step(0);
    if (nodes_used) *nodes_used = nodes_;
    return exhausted_ ? Outcome::Budget : Outcome::None;
  }

 private:
  bool step(std::size_t pos) {
    if (pos == free_.size()) {
      SimplicialMap::Images im(images_.size());
      for (std::size_t d = 0; d < images_.size(); ++d)
        for (const auto& s : images_[d]) im[d].push_back(*s);
      return visit_(SimplicialMap::unchecked(b_, x_.complex_ptr(), std::move(im)));
    }
    CellId c = free_[pos];
    const auto& cell = b_->cell(c);
    std::vector<Simplex> faces;
    faces.reserve(cell.faces.size());
    for (const auto& f : cell.faces) {
      const auto& img = images_[f.base.dim][f.base.index];
      if (!img) throw Error("cells fixed in a map search must form a subcomplex");
      faces.push_back(f.degeneracies ? x_.complex().apply(*img, surjection_of(f)) : *img);
    }
    const auto& candidates = x_.with_faces(c.dim, faces);
    std::optional<Simplex> want;
    if (over_.p) want = over_.v->image(c);
    for (const auto& cand : candidates) {
      if (over_.nondegenerate && !cand.nondegenerate()) continue;
      if (over_.injective && used_.count(cand)) continue;
      if (want && (*over_.p)(cand) != *want) continue;
      if (++nodes_ > budget_) {
        exhausted_ = true;
        return false;
      }
      images_[c.dim][c.index] = cand;
      if (over_.injective) used_.insert(cand);
      bool go_on = step(pos + 1);
      if (over_.injective) used_.erase(cand);
      images_[c.dim][c.index].reset();
      if (!go_on) return false;
    }
    return true;
  }

  const SSetPtr& b_;
  SimplexIndex& x_;
  const std::function<bool(const SimplicialMap&)>& visit_;
  std::uint64_t budget_;
  MapConstraint over_;
  std::vector<std::vector<std::optional<Simplex>>> images_;
  std::vector<CellId> free_;
  std::set<Simplex> used_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

Outcome enumerate_maps(const SSetPtr& b, SimplexIndex& x, const std::function<bool(const SimplicialMap&)>& visit,
                       std::uint64_t node_budget, const std::vector<std::vector<std::optional<Simplex>>>* fixed,
                       MapConstraint over, std::uint64_t* nodes_used) {
  MapSearch search(b, x, visit, node_budget, over);
  if (fixed) search.fix(*fixed);
  return search.run(nodes_used);
}

std::vector<SimplicialMap> all_maps(const SSetPtr& a, const SSetPtr& x, Outcome* outcome, std::uint64_t node_budget) {
  SimplexIndex index(x);
  std::vector<SimplicialMap> out;
  Outcome o = enumerate_maps(a, index, [&](const SimplicialMap& f) {
    out.push_back(f);
    return true;
  }, node_budget);
  if (outcome) *outcome = o;
  return out;
}

LiftResult solve_lift(const LiftingProblem& problem, std::uint64_t node_budget, SimplexIndex* index) {
  auto issues = problem.problems();
  if (!issues.empty()) throw Error("ill-formed lifting problem: " + issues.front());
  std::optional<SimplexIndex> own;
  if (!index) index = &own.emplace(problem.p.source_ptr());
  const auto& b = problem.i.target_ptr();
  std::vector<std::vector<std::optional<Simplex>>> fixed(b->dim() + 1);
  for (int d = 0; d <= b->dim(); ++d) fixed[d].resize(b->count(unsigned(d)));
  for (auto c : problem.i.source().cell_ids()) {
    CellId t = problem.i.map().image(c).base;
    fixed[t.dim][t.index] = problem.u.image(c);
  }
  LiftResult result;
  std::optional<SimplicialMap> found;
  Outcome o = enumerate_maps(b, *index, [&](const SimplicialMap& f) {
    found = f;
    return false;
  }, node_budget, &fixed, MapConstraint{&problem.p, &problem.v}, &result.nodes);
  if (found) {
    // Independent re-check of the returned lift.
    SimplicialMap lift(found->source_ptr(), found->target_ptr(), found->images());
    for (auto c : problem.i.source().cell_ids())
      if (lift(problem.i.map().image(c)) != problem.u.image(c)) throw Error("internal: lift does not extend u");
    for (auto c : b->cell_ids())
      if (problem.p(lift.image(c)) != problem.v.image(c)) throw Error("internal: lift does not lie over v");
    result.outcome = Outcome::Found;
    result.lift = std::move(lift);
  } else {
    result.outcome = o;
  }
  return result;
}

LiftResult extend_along(const SimplicialMap& f, const MonoInclusion& i, std::uint64_t node_budget, SimplexIndex* index) {
  SSetPtr pt = point();
  LiftingProblem problem{i, SimplicialMap::to_point(f.target_ptr(), pt), f,
                         SimplicialMap::to_point(i.target_ptr(), pt)};
  return solve_lift(problem, node_budget, index);
}

LiftingVerdict has_rlp(const SimplicialMap& p, const std::vector<NamedGenerator>& generators, int max_dim,
                       std::uint64_t node_budget) {
  LiftingVerdict verdict;
  verdict.checked_dim = max_dim;
  SimplexIndex x_index(p.source_ptr());
  SimplexIndex s_index(p.target_ptr());
  bool budget_hit = false;
  for (const auto& g : generators) {
    if (g.inclusion.target().dim() > max_dim) continue;
    const auto& i = g.inclusion;
    const auto& b = i.target_ptr();
    std::optional<LiftingProblem> witness;
    Outcome ou = enumerate_maps(i.source_ptr(), x_index, [&](const SimplicialMap& u) {
      std::vector<std::vector<std::optional<Simplex>>> fixed(b->dim() + 1);
      for (int d = 0; d <= b->dim(); ++d) fixed[d].resize(b->count(unsigned(d)));
      for (auto c : i.source().cell_ids()) {
        CellId t = i.map().image(c).base;
        fixed[t.dim][t.index] = p(u.image(c));
      }
      Outcome ov = enumerate_maps(b, s_index, [&](const SimplicialMap& v) {
        LiftingProblem problem{i, p, u, v};
        LiftResult r = solve_lift(problem, node_budget, &x_index);
        if (r.outcome == Outcome::None) {
          witness = std::move(problem);
          return false;
        }
        if (r.outcome == Outcome::Budget) budget_hit = true;
        return true;
      }, node_budget, &fixed);
      if (ov == Outcome::Budget) budget_hit = true;
      return !witness.has_value();
    }, node_budget);
    if (ou == Outcome::Budget) budget_hit = true;
    if (witness) {
      verdict.kind = VerdictKind::No;
      verdict.witness = std::move(witness);
      verdict.generator = g.name;
      return verdict;
    }
  }
  verdict.kind = budget_hit ? VerdictKind::Budget : VerdictKind::Yes;
  return verdict;
}

const char* to_string(FibrationClass c) {
  switch (c) {
    case FibrationClass::Inner: return "inner";
    case FibrationClass::Left: return "left";
    case FibrationClass::Right: return "right";
    case FibrationClass::Kan: return "kan";
    case FibrationClass::TrivialKan: return "trivial_kan";
  }
  return "?";
}

std::optional<FibrationClass> parse_fibration_class(const std::string& s) {
  for (auto c : kAllClasses)
    if (s == to_string(c)) return c;
  if (s == "trivial-kan") return FibrationClass::TrivialKan;
  return std::nullopt;
}

namespace {

bool horn_in_class(FibrationClass c, int n, int i) {
  switch (c) {
    case FibrationClass::Inner: return 0 < i && i < n;
    case FibrationClass::Left: return 0 <= i && i < n;
    case FibrationClass::Right: return 0 < i && i <= n;
    case FibrationClass::Kan: return true;
    case FibrationClass::TrivialKan: return false;
  }
  return false;
}

std::string horn_name(int n, int i) { return "horn(" + std::to_string(n) + "," + std::to_string(i) + ")"; }
std::string boundary_name(int n) { return "boundary(" + std::to_string(n) + ")"; }

}  // namespace

std::vector<NamedGenerator> generating_family(FibrationClass c, int max_dim) {
  std::vector<NamedGenerator> out;
  if (c == FibrationClass::TrivialKan) {
    for (int n = 0; n <= max_dim; ++n) out.push_back({boundary_name(n), boundary_inclusion(unsigned(n))});
    return out;
  }
  for (int n = 1; n <= max_dim; ++n)
    for (int i = 0; i <= n; ++i)
      if (horn_in_class(c, n, i)) out.push_back({horn_name(n, i), horn_inclusion(unsigned(n), unsigned(i))});
  return out;
}

int default_max_dim(const SimplicialMap& p) { return std::max(p.source().dim(), p.target().dim()) + 1; }

FibrationReport classify_map(const SimplicialMap& p, int max_dim, std::uint64_t node_budget,
                             const std::vector<FibrationClass>& classes) {
  if (max_dim < 0) max_dim = default_max_dim(p);
  FibrationReport report;
  report.checked_dim = max_dim;
  try {
    MonoInclusion m(p);
    report.mono = true;
  } catch (const Error&) {
    report.mono = false;
  }
  report.vertex_bijective = p.bijective_on_vertices();
  std::map<std::string, LiftingVerdict> cache;
  for (auto c : classes) {
    LiftingVerdict verdict;
    verdict.checked_dim = max_dim;
    bool budget = false;
    for (const auto& g : generating_family(c, max_dim)) {
      auto it = cache.find(g.name);
      if (it == cache.end()) it = cache.emplace(g.name, has_rlp(p, {g}, max_dim, node_budget)).first;
      if (it->second.kind == VerdictKind::No) {
        verdict = it->second;
        break;
      }
      if (it->second.kind == VerdictKind::Budget) budget = true;
    }
    if (verdict.kind != VerdictKind::No && budget) verdict.kind = VerdictKind::Budget;
    report.verdicts[c] = verdict;
  }
  return report;
}

LiftingVerdict fills_all(const SSetPtr& x, const NamedGenerator& i, std::uint64_t node_budget) {
  return has_rlp(SimplicialMap::to_point(x, point()), {i}, i.inclusion.target().dim(), node_budget);
}

std::optional<SimplicialMap> find_isomorphism(SSetPtr a, SSetPtr b, std::uint64_t node_budget) {
  if (a->dim() != b->dim()) return std::nullopt;
  for (int d = 0; d <= a->dim(); ++d)
    if (a->count(unsigned(d)) != b->count(unsigned(d))) return std::nullopt;
  SimplexIndex index(b);
  std::optional<SimplicialMap> found;
  MapConstraint c;
  c.nondegenerate = true;
  c.injective = true;
  Outcome o = enumerate_maps(a, index, [&](const SimplicialMap& f) {
    found = f;
    return false;
  }, node_budget, nullptr, c);
  if (!found && o == Outcome::Budget) throw BudgetError("isomorphism search exceeded its budget");
  return found;
}

}  // namespace sset
