#include "sset/homotopy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace sset {

const char* to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

namespace {

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool contains(const Word& hay, const Word& needle) {
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

class Rewriter {
 public:
  std::map<Word, Word> rules;
  std::size_t max_lhs = 0;

  Word reduce(Word w) const {
    if (rules.empty()) return w;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < w.size() && !changed; ++i) {
        for (std::size_t len = 1; len <= max_lhs && i + len <= w.size(); ++len) {
          auto it = rules.find(Word(w.begin() + std::ptrdiff_t(i), w.begin() + std::ptrdiff_t(i + len)));
          if (it == rules.end()) continue;
          Word next(w.begin(), w.begin() + std::ptrdiff_t(i));
          next.insert(next.end(), it->second.begin(), it->second.end());
          next.insert(next.end(), w.begin() + std::ptrdiff_t(i + len), w.end());
          w = std::move(next);
          changed = true;
          break;
        }
      }
    }
    return w;
  }

  void recompute_max() {
    max_lhs = 0;
    for (const auto& [l, r] : rules) max_lhs = std::max(max_lhs, l.size());
  }
};

}  // namespace

HomotopyCategory::HomotopyCategory(SSetPtr s, int word_budget, std::size_t rule_budget)
    : s_(std::move(s)), word_budget_(word_budget) {
  const SimplicialSet& x = *s_;
  out_edges_.resize(x.count(0));
  for (std::uint32_t e = 0; e < x.count(1); ++e) out_edges_[source(e)].push_back(e);
  for (std::uint32_t t = 0; t < x.count(2); ++t) {
    const auto& f = x.cell(CellId{2, t}).faces;
    relations_.emplace_back(word_of(f[1]), concat(word_of(f[2]), word_of(f[0])));
  }

  Rewriter rw;
  std::deque<std::pair<Word, Word>> pending(relations_.begin(), relations_.end());
  std::set<std::pair<Word, Word>> checked;
  bool aborted = false;
  while (!aborted) {
    while (!pending.empty() && !aborted) {
      auto [a, b] = pending.front();
      pending.pop_front();
      a = rw.reduce(a);
      b = rw.reduce(b);
      if (a == b) continue;
      if (shortlex_less(a, b)) std::swap(a, b);
      for (auto it = rw.rules.begin(); it != rw.rules.end();) {
        if (contains(it->first, a)) {
          pending.emplace_back(it->first, it->second);
          it = rw.rules.erase(it);
        } else {
          ++it;
        }
      }
      rw.rules[a] = b;
      rw.recompute_max();
      for (auto& [l, r] : rw.rules) r = rw.reduce(r);
      if (rw.rules.size() > rule_budget) aborted = true;
    }
    if (aborted) break;
    bool added = false;
    for (const auto& [l1, r1] : rw.rules) {
      for (const auto& [l2, r2] : rw.rules) {
        if (!checked.emplace(l1, l2).second) continue;
        std::size_t top = std::min(l1.size(), l2.size());
        for (std::size_t k = 1; k < top; ++k) {
          if (!std::equal(l1.end() - std::ptrdiff_t(k), l1.end(), l2.begin())) continue;
          Word w1 = concat(r1, Word(l2.begin() + std::ptrdiff_t(k), l2.end()));
          Word w2 = concat(Word(l1.begin(), l1.end() - std::ptrdiff_t(k)), r2);
          Word n1 = rw.reduce(w1), n2 = rw.reduce(w2);
          if (n1 != n2) {
            pending.emplace_back(n1, n2);
            added = true;
          }
        }
      }
    }
    if (!added && pending.empty()) {
      confluent_ = true;
      break;
    }
  }
  for (const auto& [l, r] : rw.rules) {
    rules_.emplace_back(l, r);
    lhs_.emplace(l, r);
    max_lhs_ = std::max(max_lhs_, l.size());
  }
}

HomotopyCategory homotopy_category(SSetPtr s, int word_budget) { return HomotopyCategory(std::move(s), word_budget); }

Word HomotopyCategory::word_of(const Simplex& edge) const {
  if (edge.dim() != 1) throw Error("not an edge");
  if (!edge.nondegenerate()) return {};
  return {edge.base.index};
}

std::uint32_t HomotopyCategory::source(std::uint32_t g) const { return s_->cell(CellId{1, g}).vertices[0]; }
std::uint32_t HomotopyCategory::target(std::uint32_t g) const { return s_->cell(CellId{1, g}).vertices[1]; }

Word HomotopyCategory::reduce(Word w) const {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < w.size() && !changed; ++i) {
      for (std::size_t len = 1; len <= max_lhs_ && i + len <= w.size(); ++len) {
        Word sub(w.begin() + std::ptrdiff_t(i), w.begin() + std::ptrdiff_t(i + len));
        auto it = lhs_.find(sub);
        if (it == lhs_.end()) continue;
        Word next(w.begin(), w.begin() + std::ptrdiff_t(i));
        next.insert(next.end(), it->second.begin(), it->second.end());
        next.insert(next.end(), w.begin() + std::ptrdiff_t(i + len), w.end());
        w = std::move(next);
        changed = true;
        break;
      }
    }
  }
  return w;
}

bool HomotopyCategory::composable(const Word& w) const {
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (target(w[k]) != source(w[k + 1])) return false;
  return true;
}

bool HomotopyCategory::irreducible_extension(const Word& w) const {
  for (std::size_t len = 1; len <= max_lhs_ && len <= w.size(); ++len)
    if (lhs_.count(Word(w.end() - std::ptrdiff_t(len), w.end()))) return false;
  return true;
}

HomSet HomotopyCategory::hom(std::uint32_t x, std::uint32_t y) const {
  const std::size_t kMaxPaths = 200000;
  std::size_t nv = s_->count(0);
  if (x >= nv || y >= nv) throw Error("vertex out of range");
  // vertices from which y is reachable
  std::vector<char> reaches(nv, 0);
  reaches[y] = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::uint32_t e = 0; e < s_->count(1); ++e)
      if (!reaches[source(e)] && reaches[target(e)]) reaches[source(e)] = grew = true;
  }
  HomSet out;
  bool truncated = !confluent_;
  std::size_t explored = 0;
  std::vector<Word> frontier{Word{}};
  if (x == y) out.morphisms.push_back({});
  for (int len = 1; len <= word_budget_ + 1 && !frontier.empty(); ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      std::uint32_t at = w.empty() ? x : target(w.back());
      for (auto e : out_edges_[at]) {
        Word v = w;
        v.push_back(e);
        if (!irreducible_extension(v)) continue;
        if (!reaches[target(e)]) continue;
        if (len == word_budget_ + 1) {
          truncated = true;
          break;
        }
        if (++explored > kMaxPaths) {
          truncated = true;
          break;
        }
        if (target(e) == y) out.morphisms.push_back(v);
        next.push_back(std::move(v));
      }
      if (truncated && (len == word_budget_ + 1 || explored > kMaxPaths)) break;
    }
    frontier = std::move(next);
    if (explored > kMaxPaths) break;
  }
  std::sort(out.morphisms.begin(), out.morphisms.end(), shortlex_less);
  out.status = truncated ? HomStatus::BudgetTruncated : HomStatus::Exact;
  return out;
}

std::string HomotopyCategory::text(const Word& w, std::uint32_t at_vertex) const {
  if (w.empty()) return "id(" + s_->name(CellId{0, at_vertex}) + ")";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += ";";
    out += s_->name(CellId{1, w[k]});
  }
  return out;
}

EquivalenceVerdict is_equivalence_edge(const HomotopyCategory& h, const Simplex& edge) {
  EquivalenceVerdict v;
  if (!edge.nondegenerate()) {
    v.value = Tri::Yes;
    return v;
  }
  Word w = h.word_of(edge);
  std::uint32_t x = h.source(w[0]), y = h.target(w[0]);
  HomSet back = h.hom(y, x);
  for (const auto& g : back.morphisms) {
    if (h.reduce(concat(w, g)).empty() && h.reduce(concat(g, w)).empty()) {
      v.value = Tri::Yes;
      v.inverse = g;
      return v;
    }
  }
  v.value = back.status == HomStatus::Exact ? Tri::No : Tri::Unknown;
  return v;
}

std::vector<std::vector<std::uint32_t>> pi0(const SimplicialSet& x) {
  std::vector<std::uint32_t> parent(x.count(0));
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::uint32_t e = 0; e < x.count(1); ++e) {
    const auto& v = x.cell(CellId{1, e}).vertices;
    auto a = find(v[0]), b = find(v[1]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
  for (std::uint32_t v = 0; v < parent.size(); ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<std::uint32_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

IsofibrationReport check_isofibration(const SimplicialMap& p, int word_budget) {
  IsofibrationReport report;
  HomotopyCategory hs(p.target_ptr(), word_budget);
  HomotopyCategory hx(p.source_ptr(), word_budget);
  const SimplicialSet& x = p.source();
  const SimplicialSet& s = p.target();
  std::vector<std::optional<EquivalenceVerdict>> x_equiv(x.count(1));
  for (std::uint32_t fi = 0; fi < s.count(1); ++fi) {
    Simplex f(CellId{1, fi});
    EquivalenceVerdict ev = is_equivalence_edge(hs, f);
    if (ev.value == Tri::No) continue;
    std::uint32_t start = s.cell(f.base).vertices[0];
    for (std::uint32_t xv = 0; xv < x.count(0); ++xv) {
      if (p.on_vertex(xv) != start) continue;
      bool found = false, unknown = false, any_edge = false;
      for (std::uint32_t ui = 0; ui < x.count(1) && !found; ++ui) {
        CellId u{1, ui};
        if (x.cell(u).vertices[0] != xv || p.image(u) != f) continue;
        any_edge = true;
        if (!x_equiv[ui]) x_equiv[ui] = is_equivalence_edge(hx, Simplex(u));
        if (x_equiv[ui]->value == Tri::Yes) found = true;
        if (x_equiv[ui]->value == Tri::Unknown) unknown = true;
      }
      if (found) continue;
      if (ev.value == Tri::Unknown || unknown) {
        report.value = Tri::Unknown;
        if (report.note.empty())
          report.note = "could not decide whether edge '" + s.name(f.base) + "' has an equivalence lift from '" +
                        x.name(CellId{0, xv}) + "'";
        continue;
      }
      report.value = Tri::No;
      report.edge = f;
      report.vertex = xv;
      report.note = "equivalence '" + s.name(f.base) + "' has no equivalence lift starting at '" +
                    x.name(CellId{0, xv}) + "'";
      if (!any_edge) {
        MonoInclusion start_vertex = standard_subcomplex(1, {{0}});
        SimplicialMap::Images ui{{Simplex(CellId{0, xv})}};
        SimplicialMap u(start_vertex.source_ptr(), p.source_ptr(), std::move(ui));
        SimplicialMap v = classifying_map(p.target_ptr(), f);
        // classifying_map builds its own Delta^1; re-point it at the horn's target
        SimplicialMap v2(start_vertex.target_ptr(), p.target_ptr(), v.images());
        report.witness = LiftingProblem{start_vertex, p, std::move(u), std::move(v2)};
      }
      return report;
    }
  }
  return report;
}

CategoricalFibrationReport check_categorical_fibration(const SimplicialMap& p, int max_dim, int word_budget,
                                                       std::uint64_t node_budget) {
  CategoricalFibrationReport report;
  if (max_dim < 0) max_dim = default_max_dim(p);
  report.inner_dim = max_dim;
  auto fib = classify_map(p, max_dim, node_budget, {FibrationClass::Inner});
  report.inner = fib.verdicts[FibrationClass::Inner];
  if (report.inner.kind == VerdictKind::No) {
    report.value = Tri::No;
    report.bounded = false;
    return report;
  }
  report.isofibration = check_isofibration(p, word_budget);
  if (report.isofibration.value == Tri::No) {
    report.value = Tri::No;
    report.bounded = false;
    return report;
  }
  if (report.inner.kind == VerdictKind::Budget || report.isofibration.value == Tri::Unknown)
    report.value = Tri::Unknown;
  else
    report.value = Tri::Yes;
  return report;
}

bool collapses_to_point(const SimplicialSet& x) {
  auto ids = x.cell_ids();
  if (ids.empty()) return false;
  std::map<CellId, std::size_t> slot;
  for (std::size_t k = 0; k < ids.size(); ++k) slot[ids[k]] = k;
  std::vector<char> alive(ids.size(), 1);
  std::vector<int> incidences(ids.size(), 0);
  std::vector<std::vector<std::pair<std::size_t, bool>>> cofaces(ids.size());  // (cell, nondegenerate slot)
  for (std::size_t k = 0; k < ids.size(); ++k)
    for (const auto& f : x.cell(ids[k]).faces) {
      std::size_t b = slot.at(f.base);
      ++incidences[b];
      cofaces[b].emplace_back(k, f.nondegenerate());
    }
  std::size_t remaining = ids.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t t = ids.size(); t-- > 0;) {
      if (!alive[t] || incidences[t] != 1) continue;
      std::size_t sigma = 0;
      bool nondeg = false, seen = false;
      for (auto [c, nd] : cofaces[t])
        if (alive[c]) {
          sigma = c;
          nondeg = nd;
          seen = true;
        }
      if (!seen || !nondeg || ids[sigma].dim != ids[t].dim + 1 || incidences[sigma] != 0) continue;
      for (std::size_t r : {sigma, t}) {
        alive[r] = 0;
        --remaining;
        for (const auto& f : x.cell(ids[r]).faces) --incidences[slot.at(f.base)];
      }
      changed = true;
    }
  }
  return remaining == 1;
}

namespace {

Tri essentially_surjective(const SimplicialMap& f, const HomotopyCategory& hd, std::vector<std::string>& notes) {
  const SimplicialSet& d = f.target();
  std::vector<char> hit(d.count(0), 0);
  std::vector<std::uint32_t> images;
  for (std::uint32_t c = 0; c < f.source().count(0); ++c) {
    hit[f.on_vertex(c)] = 1;
    images.push_back(f.on_vertex(c));
  }
  // spread along equivalence edges
  std::vector<std::optional<Tri>> eq(d.count(1));
  for (bool grew = true; grew;) {
    grew = false;
    for (std::uint32_t e = 0; e < d.count(1); ++e) {
      const auto& v = d.cell(CellId{1, e}).vertices;
      if (hit[v[0]] == hit[v[1]]) continue;
      if (!eq[e]) eq[e] = is_equivalence_edge(hd, Simplex(CellId{1, e})).value;
      if (*eq[e] == Tri::Yes) hit[v[0]] = hit[v[1]] = grew = true;
    }
  }
  Tri out = Tri::Yes;
  for (std::uint32_t y = 0; y < d.count(0); ++y) {
    if (hit[y]) continue;
    bool exact = true, found = false;
    for (auto x : images) {
      HomSet there = hd.hom(x, y), back = hd.hom(y, x);
      exact = exact && there.status == HomStatus::Exact && back.status == HomStatus::Exact;
      for (const auto& a : there.morphisms) {
        for (const auto& b : back.morphisms)
          if (hd.reduce(concat(a, b)).empty() && hd.reduce(concat(b, a)).empty()) found = true;
        if (found) break;
      }
      if (found) break;
    }
    if (found) continue;
    if (exact) {
      notes.push_back("object '" + d.name(CellId{0, y}) + "' is not isomorphic to an image object");
      return Tri::No;
    }
    out = Tri::Unknown;
  }
  return out;
}

}  // namespace

DwyerKanReport dwyer_kan_check(const SimplicialMap& f, int word_budget, int up_to) {
  DwyerKanReport report;
  HomotopyCategory hd(f.target_ptr(), word_budget);
  report.essentially_surjective = essentially_surjective(f, hd, report.notes);
  if (up_to < 0) up_to = std::max({1, f.source().dim(), f.target().dim()});
  const SimplicialSet& c = f.source();
  const SimplicialSet& d = f.target();
  Tri ff = Tri::Yes;
  for (std::uint32_t a = 0; a < c.count(0) && ff != Tri::No; ++a) {
    for (std::uint32_t b = 0; b < c.count(0) && ff != Tri::No; ++b) {
      UnderSpace hc = hom_left(f.source_ptr(), a, b, up_to);
      UnderSpace hdd = hom_left(f.target_ptr(), f.on_vertex(a), f.on_vertex(b), up_to);
      std::string pair = "(" + c.name(CellId{0, a}) + ", " + c.name(CellId{0, b}) + ")";
      // induced map on cells
      std::vector<std::vector<Simplex>> image(hc.space->dim() + 1);
      bool bijective = hc.space->total_cells() == hdd.space->total_cells();
      std::set<Simplex> used;
      for (auto cell : hc.space->cell_ids()) {
        Simplex u = hc.ambient[cell.dim][cell.index];
        auto t = hdd.from_ambient(d, f(u));
        if (!t) throw Error("internal: image of a mapping-space simplex left the target mapping space");
        image[cell.dim].push_back(*t);
        if (!t->nondegenerate() || !used.insert(*t).second) bijective = false;
      }
      if (bijective) continue;
      auto ca = pi0(*hc.space), cb = pi0(*hdd.space);
      std::vector<int> comp_b(hdd.space->count(0), -1);
      for (std::size_t k = 0; k < cb.size(); ++k)
        for (auto v : cb[k]) comp_b[v] = int(k);
      std::vector<int> hit(cb.size(), -1);
      bool pi0_bijective = ca.size() == cb.size();
      for (std::size_t k = 0; k < ca.size() && pi0_bijective; ++k) {
        int target = comp_b[image[0][ca[k][0]].base.index];
        if (hit[std::size_t(target)] >= 0) pi0_bijective = false;
        hit[std::size_t(target)] = int(k);
      }
      if (!pi0_bijective) {
        report.notes.push_back("pi0 of the mapping spaces differs at " + pair + ": " + std::to_string(ca.size()) +
                               " vs " + std::to_string(cb.size()) + " components");
        ff = Tri::No;
        break;
      }
      bool all_contractible = true;
      for (std::size_t k = 0; k < ca.size() && all_contractible; ++k) {
        auto sa = full_subset(hc.space, ca[k]);
        std::size_t kb = std::size_t(comp_b[image[0][ca[k][0]].base.index]);
        auto sb = full_subset(hdd.space, cb[kb]);
        all_contractible = collapses_to_point(sa.source()) && collapses_to_point(sb.source());
      }
      if (!all_contractible) {
        report.notes.push_back("mapping spaces at " + pair + " agree on pi0 but the collapse test is inconclusive");
        ff = Tri::Unknown;
      }
    }
  }
  report.fully_faithful = ff;
  return report;
}

}  // namespace sset
