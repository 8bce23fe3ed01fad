#include "sset/certify.hpp"

#include <map>
#include <set>
#include <sstream>

#include "sset/io.hpp"

namespace sset {

const char* to_string(AnodyneClass c) {
  switch (c) {
    case AnodyneClass::Inner: return "inner";
    case AnodyneClass::Left: return "left";
    case AnodyneClass::Right: return "right";
    case AnodyneClass::Kan: return "kan";
  }
  return "?";
}

std::optional<AnodyneClass> parse_anodyne_class(const std::string& s) {
  for (auto c : {AnodyneClass::Inner, AnodyneClass::Left, AnodyneClass::Right, AnodyneClass::Kan})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

bool horn_allowed(AnodyneClass c, unsigned n, unsigned i) {
  if (n == 0 || i > n) return false;
  switch (c) {
    case AnodyneClass::Inner: return 0 < i && i < n;
    case AnodyneClass::Left: return i < n;
    case AnodyneClass::Right: return 0 < i;
    case AnodyneClass::Kan: return true;
  }
  return false;
}

const char* to_string(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::InnerAnodyne: return "inner-anodyne";
    case ClassifierKind::NotInnerAnodyne: return "not-inner-anodyne";
    case ClassifierKind::Unknown: return "unknown";
  }
  return "?";
}

std::string serialize_certificate(const Certificate& c) {
  std::string out = std::string("certificate ") + to_string(c.cls) + "\n";
  for (const auto& s : c.steps)
    out += "step " + std::to_string(s.n) + " " + std::to_string(s.i) + " " + s.top + " " + s.face + "\n";
  return out;
}

Certificate parse_certificate(const std::string& text) {
  Certificate c;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string kw;
    if (!(words >> kw)) continue;
    if (kw == "certificate") {
      std::string cls;
      if (header || !(words >> cls)) throw ParseError(number, "malformed certificate header");
      auto parsed = parse_anodyne_class(cls);
      if (!parsed) throw ParseError(number, "unknown class '" + cls + "'");
      c.cls = *parsed;
      header = true;
    } else if (kw == "step") {
      if (!header) throw ParseError(number, "step before the certificate header");
      CertificateStep s;
      long n = -1, i = -1;
      if (!(words >> n >> i >> s.top >> s.face) || n < 1 || i < 0)
        throw ParseError(number, "expected 'step <n> <i> <top> <face>'");
      std::string extra;
      if (words >> extra) throw ParseError(number, "unexpected token '" + extra + "'");
      s.n = unsigned(n);
      s.i = unsigned(i);
      c.steps.push_back(std::move(s));
    } else {
      throw ParseError(number, "unknown keyword '" + kw + "'");
    }
  }
  if (!header) throw ParseError(number, "missing certificate header");
  return c;
}

bool verify_certificate(const Certificate& c, const MonoInclusion& i) {
  const SimplicialSet& b = i.target();
  std::set<CellId> present;
  for (auto id : b.cell_ids())
    if (i.in_image(id)) present.insert(id);
  for (std::size_t k = 0; k < c.steps.size(); ++k) {
    const auto& s = c.steps[k];
    if (!horn_allowed(c.cls, s.n, s.i)) return false;
    auto top = b.find(s.top), face = b.find(s.face);
    if (!top || !face || top->dim != s.n || face->dim + 1 != s.n) return false;
    if (present.count(*top) || present.count(*face)) return false;
    if (b.cell_face(*top, s.i) != Simplex(*face)) return false;
    for (unsigned j = 0; j <= s.n; ++j) {
      if (j == s.i) continue;
      if (!present.count(b.cell_face(*top, j).base))
        throw Error("step " + std::to_string(k + 1) + ": face d" + std::to_string(j) + " of '" + s.top +
                    "' is not present, so the horn is not in the complex");
    }
    present.insert(*top);
    present.insert(*face);
  }
  return present.size() == b.total_cells();
}

CertificateSearch search_certificate(const MonoInclusion& i, AnodyneClass cls, std::uint64_t node_budget) {
  const SimplicialSet& b = i.target();
  std::map<CellId, int> slot;
  std::vector<CellId> missing;
  for (auto id : b.cell_ids())
    if (!i.in_image(id)) {
      slot[id] = int(missing.size());
      missing.push_back(id);
    }
  struct Move {
    int top, face;
    unsigned i;
    std::vector<int> needs;  // slots of the other faces that are not in A
  };
  std::vector<Move> moves;
  for (int t = 0; t < int(missing.size()); ++t) {
    CellId top = missing[std::size_t(t)];
    for (unsigned k = 0; k <= top.dim && top.dim > 0; ++k) {
      if (!horn_allowed(cls, top.dim, k)) continue;
      const Simplex& f = b.cell_face(top, k);
      if (!f.nondegenerate() || !slot.count(f.base)) continue;
      Move m{t, slot.at(f.base), k, {}};
      bool ok = true;
      for (unsigned j = 0; j <= top.dim; ++j) {
        if (j == k) continue;
        CellId g = b.cell_face(top, j).base;
        if (g == f.base) ok = false;
        if (auto it = slot.find(g); it != slot.end()) m.needs.push_back(it->second);
      }
      if (ok) moves.push_back(std::move(m));
    }
  }
  CertificateSearch out;
  std::vector<bool> have(missing.size(), false);
  std::set<std::vector<bool>> dead;
  std::vector<const Move*> path;
  std::size_t filled = 0;
  bool budget = false;
  std::function<bool()> dfs = [&]() -> bool {
    if (filled == missing.size()) return true;
    if (++out.nodes > node_budget) {
      budget = true;
      return false;
    }
    if (dead.count(have)) return false;
    for (const auto& m : moves) {
      if (have[std::size_t(m.top)] || have[std::size_t(m.face)]) continue;
      bool ready = true;
      for (int n : m.needs) ready = ready && have[std::size_t(n)];
      if (!ready) continue;
      have[std::size_t(m.top)] = have[std::size_t(m.face)] = true;
      filled += 2;
      path.push_back(&m);
      if (dfs()) return true;
      path.pop_back();
      filled -= 2;
      have[std::size_t(m.top)] = have[std::size_t(m.face)] = false;
      if (budget) return false;
    }
    dead.insert(have);
    return false;
  };
  if (dfs()) {
    out.outcome = Outcome::Found;
    Certificate c;
    c.cls = cls;
    for (const Move* m : path)
      c.steps.push_back(CertificateStep{missing[std::size_t(m->top)].dim, m->i, b.name(missing[std::size_t(m->top)]),
                                        b.name(missing[std::size_t(m->face)])});
    out.certificate = std::move(c);
  } else {
    out.outcome = budget ? Outcome::Budget : Outcome::None;
  }
  return out;
}

Certificate certificate_of_stage(const std::vector<HornAttachment>& attachments, const SimplicialSet& stage,
                                 AnodyneClass c) {
  Certificate cert;
  cert.cls = c;
  for (const auto& a : attachments) cert.steps.push_back({a.n, a.i, stage.name(a.top), stage.name(a.face)});
  return cert;
}

namespace {

Word image_word(const Word& w, const SimplicialMap& f) {
  Word out;
  for (auto e : w) {
    const Simplex& s = f.image(CellId{1, e});
    if (s.nondegenerate()) out.push_back(s.base.index);
  }
  return out;
}

}  // namespace

ClassifierVerdict theoremC_classify(const MonoInclusion& i, std::uint64_t node_budget, int word_budget) {
  ClassifierVerdict v;
  if (!i.map().bijective_on_vertices()) {
    v.kind = ClassifierKind::NotInnerAnodyne;
    v.reason = "not-vertex-bijective";
    return v;
  }
  CertificateSearch cs = search_certificate(i, AnodyneClass::Inner, node_budget);
  v.cellular = cs.outcome;
  if (cs.outcome == Outcome::Found) {
    v.kind = ClassifierKind::InnerAnodyne;
    v.certificate = std::move(cs.certificate);
    return v;
  }
  v.diagnostics.push_back(cs.outcome == Outcome::None ? "no cellular inner certificate exists (search exhausted)"
                                                      : "cellular certificate search ran out of budget");
  HomotopyCategory ha(i.source_ptr(), word_budget);
  HomotopyCategory hb(i.target_ptr(), word_budget);
  const SimplicialSet& a = i.source();
  const SimplicialSet& b = i.target();
  bool truncated = false;
  for (std::uint32_t x = 0; x < a.count(0); ++x)
    for (std::uint32_t y = 0; y < a.count(0); ++y) {
      HomSet sa = ha.hom(x, y);
      HomSet sb = hb.hom(i.map().on_vertex(x), i.map().on_vertex(y));
      if (sa.status != HomStatus::Exact || sb.status != HomStatus::Exact) {
        truncated = true;
        continue;
      }
      std::set<Word> image;
      for (const auto& w : sa.morphisms) image.insert(hb.reduce(image_word(w, i.map())));
      std::set<Word> target(sb.morphisms.begin(), sb.morphisms.end());
      if (image.size() != sa.morphisms.size() || image != target) {
        v.kind = ClassifierKind::NotInnerAnodyne;
        v.reason = "equivalence-refuted";
        v.diagnostics.push_back("h(A)(" + a.name(CellId{0, x}) + ", " + a.name(CellId{0, y}) + ") has " +
                                std::to_string(sa.morphisms.size()) + " morphisms, h(B)(" +
                                b.name(CellId{0, i.map().on_vertex(x)}) + ", " +
                                b.name(CellId{0, i.map().on_vertex(y)}) + ") has " +
                                std::to_string(sb.morphisms.size()) + ", and the induced map is not a bijection");
        return v;
      }
    }
  if (truncated) v.diagnostics.push_back("some hom-sets of the homotopy categories were truncated");
  v.diagnostics.push_back("homotopy categories agree on every exact hom-set");
  return v;
}

TwoOutOfThreeReport check_two_out_of_three(const MonoInclusion& u, const MonoInclusion& v,
                                           std::uint64_t node_budget, int word_budget) {
  if (!same_complex(u.target(), v.source())) throw Error("u and v are not composable");
  TwoOutOfThreeReport r;
  r.u = theoremC_classify(u, node_budget, word_budget);
  r.v = theoremC_classify(v, node_budget, word_budget);
  MonoInclusion vu(SimplicialMap::compose(SimplicialMap(u.target_ptr(), v.target_ptr(), v.map().images()), u.map()));
  r.vu = theoremC_classify(vu, node_budget, word_budget);
  int yes = 0, no = 0;
  for (const auto* c : {&r.u, &r.v, &r.vu}) {
    yes += c->kind == ClassifierKind::InnerAnodyne;
    no += c->kind == ClassifierKind::NotInnerAnodyne;
  }
  r.alarm = yes == 2 && no == 1;
  r.note = r.alarm ? "two maps are inner anodyne but the third was refuted" : "consistent";
  return r;
}

}  // namespace sset
