// Seeded property suites over random and hand-built complexes.

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "random_complexes.hpp"
#include "sset/catalog.hpp"
#include "sset/certify.hpp"
#include "sset/factorize.hpp"
#include "sset/homotopy.hpp"
#include "sset/io.hpp"
#include "sset/lifting.hpp"

using namespace sset;
using namespace sset::testing;

namespace {

constexpr std::uint32_t kSeed = 7321;

/// The map Δ^n -> Δ^m sending vertex k to theta[k].
SimplicialMap nerve_map(unsigned n, unsigned m, const Monotone& theta) {
  auto src = standard_simplex(n), tgt = standard_simplex(m);
  SimplicialMap::Images im(n + 1);
  for (auto c : src->cell_ids()) {
    Monotone seq;
    for (auto v : src->vertices(Simplex(c))) seq.push_back(theta[v]);
    im[c.dim].push_back(*standard_simplex_at(*tgt, m, seq));
  }
  return SimplicialMap(src, tgt, im);
}

Word image_word(const Word& w, const SimplicialMap& f) {
  Word out;
  for (auto e : w) {
    const Simplex& s = f.image(CellId{1, e});
    if (s.nondegenerate()) out.push_back(s.base.index);
  }
  return out;
}

/// A composable path of up to max_len generators starting at a random vertex.
Word random_path(const HomotopyCategory& h, unsigned max_len, std::mt19937& rng) {
  const SimplicialSet& s = h.complex();
  Word w;
  std::uint32_t at = std::uint32_t(rng() % s.count(0));
  unsigned len = unsigned(rng() % (max_len + 1));
  for (unsigned k = 0; k < len; ++k) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t e = 0; e < s.count(1); ++e)
      if (h.source(e) == at) out.push_back(e);
    if (out.empty()) break;
    std::uint32_t e = out[rng() % out.size()];
    w.push_back(e);
    at = h.target(e);
  }
  return w;
}

/// The same complex with fresh cell names and shuffled cell order within
/// each dimension.
SSetPtr relabel(const SimplicialSet& x, std::mt19937& rng, std::map<std::string, std::string>& renamed) {
  std::vector<std::vector<CellId>> by_dim(std::size_t(x.dim() + 1));
  for (auto c : x.cell_ids()) by_dim[c.dim].push_back(c);
  std::size_t k = 0;
  std::map<CellId, CellId> to_new;
  SimplicialSet::Builder b;
  for (auto& cells : by_dim) {
    std::shuffle(cells.begin(), cells.end(), rng);
    for (auto c : cells) {
      std::string name = "z" + std::to_string(k++);
      renamed[x.name(c)] = name;
      if (c.dim == 0) {
        to_new[c] = b.add_vertex(name);
        continue;
      }
      std::vector<Simplex> faces;
      for (unsigned i = 0; i <= c.dim; ++i) {
        Simplex f = x.cell_face(c, i);
        f.base = to_new.at(f.base);
        faces.push_back(f);
      }
      to_new[c] = b.add_cell(name, faces);
    }
  }
  return b.build();
}

/// Vertices a, b, c, d; edges f, g, k, gf, kg, p, q; triangles
/// (g, gf, f), (k, kg, g), (kg, p, f), (k, q, gf).
SSetPtr two_composites() {
  return parse_complex(
      "dim 2\n"
      "cell a 0 faces:\ncell b 0 faces:\ncell c 0 faces:\ncell d 0 faces:\n"
      "cell f 1 faces: b a\ncell g 1 faces: c b\ncell k 1 faces: d c\n"
      "cell gf 1 faces: c a\ncell kg 1 faces: d b\ncell p 1 faces: d a\ncell q 1 faces: d a\n"
      "cell t0 2 faces: g gf f\ncell t1 2 faces: k kg g\n"
      "cell t2 2 faces: kg p f\ncell t3 2 faces: k q gf\n");
}

std::vector<SSetPtr> sample_complexes(std::mt19937& rng) {
  std::vector<SSetPtr> out = {standard_simplex(3), weak_inverse_complex(), make_generator(GeneratorKind::JTrunc, 3),
                              product(horn_inclusion(2, 1).source_ptr(), standard_simplex(1)),
                              spine_pushout().object, two_composites()};
  for (int k = 0; k < 4; ++k) out.push_back(random_quiver(4, 6, rng));
  for (int k = 0; k < 4; ++k)
    out.push_back(standard_subcomplex(4, random_family(4, 16, 0.5, rng)).source_ptr());
  return out;
}

}  // namespace

TEST_CASE("simplicial identities and normal forms on sample complexes") {
  std::mt19937 rng(kSeed);
  for (const auto& x : sample_complexes(rng)) {
    CHECK(validate(*x).empty());
    for (unsigned n = 0; n <= 3; ++n)
      for (const Simplex& s : x->simplices(n)) {
        CHECK(Simplex::from_word(s.base, s.word()) == s);
        CHECK(x->parse_token(x->token(s)) == s);
        Monotone id(n + 1);
        for (unsigned k = 0; k <= n; ++k) id[k] = std::uint8_t(k);
        CHECK(x->apply(s, id) == s);
        for (unsigned j = 0; j <= n; ++j) {
          CHECK(x->face(x->degeneracy(s, j), j) == s);
          CHECK(x->face(x->degeneracy(s, j), j + 1) == s);
          for (unsigned i = 0; i < j && n >= 2; ++i)
            CHECK(x->face(x->face(s, j), i) == x->face(x->face(s, i), j - 1));
          for (unsigned i = 0; i <= j; ++i)
            CHECK(x->degeneracy(x->degeneracy(s, j), i) == x->degeneracy(x->degeneracy(s, i), j + 1));
        }
      }
  }
}

TEST_CASE("complexes and maps survive serialization") {
  std::mt19937 rng(kSeed + 1);
  for (const auto& x : sample_complexes(rng)) {
    auto y = parse_complex(serialize_complex(*x));
    CHECK(same_complex(*x, *y));
  }
  auto w = weak_inverse_complex();
  for (const auto& [n, i] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {3, 1}}) {
    auto h = horn_inclusion(n, i);
    for (const auto& f : all_maps(h.source_ptr(), w)) {
      auto g = parse_map(serialize_map(f, "a.sset", "b.sset"), f.source_ptr(), f.target_ptr());
      CHECK(g == f);
    }
  }
}

TEST_CASE("maps act compatibly on homotopy categories") {
  std::mt19937 rng(kSeed + 2);
  auto w = weak_inverse_complex();
  HomotopyCategory hw(w);
  REQUIRE(hw.confluent());
  auto self = all_maps(w, w);
  REQUIRE(!self.empty());
  int checked = 0;
  for (const auto& a : random_prefibrant(4, rng)) {
    HomotopyCategory ha(a);
    auto maps = all_maps(a, w);
    for (int trial = 0; trial < 6 && !maps.empty(); ++trial) {
      const auto& p = maps[rng() % maps.size()];
      const auto& q = self[rng() % self.size()];
      auto qp = SimplicialMap::compose(q, p);
      for (const auto& [l, r] : ha.relations()) CHECK(hw.equal(image_word(l, p), image_word(r, p)));
      for (int k = 0; k < 10; ++k) {
        Word path = random_path(ha, 4, rng);
        Word two_steps = hw.reduce(image_word(hw.reduce(image_word(path, p)), q));
        CHECK(two_steps == hw.reduce(image_word(path, qp)));
        CHECK(hw.reduce(image_word(ha.reduce(path), p)) == hw.reduce(image_word(path, p)));
        ++checked;
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("equivalence edges do not depend on cell names or order") {
  std::mt19937 rng(kSeed + 3);
  for (const auto& x : sample_complexes(rng)) {
    std::map<std::string, std::string> renamed;
    auto y = relabel(*x, rng, renamed);
    REQUIRE(find_isomorphism(x, y).has_value());
    HomotopyCategory hx(x), hy(y);
    for (std::uint32_t e = 0; e < x->count(1); ++e) {
      CellId edge{1, e};
      auto other = y->find(renamed.at(x->name(edge)));
      REQUIRE(other);
      CHECK(is_equivalence_edge(hx, Simplex(edge)).value == is_equivalence_edge(hy, Simplex(*other)).value);
    }
  }
}

TEST_CASE("hom-sets of a pullback along an inner fibration") {
  struct Case {
    SimplicialMap q, f;
    int max_dim;
  };
  auto pt = point();
  auto j2 = make_generator(GeneratorKind::JTrunc, 2);
  std::vector<Case> cases = {
      {nerve_map(2, 1, {0, 1, 1}), nerve_map(2, 1, {0, 0, 1}), 3},
      {nerve_map(2, 1, {0, 0, 1}), nerve_map(1, 1, {0, 1}), 3},
      {nerve_map(3, 2, {0, 1, 1, 2}), nerve_map(2, 2, {0, 1, 2}), 3},
      {SimplicialMap::to_point(j2, pt), SimplicialMap::to_point(standard_simplex(1), pt), 2},
  };
  for (const auto& c : cases) {
    REQUIRE(classify_map(c.q, c.max_dim, kDefaultNodeBudget, {FibrationClass::Inner})
                .verdicts.at(FibrationClass::Inner)
                .kind == VerdictKind::Yes);
    FiberProduct pb(c.q, c.f);
    auto p1 = pb.projection1(), p2 = pb.projection2();
    HomotopyCategory hp(pb.object()), hx(c.q.source_ptr()), ht(c.f.source_ptr()), hs(c.q.target_ptr());
    const SimplicialSet& obj = *pb.object();
    for (std::uint32_t a = 0; a < obj.count(0); ++a)
      for (std::uint32_t b = 0; b < obj.count(0); ++b) {
        HomSet mine = hp.hom(a, b);
        HomSet left = hx.hom(p1.on_vertex(a), p1.on_vertex(b));
        HomSet right = ht.hom(p2.on_vertex(a), p2.on_vertex(b));
        if (mine.status != HomStatus::Exact || left.status != HomStatus::Exact || right.status != HomStatus::Exact)
          continue;
        std::set<std::pair<Word, Word>> pairs;
        for (const auto& x : left.morphisms)
          for (const auto& y : right.morphisms)
            if (hs.reduce(image_word(x, c.q)) == hs.reduce(image_word(y, c.f))) pairs.insert({x, y});
        std::set<std::pair<Word, Word>> image;
        for (const auto& m : mine.morphisms)
          image.insert({hx.reduce(image_word(m, p1)), ht.reduce(image_word(m, p2))});
        CHECK(image.size() == mine.morphisms.size());
        CHECK(image == pairs);
      }
  }
}

TEST_CASE("pi0 of left mapping spaces matches h on simplices, the weak-inverse complex and a saturation") {
  std::vector<SSetPtr> inputs = {standard_simplex(0), standard_simplex(1), standard_simplex(2), standard_simplex(3),
                                 weak_inverse_complex(), saturate_prefibrant(standard_simplex(2), 3).object};
  for (const auto& s : inputs) {
    HomotopyCategory h(s);
    for (std::uint32_t a = 0; a < s->count(0); ++a)
      for (std::uint32_t b = 0; b < s->count(0); ++b) {
        HomSet hs = h.hom(a, b);
        REQUIRE(hs.status == HomStatus::Exact);
        CHECK(pi0(*hom_left(s, a, b, 1).space).size() == hs.morphisms.size());
      }
  }
}

TEST_CASE("a pre-fibrant complex whose left mapping space has more components than its hom-set") {
  auto s = two_composites();
  REQUIRE(is_prefibrant(s, 4).value == Tri::Yes);
  std::uint32_t a = s->find("a")->index, d = s->find("d")->index;
  HomotopyCategory h(s);
  HomSet hs = h.hom(a, d);
  REQUIRE(hs.status == HomStatus::Exact);
  CHECK(hs.morphisms.size() == 1);
  CHECK(h.equal(h.word_of(Simplex(*s->find("p"))), h.word_of(Simplex(*s->find("q")))));
  auto space = hom_left(s, a, d, 1).space;
  CHECK(space->count(0) == 2);
  CHECK(space->count(1) == 0);
  CHECK(pi0(*space).size() == 2);
}

TEST_CASE("found lifts reproduce the square; missing lifts survive brute force") {
  std::vector<SSetPtr> targets = {weak_inverse_complex(), make_generator(GeneratorKind::JTrunc, 2), two_composites()};
  int found = 0, none = 0;
  for (const auto& x : targets)
    for (const auto& [n, i] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {2, 0}, {3, 1}, {3, 2}}) {
      auto h = horn_inclusion(n, i);
      auto fillers = all_maps(h.target_ptr(), x);
      for (const auto& u : all_maps(h.source_ptr(), x)) {
        LiftResult r = extend_along(u, h);
        REQUIRE(r.outcome != Outcome::Budget);
        bool brute = std::any_of(fillers.begin(), fillers.end(),
                                 [&](const SimplicialMap& m) { return SimplicialMap::compose(m, h.map()) == u; });
        CHECK((r.outcome == Outcome::Found) == brute);
        if (r.outcome == Outcome::Found) {
          CHECK(SimplicialMap::compose(*r.lift, h.map()) == u);
          ++found;
        } else {
          ++none;
        }
      }
    }
  CHECK(found > 0);
  CHECK(none > 0);
}

TEST_CASE("prefibrantize fills every witness horn of the previous stage") {
  std::mt19937 rng(kSeed + 4);
  int witnesses = 0;
  for (int trial = 0; trial < 12; ++trial) {
    auto x = random_quiver(4, 5, rng);
    PrefibrantizeOptions opt;
    opt.stages = 3;
    opt.only_unfilled = true;
    SoaTrace t = prefibrantize(x, opt);
    if (t.outcome == Outcome::Budget) continue;
    for (std::size_t k = 0; k + 1 < t.stages.size(); ++k) {
      auto r = is_prefibrant(t.stages[k], 3);
      if (r.lambda21.kind != VerdictKind::No) continue;
      REQUIRE(r.lambda21.witness);
      const auto& w = *r.lambda21.witness;
      auto moved = SimplicialMap::compose(t.maps[k].map(), w.u);
      CHECK(extend_along(moved, w.i).outcome == Outcome::Found);
      ++witnesses;
    }
  }
  CHECK(witnesses > 0);
}

TEST_CASE("certificates are class-monotone and classification respects them") {
  std::mt19937 rng(kSeed + 5);
  std::vector<MonoInclusion> monos = {spine_inclusion(2), spine_inclusion(3), horn_inclusion(3, 1),
                                      horn_inclusion(3, 2), square_in_simplex()};
  for (int k = 0; k < 30; ++k) {
    unsigned n = 2 + unsigned(rng() % 2);
    auto large = random_family(n, 12, 0.7, rng);
    auto small = random_subfamily(large, 0.5, 0.7, rng);
    monos.push_back(standard_inclusion(n, small, large));
  }
  int certified = 0;
  for (const auto& i : monos) {
    auto search = search_certificate(i, AnodyneClass::Inner);
    REQUIRE(search.outcome != Outcome::Budget);
    ClassifierVerdict v = theoremC_classify(i);
    if (!i.map().bijective_on_vertices()) CHECK(v.kind != ClassifierKind::InnerAnodyne);
    if (search.outcome != Outcome::Found) continue;
    ++certified;
    CHECK(v.kind == ClassifierKind::InnerAnodyne);
    Certificate c = parse_certificate(serialize_certificate(*search.certificate));
    for (auto cls : {AnodyneClass::Inner, AnodyneClass::Left, AnodyneClass::Right, AnodyneClass::Kan}) {
      c.cls = cls;
      CHECK(verify_certificate(c, i));
    }
  }
  CHECK(certified >= 5);
}
