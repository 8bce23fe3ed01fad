#include <doctest.h>

#include <map>

#include "sset/catalog.hpp"
#include "sset/constructions.hpp"
#include "sset/homotopy.hpp"

using namespace sset;

namespace {

std::uint32_t vid(const SimplicialSet& x, const std::string& name) { return x.find(name)->index; }

// Oracle for components: flood fill over edge vertex pairs.
std::size_t flood_components(const SimplicialSet& x) {
  std::vector<int> label(x.count(0), -1);
  int next = 0;
  for (std::uint32_t s = 0; s < x.count(0); ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    for (bool grew = true; grew;) {
      grew = false;
      for (const auto& e : x.simplices(1)) {
        auto v = x.vertices(e);
        if ((label[v[0]] == next) != (label[v[1]] == next)) {
          label[v[0]] = label[v[1]] = next;
          grew = true;
        }
      }
    }
    ++next;
  }
  return std::size_t(next);
}

}  // namespace

TEST_CASE("h of a standard simplex is the poset [n]") {
  for (unsigned n = 0; n <= 3; ++n) {
    HomotopyCategory h(standard_simplex(n));
    CHECK(h.confluent());
    for (std::uint32_t a = 0; a <= n; ++a)
      for (std::uint32_t b = 0; b <= n; ++b) {
        auto hs = h.hom(a, b);
        CHECK(hs.status == HomStatus::Exact);
        CHECK(hs.morphisms.size() == (a <= b ? 1u : 0u));
      }
  }
}

TEST_CASE("h of horns and boundaries") {
  auto inner = horn_inclusion(2, 1).source_ptr();
  HomotopyCategory h(inner);
  auto hs = h.hom(0, 2);
  CHECK(hs.status == HomStatus::Exact);
  REQUIRE(hs.morphisms.size() == 1);
  CHECK(h.text(hs.morphisms[0], 0) == "01;12");

  auto outer = horn_inclusion(2, 0).source_ptr();
  CHECK(HomotopyCategory(outer).hom(1, 2).morphisms.empty());

  // no triangle: 02 and 01;12 stay distinct
  auto b2 = boundary_inclusion(2).source_ptr();
  auto free = HomotopyCategory(b2).hom(0, 2);
  CHECK(free.status == HomStatus::Exact);
  CHECK(free.morphisms.size() == 2);
}

TEST_CASE("h of the weak-inverse complex is the free isomorphism") {
  auto s = weak_inverse_complex();
  HomotopyCategory h(s);
  CHECK(h.confluent());
  for (std::uint32_t a = 0; a < 2; ++a)
    for (std::uint32_t b = 0; b < 2; ++b) {
      auto hs = h.hom(a, b);
      CHECK(hs.status == HomStatus::Exact);
      CHECK(hs.morphisms.size() == 1);
    }
  auto j = make_generator(GeneratorKind::JTrunc, 2);
  HomotopyCategory hj(j);
  for (std::uint32_t a = 0; a < 2; ++a)
    for (std::uint32_t b = 0; b < 2; ++b) CHECK(hj.hom(a, b).morphisms.size() == 1);
}

TEST_CASE("rewriting is sound on every triangle relation") {
  for (auto x : {standard_simplex(3), weak_inverse_complex(), spine_pushout().object,
                 make_generator(GeneratorKind::JTrunc, 3), product(standard_simplex(1), standard_simplex(1))}) {
    HomotopyCategory h(x);
    for (const auto& [l, r] : h.relations()) CHECK(h.equal(l, r));
    for (const auto& [l, r] : h.rules()) {
      CHECK(h.composable(l));
      CHECK(h.composable(r));
      CHECK(h.reduce(r) == r);
    }
  }
}

TEST_CASE("word budget truncates instead of lying") {
  // a loop: one vertex, one nondegenerate edge
  SimplicialSet::Builder b;
  auto v = b.add_vertex("v");
  b.add_cell("e", {Simplex(v), Simplex(v)});
  auto loop = b.build();
  HomotopyCategory h(loop, 3);
  auto hs = h.hom(0, 0);
  CHECK(hs.status == HomStatus::BudgetTruncated);
  CHECK(hs.morphisms.size() == 4);  // id, e, ee, eee
  auto ev = is_equivalence_edge(h, Simplex(CellId{1, 0}));
  CHECK(ev.value == Tri::Unknown);
}

TEST_CASE("equivalence edges") {
  auto d1 = standard_simplex(1);
  HomotopyCategory h1(d1);
  CHECK(is_equivalence_edge(h1, Simplex(*d1->find("01"))).value == Tri::No);
  CHECK(is_equivalence_edge(h1, SimplicialSet::constant(0, 1)).value == Tri::Yes);

  auto s = weak_inverse_complex();
  HomotopyCategory h(s);
  auto f = Simplex(*s->find("f"));
  auto ev = is_equivalence_edge(h, f);
  REQUIRE(ev.value == Tri::Yes);
  CHECK(h.text(ev.inverse, 0) == "g");
  CHECK(h.reduce({f.base.index, ev.inverse[0]}).empty());
}

TEST_CASE("pi0 agrees with a flood fill") {
  auto two = coproduct(point(), point());
  for (auto x : {standard_simplex(2), two, weak_inverse_complex(), boundary_inclusion(1).source_ptr(),
                 hom_left(standard_simplex(3), 0, 3, 3).space, coproduct(standard_simplex(1), two)}) {
    CHECK(pi0(*x).size() == flood_components(*x));
  }
  CHECK(pi0(*two).size() == 2);
}

TEST_CASE("isofibrations") {
  auto s = weak_inverse_complex();
  auto pt = point();
  auto at_x = classifying_map(s, Simplex(CellId{0, vid(*s, "x")}));
  auto rep = check_isofibration(at_x);
  REQUIRE(rep.value == Tri::No);
  REQUIRE(rep.witness);
  CHECK(rep.witness->problems().empty());
  CHECK(solve_lift(*rep.witness).outcome == Outcome::None);

  CHECK(check_isofibration(SimplicialMap::identity(s)).value == Tri::Yes);
  CHECK(check_isofibration(SimplicialMap::to_point(standard_simplex(1), pt)).value == Tri::Yes);
  CHECK(check_isofibration(SimplicialMap::to_point(s, pt)).value == Tri::Yes);
}

TEST_CASE("categorical fibrations") {
  auto s = weak_inverse_complex();
  auto at_x = classifying_map(s, Simplex(CellId{0, vid(*s, "x")}));
  auto bad = check_categorical_fibration(at_x);
  CHECK(bad.value == Tri::No);
  CHECK(bad.inner.kind == VerdictKind::Yes);
  auto good = check_categorical_fibration(SimplicialMap::to_point(standard_simplex(2), point()));
  CHECK(good.value == Tri::Yes);
  CHECK(good.bounded);
  auto not_inner = check_categorical_fibration(SimplicialMap::to_point(spine_pushout().object, point()), 3);
  CHECK(not_inner.value == Tri::No);
  CHECK(not_inner.inner.kind == VerdictKind::No);
}

TEST_CASE("collapses") {
  CHECK(collapses_to_point(*point()));
  CHECK(collapses_to_point(*standard_simplex(3)));
  CHECK(collapses_to_point(*horn_inclusion(3, 1).source_ptr()));
  CHECK(collapses_to_point(*product(standard_simplex(1), standard_simplex(2))));
  CHECK_FALSE(collapses_to_point(*boundary_inclusion(2).source_ptr()));
  CHECK_FALSE(collapses_to_point(*coproduct(point(), point())));
}

TEST_CASE("Dwyer-Kan checks") {
  auto d1 = standard_simplex(1);
  auto s = weak_inverse_complex();
  auto end0 = classifying_map(d1, SimplicialSet::constant(0, 0));
  auto r0 = dwyer_kan_check(end0);
  CHECK(r0.essentially_surjective == Tri::No);

  auto at_x = classifying_map(s, Simplex(CellId{0, vid(*s, "x")}));
  CHECK(dwyer_kan_check(at_x).essentially_surjective == Tri::Yes);

  for (auto x : {d1, standard_simplex(2), s}) {
    auto r = dwyer_kan_check(SimplicialMap::identity(x));
    CHECK(r.essentially_surjective == Tri::Yes);
    CHECK(r.fully_faithful == Tri::Yes);
  }

  // the two endpoints of Delta^1 into a point: pi0 of hom(0,1) is empty vs a point
  auto ends = boundary_inclusion(1);
  auto r = dwyer_kan_check(SimplicialMap::to_point(ends.source_ptr(), point()));
  CHECK(r.fully_faithful == Tri::No);
}
