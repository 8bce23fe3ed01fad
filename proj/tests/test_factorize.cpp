#include <doctest.h>

#include <set>

#include "sset/catalog.hpp"
#include "sset/factorize.hpp"

using namespace sset;

namespace {

// Inclusion of complexes whose cells are matched by name.
SimplicialMap by_names(const SSetPtr& a, const SSetPtr& b) {
  SimplicialMap::Images im(a->dim() + 1);
  for (auto c : a->cell_ids()) im[c.dim].push_back(Simplex(*b->find(a->name(c))));
  return SimplicialMap(a, b, std::move(im));
}

HornSelector accept_all() {
  return [](unsigned, unsigned, const SimplicialMap&, const MonoInclusion&, SimplexIndex&) { return true; };
}

}  // namespace

TEST_CASE("soa_stage counts") {
  auto horn = horn_inclusion(2, 1).source_ptr();
  auto st = soa_stage(horn, 2, accept_all(), "h");
  CHECK(st.attachments.size() == 8);
  CHECK(st.object->total_cells() == horn->total_cells() + 16);
  CHECK(validate(*st.object).empty());

  auto pt = point();
  auto sp = soa_stage(pt, 2, accept_all(), "h");
  CHECK(sp.attachments.size() == 1);
  CHECK(sp.object->total_cells() == 3);

  auto none = soa_stage(horn, 3, [](unsigned, unsigned, const SimplicialMap&, const MonoInclusion&, SimplexIndex&) {
    return false;
  }, "h");
  CHECK(none.attachments.empty());
  CHECK(*none.object == *horn);

  // oracle: attaching maps from Λ^2_1 are composable edge pairs, degenerate edges included
  for (auto x : {standard_simplex(2), weak_inverse_complex(), spine_pushout().object}) {
    std::size_t pairs = 0;
    for (const auto& a : x->simplices(1))
      for (const auto& b : x->simplices(1)) pairs += x->vertex(a, 1) == x->vertex(b, 0);
    CHECK(soa_stage(x, 2, accept_all(), "h").attachments.size() == pairs);
  }
}

TEST_CASE("is_prefibrant examples") {
  auto horn = horn_inclusion(2, 1).source_ptr();
  auto r = is_prefibrant(horn, 3);
  CHECK(r.value == Tri::No);
  REQUIRE(r.lambda21.witness);
  CHECK(solve_lift(*r.lambda21.witness).outcome == Outcome::None);

  CHECK(is_prefibrant(standard_simplex(2), 3).value == Tri::Yes);
  CHECK(is_prefibrant(standard_simplex(3), 4).value == Tri::Yes);
  CHECK(is_prefibrant(make_generator(GeneratorKind::JTrunc, 3), 3).value == Tri::Yes);
  // the spine pushout fails a non-constant Λ^3_1 horn, which pre-fibrancy ignores
  auto sp = is_prefibrant(spine_pushout().object, 3);
  CHECK(sp.lambda21.kind == VerdictKind::Yes);
}

TEST_CASE("prefibrantize") {
  auto horn = horn_inclusion(2, 1).source_ptr();
  auto before = is_prefibrant(horn, 2);
  REQUIRE(before.lambda21.witness);
  auto trace = prefibrantize(horn, {1, 3});
  REQUIRE(trace.stages.size() == 2);
  CHECK(trace.maps[0].map().violations().empty());
  // the original witness horn is filled in S(1)
  const auto& w = *before.lambda21.witness;
  SimplicialMap moved = SimplicialMap::compose(trace.maps[0].map(), w.u);
  CHECK(extend_along(moved, w.i).outcome == Outcome::Found);

  auto pt = prefibrantize(point(), {2, 3});
  REQUIRE(pt.stages.size() == 3);
  CHECK(pt.stages[1]->total_cells() > 1);
  CHECK(pt.stages[2]->total_cells() > pt.stages[1]->total_cells());

  // a non-constant Λ^3_1 horn stays unfilled
  auto h31 = horn_inclusion(3, 1);
  auto t = prefibrantize(h31.source_ptr(), {1, 3});
  SimplicialMap id_into = t.maps[0].map();
  CHECK(extend_along(id_into, h31).outcome == Outcome::None);
}

TEST_CASE("prefibrantize with only unfilled horns reaches pre-fibrant complexes") {
  auto b2 = boundary_inclusion(2).source_ptr();
  PrefibrantizeOptions opt;
  opt.stages = 4;
  opt.only_unfilled = true;
  auto trace = prefibrantize(b2, opt);
  CHECK(is_prefibrant(trace.stages.back(), 3).value == Tri::Yes);
}

TEST_CASE("saturate_prefibrant on Delta^2") {
  auto d2 = standard_simplex(2);
  auto sat = saturate_prefibrant(d2, 3);
  CHECK(sat.p2_holds);
  CHECK(sat.hom_levels_equal);
  CHECK(!sat.attachments.empty());
  CHECK(validate(*sat.object).empty());
  for (unsigned k = 0; k <= 2; ++k) CHECK(sat.object->count(k) >= d2->count(k));
  auto h = hom_left(sat.object, 0, 2, 0);
  CHECK(h.space->count(0) == 1);
  for (const auto& a : sat.attachments) {
    CHECK_FALSE(is_constant(horn_d0(a.map, a.n)));
    CHECK(sat.object->cell_face(a.top, a.i) == Simplex(a.face));
  }
  CHECK_THROWS_AS(saturate_prefibrant(horn_inclusion(2, 1).source_ptr(), 3), Error);
}

TEST_CASE("saturation with the horn-d0 selector alone creates constant-d0 faces") {
  auto sat = saturate_prefibrant(standard_simplex(2), 3, kDefaultNodeBudget, true);
  CHECK_FALSE(sat.p2_holds);
  CHECK_FALSE(sat.hom_levels_equal);
}

TEST_CASE("saturation without eligible horns adds nothing") {
  // two disjoint vertices: every horn is constant
  auto two = coproduct(point(), point());
  auto sat = saturate_prefibrant(two, 4);
  CHECK(sat.attachments.empty());
  CHECK(*sat.object == *two);
}

TEST_CASE("descent over the inner 2-horn") {
  auto h = horn_inclusion(2, 1);
  auto horn = h.source_ptr();
  auto d = descend_over_triangle(SimplicialMap::identity(horn), 1);
  REQUIRE(d.stages.size() == 2);
  CHECK(d.attached[0] == 1);
  // cross-check with the fiber product Λ^2_1 x_{Δ^2} C(1)
  FiberProduct fp(h.map(), d.over.back());
  CHECK(fp.object()->total_cells() == horn->total_cells());

  // two edges with distinct middle vertices: nothing composes
  auto e1 = standard_subcomplex(2, {{0, 1}});
  auto e2 = standard_subcomplex(2, {{1, 2}});
  auto x = coproduct(e1.source_ptr(), e2.source_ptr());
  SimplicialMap::Images im(2);
  for (auto c : x->cell_ids()) {
    std::string name = x->name(c);
    name = name.substr(0, name.find('\''));
    im[c.dim].push_back(Simplex(*horn->find(name)));
  }
  auto dx = descend_over_triangle(SimplicialMap(x, horn, im), 2);
  CHECK(dx.stages.size() == 3);

  auto empty = empty_complex();
  auto de = descend_over_triangle(SimplicialMap(empty, horn, {}), 2);
  for (const auto& q : de.over) CHECK(cells_over_inner_horn(q).empty());
}

TEST_CASE("mapping path space") {
  auto pt = point();
  auto d1 = standard_simplex(1);
  auto id = mapping_path_space(SimplicialMap::identity(pt), 2);
  CHECK(id.factorization_holds);
  CHECK(find_isomorphism(id.q->object(), pt).has_value());

  auto at0 = mapping_path_space(classifying_map(d1, SimplicialSet::constant(0, 0)), 0);
  CHECK(at0.factorization_holds);
  CHECK(at0.q->object()->count(0) == 1);

  auto s = weak_inverse_complex();
  auto incl = classifying_map(s, Simplex(CellId{0, 0}));
  auto ps = mapping_path_space(incl, 1);
  CHECK(ps.factorization_holds);
  // the first projection has i as a section
  auto back = SimplicialMap::compose(ps.q->projection1(), ps.i);
  for (auto c : ps.i.source().cell_ids()) CHECK(back.image(c) == Simplex(c));
}

TEST_CASE("descent extension search") {
  auto h = horn_inclusion(2, 1);
  auto found = search_descent_extension(SimplicialMap::identity(h.source_ptr()), h, 2);
  REQUIRE(found.outcome == Outcome::Found);
  CHECK(find_isomorphism(found.y, h.target_ptr()).has_value());

  auto h31 = horn_inclusion(3, 1);
  auto x = standard_subcomplex(3, {{0, 2}, {2, 3}}).source_ptr();
  auto p = by_names(x, h31.source_ptr());
  auto none = search_descent_extension(p, h31, 3, 6);
  CHECK(none.outcome == Outcome::None);
  CHECK(none.cell_bound == 6);

  auto tiny = search_descent_extension(p, h31, 3, 6, 0);
  CHECK(tiny.outcome == Outcome::Budget);
}
