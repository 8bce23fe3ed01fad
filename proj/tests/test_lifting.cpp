#include <doctest.h>

#include "sset/catalog.hpp"
#include "sset/constructions.hpp"
#include "sset/lifting.hpp"

using namespace sset;

namespace {

SimplicialMap inclusion_map(const MonoInclusion& i) { return i.map(); }

// Oracle for maps out of a horn into the nerve of a poset: count monotone
// vertex sequences by brute force.
std::size_t count_monotone(unsigned length, unsigned values) {
  std::size_t total = 0;
  std::vector<unsigned> v(length, 0);
  while (true) {
    bool ok = true;
    for (unsigned k = 0; k + 1 < length; ++k) ok = ok && v[k] <= v[k + 1];
    total += ok;
    unsigned k = 0;
    while (k < length && ++v[k] == values) v[k++] = 0;
    if (k == length) break;
  }
  return total;
}

}  // namespace

TEST_CASE("map enumeration agrees with monotone-sequence counts") {
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned m = 0; m <= 3; ++m) {
      Outcome o;
      auto maps = all_maps(standard_simplex(n), standard_simplex(m), &o);
      CHECK(o == Outcome::None);
      CHECK(maps.size() == count_monotone(n + 1, m + 1));
    }
  // maps from a spine are composable edge strings (degenerate ones included)
  auto maps = all_maps(spine_inclusion(2).source_ptr(), horn_inclusion(2, 1).source_ptr());
  CHECK(maps.size() == 8);
}

TEST_CASE("solve_lift: inner horn into Delta^2") {
  auto h = horn_inclusion(2, 1);
  auto r = extend_along(h.map(), h);
  REQUIRE(r.outcome == Outcome::Found);
  CHECK(*r.lift == SimplicialMap::identity(h.target_ptr()));
}

TEST_CASE("solve_lift: the spine pushout horn has no filler") {
  auto sp = spine_pushout();
  auto r = extend_along(sp.horn, horn_inclusion(3, 1));
  CHECK(r.outcome == Outcome::None);
}

TEST_CASE("solve_lift: boundary of Delta^1 into a point") {
  auto pt = point();
  auto b = boundary_inclusion(1);
  SimplicialMap u = SimplicialMap::to_point(b.source_ptr(), pt);
  auto r = extend_along(u, b);
  REQUIRE(r.outcome == Outcome::Found);
  CHECK(r.lift->image(CellId{1, 0}) == SimplicialSet::constant(0, 1));
}

TEST_CASE("solve_lift: budget is not reported as none") {
  auto sp = spine_pushout();
  auto r = extend_along(sp.horn, horn_inclusion(3, 1), 1);
  CHECK(r.outcome != Outcome::Found);
  auto big = extend_along(sp.horn, horn_inclusion(3, 1), 0);
  CHECK(big.outcome == Outcome::Budget);
}

TEST_CASE("extend_along examples") {
  auto spine = spine_inclusion(2);
  auto r = extend_along(spine.map(), spine);
  REQUIRE(r.outcome == Outcome::Found);
  CHECK(*r.lift == SimplicialMap::identity(spine.target_ptr()));

  auto h = horn_inclusion(2, 1);
  auto id = SimplicialMap::identity(h.source_ptr());
  CHECK(extend_along(id, h).outcome == Outcome::None);

  auto sp = spine_pushout();
  for (unsigned n = 2; n <= 4; ++n) {
    auto in = spine_inclusion(n);
    std::size_t count = 0;
    for (const auto& f : all_maps(in.source_ptr(), sp.object)) {
      ++count;
      CHECK(extend_along(f, in).outcome == Outcome::Found);
    }
    CHECK(count > 0);
  }
}

TEST_CASE("has_rlp examples") {
  auto d2 = standard_simplex(2);
  auto pt = point();
  NamedGenerator h21{"horn(2,1)", horn_inclusion(2, 1)};
  CHECK(has_rlp(SimplicialMap::to_point(d2, pt), {h21}, 2).kind == VerdictKind::Yes);
  auto horn = h21.inclusion.source_ptr();
  auto v = has_rlp(SimplicialMap::to_point(horn, pt), {h21}, 2);
  REQUIRE(v.kind == VerdictKind::No);
  CHECK(v.witness->problems().empty());
  CHECK(solve_lift(*v.witness).outcome == Outcome::None);

  auto sp = spine_pushout();
  auto w = has_rlp(SimplicialMap::to_point(sp.object, pt), generating_family(FibrationClass::Inner, 3), 3);
  REQUIRE(w.kind == VerdictKind::No);
  CHECK(w.generator == "horn(3,1)");
  CHECK(solve_lift(*w.witness).outcome == Outcome::None);
}

TEST_CASE("has_rlp of a union is the conjunction") {
  auto pt = point();
  auto targets = {standard_simplex(1), horn_inclusion(2, 1).source_ptr(), spine_pushout().object,
                  make_generator(GeneratorKind::JTrunc, 2)};
  for (const auto& x : targets) {
    auto p = SimplicialMap::to_point(x, pt);
    auto g1 = generating_family(FibrationClass::Left, 2);
    auto g2 = generating_family(FibrationClass::Right, 2);
    auto both = g1;
    both.insert(both.end(), g2.begin(), g2.end());
    bool no1 = has_rlp(p, g1, 2).kind == VerdictKind::No;
    bool no2 = has_rlp(p, g2, 2).kind == VerdictKind::No;
    CHECK((has_rlp(p, both, 2).kind == VerdictKind::No) == (no1 || no2));
  }
}

TEST_CASE("classify_map examples") {
  auto sq = square_in_simplex();
  auto rep = classify_map(sq.map(), 2);
  CHECK(rep.mono);
  CHECK(rep.vertex_bijective);

  auto d2 = standard_simplex(2);
  auto id = classify_map(SimplicialMap::identity(d2));
  CHECK(id.checked_dim == 3);
  for (auto c : kAllClasses) CHECK(id.verdicts[c].kind == VerdictKind::Yes);

  // Delta^1 -> point: an inner fibration but not a Kan fibration
  auto proj = classify_map(SimplicialMap::to_point(standard_simplex(1), point()));
  CHECK(proj.verdicts[FibrationClass::Inner].kind == VerdictKind::Yes);
  CHECK(proj.verdicts[FibrationClass::Left].kind == VerdictKind::No);
  CHECK(proj.verdicts[FibrationClass::Right].kind == VerdictKind::No);
  CHECK(proj.verdicts[FibrationClass::Kan].kind == VerdictKind::No);
  CHECK(proj.verdicts[FibrationClass::Kan].generator == "horn(2,0)");
  CHECK(proj.verdicts[FibrationClass::TrivialKan].kind == VerdictKind::No);
  CHECK(proj.verdicts[FibrationClass::TrivialKan].generator == "boundary(1)");
  for (auto c : kAllClasses)
    if (proj.verdicts[c].witness) CHECK(solve_lift(*proj.verdicts[c].witness).outcome == Outcome::None);
}

TEST_CASE("J truncations are Kan up to their dimension") {
  auto j = make_generator(GeneratorKind::JTrunc, 3);
  auto rep = classify_map(SimplicialMap::to_point(j, point()), 3, kDefaultNodeBudget, {FibrationClass::Kan});
  CHECK(rep.verdicts[FibrationClass::Kan].kind == VerdictKind::Yes);
}

TEST_CASE("lift is forced when i is an isomorphism") {
  auto d2 = standard_simplex(2);
  auto all = standard_subcomplex(2, {{0, 1, 2}});
  auto pt = point();
  for (const auto& u : all_maps(all.source_ptr(), d2)) {
    LiftingProblem prob{all, SimplicialMap::to_point(d2, pt), u, SimplicialMap::to_point(all.target_ptr(), pt)};
    auto r = solve_lift(prob);
    REQUIRE(r.outcome == Outcome::Found);
    for (auto c : all.source().cell_ids()) CHECK(r.lift->image(all.map().image(c).base) == u.image(c));
  }
  (void)inclusion_map;
}

TEST_CASE("solve_lift is deterministic") {
  auto d3 = standard_simplex(3);
  auto h = horn_inclusion(3, 2);
  auto pt = point();
  for (const auto& u : all_maps(h.source_ptr(), d3)) {
    LiftingProblem prob{h, SimplicialMap::to_point(d3, pt), u, SimplicialMap::to_point(h.target_ptr(), pt)};
    auto a = solve_lift(prob), b = solve_lift(prob);
    REQUIRE(a.outcome == Outcome::Found);
    CHECK(*a.lift == *b.lift);
  }
}

TEST_CASE("find_isomorphism rejects non-isomorphic complexes") {
  CHECK_FALSE(find_isomorphism(horn_inclusion(2, 0).source_ptr(), horn_inclusion(2, 1).source_ptr()));
  CHECK_FALSE(find_isomorphism(horn_inclusion(2, 0).source_ptr(), horn_inclusion(2, 2).source_ptr()));
  CHECK(find_isomorphism(horn_inclusion(2, 1).source_ptr(), spine_inclusion(2).source_ptr()));
}
