#include <doctest.h>

#include <random>

#include "sset/catalog.hpp"
#include "sset/certify.hpp"
#include "sset/io.hpp"

using namespace sset;

TEST_CASE("verify_certificate examples") {
  auto h = horn_inclusion(2, 1);
  Certificate one{AnodyneClass::Inner, {{2, 1, "012", "02"}}};
  CHECK(verify_certificate(one, h));
  // wrong codomain
  CHECK_FALSE(verify_certificate(one, horn_inclusion(2, 0)));
  CHECK_FALSE(verify_certificate(one, spine_inclusion(3)));
  // a horn outside the class
  Certificate outer{AnodyneClass::Inner, {{2, 0, "012", "12"}}};
  CHECK_FALSE(verify_certificate(outer, horn_inclusion(2, 0)));
  outer.cls = AnodyneClass::Left;
  CHECK(verify_certificate(outer, horn_inclusion(2, 0)));
  // horn not present yet: structural error
  Certificate early{AnodyneClass::Inner, {{3, 1, "0123", "023"}}};
  CHECK_THROWS_AS(verify_certificate(early, spine_inclusion(3)), Error);

  Certificate i3{AnodyneClass::Inner,
                 {{2, 1, "012", "02"}, {2, 1, "123", "13"}, {2, 1, "013", "03"}, {3, 1, "0123", "023"}}};
  CHECK(verify_certificate(i3, spine_inclusion(3)));
}

TEST_CASE("spine certificates") {
  for (unsigned n = 2; n <= 4; ++n) {
    auto in = spine_inclusion(n);
    auto r = search_certificate(in, AnodyneClass::Inner);
    REQUIRE(r.outcome == Outcome::Found);
    CHECK(verify_certificate(*r.certificate, in));
    std::size_t missing = in.target().total_cells() - in.source().total_cells();
    CHECK(r.certificate->steps.size() * 2 == missing);
    auto text = serialize_certificate(*r.certificate);
    CHECK(verify_certificate(parse_certificate(text), in));
    CHECK(serialize_certificate(parse_certificate(text)) == text);
    // class monotone
    for (auto c : {AnodyneClass::Left, AnodyneClass::Right, AnodyneClass::Kan}) {
      Certificate wider = *r.certificate;
      wider.cls = c;
      CHECK(verify_certificate(wider, in));
    }
  }
  CHECK(search_certificate(spine_inclusion(3), AnodyneClass::Inner).certificate->steps.size() == 4);
}

TEST_CASE("the square in Delta^3 is left and right anodyne but has no inner certificate") {
  auto sq = square_in_simplex();
  CHECK(sq.map().bijective_on_vertices());
  CHECK(search_certificate(sq, AnodyneClass::Inner).outcome == Outcome::None);
  for (auto c : {AnodyneClass::Left, AnodyneClass::Right}) {
    auto r = search_certificate(sq, c);
    REQUIRE(r.outcome == Outcome::Found);
    CHECK(verify_certificate(*r.certificate, sq));
  }
  auto v = theoremC_classify(sq);
  CHECK(v.kind == ClassifierKind::NotInnerAnodyne);
  CHECK(v.reason == "equivalence-refuted");
  CHECK(v.cellular == Outcome::None);
}

TEST_CASE("search budget is distinct from exhaustion") {
  auto r = search_certificate(spine_inclusion(4), AnodyneClass::Inner, 2);
  CHECK(r.outcome == Outcome::Budget);
}

TEST_CASE("order completeness: exhaustion does not depend on the starting step") {
  // every single first step from the square leads to a dead end for inner
  auto sq = square_in_simplex();
  for (auto c : {AnodyneClass::Inner}) CHECK(search_certificate(sq, c).outcome == Outcome::None);
  // boundary into simplex: a missing top with no face to pair has no certificate in any class
  for (auto c : {AnodyneClass::Inner, AnodyneClass::Left, AnodyneClass::Right, AnodyneClass::Kan})
    CHECK(search_certificate(boundary_inclusion(2), c).outcome == Outcome::None);
}

TEST_CASE("theoremC_classify examples") {
  auto v = theoremC_classify(horn_inclusion(3, 2));
  CHECK(v.kind == ClassifierKind::InnerAnodyne);
  REQUIRE(v.certificate);
  CHECK(verify_certificate(*v.certificate, horn_inclusion(3, 2)));

  auto b = theoremC_classify(standard_subcomplex(1, {{0}}));
  CHECK(b.kind == ClassifierKind::NotInnerAnodyne);
  CHECK(b.reason == "not-vertex-bijective");

  // ∂Δ^1 ⊆ Δ^1 is bijective on vertices; it is refuted through h instead
  auto e = theoremC_classify(boundary_inclusion(1));
  CHECK(e.kind == ClassifierKind::NotInnerAnodyne);
  CHECK(e.reason == "equivalence-refuted");

  // ∂Δ^2 ⊆ Δ^2 is bijective on vertices; h(∂Δ^2)(0,2) has two morphisms
  auto d = theoremC_classify(boundary_inclusion(2));
  CHECK(d.kind == ClassifierKind::NotInnerAnodyne);
  CHECK(d.reason == "equivalence-refuted");
}

TEST_CASE("joining an inner horn inclusion with a point gives an inner anodyne map") {
  auto j = join_map(horn_inclusion(2, 1), point());
  auto r = search_certificate(j, AnodyneClass::Inner);
  REQUIRE(r.outcome == Outcome::Found);
  CHECK(verify_certificate(*r.certificate, j));
}

TEST_CASE("two out of three") {
  auto u = horn_inclusion(2, 1);
  auto v = MonoInclusion(SimplicialMap::identity(u.target_ptr()));
  auto r = check_two_out_of_three(u, v);
  CHECK_FALSE(r.alarm);
  CHECK(r.u.kind == ClassifierKind::InnerAnodyne);
  CHECK(r.v.kind == ClassifierKind::InnerAnodyne);
  CHECK(r.vu.kind == ClassifierKind::InnerAnodyne);

  // right cancellation: I_3 ⊆ Λ^3_1 ⊆ Δ^3
  std::vector<std::vector<unsigned>> spine{{0, 1}, {1, 2}, {2, 3}};
  std::vector<std::vector<unsigned>> horn{{1, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  auto s = standard_inclusion(3, spine, horn);
  auto h = standard_subcomplex(3, horn);
  auto t = MonoInclusion(SimplicialMap(s.target_ptr(), h.target_ptr(), h.map().images()));
  auto rc = check_two_out_of_three(s, t);
  CHECK(rc.u.kind == ClassifierKind::InnerAnodyne);
  CHECK(rc.vu.kind == ClassifierKind::InnerAnodyne);
  CHECK(rc.v.kind == ClassifierKind::InnerAnodyne);
  CHECK_FALSE(rc.alarm);
}

TEST_CASE("soa stages carry inner certificates") {
  PrefibrantizeOptions opt;
  opt.stages = 2;
  auto trace = prefibrantize(horn_inclusion(2, 1).source_ptr(), opt);
  for (std::size_t k = 0; k < trace.maps.size(); ++k) {
    auto cert = certificate_of_stage(trace.attachments[k], *trace.stages[k + 1]);
    CHECK(verify_certificate(cert, trace.maps[k]));
  }
  auto inner = complete(spine_inclusion(3).source_ptr(), 1, 3);
  CHECK(verify_certificate(certificate_of_stage(inner.attachments[0], *inner.stages[1]), inner.maps[0]));
}

TEST_CASE("certificate parser errors") {
  CHECK_THROWS_AS(parse_certificate("step 2 1 a b\n"), ParseError);
  CHECK_THROWS_AS(parse_certificate("certificate sideways\n"), ParseError);
  CHECK_THROWS_WITH_AS(parse_certificate("certificate inner\nstep 2 x a b\n"), doctest::Contains("line 2"), ParseError);
}
