#include <doctest.h>

#include "sset/catalog.hpp"
#include "sset/function_complex.hpp"

using namespace sset;

namespace {

// Oracle: maps Delta^a x Delta^b -> Delta^p are monotone maps of the product
// poset [a] x [b] -> [p]; count them by brute force.
std::size_t count_poset_maps(unsigned a, unsigned b, unsigned p) {
  unsigned cells = (a + 1) * (b + 1);
  std::vector<unsigned> v(cells, 0);
  std::size_t total = 0;
  while (true) {
    bool ok = true;
    for (unsigned i = 0; i <= a && ok; ++i)
      for (unsigned j = 0; j <= b && ok; ++j) {
        unsigned here = v[i * (b + 1) + j];
        if (i < a && v[(i + 1) * (b + 1) + j] < here) ok = false;
        if (j < b && v[i * (b + 1) + j + 1] < here) ok = false;
      }
    total += ok;
    unsigned k = 0;
    while (k < cells && ++v[k] == p + 1) v[k++] = 0;
    if (k == cells) break;
  }
  return total;
}

}  // namespace

TEST_CASE("function complex examples") {
  auto d0 = standard_simplex(0);
  auto d1 = standard_simplex(1);
  auto a = function_complex(d1, d0, 0);
  CHECK(a.space()->count(0) == 2);
  CHECK(a.outcome() == Outcome::None);
  auto b = function_complex(d1, d1, 0);
  CHECK(b.space()->count(0) == 3);
  auto r = restricted_function_complex(d1, d1, 0);
  CHECK(r.space()->count(0) == 2);
  CHECK(r.restricted());
}

TEST_CASE("levels of Fun(Delta^a, Delta^p) match poset map counts") {
  for (unsigned a = 0; a <= 1; ++a)
    for (unsigned p = 0; p <= 2; ++p) {
      auto fc = function_complex(standard_simplex(p), standard_simplex(a), 2);
      REQUIRE(fc.computed_up_to() == 2);
      CHECK(validate(*fc.space()).empty());
      for (unsigned n = 0; n <= 2; ++n) CHECK(fc.space()->simplices(n).size() == count_poset_maps(a, n, p));
    }
}

TEST_CASE("vertices of a cell are its restrictions to K x {j}") {
  auto fc = function_complex(standard_simplex(2), standard_simplex(1), 2);
  const auto& s = *fc.space();
  for (unsigned n = 1; n <= 2; ++n)
    for (std::uint32_t c = 0; c < s.count(n); ++c) {
      CellId cell{n, c};
      auto verts = s.vertices(Simplex(cell));
      for (unsigned j = 0; j <= n; ++j)
        for (std::uint32_t kv = 0; kv < 2; ++kv) {
          Simplex whole = fc.map_of(cell)(fc.domain(n).pair(Simplex(CellId{0, kv}), Simplex(CellId{0, j})));
          Simplex part = fc.map_of(CellId{0, verts[j]})(fc.domain(0).pair(Simplex(CellId{0, kv}), Simplex(CellId{0, 0})));
          CHECK(whole == part);
        }
    }
}

TEST_CASE("evaluation is a simplicial map") {
  auto fc = restricted_function_complex(standard_simplex(2), standard_simplex(1), 2);
  auto ev0 = fc.evaluation(0);
  CHECK(ev0.violations().empty());
  CHECK(fc.space()->count(0) == 3);
}

TEST_CASE("restricted Fun(Delta^1, Delta^2) -> Delta^2 is a trivial fibration up to dim 2") {
  auto fc = restricted_function_complex(standard_simplex(2), standard_simplex(1), 3);
  auto rep = classify_map(fc.evaluation(0), 2, kDefaultNodeBudget, {FibrationClass::TrivialKan});
  CHECK(rep.verdicts[FibrationClass::TrivialKan].kind == VerdictKind::Yes);
}

TEST_CASE("constant families and budgets") {
  auto s = weak_inverse_complex();
  auto fc = restricted_function_complex(s, standard_simplex(1), 1);
  // f and g are equivalences, so paths along them are kept
  CHECK(fc.space()->count(0) == 6);
  for (const auto& x : s->simplices(1)) CHECK(fc.constant_family(x).has_value());
  auto tight = function_complex(s, standard_simplex(1), 2, 3);
  CHECK(tight.outcome() == Outcome::Budget);
  CHECK(tight.computed_up_to() < 2);
}
