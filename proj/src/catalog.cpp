#include "sset/catalog.hpp"

namespace sset {

SSetPtr weak_inverse_complex() {
  SimplicialSet::Builder b;
  CellId x = b.add_vertex("x"), y = b.add_vertex("y");
  CellId f = b.add_cell("f", {Simplex(y), Simplex(x)});
  CellId g = b.add_cell("g", {Simplex(x), Simplex(y)});
  CellId phi = b.add_cell("phi", {Simplex(x), Simplex(x)});
  CellId psi = b.add_cell("psi", {Simplex(y), Simplex(y)});
  Simplex ix(x, 1), iy(y, 1);
  b.add_cell("sigma", {Simplex(g), Simplex(phi), Simplex(f)});
  b.add_cell("sigma2", {Simplex(f), Simplex(psi), Simplex(g)});
  b.add_cell("tau", {ix, ix, Simplex(phi)});
  b.add_cell("tau2", {iy, iy, Simplex(psi)});
  return b.build();
}

SpinePushout spine_pushout() {
  MonoInclusion spine = spine_inclusion(3);
  MonoInclusion boundary = boundary_inclusion(3);
  const auto& bd = boundary.source_ptr();
  SimplicialMap::Images im(2);
  for (auto c : spine.source().cell_ids()) im[c.dim].push_back(Simplex(*bd->find(spine.source().name(c))));
  SimplicialMap gluing(spine.source_ptr(), bd, std::move(im));
  PushoutResult po = pushout(spine, gluing);
  MonoInclusion horn = horn_inclusion(3, 1);
  SimplicialMap::Images hm(horn.source().dim() + 1);
  for (auto c : horn.source().cell_ids()) {
    CellId in_boundary = *bd->find(horn.source().name(c));
    hm[c.dim].push_back(po.from_c.map().image(in_boundary));
  }
  SimplicialMap horn_map(horn.source_ptr(), po.object, std::move(hm));
  return {po.object, std::move(horn_map), std::move(spine), std::move(gluing)};
}

MonoInclusion square_in_simplex() { return standard_subcomplex(3, {{0, 1, 3}, {0, 2, 3}}); }

}  // namespace sset
