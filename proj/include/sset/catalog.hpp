// Small named complexes used as fixtures by the tools and tests.

#ifndef SSET_CATALOG_HPP
#define SSET_CATALOG_HPP

#include "sset/constructions.hpp"

namespace sset {

/// Vertices x, y; edges f : x -> y, g : y -> x, phi : x -> x, psi : y -> y;
/// triangles sigma = (g, phi, f), sigma2 = (f, psi, g), tau = (x, x, phi),
/// tau2 = (y, y, psi) (faces listed d0, d1, d2; a vertex name stands for its
/// degenerate edge).  Its homotopy category is the free-standing isomorphism.
SSetPtr weak_inverse_complex();

struct SpinePushout {
  SSetPtr object;        // Delta^3 glued to the boundary of Delta^3 along I_3
  SimplicialMap horn;    // Lambda^3_1 -> boundary -> object
  MonoInclusion spine;   // I_3 -> Delta^3
  SimplicialMap gluing;  // I_3 -> boundary of Delta^3
};
SpinePushout spine_pushout();

/// Delta^1 x Delta^1 as Delta^{013} u Delta^{023} inside Delta^3.
MonoInclusion square_in_simplex();

}  // namespace sset

#endif  // SSET_CATALOG_HPP
