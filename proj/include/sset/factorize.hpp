// Small-object-argument factorizations: horn attachment stages, pre-fibrant
// replacement and its saturation, descent over the inner 2-horn, the mapping
// path space, and a bounded search for descent extensions.

#ifndef SSET_FACTORIZE_HPP
#define SSET_FACTORIZE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sset/constructions.hpp"
#include "sset/function_complex.hpp"
#include "sset/homotopy.hpp"
#include "sset/lifting.hpp"

namespace sset {

/// One horn Λ^n_i -> S(m) attached in a stage, and the two cells it created.
struct HornAttachment {
  unsigned n = 0, i = 0;
  SimplicialMap map;
  CellId top, face;  // cells of S(m+1)
};

struct SoaTrace {
  std::string selector;
  std::vector<SSetPtr> stages;            // S(0), ..., S(m)
  std::vector<MonoInclusion> maps;        // S(k) -> S(k+1)
  std::vector<std::vector<HornAttachment>> attachments;  // per stage map
  Outcome outcome = Outcome::None;        // Budget if a stage was refused
};

/// Decides whether a horn map alpha : Λ^n_i -> S is attached.  `horn` is the
/// inclusion Λ^n_i -> Δ^n and `index` indexes S.
using HornSelector = std::function<bool(unsigned n, unsigned i, const SimplicialMap& alpha, const MonoInclusion& horn,
                                        SimplexIndex& index)>;

struct StageResult {
  SSetPtr object;
  MonoInclusion inclusion;
  std::vector<HornAttachment> attachments;
  Outcome outcome = Outcome::None;  // Budget: nothing was attached
};

/// Enumerates every map from the inner horns Λ^n_i (min_dim <= n <= max_dim)
/// into S, keeps those accepted by the selector and attaches them in one
/// pushout.  New cells are labelled "<label>_<k>.<generator cell>".
StageResult soa_stage(const SSetPtr& s, int max_dim, const HornSelector& selector, const std::string& label,
                      std::uint64_t node_budget = kDefaultNodeBudget, int min_dim = 2);

/// Whether x = s_0^n(v) for a vertex v.
inline bool is_constant(const Simplex& x) { return x.base.dim == 0; }
/// The image of the face d_0 = [1..n] of a horn map Λ^n_i -> S (i > 0).
Simplex horn_d0(const SimplicialMap& alpha, unsigned n);

struct PrefibrantReport {
  Tri value = Tri::Yes;
  int max_dim = 2;
  LiftingVerdict lambda21;
  /// Horns with constant d_0 face, per n = 3..max_dim.
  std::vector<std::pair<unsigned, LiftingVerdict>> constant_horns;
};

PrefibrantReport is_prefibrant(const SSetPtr& s, int max_dim = 3, std::uint64_t node_budget = kDefaultNodeBudget);

struct PrefibrantizeOptions {
  int stages = 2;
  int max_dim = 3;
  /// Attach only horns that have no filler yet.
  bool only_unfilled = false;
  std::uint64_t node_budget = kDefaultNodeBudget;
};

/// Stages attach all Λ^2_1 horns and, for n > 2, the inner horns with
/// constant d_0 face.
SoaTrace prefibrantize(const SSetPtr& s, const PrefibrantizeOptions& options = {});

/// Plain inner-horn small object argument.
SoaTrace complete(const SSetPtr& s, int stages, int max_dim, std::uint64_t node_budget = kDefaultNodeBudget);

struct SaturationResult {
  SSetPtr object;                          // T, cells of dimension <= up_to
  MonoInclusion inclusion;                 // S -> T
  std::vector<HornAttachment> attachments; // in order, by dimension
  int up_to = 0;
  bool p2_holds = false;                   // new cells have non-constant d_0
  bool hom_levels_equal = false;           // hom_left(S,x,y) = hom_left(T,x,y) in levels <= up_to - 2
  std::vector<std::string> notes;
};

/// Attaches, for n = 3..up_to, the inner horns Λ^n_i -> T with non-constant
/// d_0 face whose new face d_i would also have non-constant d_0 (with
/// `horn_d0_only`, every horn with non-constant d_0 face).  Throws Error when
/// S is not pre-fibrant up to up_to.
SaturationResult saturate_prefibrant(const SSetPtr& s, int up_to, std::uint64_t node_budget = kDefaultNodeBudget,
                                     bool horn_d0_only = false);

struct TriangleDescent {
  std::vector<SSetPtr> stages;           // C(0) = X, C(1), ...
  std::vector<SimplicialMap> over;       // C(k) -> Delta^2
  MonoInclusion inclusion;               // X -> C(m)
  std::vector<std::size_t> attached;     // horns attached per stage
  int max_dim = 3;
  Outcome outcome = Outcome::None;       // Budget: later stages missing
};

/// Modified small object argument over Λ^2_1 ⊆ Δ^2: attaches only inner horns
/// whose image in Δ^2 meets both 0 and 2.  After every stage checks that the
/// cells of C(k) over Λ^2_1 are exactly those of X; throws Error otherwise.
TriangleDescent descend_over_triangle(const SimplicialMap& p, int stages, int max_dim = 3,
                                      std::uint64_t node_budget = kDefaultNodeBudget);

/// Cells of C lying over the horn Λ^2_1 (vertex images inside {0,1} or {1,2}).
std::vector<CellId> cells_over_inner_horn(const SimplicialMap& q);

struct PathSpace {
  FunctionComplex paths;                 // restricted Fun(Δ^1, D)
  std::optional<FiberProduct> q;         // C x_D paths, along ev_0
  SimplicialMap i;                       // sk_{up_to} C -> Q
  SimplicialMap pi;                      // Q -> D, ev_1 of the path
  int up_to = 0;
  bool factorization_holds = false;      // f = pi . i on all computed cells
  Outcome outcome = Outcome::None;
};

PathSpace mapping_path_space(const SimplicialMap& f, int up_to, std::uint64_t node_budget = kDefaultNodeBudget);

struct DescentSearchResult {
  Outcome outcome = Outcome::None;
  SSetPtr y;
  std::optional<SimplicialMap> over;    // Y -> B
  std::optional<MonoInclusion> from_x;  // X -> Y
  int max_dim = 0;
  int cell_bound = 0;
  std::uint64_t nodes = 0;
};

/// Depth-first search for Y ⊇ X over B with A x_B Y = X and Y -> B an inner
/// fibration up to max_dim, adding at most cell_bound cells over B \ A.
/// None means the bounded search space was exhausted.
DescentSearchResult search_descent_extension(const SimplicialMap& p, const MonoInclusion& i, int max_dim,
                                             int cell_bound = 6, std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace sset

#endif  // SSET_FACTORIZE_HPP
