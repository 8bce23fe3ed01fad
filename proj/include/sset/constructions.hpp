// Standard complexes and the constructions built from them: pushouts, cell
// attachment, products, pullbacks, joins, skeleta, full subsets, cosk_0,
// slices and left mapping spaces.

#ifndef SSET_CONSTRUCTIONS_HPP
#define SSET_CONSTRUCTIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sset/simplicial_set.hpp"

namespace sset {

enum class GeneratorKind { Simplex, Boundary, Horn, Spine, JTrunc };

std::optional<GeneratorKind> parse_generator_kind(const std::string& s);
const char* to_string(GeneratorKind kind);

/// Builds Delta^n, its boundary, a horn, the spine I_n, or sk_n(J).  Vertices
/// are numbered 0..n.  Throws Error on an invalid (kind, n, i) combination.
SSetPtr make_generator(GeneratorKind kind, int n, std::optional<int> i = std::nullopt);

SSetPtr standard_simplex(unsigned n);
SSetPtr point();
SSetPtr empty_complex();

/// Subcomplex of Delta^n generated by the listed vertex sets, with its
/// inclusion into a fresh Delta^n.
MonoInclusion standard_subcomplex(unsigned n, const std::vector<std::vector<unsigned>>& generators);
MonoInclusion horn_inclusion(unsigned n, unsigned i);
MonoInclusion boundary_inclusion(unsigned n);
MonoInclusion spine_inclusion(unsigned n);
/// Inclusion of a sub-family of vertex sets into another subcomplex of the
/// same Delta^n (both generated by vertex sets).
MonoInclusion standard_inclusion(unsigned n, const std::vector<std::vector<unsigned>>& small,
                                 const std::vector<std::vector<unsigned>>& large);

/// Cell name used for the face of Delta^n spanned by a vertex set.
std::string vertex_set_name(unsigned n, const std::vector<unsigned>& vertices);
/// Simplex of a subcomplex of Delta^n given by a monotone vertex sequence.
/// Returns nullopt when the face spanned by the sequence is absent.
std::optional<Simplex> standard_simplex_at(const SimplicialSet& sub, unsigned n, const Monotone& sequence);

/// The map Delta^n -> X classifying the n-simplex x.
SimplicialMap classifying_map(SSetPtr x_complex, const Simplex& x);

/// Factor out the degeneracies listed in `mask` (which must be a subset of
/// x's own word): returns y with x = gamma^* y, gamma the surjection of mask.
Simplex strip_degeneracies(const SimplicialSet& x_complex, const Simplex& x, std::uint32_t mask);

// ------------------------------------------------------------------ colimits

struct PushoutResult {
  SSetPtr object;
  MonoInclusion from_c;   // C -> D
  SimplicialMap from_b;   // B -> D
};

/// Pushout of a mono i : A -> B along f : A -> C.
PushoutResult pushout(const MonoInclusion& i, const SimplicialMap& f);

struct Attachment {
  const MonoInclusion* generator = nullptr;  // I -> J
  SimplicialMap attaching;                    // I -> S
  std::string label;
};

struct AttachResult {
  SSetPtr object;
  MonoInclusion inclusion;                     // S -> S'
  std::vector<SimplicialMap> characteristic;   // J_alpha -> S', one per attachment
  /// For each attachment, the new cells it created, keyed by generator cell.
  std::vector<std::vector<std::pair<CellId, CellId>>> created;
};

/// Simultaneous pushout of all attachments (one coproduct-indexed pushout).
AttachResult attach(SSetPtr s, const std::vector<Attachment>& attachments);

/// Disjoint union.
SSetPtr coproduct(const SSetPtr& x, const SSetPtr& y);

// ------------------------------------------------------------------ limits

/// X x_S Y for maps p : X -> S and q : Y -> S; the product when S is a point.
/// Cells are jointly nondegenerate pairs; `max_dim` truncates the result.
class FiberProduct {
 public:
  FiberProduct(const SimplicialMap& p, const SimplicialMap& q, std::optional<unsigned> max_dim = std::nullopt);
  FiberProduct(SSetPtr x, SSetPtr y, std::optional<unsigned> max_dim = std::nullopt);

  const SSetPtr& object() const { return object_; }
  /// The simplex of the fiber product with the given components, which must
  /// have equal dimension (and equal image in S).
  Simplex pair(const Simplex& a, const Simplex& b) const;
  std::optional<Simplex> try_pair(const Simplex& a, const Simplex& b) const;
  const std::pair<Simplex, Simplex>& components(CellId c) const { return components_.at(c.dim).at(c.index); }
  SimplicialMap projection1() const;
  SimplicialMap projection2() const;
  int truncated_at() const { return truncated_at_; }

 private:
  void build(const std::function<std::optional<Simplex>(const Simplex&)>& p,
             const std::function<std::optional<Simplex>(const Simplex&)>& q, std::optional<unsigned> max_dim);

  SSetPtr x_, y_, object_;
  std::vector<std::vector<std::pair<Simplex, Simplex>>> components_;
  std::map<std::pair<Simplex, Simplex>, CellId> lookup_;
  int truncated_at_ = -1;
};

SSetPtr product(const SSetPtr& x, const SSetPtr& y);

/// f x g : X x Y -> X' x Y'.
SimplicialMap product_map(const FiberProduct& source, const FiberProduct& target, const SimplicialMap& f,
                          const SimplicialMap& g);

class Join {
 public:
  Join(SSetPtr x, SSetPtr y);
  const SSetPtr& object() const { return object_; }
  MonoInclusion left_inclusion() const;
  MonoInclusion right_inclusion() const;
  CellId pair_cell(CellId a, CellId b) const { return pairs_.at({a, b}); }

 private:
  SSetPtr x_, y_, object_;
  std::vector<std::vector<CellId>> from_x_, from_y_;
  std::map<std::pair<CellId, CellId>, CellId> pairs_;
};

SSetPtr join(const SSetPtr& x, const SSetPtr& y);
/// u * id_C for a mono u : A -> B.
MonoInclusion join_map(const MonoInclusion& u, const SSetPtr& c);

// ------------------------------------------------------------------ subcomplexes

/// The subcomplex on the cells selected by `keep` (must be closed under faces).
MonoInclusion subcomplex(SSetPtr x, const std::function<bool(CellId)>& keep);
MonoInclusion skeleton(SSetPtr x, unsigned n);
/// Cells all of whose vertices lie in the given vertex set.
MonoInclusion full_subset(SSetPtr x, const std::vector<std::uint32_t>& vertices);
/// Image of a map as a subcomplex of its target.
MonoInclusion image_subcomplex(const SimplicialMap& f);

/// cosk_0 of a finite set, truncated at max_dim: one nondegenerate k-cell for
/// each (k+1)-tuple with consecutive entries distinct.
SSetPtr cosk0(const std::vector<std::string>& vertex_names, unsigned max_dim);

// ------------------------------------------------------------------ slices

/// X_{x/} or Hom^L_X(x, y), truncated at `computed_up_to`.  Level n of the
/// space is a set of (n+1)-simplices u of X with u(0) = x.
struct UnderSpace {
  SSetPtr space;
  std::vector<std::vector<Simplex>> ambient;  // ambient simplex per cell
  std::uint32_t source_vertex = 0;
  std::optional<std::uint32_t> target_vertex;  // set for Hom^L
  int computed_up_to = 0;
  std::unordered_map<Simplex, CellId, SimplexHash> cell_of;  // ambient -> cell

  /// The ambient simplex corresponding to a simplex of the space.
  Simplex to_ambient(const SimplicialSet& x, const Simplex& s) const;
  /// Projection X_{x/} -> X, u |-> d_0 u.
  SimplicialMap projection(const SSetPtr& x) const;
  /// The simplex of the space given by an ambient (n+1)-simplex u with
  /// u(0) = x; nullopt if u is not in the space (or above the truncation).
  std::optional<Simplex> from_ambient(const SimplicialSet& x, const Simplex& u) const;
};

UnderSpace slice_under(const SSetPtr& x, std::uint32_t vertex, int up_to);
UnderSpace hom_left(const SSetPtr& x, std::uint32_t source, std::uint32_t target, int up_to);

}  // namespace sset

#endif  // SSET_CONSTRUCTIONS_HPP
