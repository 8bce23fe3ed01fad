// Finite simplicial sets in degeneracy normal form.
//
// A simplicial set is stored as its nondegenerate cells, grouped by
// dimension.  Every simplex (degenerate or not) is a pair (base cell,
// degeneracy word); the word j1 < ... < jk stands for s_jk ... s_j1 applied
// to the base, and is kept as a bitmask.  Faces are computed by pushing d_i
// through the word with the simplicial identities.

#ifndef SSET_SIMPLICIAL_SET_HPP
#define SSET_SIMPLICIAL_SET_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace sset {

/// Largest simplex dimension representable (degeneracy words live in 32 bits).
inline constexpr unsigned kMaxDim = 30;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search or construction ran out of its node budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A construction produced an object violating one of its own guarantees.
class InvariantError : public Error {
 public:
  using Error::Error;
};

struct CellId {
  std::uint32_t dim = 0;
  std::uint32_t index = 0;
  auto operator<=>(const CellId&) const = default;
};

struct Simplex {
  CellId base;
  std::uint32_t degeneracies = 0;  // bit j set <=> s_j occurs in the word

  Simplex() = default;
  Simplex(CellId b, std::uint32_t word_mask = 0) : base(b), degeneracies(word_mask) {}

  unsigned dim() const;
  bool nondegenerate() const { return degeneracies == 0; }
  /// Degeneracy word j1 < ... < jk.
  std::vector<unsigned> word() const;
  /// Builds a simplex from a word; throws Error unless j_m <= dim(base) + m.
  static Simplex from_word(CellId base, std::span<const unsigned> word);

  auto operator<=>(const Simplex&) const = default;
};

/// Monotone map [m] -> [n], stored as its values.
using Monotone = std::vector<std::uint8_t>;

/// delta_i : [n-1] -> [n], skipping i.
Monotone coface_map(unsigned n, unsigned i);
/// sigma_j : [n+1] -> [n], hitting j twice.
Monotone codegeneracy_map(unsigned n, unsigned j);
/// The surjection [dim x] -> [dim base] encoded by the degeneracy word.
Monotone surjection_of(const Simplex& x);
/// Degeneracy mask of a monotone surjection.
std::uint32_t mask_of(const Monotone& surjection);

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept {
    std::uint64_t h = (std::uint64_t(s.base.dim) << 58) ^ (std::uint64_t(s.base.index) << 26) ^ s.degeneracies;
    h ^= h >> 31;
    h *= 0x9e3779b97f4a7c15ULL;
    return std::size_t(h ^ (h >> 29));
  }
};

struct SimplexVectorHash {
  std::size_t operator()(const std::vector<Simplex>& v) const noexcept {
    std::size_t h = v.size();
    SimplexHash sh;
    for (const auto& s : v) h = h * 1000003u ^ sh(s);
    return h;
  }
};

class SimplicialSet;
using SSetPtr = std::shared_ptr<const SimplicialSet>;

class SimplicialSet {
 public:
  struct Cell {
    std::string name;
    std::vector<Simplex> faces;          // d_0 .. d_k, empty for vertices
    std::vector<std::uint32_t> vertices;  // vertex indices, in order
  };

  class Builder {
   public:
    /// Adds a vertex; returns its id.
    CellId add_vertex(std::string name);
    /// Adds a nondegenerate cell of dimension faces.size() - 1.  Faces must
    /// reference existing cells and have dimension faces.size() - 2.
    CellId add_cell(std::string name, std::vector<Simplex> faces);
    /// Appends a suffix to make the name unique instead of throwing.
    CellId add_cell_unique(std::string name, std::vector<Simplex> faces);
    bool has_name(const std::string& name) const { return set_->find(name).has_value(); }
    std::size_t size() const;
    const SimplicialSet& peek() const;  // partial complex, for face lookups
    SSetPtr build();

   private:
    std::shared_ptr<SimplicialSet> set_ = std::make_shared<SimplicialSet>();
  };

  SimplicialSet() = default;
  friend class Builder;

  /// -1 for the empty complex.
  int dim() const { return int(cells_.size()) - 1; }
  std::size_t count(unsigned d) const { return d < cells_.size() ? cells_[d].size() : 0; }
  std::size_t total_cells() const;
  bool empty() const { return cells_.empty(); }

  const Cell& cell(CellId c) const { return cells_.at(c.dim).at(c.index); }
  const std::string& name(CellId c) const { return cell(c).name; }
  std::optional<CellId> find(const std::string& name) const;
  bool contains(CellId c) const { return c.dim < cells_.size() && c.index < cells_[c.dim].size(); }
  bool contains(const Simplex& s) const;

  /// All cell ids ordered by (dim, index).
  std::vector<CellId> cell_ids() const;

  /// theta^*(x) in normal form, for monotone theta : [m] -> [dim x].
  Simplex apply(const Simplex& x, const Monotone& theta) const;
  Simplex face(const Simplex& x, unsigned i) const;
  Simplex degeneracy(const Simplex& x, unsigned j) const;
  /// Vertex k of x, as a vertex index.
  std::uint32_t vertex(const Simplex& x, unsigned k) const;
  std::vector<std::uint32_t> vertices(const Simplex& x) const;

  /// Face d_i of a nondegenerate cell (stored data).
  const Simplex& cell_face(CellId c, unsigned i) const { return cell(c).faces.at(i); }

  /// Every simplex of dimension n, degenerate ones included, in normal-form
  /// lexicographic order (base dim, base index, word).
  std::vector<Simplex> simplices(unsigned n) const;

  /// n-simplex that is s_0^n of a vertex.
  static Simplex constant(std::uint32_t vertex, unsigned n);
  static bool is_constant(const Simplex& x) { return x.base.dim == 0; }

  /// Same cells, names and faces (structural equality).
  bool operator==(const SimplicialSet& o) const;

  std::string token(const Simplex& x) const;  // "name" or "s0,2@name"
  Simplex parse_token(const std::string& token) const;

 private:
  std::vector<std::vector<Cell>> cells_;
  std::unordered_map<std::string, CellId> by_name_;
};

/// Pointer identity or structural equality.
bool same_complex(const SimplicialSet& a, const SimplicialSet& b);

/// Normal-form lexicographic order used for candidate enumeration.
bool normal_form_less(const Simplex& a, const Simplex& b);

/// A face-compatible assignment of a target simplex to every source cell.
class SimplicialMap {
 public:
  using Images = std::vector<std::vector<Simplex>>;

  SimplicialMap() = default;
  /// Validates dimensions and face compatibility; throws Error on failure.
  SimplicialMap(SSetPtr source, SSetPtr target, Images images);
  static SimplicialMap unchecked(SSetPtr source, SSetPtr target, Images images);

  static SimplicialMap identity(SSetPtr x);
  /// Unique map to the terminal complex (which must be a single vertex).
  static SimplicialMap to_point(SSetPtr x, SSetPtr point);
  /// Composite g . f.
  static SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

  const SimplicialSet& source() const { return *source_; }
  const SimplicialSet& target() const { return *target_; }
  const SSetPtr& source_ptr() const { return source_; }
  const SSetPtr& target_ptr() const { return target_; }
  const Images& images() const { return images_; }

  const Simplex& image(CellId c) const { return images_.at(c.dim).at(c.index); }
  Simplex operator()(const Simplex& x) const;
  std::uint32_t on_vertex(std::uint32_t v) const { return images_.at(0).at(v).base.index; }

  bool injective_on_cells() const;
  bool bijective_on_vertices() const;
  bool surjective_on_cells() const;

  /// Lists face-compatibility violations (empty when the map is valid).
  std::vector<std::string> violations() const;

  bool operator==(const SimplicialMap& o) const {
    return source_ == o.source_ && target_ == o.target_ && images_ == o.images_;
  }

 private:
  SSetPtr source_;
  SSetPtr target_;
  Images images_;
};

/// A simplicial map that is injective on nondegenerate cells.
class MonoInclusion {
 public:
  MonoInclusion() = default;
  explicit MonoInclusion(SimplicialMap map);  // throws Error when not mono

  const SimplicialMap& map() const { return map_; }
  const SimplicialSet& source() const { return map_.source(); }
  const SimplicialSet& target() const { return map_.target(); }
  const SSetPtr& source_ptr() const { return map_.source_ptr(); }
  const SSetPtr& target_ptr() const { return map_.target_ptr(); }

  /// Source cell mapped onto the given target cell, if any.
  std::optional<CellId> preimage(CellId target_cell) const;
  bool in_image(CellId target_cell) const { return preimage(target_cell).has_value(); }
  /// Target cells outside the image, ordered by (dim, index).
  std::vector<CellId> complement() const;
  /// Whether the target simplex lies in the image subcomplex.
  bool covers(const Simplex& x) const { return in_image(x.base); }

 private:
  SimplicialMap map_;
  std::vector<std::vector<std::int64_t>> inverse_;
};

struct Violation {
  CellId cell;
  std::string message;
};

/// Checks every stored invariant, listing offending cells and indices.
std::vector<Violation> validate(const SimplicialSet& x);

/// Isomorphism test by backtracking over vertex-compatible cell bijections.
/// Returns the isomorphism if one exists.
std::optional<SimplicialMap> find_isomorphism(SSetPtr a, SSetPtr b, std::uint64_t node_budget = 1'000'000);

}  // namespace sset

#endif  // SSET_SIMPLICIAL_SET_HPP
