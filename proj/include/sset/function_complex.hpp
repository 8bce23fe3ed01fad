// Truncated function complexes Fun(K, C): level n is the set of maps
// K x Delta^n -> C.

#ifndef SSET_FUNCTION_COMPLEX_HPP
#define SSET_FUNCTION_COMPLEX_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sset/constructions.hpp"
#include "sset/homotopy.hpp"
#include "sset/lifting.hpp"

namespace sset {

class FunctionComplex {
 public:
  const SSetPtr& space() const { return space_; }
  const SSetPtr& source() const { return k_; }
  const SSetPtr& target() const { return c_; }
  /// Highest complete level; -1 if even level 0 hit the budget.
  int computed_up_to() const { return computed_up_to_; }
  /// None when every requested level was enumerated, Budget otherwise.
  Outcome outcome() const { return outcome_; }
  bool restricted() const { return restricted_; }

  /// The map K x Delta^n -> C of an n-cell.
  const SimplicialMap& map_of(CellId cell) const { return maps_.at(cell.dim).at(cell.index); }
  /// Normal form of a map K x Delta^n -> C (n <= computed_up_to); nullopt
  /// if the map is not in the complex (e.g. excluded by the restriction).
  std::optional<Simplex> simplex_of(unsigned n, const SimplicialMap& phi) const;
  /// The simplex K x Delta^n -> Delta^n -> C of a constant family at x.
  std::optional<Simplex> constant_family(const Simplex& x) const;
  /// K x Delta^n as used at level n.
  const FiberProduct& domain(unsigned n) const { return domains_.at(n); }

  /// Evaluation at a vertex k of K: Fun(K, C) -> C.
  SimplicialMap evaluation(std::uint32_t k) const;

  friend FunctionComplex build_function_complex(SSetPtr, SSetPtr, int, std::uint64_t, bool, int);

 private:
  SSetPtr c_, k_, space_;
  int computed_up_to_ = -1;
  Outcome outcome_ = Outcome::None;
  bool restricted_ = false;
  std::vector<FiberProduct> domains_;
  std::vector<std::vector<SimplicialMap>> maps_;  // per nondegenerate cell
  std::vector<std::unordered_map<std::vector<Simplex>, Simplex, SimplexVectorHash>> lookup_;  // all maps per level
};

/// Fun(K, C) up to level up_to.  The node budget applies to each level.
FunctionComplex function_complex(SSetPtr c, SSetPtr k, int up_to, std::uint64_t node_budget = kDefaultNodeBudget);

/// The full subcomplex of Fun(K, C) on the maps K -> C sending every edge to
/// an equivalence of h(C) (Unknown counts as not an equivalence).
FunctionComplex restricted_function_complex(SSetPtr c, SSetPtr k, int up_to,
                                            std::uint64_t node_budget = kDefaultNodeBudget,
                                            int word_budget = kDefaultWordBudget);

}  // namespace sset

#endif  // SSET_FUNCTION_COMPLEX_HPP
