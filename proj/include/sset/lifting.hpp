// Lifting problems on finite complexes, decided by exhaustive backtracking,
// and classification of maps by right lifting properties.

#ifndef SSET_LIFTING_HPP
#define SSET_LIFTING_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sset/constructions.hpp"
#include "sset/simplicial_set.hpp"

namespace sset {

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000;

enum class Outcome { Found, None, Budget };
const char* to_string(Outcome o);

/// Index of the simplices of a complex keyed by their face tuples, built
/// lazily per dimension.
class SimplexIndex {
 public:
  explicit SimplexIndex(SSetPtr x) : x_(std::move(x)) {}
  const SimplicialSet& complex() const { return *x_; }
  const SSetPtr& complex_ptr() const { return x_; }
  /// Simplices of dimension n whose faces are exactly `faces`, in normal-form
  /// order.  For n = 0 the key is empty and all vertices are returned.
  const std::vector<Simplex>& with_faces(unsigned n, const std::vector<Simplex>& faces);

 private:
  SSetPtr x_;
  std::vector<std::optional<std::unordered_map<std::vector<Simplex>, std::vector<Simplex>, SimplexVectorHash>>> levels_;
  std::vector<Simplex> empty_;
};

/// Square  A --u--> X
///         |i       |p
///         B --v--> S
struct LiftingProblem {
  MonoInclusion i;
  SimplicialMap p;
  SimplicialMap u;
  SimplicialMap v;

  /// Empty when p.u = v.i and all maps are composable.
  std::vector<std::string> problems() const;
};

struct LiftResult {
  Outcome outcome = Outcome::None;
  std::optional<SimplicialMap> lift;
  std::uint64_t nodes = 0;
};

/// Backtracking search over the cells of B outside A, in (dim, index) order.
/// Candidates for a cell are the simplices of X with the already-determined
/// faces, lying over v; tried in normal-form order.  The lift is verified
/// before it is returned.
LiftResult solve_lift(const LiftingProblem& problem, std::uint64_t node_budget = kDefaultNodeBudget,
                      SimplexIndex* index = nullptr);

/// solve_lift with S terminal.
LiftResult extend_along(const SimplicialMap& f, const MonoInclusion& i, std::uint64_t node_budget = kDefaultNodeBudget,
                        SimplexIndex* index = nullptr);

/// Calls `visit` on every map B -> X agreeing with `fixed` on the cells where
/// it is set and, when `over` is given, lying over the map B -> S it returns
/// for each cell.  `visit` returns false to stop.  Returns Budget if the node
/// budget ran out, None if the enumeration completed (or was stopped).
struct MapConstraint {
  const SimplicialMap* p = nullptr;  // X -> S
  const SimplicialMap* v = nullptr;  // B -> S
  bool nondegenerate = false;        // images of cells must be cells
  bool injective = false;            // ... and pairwise distinct
};
Outcome enumerate_maps(const SSetPtr& b, SimplexIndex& x, const std::function<bool(const SimplicialMap&)>& visit,
                       std::uint64_t node_budget = kDefaultNodeBudget,
                       const std::vector<std::vector<std::optional<Simplex>>>* fixed = nullptr,
                       MapConstraint over = {}, std::uint64_t* nodes_used = nullptr);

/// All maps A -> X (collected).  Sets `outcome` to Budget on overflow.
std::vector<SimplicialMap> all_maps(const SSetPtr& a, const SSetPtr& x, Outcome* outcome = nullptr,
                                    std::uint64_t node_budget = kDefaultNodeBudget);

enum class VerdictKind { Yes, No, Budget };

struct LiftingVerdict {
  VerdictKind kind = VerdictKind::Yes;
  int checked_dim = -1;                   // for Yes: bound of the claim
  std::optional<LiftingProblem> witness;  // for No: an unsolvable square
  std::string generator;                  // which generator failed
};

struct NamedGenerator {
  std::string name;
  MonoInclusion inclusion;
};

/// Right lifting property of p against every generator: enumerates all u
/// A -> X, all v : B -> S extending p.u, and solves each square.
LiftingVerdict has_rlp(const SimplicialMap& p, const std::vector<NamedGenerator>& generators, int max_dim,
                       std::uint64_t node_budget = kDefaultNodeBudget);

enum class FibrationClass { Inner, Left, Right, Kan, TrivialKan };
inline constexpr FibrationClass kAllClasses[] = {FibrationClass::Inner, FibrationClass::Left, FibrationClass::Right,
                                                 FibrationClass::Kan, FibrationClass::TrivialKan};
const char* to_string(FibrationClass c);
std::optional<FibrationClass> parse_fibration_class(const std::string& s);

/// Horn inclusions (and boundaries for TrivialKan) of the class, n <= max_dim.
std::vector<NamedGenerator> generating_family(FibrationClass c, int max_dim);

struct FibrationReport {
  std::map<FibrationClass, LiftingVerdict> verdicts;
  bool mono = false;
  bool vertex_bijective = false;
  int checked_dim = 0;
};

/// Default bound: max(dim source, dim target) + 1.
int default_max_dim(const SimplicialMap& p);

/// Classifies p against the five generating families for n <= max_dim
/// (max_dim < 0 selects the default).  Each horn is checked once and shared
/// between families.
FibrationReport classify_map(const SimplicialMap& p, int max_dim = -1, std::uint64_t node_budget = kDefaultNodeBudget,
                             const std::vector<FibrationClass>& classes = {std::begin(kAllClasses),
                                                                           std::end(kAllClasses)});

/// Whether every map from the domain of `i` into X extends along i.
LiftingVerdict fills_all(const SSetPtr& x, const NamedGenerator& i, std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace sset

#endif  // SSET_LIFTING_HPP
