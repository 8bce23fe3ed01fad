// Homotopy categories as path rewriting systems, equivalence edges, and the
// isofibration / categorical fibration / Dwyer-Kan checks built on them.

#ifndef SSET_HOMOTOPY_HPP
#define SSET_HOMOTOPY_HPP

#include <cstdint>
#include <optional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sset/constructions.hpp"
#include "sset/lifting.hpp"

namespace sset {

inline constexpr int kDefaultWordBudget = 8;

/// A morphism of h(S) as a path of nondegenerate edges (edge indices), first
/// edge first.  The empty word is an identity.
using Word = std::vector<std::uint32_t>;

enum class Tri { Yes, No, Unknown };
const char* to_string(Tri t);

enum class HomStatus { Exact, BudgetTruncated };

struct HomSet {
  std::vector<Word> morphisms;  // reduced words, shortlex order
  HomStatus status = HomStatus::Exact;
};

/// Presentation of h(S): objects are vertices, generators nondegenerate
/// edges, one relation [d1 t] = [d0 t][d2 t] per nondegenerate triangle t
/// (degenerate edges are empty words).  The relations are completed to a
/// shortlex rewriting system within a rule budget.
class HomotopyCategory {
 public:
  HomotopyCategory(SSetPtr s, int word_budget = kDefaultWordBudget, std::size_t rule_budget = 4000);

  const SimplicialSet& complex() const { return *s_; }
  const SSetPtr& complex_ptr() const { return s_; }
  int word_budget() const { return word_budget_; }
  /// True when completion terminated: reduced words are then normal forms.
  bool confluent() const { return confluent_; }
  const std::vector<std::pair<Word, Word>>& relations() const { return relations_; }
  const std::vector<std::pair<Word, Word>>& rules() const { return rules_; }

  Word word_of(const Simplex& edge) const;
  std::uint32_t source(std::uint32_t generator) const;
  std::uint32_t target(std::uint32_t generator) const;
  Word reduce(Word w) const;
  /// Sound when it returns true; complete only if confluent().
  bool equal(const Word& a, const Word& b) const { return reduce(a) == reduce(b); }
  bool composable(const Word& w) const;

  /// Reduced paths x -> y of length <= word_budget.  Exact only when the
  /// system is confluent and no longer reduced path x -> ... -> y exists.
  HomSet hom(std::uint32_t x, std::uint32_t y) const;

  std::string text(const Word& w, std::uint32_t at_vertex) const;

 private:
  bool irreducible_extension(const Word& w) const;

  SSetPtr s_;
  int word_budget_;
  bool confluent_ = false;
  std::vector<std::pair<Word, Word>> relations_;
  std::vector<std::pair<Word, Word>> rules_;
  std::map<Word, Word> lhs_;  // rule lhs -> rhs
  std::size_t max_lhs_ = 0;
  std::vector<std::vector<std::uint32_t>> out_edges_;  // by source vertex
};

/// Convenience wrapper.
HomotopyCategory homotopy_category(SSetPtr s, int word_budget = kDefaultWordBudget);

struct EquivalenceVerdict {
  Tri value = Tri::Unknown;
  Word inverse;  // for Yes
};

/// Yes (with an inverse word) if one is found among reduced words of length
/// <= the budget; No only when hom(y, x) is Exact and no inverse exists.
EquivalenceVerdict is_equivalence_edge(const HomotopyCategory& h, const Simplex& edge);

/// Connected components of the 1-skeleton, as sorted vertex lists.
std::vector<std::vector<std::uint32_t>> pi0(const SimplicialSet& x);

struct IsofibrationReport {
  Tri value = Tri::Yes;
  std::optional<Simplex> edge;           // equivalence of S without a lift
  std::optional<std::uint32_t> vertex;   // ... from this vertex of X
  std::optional<LiftingProblem> witness; // {0} -> Delta^1 square when no edge lies over it at all
  std::string note;
};

/// For every equivalence edge f of S and vertex x over f(0), looks for an
/// equivalence edge of X from x over f.
IsofibrationReport check_isofibration(const SimplicialMap& p, int word_budget = kDefaultWordBudget);

struct CategoricalFibrationReport {
  Tri value = Tri::Yes;
  bool bounded = true;  // Yes is a claim up to inner_dim only
  int inner_dim = 0;
  LiftingVerdict inner;
  IsofibrationReport isofibration;
};

CategoricalFibrationReport check_categorical_fibration(const SimplicialMap& p, int max_dim = -1,
                                                       int word_budget = kDefaultWordBudget,
                                                       std::uint64_t node_budget = kDefaultNodeBudget);

/// Whether a finite simplicial set collapses to a single vertex by elementary
/// collapses (each one undoes a horn filling).  False means inconclusive.
bool collapses_to_point(const SimplicialSet& x);

struct DwyerKanReport {
  Tri essentially_surjective = Tri::Unknown;
  Tri fully_faithful = Tri::Unknown;
  std::vector<std::string> notes;
};

/// Essential surjectivity on h; full faithfulness through exact pi_0 of the
/// left mapping spaces (computed up to `up_to`, default dim of the target)
/// and a collapse test per component.
DwyerKanReport dwyer_kan_check(const SimplicialMap& f, int word_budget = kDefaultWordBudget, int up_to = -1);

}  // namespace sset

#endif  // SSET_HOMOTOPY_HPP
