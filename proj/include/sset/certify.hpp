// Cellular anodyne certificates: horn-by-horn expansions of a subcomplex,
// their verification and exhaustive search, and a semi-decision procedure
// for inner anodyne monomorphisms.

#ifndef SSET_CERTIFY_HPP
#define SSET_CERTIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sset/factorize.hpp"
#include "sset/homotopy.hpp"
#include "sset/lifting.hpp"

namespace sset {

enum class AnodyneClass { Inner, Left, Right, Kan };
const char* to_string(AnodyneClass c);
std::optional<AnodyneClass> parse_anodyne_class(const std::string& s);
/// Whether the horn Λ^n_i belongs to the class.
bool horn_allowed(AnodyneClass c, unsigned n, unsigned i);

/// Fill the horn Λ^n_i spanned by `top` minus its face `face` (both cells of
/// the codomain, named).
struct CertificateStep {
  unsigned n = 0, i = 0;
  std::string top, face;
  bool operator==(const CertificateStep&) const = default;
};

struct Certificate {
  AnodyneClass cls = AnodyneClass::Inner;
  std::vector<CertificateStep> steps;
};

std::string serialize_certificate(const Certificate& c);
/// Throws ParseError on malformed input.
Certificate parse_certificate(const std::string& text);

/// Replays the steps from the image of A.  False on unknown cells, a step
/// outside the class, a step creating an existing cell or a face that is not
/// d_i of the top, or when the cells of B are not exactly reached.  Throws
/// Error when a step's horn is not present (a face other than d_i missing).
bool verify_certificate(const Certificate& c, const MonoInclusion& i);

struct CertificateSearch {
  Outcome outcome = Outcome::None;  // None: no cellular certificate exists
  std::optional<Certificate> certificate;
  std::uint64_t nodes = 0;
};

/// Complete depth-first search over attachment orders, trying steps in
/// (top dimension, top index, i) order and remembering dead states.
CertificateSearch search_certificate(const MonoInclusion& i, AnodyneClass c,
                                     std::uint64_t node_budget = kDefaultNodeBudget);

/// The certificate of a stage of the small object argument.
Certificate certificate_of_stage(const std::vector<HornAttachment>& attachments, const SimplicialSet& stage,
                                 AnodyneClass c = AnodyneClass::Inner);

enum class ClassifierKind { InnerAnodyne, NotInnerAnodyne, Unknown };
const char* to_string(ClassifierKind k);

struct ClassifierVerdict {
  ClassifierKind kind = ClassifierKind::Unknown;
  std::string reason;  // not-vertex-bijective, equivalence-refuted
  std::optional<Certificate> certificate;
  Outcome cellular = Outcome::None;  // certificate search outcome
  std::vector<std::string> diagnostics;
};

/// Vertex bijectivity, then an inner certificate search, then a comparison
/// of Exact hom-sets of h(A) and h(B) along i.
ClassifierVerdict theoremC_classify(const MonoInclusion& i, std::uint64_t node_budget = kDefaultNodeBudget,
                                    int word_budget = kDefaultWordBudget);

struct TwoOutOfThreeReport {
  ClassifierVerdict u, v, vu;
  bool alarm = false;
  std::string note;
};

/// Classifies u, v and v.u; flags any pattern with two inner anodyne maps and
/// a refuted third.
TwoOutOfThreeReport check_two_out_of_three(const MonoInclusion& u, const MonoInclusion& v,
                                           std::uint64_t node_budget = kDefaultNodeBudget,
                                           int word_budget = kDefaultWordBudget);

}  // namespace sset

#endif  // SSET_CERTIFY_HPP
