#ifndef BK_COALGEBRA_HPP
#define BK_COALGEBRA_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bk/error.hpp"
#include "bk/model.hpp"

namespace bk {

/// Strategy sets for the two agents and the powerset bound: only subsets of
/// cardinality strictly below `m` are kept.
struct StrategyProfile {
  std::size_t sa = 1;
  std::size_t sb = 1;
  std::size_t m = 2;

  /// Throws PreconditionError unless sa, sb, m >= 1.
  void validate() const;
};

/// Default cap on elements per carrier per stage.
inline constexpr std::size_t kDefaultStageCap = 20000;

/// Sorted list of pair codes. At level k+1 an X element is a subset of
/// S_b x Y_k, each pair (s, y) coded as s * |Y_k| + y; Y elements are
/// symmetric. The single level-0 element is the empty list.
using Term = std::vector<std::uint32_t>;

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

/// One carrier of a stage together with its connecting map to the level
/// below.
struct Carrier {
  std::vector<Term> elements;
  std::unordered_map<Term, std::uint32_t, TermHash> index;
  /// down[i] is the image of element i at the level below; empty at level 0.
  std::vector<std::uint32_t> down;
  /// Size of the carrier at the level below (0 at level 0).
  std::size_t down_size = 0;

  std::size_t size() const { return elements.size(); }
  std::optional<std::uint32_t> find(const Term& t) const;
  /// The connecting map to the level below is a bijection.
  bool down_bijective() const;
  bool down_surjective() const;
};

struct Stage {
  std::size_t level = 0;
  Carrier x;
  Carrier y;
};

struct TerminalSequence {
  StrategyProfile profile;
  std::vector<Stage> stages;
  /// Least k >= 1 at which both maps X_k -> X_{k-1} and Y_k -> Y_{k-1}
  /// are bijections.
  std::optional<std::size_t> converged_at;
};

/// Raised when a stage would exceed the cap. Carries every stage completed
/// before the limit was hit.
class CapExceeded : public ResourceLimitError {
 public:
  CapExceeded(const std::string& what, TerminalSequence partial)
      : ResourceLimitError(what), partial_(std::move(partial)) {}
  const TerminalSequence& partial() const { return partial_; }
  std::size_t last_completed_level() const { return partial_.stages.size() - 1; }

 private:
  TerminalSequence partial_;
};

/// All subsets of {0..n-1} with fewer than m elements, as sorted lists in
/// lexicographic order.
std::vector<Term> bounded_powerset(std::size_t n, std::size_t m);

/// sum_{i<m} C(n, i), saturating at UINT64_MAX.
std::uint64_t bounded_powerset_count(std::uint64_t n, std::size_t m);

/// Level-0 stage: both carriers are the one-point set.
Stage initial_stage();

/// Stage k+1 from stage k: X_{k+1} = P_{<m}(S_b x Y_k),
/// Y_{k+1} = P_{<m}(S_a x X_k), with connecting maps by direct image. Throws
/// ResourceLimitError when a carrier would exceed `cap`.
Stage functor_apply(const Stage& stage, const StrategyProfile& profile,
                    std::size_t cap = kDefaultStageCap);

/// Stages 0..depth. Throws CapExceeded with the completed prefix.
TerminalSequence terminal_sequence(const StrategyProfile& profile, std::size_t depth,
                                   std::size_t cap = kDefaultStageCap);

/// Canonical rendering: "*" at level 0, otherwise "{(s,term),...}".
std::string render_x_term(const TerminalSequence& seq, std::size_t level, std::uint32_t index);
std::string render_y_term(const TerminalSequence& seq, std::size_t level, std::uint32_t index);

/// Predicates of one extracted family, with the data that produced them.
struct ExtractedFamily {
  /// Base subsets p0 (terms at level d+1) the predicates are pulled back from.
  std::vector<Term> bases;
  /// States (s, p0) assuming each predicate, one per strategy of the other
  /// agent.
  std::vector<std::vector<State>> witnesses;
};

/// Belief model read off a finite stage d >= 1:
///   U_a = S_a x X_{d+1}, U_b = S_b x Y_{d+1} (state (s, t) is s * |X_{d+1}| + t)
///   Ra((s, t), (s', t')) iff (s', down(t')) in t, Rb symmetric
/// Sorts are "Ua" and "Ub", relations "Ra" and "Rb", families "PUb"
/// (predicates on U_b) and "PUa".
struct ExtractedModel {
  BeliefStructure model;
  std::size_t level = 0;
  std::size_t m = 0;
  ExtractedFamily on_ub;
  ExtractedFamily on_ua;
};

/// Throws PreconditionError when d = 0 or the sequence lacks stage d+1.
ExtractedModel extract_belief_model(const TerminalSequence& seq, std::size_t d);

struct RetractionReport {
  bool a_side = false;
  bool b_side = false;
  std::size_t a_checked = 0;
  std::size_t b_checked = 0;
  bool holds() const { return a_side && b_side; }
};

/// Checks r after s is the identity on each extracted family, where s sends
/// a predicate's base p0 to the type term p0 and r sends a type to the
/// image predicate of any state carrying it.
RetractionReport check_retraction(const TerminalSequence& seq, std::size_t d);

struct ClosureRow {
  std::string side;
  std::string construction;
  std::size_t holds = 0;
  std::size_t fails = 0;
  std::size_t not_measurable = 0;
};

struct ClosureReport {
  std::vector<ClosureRow> rows;
  bool all_hold() const;
};

/// Closure of the extracted families under intersection and union (only
/// where the base result is nonempty and smaller than m) and under the
/// assumes / believes images through Ra and Rb.
ClosureReport verify_closure(const ExtractedModel& extracted);

}  // namespace bk

#endif  // BK_COALGEBRA_HPP
