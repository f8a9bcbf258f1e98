#ifndef BK_COMPOSITION_HPP
#define BK_COMPOSITION_HPP

#include <optional>
#include <vector>

#include "bk/completeness.hpp"
#include "bk/model.hpp"

namespace bk {

/// Comprehension entry: the states of B assuming p (via R_bc), and whether
/// that set is a member of P(B).
struct ComprehensionEntry {
  BitSet p;
  BitSet boxplus;
  bool in_family = false;
};

/// Hypotheses and conclusion of the gluing lemma for R_ab ; R_bc:
///   1. R_ab is belief-complete for P(B)
///   2. R_bc is assumption-complete for P(C)
///   3. for every p in P(C), the states assuming p form a member of P(B)
/// conclusion: R_ab ; R_bc is assumption-complete for P(C).
struct CompositionReport {
  WitnessReport hypothesis_1;
  WitnessReport hypothesis_2;
  std::vector<ComprehensionEntry> hypothesis_3;
  bool hypothesis_3_holds = false;
  WitnessReport conclusion;
  /// False only when every hypothesis holds and the conclusion does not.
  bool consistent = true;

  bool hypotheses_hold() const {
    return hypothesis_1.holds && hypothesis_2.holds && hypothesis_3_holds;
  }
};

/// Both families must consist of nonempty predicates (ValidationError
/// otherwise); sorts must chain A -> B -> C (SortError otherwise).
CompositionReport composition_lemma_check(const Relation& r_ab, const Relation& r_bc,
                                          const PredicateFamily& family_b,
                                          const PredicateFamily& family_c);

/// S : B -> {0, 1} with S(y) = {1} when y is in p and {0} otherwise. State
/// 1 of the two-element sort means "in p".
Relation characteristic_relation(const Predicate& p, const std::string& target_sort = "C");

struct Evidence {
  enum class Kind { EmptyImage, EscapingY };
  State x = 0;
  Kind kind = Kind::EmptyImage;
  /// For EscapingY: the least y outside p with r(x, y).
  std::optional<State> y;
};

/// Finite certificate that r is not belief-complete for p: a target
/// relation S that is assumption-complete for {{1}} while r ; S is not.
struct Counterexample {
  Predicate p;
  Relation s;
  PredicateFamily family_c;
  Relation composite;
  std::vector<Evidence> evidence;
  bool s_assumption_complete = false;
  bool composite_assumption_complete = true;

  bool valid() const { return s_assumption_complete && !composite_assumption_complete; }
};

/// Throws PreconditionError when p is empty or r is belief-complete for p.
Counterexample belief_incompleteness_counterexample(const Relation& r, const Predicate& p);

struct Characterization {
  bool complete = false;
  WitnessReport belief;
  /// Built for the first failing predicate when incomplete.
  std::optional<Counterexample> counterexample;
};

/// Decides belief-completeness of r for P(B); when it fails, returns the
/// counterexample composition that exhibits the failure.
Characterization characterize_belief_completeness(const Relation& r,
                                                  const PredicateFamily& family_b);

}  // namespace bk

#endif  // BK_COMPOSITION_HPP
