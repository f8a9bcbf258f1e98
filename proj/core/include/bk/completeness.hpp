#ifndef BK_COMPLETENESS_HPP
#define BK_COMPLETENESS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "bk/model.hpp"

namespace bk {

/// Outcome of a "for every p in the family there is a state x such that
/// ..." check. When the check holds, `witnesses` pairs every family member
/// (in family order) with its least witness. When it fails, `witnesses` is
/// empty and `failing_predicate` is the first member without one.
struct WitnessReport {
  bool holds = false;
  std::vector<std::pair<BitSet, State>> witnesses;
  std::optional<BitSet> failing_predicate;
  std::optional<std::size_t> failing_index;
};

/// {x | image(R, x) = p}: the states that assume p.
Predicate boxplus_set(const Relation& r, const Predicate& p);

/// {x | image(R, x) is a subset of p}: the states that believe p.
Predicate box_set(const Relation& r, const Predicate& p);

/// Every p in the family is assumed: some x has image(R, x) = p.
WitnessReport is_assumption_complete(const Relation& r, const PredicateFamily& family);

/// Every p in the family is believed with a nonempty image:
/// some x has {} != image(R, x), image(R, x) a subset of p.
WitnessReport is_belief_complete(const Relation& r, const PredicateFamily& family);

/// Weak point surjectivity of an endogenous relation. On A -> A this is the
/// same test as is_assumption_complete.
WitnessReport is_wps(const Relation& r, const PredicateFamily& family);

/// Very weak point surjectivity: some x has R(x, x) iff p(x).
WitnessReport is_vwps(const Relation& r, const PredicateFamily& family);

}  // namespace bk

#endif  // BK_COMPLETENESS_HPP
