#include "bk/composition.hpp"

#include "bk/error.hpp"

namespace bk {

namespace {

void require_nonempty_members(const PredicateFamily& f, const char* which) {
  if (auto i = f.index_of(BitSet(f.width())))
    throw ValidationError(std::string("empty predicate in family ") + which +
                              "; predicates must be nonempty",
                          "/predicates/" + std::to_string(*i));
}

}  // namespace

CompositionReport composition_lemma_check(const Relation& r_ab, const Relation& r_bc,
                                          const PredicateFamily& family_b,
                                          const PredicateFamily& family_c) {
  if (r_ab.to_sort() != r_bc.from_sort() || r_ab.to_size() != r_bc.from_size())
    throw SortError("relations do not chain: " + r_ab.from_sort() + "->" + r_ab.to_sort() +
                    " then " + r_bc.from_sort() + "->" + r_bc.to_sort());
  require_nonempty_members(family_b, "P(B)");
  require_nonempty_members(family_c, "P(C)");

  CompositionReport report;
  report.hypothesis_1 = is_belief_complete(r_ab, family_b);
  report.hypothesis_2 = is_assumption_complete(r_bc, family_c);
  report.hypothesis_3_holds = true;
  for (const BitSet& p : family_c.members()) {
    Predicate states = boxplus_set(r_bc, Predicate(family_c.sort(), p));
    bool in = family_b.contains(states.members);
    report.hypothesis_3.push_back({p, states.members, in});
    report.hypothesis_3_holds = report.hypothesis_3_holds && in;
  }
  report.conclusion = is_assumption_complete(compose(r_ab, r_bc), family_c);
  report.consistent = !report.hypotheses_hold() || report.conclusion.holds;
  return report;
}

Relation characteristic_relation(const Predicate& p, const std::string& target_sort) {
  Relation s(p.sort, p.width(), target_sort, 2);
  for (State y = 0; y < p.width(); ++y) s.set(y, p.contains(y) ? 1 : 0);
  return s;
}

Counterexample belief_incompleteness_counterexample(const Relation& r, const Predicate& p) {
  if (p.sort != r.to_sort() || p.width() != r.to_size())
    throw SortError("predicate on sort '" + p.sort + "' does not match target sort '" +
                    r.to_sort() + "'");
  if (p.empty()) throw PreconditionError("predicate is empty; predicates must be nonempty");
  PredicateFamily single(p.sort, p.width(), {p.members});
  if (is_belief_complete(r, single).holds)
    throw PreconditionError("relation is belief-complete for " + p.members.to_string() +
                            "; no counterexample exists");

  std::string c_sort = "C";
  while (c_sort == r.from_sort() || c_sort == r.to_sort()) c_sort += "'";

  Counterexample ce;
  ce.p = p;
  ce.s = characteristic_relation(p, c_sort);
  ce.family_c = PredicateFamily(c_sort, 2, {BitSet(2, {1})}, true);
  ce.composite = compose(r, ce.s);
  ce.s_assumption_complete = is_assumption_complete(ce.s, ce.family_c).holds;
  ce.composite_assumption_complete = is_assumption_complete(ce.composite, ce.family_c).holds;

  for (State x = 0; x < r.from_size(); ++x) {
    const BitSet& row = r.row(x);
    if (row.none()) {
      ce.evidence.push_back({x, Evidence::Kind::EmptyImage, std::nullopt});
      continue;
    }
    // Not empty and not believed, so some y outside p is reachable.
    BitSet escaping = row & p.members.complement();
    ce.evidence.push_back({x, Evidence::Kind::EscapingY, escaping.first()});
  }
  return ce;
}

Characterization characterize_belief_completeness(const Relation& r,
                                                  const PredicateFamily& family_b) {
  require_nonempty_members(family_b, "P(B)");
  Characterization out;
  out.belief = is_belief_complete(r, family_b);
  out.complete = out.belief.holds;
  if (!out.complete)
    out.counterexample = belief_incompleteness_counterexample(
        r, Predicate(family_b.sort(), *out.belief.failing_predicate));
  return out;
}

}  // namespace bk
