#include "bk/completeness.hpp"

#include "bk/error.hpp"

namespace bk {

namespace {

void check_target(const Relation& r, const std::string& sort, std::size_t width,
                  const char* what) {
  if (sort != r.to_sort() || width != r.to_size())
    throw SortError(std::string(what) + " on sort '" + sort + "' does not match target sort '" +
                    r.to_sort() + "' of the relation");
}

void check_endogenous(const Relation& r) {
  if (!r.endogenous() || r.from_size() != r.to_size())
    throw SortError("expected an endogenous relation, got " + r.from_sort() + "->" + r.to_sort());
}

// Least x satisfying `ok(x, p)` for every member, in family order.
template <typename Pred>
WitnessReport search(const Relation& r, const PredicateFamily& family, Pred ok) {
  WitnessReport report;
  report.witnesses.reserve(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    const BitSet& p = family[i];
    std::optional<State> found;
    for (State x = 0; x < r.from_size(); ++x) {
      if (ok(x, p)) {
        found = x;
        break;
      }
    }
    if (!found) {
      report.witnesses.clear();
      report.failing_predicate = p;
      report.failing_index = i;
      return report;
    }
    report.witnesses.emplace_back(p, *found);
  }
  report.holds = true;
  return report;
}

}  // namespace

Predicate boxplus_set(const Relation& r, const Predicate& p) {
  check_target(r, p.sort, p.width(), "predicate");
  BitSet out(r.from_size());
  for (State x = 0; x < r.from_size(); ++x)
    if (r.row(x) == p.members) out.set(x);
  return {r.from_sort(), std::move(out)};
}

Predicate box_set(const Relation& r, const Predicate& p) {
  check_target(r, p.sort, p.width(), "predicate");
  BitSet out(r.from_size());
  for (State x = 0; x < r.from_size(); ++x)
    if (r.row(x).is_subset_of(p.members)) out.set(x);
  return {r.from_sort(), std::move(out)};
}

WitnessReport is_assumption_complete(const Relation& r, const PredicateFamily& family) {
  check_target(r, family.sort(), family.width(), "family");
  return search(r, family, [&](State x, const BitSet& p) { return r.row(x) == p; });
}

WitnessReport is_belief_complete(const Relation& r, const PredicateFamily& family) {
  check_target(r, family.sort(), family.width(), "family");
  return search(r, family, [&](State x, const BitSet& p) {
    const BitSet& row = r.row(x);
    return row.any() && row.is_subset_of(p);
  });
}

WitnessReport is_wps(const Relation& r, const PredicateFamily& family) {
  check_endogenous(r);
  check_target(r, family.sort(), family.width(), "family");
  // R(x, y) <=> p(y) for all y.
  return search(r, family, [&](State x, const BitSet& p) {
    for (State y = 0; y < r.to_size(); ++y)
      if (r.test(x, y) != p.test(y)) return false;
    return true;
  });
}

WitnessReport is_vwps(const Relation& r, const PredicateFamily& family) {
  check_endogenous(r);
  check_target(r, family.sort(), family.width(), "family");
  return search(r, family, [&](State x, const BitSet& p) { return r.test(x, x) == p.test(x); });
}

}  // namespace bk
