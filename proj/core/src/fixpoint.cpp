#include "bk/fixpoint.hpp"

#include <algorithm>

#include "bk/error.hpp"
#include "bk/formula.hpp"

namespace bk {

namespace {

void check_pair(const Relation& ra, const Relation& rb) {
  if (ra.to_sort() != rb.from_sort() || rb.to_sort() != ra.from_sort() ||
      ra.to_size() != rb.from_size() || rb.to_size() != ra.from_size())
    throw SortError("expected Ra: A->B and Rb: B->A, got " + ra.from_sort() + "->" + ra.to_sort() +
                    " and " + rb.from_sort() + "->" + rb.to_sort());
}

void check_on_base(const Relation& ra, const Predicate& p, State c) {
  if (p.sort != ra.from_sort() || p.width() != ra.from_size())
    throw SortError("predicate on sort '" + p.sort + "' but the base sort is '" + ra.from_sort() +
                    "'");
  if (c >= ra.from_size())
    throw RangeError("state " + std::to_string(c) + " out of range for sort '" + ra.from_sort() +
                     "' of size " + std::to_string(ra.from_size()));
}

std::string join_failing(const BkAssumptions& a) {
  std::string s;
  for (const auto& l : a.failing()) s += (s.empty() ? "" : ",") + l;
  return s;
}

}  // namespace

PropOperator PropOperator::from_name(std::string_view name) {
  if (name == "id") return id();
  if (name == "false") return const_false();
  if (name == "true") return const_true();
  if (name == "not") return negation();
  throw LookupError("unknown propositional operator '" + std::string(name) +
                    "' (expected id, false, true or not)");
}

std::vector<bool> PropOperator::fixpoints() const {
  std::vector<bool> out;
  for (bool v : {false, true})
    if ((*this)(v) == v) out.push_back(v);
  return out;
}

std::string PropOperator::name() const {
  if (*this == id()) return "id";
  if (*this == const_false()) return "false";
  if (*this == const_true()) return "true";
  return "not";
}

std::vector<std::string> BkAssumptions::failing() const {
  std::vector<std::string> out;
  if (!a1) out.emplace_back("A1");
  if (!a2) out.emplace_back("A2");
  if (!a3) out.emplace_back("A3");
  return out;
}

Predicate q_predicate(const Relation& ra, const Relation& rb) {
  check_pair(ra, rb);
  return diagonal(compose(ra, rb));
}

Predicate q_predicate(const BeliefStructure& m, const std::string& ra, const std::string& rb) {
  return q_predicate(m.relation(ra), m.relation(rb));
}

BkAssumptions check_bk_assumptions(const Relation& ra, const Relation& rb, const Predicate& p,
                                   State c) {
  check_pair(ra, rb);
  check_on_base(ra, p, c);
  BkAssumptions out{true, true, false};
  for (State y = 0; y < ra.to_size(); ++y) {
    if (!ra.test(c, y)) continue;
    out.a3 = true;
    for (State x = 0; x < ra.from_size(); ++x) {
      if (rb.test(y, x) && !p.contains(x)) out.a1 = false;
      if (p.contains(x) && !rb.test(y, x)) out.a2 = false;
    }
  }
  return out;
}

BkAssumptions check_bk_assumptions(const BeliefStructure& m, const std::string& ra,
                                   const std::string& rb, const Predicate& p, State c) {
  return check_bk_assumptions(m.relation(ra), m.relation(rb), p, c);
}

BasicLemmaResult basic_lemma_verify(const Relation& ra, const Relation& rb, const Predicate& p,
                                    State c) {
  BkAssumptions a = check_bk_assumptions(ra, rb, p, c);
  if (!a.all())
    throw PreconditionError("assumptions fail at state " + std::to_string(c) + ": " +
                            join_failing(a));
  BasicLemmaResult r;
  r.p_at_c = p.contains(c);
  for (State y = 0; y < ra.to_size(); ++y)
    if (ra.test(c, y) && rb.test(y, c)) r.q_at_c = true;
  return r;
}

BasicLemmaResult basic_lemma_verify(const BeliefStructure& m, const std::string& ra,
                                    const std::string& rb, const Predicate& p, State c) {
  return basic_lemma_verify(m.relation(ra), m.relation(rb), p, c);
}

OperatorFixpoint operator_fixpoint(const Relation& ra, const Relation& rb, PropOperator op,
                                   State c) {
  OperatorFixpoint out;
  out.q = q_predicate(ra, rb);
  // p is defined from q alone, without reference to c.
  BitSet p(out.q.width());
  for (State x = 0; x < p.width(); ++x) p.assign(x, op(out.q.contains(x)));
  out.p = Predicate(ra.from_sort(), std::move(p));
  BasicLemmaResult lemma = basic_lemma_verify(ra, rb, out.p, c);
  out.value = lemma.q_at_c;
  out.is_fixpoint = op(out.value) == out.value;
  return out;
}

OperatorFixpoint operator_fixpoint(const BeliefStructure& m, const std::string& ra,
                                   const std::string& rb, PropOperator op, State c) {
  return operator_fixpoint(m.relation(ra), m.relation(rb), op, c);
}

DiagonalCertificate diagonal_certificate(const Relation& ra, const Relation& rb,
                                         const PredicateFamily* definable_class) {
  DiagonalCertificate cert;
  cert.q = q_predicate(ra, rb);
  cert.d = Predicate(cert.q.sort, cert.q.members.complement());
  if (definable_class) {
    if (definable_class->sort() != ra.from_sort() || definable_class->width() != ra.from_size())
      throw SortError("definable class is not on the base sort '" + ra.from_sort() + "'");
    cert.d_in_class = definable_class->contains(cert.d.members);
  }
  cert.per_state.reserve(ra.from_size());
  for (State c = 0; c < ra.from_size(); ++c) {
    BkAssumptions a = check_bk_assumptions(ra, rb, cert.d, c);
    ++cert.searched;
    if (a.all() && !cert.witness_found) {
      cert.witness_found = true;
      cert.witness = c;
    }
    cert.per_state.push_back(a);
  }
  return cert;
}

DiagonalCertificate diagonal_certificate(const BeliefStructure& m, const std::string& ra,
                                         const std::string& rb,
                                         const PredicateFamily* definable_class) {
  return diagonal_certificate(m.relation(ra), m.relation(rb), definable_class);
}

bool GeneralizedAssumptions::all() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](bool v) { return v; });
}

GeneralizedAssumptions generalized_assumptions_check(const BeliefStructure& m,
                                                     const BeliefCycle& cycle, const Predicate& p,
                                                     State c) {
  const std::string base = cycle_base_sort(m, cycle);
  if (p.sort != base || p.width() != m.sort_size(base))
    throw SortError("predicate on sort '" + p.sort + "' but the cycle's base sort is '" + base +
                    "'");
  if (c >= m.sort_size(base))
    throw RangeError("state " + std::to_string(c) + " out of range for sort '" + base +
                     "' of size " + std::to_string(m.sort_size(base)));

  const std::size_t n = cycle.length() - 1;
  const auto& rels = cycle.relations;
  auto under_boxes = [&](std::size_t k, Formula inner) {
    for (std::size_t i = k; i-- > 0;) inner = Formula::box(rels[i], std::move(inner));
    return inner;
  };

  std::vector<Formula> conjuncts;
  conjuncts.push_back(under_boxes(n, Formula::boxplus(rels[n], Formula::atom("p"))));
  for (std::size_t k = 0; k < n; ++k)
    conjuncts.push_back(under_boxes(k, Formula::diamond(rels[k], Formula::truth())));

  AtomBindings bindings{{"p", p}};
  GeneralizedAssumptions out;
  for (const auto& f : conjuncts) {
    SortedFormula sf = sort_check(f, m, base, bindings);
    out.labels.push_back(to_string(f));
    out.verdicts.push_back(eval(sf, m, c));
  }
  return out;
}

GeneralizedLemmaResult generalized_basic_lemma_verify(const BeliefStructure& m,
                                                      const BeliefCycle& cycle, const Predicate& p,
                                                      State c) {
  GeneralizedAssumptions a = generalized_assumptions_check(m, cycle, p, c);
  if (!a.all()) {
    std::string failing;
    for (std::size_t i = 0; i < a.verdicts.size(); ++i)
      if (!a.verdicts[i]) failing += (failing.empty() ? "" : "; ") + a.labels[i];
    throw PreconditionError("generalized assumptions fail at state " + std::to_string(c) + ": " +
                            failing);
  }
  Relation composite = compose_cycle(m, cycle);
  return {composite.test(c, c), p.contains(c)};
}

}  // namespace bk
