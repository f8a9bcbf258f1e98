#ifndef BK_FIXPOINT_HPP
#define BK_FIXPOINT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bk/model.hpp"

namespace bk {

/// A unary operator on truth values, given by its table. Over a fixed finite
/// model every sentence denotes a truth value, so these four tables exhaust
/// the definable propositional operators.
struct PropOperator {
  bool at_false = false;
  bool at_true = true;

  static constexpr PropOperator id() { return {false, true}; }
  static constexpr PropOperator const_false() { return {false, false}; }
  static constexpr PropOperator const_true() { return {true, true}; }
  static constexpr PropOperator negation() { return {true, false}; }
  static std::vector<PropOperator> all() { return {id(), const_false(), const_true(), negation()}; }
  /// Accepts "id", "false", "true", "not". Throws LookupError otherwise.
  static PropOperator from_name(std::string_view name);

  constexpr bool operator()(bool v) const { return v ? at_true : at_false; }
  /// Truth values v with O(v) = v, ascending.
  std::vector<bool> fixpoints() const;
  std::string name() const;

  friend bool operator==(const PropOperator&, const PropOperator&) = default;
};

/// Verdicts of the three BK sequents at a candidate state c:
///   A1  Ra(c, y) and Rb(y, x) entails p(x)
///   A2  Ra(c, y) and p(x)     entails Rb(y, x)
///   A3  exists y. Ra(c, y)
struct BkAssumptions {
  bool a1 = false;
  bool a2 = false;
  bool a3 = false;

  bool all() const { return a1 && a2 && a3; }
  /// Labels of the failing conjuncts, e.g. {"A1", "A3"}.
  std::vector<std::string> failing() const;
};

/// q(x) = exists y. Ra(x, y) and Rb(y, x), i.e. the diagonal of Ra ; Rb.
Predicate q_predicate(const Relation& ra, const Relation& rb);
Predicate q_predicate(const BeliefStructure& m, const std::string& ra, const std::string& rb);

BkAssumptions check_bk_assumptions(const Relation& ra, const Relation& rb, const Predicate& p,
                                   State c);
BkAssumptions check_bk_assumptions(const BeliefStructure& m, const std::string& ra,
                                   const std::string& rb, const Predicate& p, State c);

struct BasicLemmaResult {
  bool p_at_c = false;
  bool q_at_c = false;
  bool holds() const { return p_at_c == q_at_c; }
};

/// Evaluates both sides of p(c) <=> q(c). Throws PreconditionError when
/// A1-A3 do not hold at c.
BasicLemmaResult basic_lemma_verify(const Relation& ra, const Relation& rb, const Predicate& p,
                                    State c);
BasicLemmaResult basic_lemma_verify(const BeliefStructure& m, const std::string& ra,
                                    const std::string& rb, const Predicate& p, State c);

struct OperatorFixpoint {
  Predicate q;
  /// p = O after q, the predicate the assumptions are checked against.
  Predicate p;
  /// q(c).
  bool value = false;
  /// O(value) == value; false only if the construction is broken.
  bool is_fixpoint = false;
};

/// Sets p(x) = O(q(x)), requires A1-A3 for p at c, and returns q(c) as a
/// fixpoint of O. Throws PreconditionError when the assumptions fail, which
/// for O = negation is every input.
OperatorFixpoint operator_fixpoint(const Relation& ra, const Relation& rb, PropOperator op,
                                   State c);
OperatorFixpoint operator_fixpoint(const BeliefStructure& m, const std::string& ra,
                                   const std::string& rb, PropOperator op, State c);

struct DiagonalCertificate {
  Predicate q;
  /// not q.
  Predicate d;
  std::size_t searched = 0;
  bool witness_found = false;
  std::optional<State> witness;
  /// Assumption verdicts for p = d at each candidate c, ascending.
  std::vector<BkAssumptions> per_state;
  /// Set when a definable class was supplied: whether d belongs to it. When
  /// it does not, the impossibility argument does not apply to that class.
  std::optional<bool> d_in_class;
};

/// Checks every candidate c against the assumptions for the diagonal
/// predicate d = not q. No c can pass.
DiagonalCertificate diagonal_certificate(const Relation& ra, const Relation& rb,
                                         const PredicateFamily* definable_class = nullptr);
DiagonalCertificate diagonal_certificate(const BeliefStructure& m, const std::string& ra,
                                         const std::string& rb,
                                         const PredicateFamily* definable_class = nullptr);

/// The n+1 conjuncts of the generalized assumptions for a cycle
/// R_1, ..., R_{n+1}: first the chain [R_1]...[R_n][[R_{n+1}]] p, then the
/// seriality chains [R_1]...[R_{k-1}]<R_k> true for k = 1..n.
struct GeneralizedAssumptions {
  std::vector<std::string> labels;
  std::vector<bool> verdicts;

  bool all() const;
};

/// Evaluated through the formula module, with p bound as an atom.
GeneralizedAssumptions generalized_assumptions_check(const BeliefStructure& m,
                                                     const BeliefCycle& cycle, const Predicate& p,
                                                     State c);

struct GeneralizedLemmaResult {
  /// (c, c) in R_1 ; ... ; R_{n+1}.
  bool composite_at_c = false;
  bool p_at_c = false;
  bool holds() const { return composite_at_c == p_at_c; }
};

/// Throws PreconditionError unless every generalized conjunct holds at c.
GeneralizedLemmaResult generalized_basic_lemma_verify(const BeliefStructure& m,
                                                      const BeliefCycle& cycle, const Predicate& p,
                                                      State c);

}  // namespace bk

#endif  // BK_FIXPOINT_HPP
