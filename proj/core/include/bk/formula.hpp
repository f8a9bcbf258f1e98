#ifndef BK_FORMULA_HPP
#define BK_FORMULA_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bk/model.hpp"

namespace bk {

/// Modal formula over a belief structure.
///
/// Surface syntax (ASCII):
///
///   formula := or ; or := and { "or" and } ; and := unary { "and" unary } ;
///   unary   := "not" unary | "[[" R "]]" unary | "[" R "]" unary
///            | "<" R ">" unary | atom ;
///   atom    := "true" | "false" | NAME | "(" formula ")" ;
///
/// "[R] f" is the box (x believes f), "[[R]] f" the assumes modality (the
/// image of x is exactly the extension of f), and "<R> f" the diamond.
struct Formula {
  enum class Kind { True, False, Atom, Not, And, Or, Box, Diamond, BoxPlus };

  Kind kind = Kind::True;
  /// Atom name, or relation name for the three modalities.
  std::string name;
  std::vector<Formula> args;

  static Formula truth() { return {Kind::True, {}, {}}; }
  static Formula falsity() { return {Kind::False, {}, {}}; }
  static Formula atom(std::string n) { return {Kind::Atom, std::move(n), {}}; }
  static Formula negate(Formula f) { return {Kind::Not, {}, {std::move(f)}}; }
  static Formula conj(Formula f, Formula g) { return {Kind::And, {}, {std::move(f), std::move(g)}}; }
  static Formula disj(Formula f, Formula g) { return {Kind::Or, {}, {std::move(f), std::move(g)}}; }
  static Formula box(std::string rel, Formula f) { return {Kind::Box, std::move(rel), {std::move(f)}}; }
  static Formula diamond(std::string rel, Formula f) {
    return {Kind::Diamond, std::move(rel), {std::move(f)}};
  }
  static Formula boxplus(std::string rel, Formula f) {
    return {Kind::BoxPlus, std::move(rel), {std::move(f)}};
  }

  bool is_modal() const {
    return kind == Kind::Box || kind == Kind::Diamond || kind == Kind::BoxPlus;
  }

  friend bool operator==(const Formula&, const Formula&) = default;
};

/// Maximum nesting accepted by parse_formula.
inline constexpr std::size_t kMaxFormulaDepth = 1000;

/// Throws ParseError carrying the byte offset of the offending token
/// (the input length when the input ends early).
Formula parse_formula(std::string_view text);

/// Prints with the minimal parentheses needed for parse_formula to rebuild
/// the same tree.
std::string to_string(const Formula& f);

/// True for the regular fragment: true, atoms, "and", and diamonds.
bool is_regular(const Formula& f);

/// A formula with every node annotated by the sort it speaks about and
/// every atom resolved to a predicate.
struct SortedNode {
  Formula::Kind kind = Formula::Kind::True;
  std::string sort;
  std::string name;
  /// Resolved predicate, for atoms only.
  Predicate atom;
  std::vector<SortedNode> args;
};

struct SortedFormula {
  SortedNode root;
  const std::string& sort() const { return root.sort; }
};

/// Extra atom definitions consulted before the structure's named predicates.
using AtomBindings = std::map<std::string, Predicate>;

/// Infers sorts bottom-up. Throws LookupError for unknown atoms or
/// relations and SortError for conflicts or a root sort that cannot be
/// determined without `hint`.
SortedFormula sort_check(const Formula& f, const BeliefStructure& m,
                         const std::optional<std::string>& hint = std::nullopt,
                         const AtomBindings& bindings = {});

/// Re-derives the sort discipline on an annotated tree; true when consistent.
bool sorts_consistent(const SortedFormula& f, const BeliefStructure& m);

bool eval(const SortedFormula& f, const BeliefStructure& m, State x);

/// {x | eval(f, m, x)}.
Predicate extension(const SortedFormula& f, const BeliefStructure& m);

}  // namespace bk

#endif  // BK_FORMULA_HPP
