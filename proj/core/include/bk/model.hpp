#ifndef BK_MODEL_HPP
#define BK_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bk/bitset.hpp"

namespace bk {

/// States are dense indices 0..n-1 within their sort.
using State = std::size_t;

struct SortDecl {
  std::string name;
  std::size_t size = 0;

  friend bool operator==(const SortDecl&, const SortDecl&) = default;
};

/// A subset of one sort's carrier.
struct Predicate {
  std::string sort;
  BitSet members;

  Predicate() = default;
  Predicate(std::string sort_name, BitSet bits)
      : sort(std::move(sort_name)), members(std::move(bits)) {}

  std::size_t width() const { return members.width(); }
  bool contains(State x) const { return members.test(x); }
  bool empty() const { return members.none(); }

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// Binary relation between two sorts, stored as one bit-vector row per
/// source state.
class Relation {
 public:
  Relation() = default;
  /// Empty relation.
  Relation(std::string from_sort, std::size_t from_size, std::string to_sort,
           std::size_t to_size);

  static Relation identity(const std::string& sort, std::size_t size);
  static Relation full(std::string from_sort, std::size_t from_size, std::string to_sort,
                       std::size_t to_size);
  static Relation from_pairs(std::string from_sort, std::size_t from_size,
                             std::string to_sort, std::size_t to_size,
                             const std::vector<std::pair<State, State>>& pairs);
  /// Row x taken from bits [x*to_size, (x+1)*to_size) of `mask`.
  static Relation from_mask(std::string from_sort, std::size_t from_size, std::string to_sort,
                            std::size_t to_size, std::uint64_t mask);

  const std::string& from_sort() const { return from_sort_; }
  const std::string& to_sort() const { return to_sort_; }
  std::size_t from_size() const { return rows_.size(); }
  std::size_t to_size() const { return to_size_; }
  bool endogenous() const { return from_sort_ == to_sort_; }

  bool test(State x, State y) const { return rows_[x].test(y); }
  void set(State x, State y) { rows_.at(x).set(y); }
  /// Replaces row x; the row width must equal to_size().
  void set_row(State x, BitSet row);
  const BitSet& row(State x) const { return rows_[x]; }
  std::size_t pair_count() const;
  bool empty() const { return pair_count() == 0; }
  /// Row-major.
  std::vector<std::pair<State, State>> pairs() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::string from_sort_;
  std::string to_sort_;
  std::size_t to_size_ = 0;
  std::vector<BitSet> rows_;
};

/// Ordered, duplicate-free collection of predicates on one sort.
class PredicateFamily {
 public:
  PredicateFamily() = default;
  /// Deduplicates keeping first occurrences. Throws SortError on a
  /// predicate of the wrong sort or width, and ValidationError on an empty
  /// member when `require_nonempty` is set.
  PredicateFamily(std::string sort, std::size_t width, std::vector<BitSet> predicates,
                  bool require_nonempty = false);

  /// Every subset of the carrier, in numeric mask order.
  static PredicateFamily all_subsets(const std::string& sort, std::size_t width);

  const std::string& sort() const { return sort_; }
  std::size_t width() const { return width_; }
  bool require_nonempty() const { return require_nonempty_; }
  std::size_t size() const { return predicates_.size(); }
  bool empty() const { return predicates_.empty(); }
  const BitSet& operator[](std::size_t i) const { return predicates_[i]; }
  const std::vector<BitSet>& members() const { return predicates_; }
  Predicate predicate(std::size_t i) const { return {sort_, predicates_[i]}; }
  bool contains(const BitSet& p) const;
  std::optional<std::size_t> index_of(const BitSet& p) const;
  bool has_empty_member() const;

  friend bool operator==(const PredicateFamily&, const PredicateFamily&) = default;

 private:
  std::string sort_;
  std::size_t width_ = 0;
  std::vector<BitSet> predicates_;
  bool require_nonempty_ = false;
};

/// Relation names r_1 .. r_{n+1}; typing is checked against a structure by
/// cycle_base_sort.
struct BeliefCycle {
  std::vector<std::string> relations;

  std::size_t length() const { return relations.size(); }
  friend bool operator==(const BeliefCycle&, const BeliefCycle&) = default;
};

/// Finite multi-sorted belief structure. Built incrementally; every add_*
/// validates against what is already present, so a fully built structure
/// satisfies all invariants.
class BeliefStructure {
 public:
  void add_sort(const std::string& name, std::size_t size);
  void add_relation(const std::string& name, Relation relation);
  void add_predicate(const std::string& name, Predicate predicate);
  void add_family(const std::string& name, PredicateFamily family);
  void add_cycle(const std::string& name, BeliefCycle cycle);

  const std::vector<SortDecl>& sorts() const { return sorts_; }
  bool has_sort(const std::string& name) const;
  std::size_t sort_size(const std::string& name) const;

  const std::map<std::string, Relation>& relations() const { return relations_; }
  const std::map<std::string, Predicate>& predicates() const { return predicates_; }
  const std::map<std::string, PredicateFamily>& families() const { return families_; }
  const std::map<std::string, BeliefCycle>& cycles() const { return cycles_; }

  const Relation& relation(const std::string& name) const;
  const Predicate& predicate(const std::string& name) const;
  const PredicateFamily& family(const std::string& name) const;
  const BeliefCycle& cycle(const std::string& name) const;

  friend bool operator==(const BeliefStructure&, const BeliefStructure&) = default;

 private:
  std::vector<SortDecl> sorts_;
  std::map<std::string, Relation> relations_;
  std::map<std::string, Predicate> predicates_;
  std::map<std::string, PredicateFamily> families_;
  std::map<std::string, BeliefCycle> cycles_;
};

/// {y | R(x, y)}. Throws RangeError when x is outside the source carrier.
Predicate image(const Relation& r, State x);

/// R ; S, i.e. {(x, z) | exists y. R(x, y) and S(y, z)}.
Relation compose(const Relation& r, const Relation& s);

/// {x | R(x, x)}; R must be endogenous.
Predicate diagonal(const Relation& r);

/// Checks the cycle is well typed in `m` and returns its base sort A.
std::string cycle_base_sort(const BeliefStructure& m, const BeliefCycle& cycle);

/// R_1 ; ... ; R_{n+1} : A -> A.
Relation compose_cycle(const BeliefStructure& m, const BeliefCycle& cycle);

}  // namespace bk

#endif  // BK_MODEL_HPP
