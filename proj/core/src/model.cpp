#include "bk/model.hpp"

#include <algorithm>
#include <unordered_set>

#include "bk/error.hpp"

namespace bk {

Relation::Relation(std::string from_sort, std::size_t from_size, std::string to_sort,
                   std::size_t to_size)
    : from_sort_(std::move(from_sort)),
      to_sort_(std::move(to_sort)),
      to_size_(to_size),
      rows_(from_size, BitSet(to_size)) {}

Relation Relation::identity(const std::string& sort, std::size_t size) {
  Relation r(sort, size, sort, size);
  for (State x = 0; x < size; ++x) r.set(x, x);
  return r;
}

Relation Relation::full(std::string from_sort, std::size_t from_size, std::string to_sort,
                        std::size_t to_size) {
  Relation r(std::move(from_sort), from_size, std::move(to_sort), to_size);
  for (auto& row : r.rows_) row = BitSet::full(to_size);
  return r;
}

Relation Relation::from_pairs(std::string from_sort, std::size_t from_size, std::string to_sort,
                              std::size_t to_size,
                              const std::vector<std::pair<State, State>>& pairs) {
  Relation r(std::move(from_sort), from_size, std::move(to_sort), to_size);
  for (auto [x, y] : pairs) {
    if (x >= from_size || y >= to_size)
      throw RangeError("pair (" + std::to_string(x) + "," + std::to_string(y) +
                       ") outside carriers " + std::to_string(from_size) + "x" +
                       std::to_string(to_size));
    r.set(x, y);
  }
  return r;
}

Relation Relation::from_mask(std::string from_sort, std::size_t from_size, std::string to_sort,
                             std::size_t to_size, std::uint64_t mask) {
  if (from_size * to_size > 64) throw RangeError("from_mask: relation exceeds 64 bits");
  Relation r(std::move(from_sort), from_size, std::move(to_sort), to_size);
  std::uint64_t row_mask = to_size >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << to_size) - 1;
  for (State x = 0; x < from_size; ++x)
    r.rows_[x] = BitSet::from_mask(to_size, (mask >> (x * to_size)) & row_mask);
  return r;
}

void Relation::set_row(State x, BitSet row) {
  if (row.width() != to_size_) throw SortError("row width does not match target carrier");
  rows_.at(x) = std::move(row);
}

std::size_t Relation::pair_count() const {
  std::size_t n = 0;
  for (const auto& row : rows_) n += row.count();
  return n;
}

std::vector<std::pair<State, State>> Relation::pairs() const {
  std::vector<std::pair<State, State>> out;
  for (State x = 0; x < rows_.size(); ++x)
    for (State y : rows_[x].members()) out.emplace_back(x, y);
  return out;
}

PredicateFamily::PredicateFamily(std::string sort, std::size_t width,
                                 std::vector<BitSet> predicates, bool require_nonempty)
    : sort_(std::move(sort)), width_(width), require_nonempty_(require_nonempty) {
  std::unordered_set<BitSet> seen;
  for (std::size_t i = 0; i < predicates.size(); ++i) {
    auto& p = predicates[i];
    if (p.width() != width_)
      throw SortError("family predicate " + std::to_string(i) + " has width " +
                      std::to_string(p.width()) + ", expected " + std::to_string(width_));
    if (require_nonempty_ && p.none())
      throw ValidationError("empty predicate in a family that requires nonempty members",
                            "/predicates/" + std::to_string(i));
    if (seen.insert(p).second) predicates_.push_back(std::move(p));
  }
}

PredicateFamily PredicateFamily::all_subsets(const std::string& sort, std::size_t width) {
  if (width >= 32) throw ResourceLimitError("all_subsets: carrier too large");
  std::vector<BitSet> ps;
  ps.reserve(std::size_t{1} << width);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << width); ++mask)
    ps.push_back(BitSet::from_mask(width, mask));
  return PredicateFamily(sort, width, std::move(ps));
}

bool PredicateFamily::contains(const BitSet& p) const { return index_of(p).has_value(); }

std::optional<std::size_t> PredicateFamily::index_of(const BitSet& p) const {
  auto it = std::find(predicates_.begin(), predicates_.end(), p);
  if (it == predicates_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - predicates_.begin());
}

bool PredicateFamily::has_empty_member() const {
  return std::any_of(predicates_.begin(), predicates_.end(),
                     [](const BitSet& p) { return p.none(); });
}

// BeliefStructure

void BeliefStructure::add_sort(const std::string& name, std::size_t size) {
  if (name.empty()) throw ValidationError("empty sort name", "/sorts");
  if (has_sort(name)) throw ValidationError("duplicate sort", "/sorts/" + name);
  sorts_.push_back({name, size});
}

bool BeliefStructure::has_sort(const std::string& name) const {
  return std::any_of(sorts_.begin(), sorts_.end(),
                     [&](const SortDecl& s) { return s.name == name; });
}

std::size_t BeliefStructure::sort_size(const std::string& name) const {
  for (const auto& s : sorts_)
    if (s.name == name) return s.size;
  throw LookupError("unknown sort '" + name + "'");
}

void BeliefStructure::add_relation(const std::string& name, Relation relation) {
  const std::string path = "/relations/" + name;
  if (name.empty()) throw ValidationError("empty relation name", "/relations");
  if (relations_.count(name)) throw ValidationError("duplicate relation", path);
  if (!has_sort(relation.from_sort()))
    throw ValidationError("unknown sort '" + relation.from_sort() + "'", path + "/from");
  if (!has_sort(relation.to_sort()))
    throw ValidationError("unknown sort '" + relation.to_sort() + "'", path + "/to");
  if (relation.from_size() != sort_size(relation.from_sort()) ||
      relation.to_size() != sort_size(relation.to_sort()))
    throw ValidationError("relation dimensions do not match its sorts", path);
  relations_.emplace(name, std::move(relation));
}

void BeliefStructure::add_predicate(const std::string& name, Predicate predicate) {
  const std::string path = "/predicates/" + name;
  if (name.empty()) throw ValidationError("empty predicate name", "/predicates");
  if (predicates_.count(name)) throw ValidationError("duplicate predicate", path);
  if (!has_sort(predicate.sort))
    throw ValidationError("unknown sort '" + predicate.sort + "'", path + "/sort");
  if (predicate.width() != sort_size(predicate.sort))
    throw ValidationError("predicate width does not match its sort", path);
  predicates_.emplace(name, std::move(predicate));
}

void BeliefStructure::add_family(const std::string& name, PredicateFamily family) {
  const std::string path = "/families/" + name;
  if (name.empty()) throw ValidationError("empty family name", "/families");
  if (families_.count(name)) throw ValidationError("duplicate family", path);
  if (!has_sort(family.sort()))
    throw ValidationError("unknown sort '" + family.sort() + "'", path + "/sort");
  if (family.width() != sort_size(family.sort()))
    throw ValidationError("family width does not match its sort", path);
  families_.emplace(name, std::move(family));
}

void BeliefStructure::add_cycle(const std::string& name, BeliefCycle cycle) {
  const std::string path = "/cycles/" + name;
  if (name.empty()) throw ValidationError("empty cycle name", "/cycles");
  if (cycles_.count(name)) throw ValidationError("duplicate cycle", path);
  try {
    cycle_base_sort(*this, cycle);
  } catch (const Error& e) {
    throw ValidationError(e.what(), path);
  }
  cycles_.emplace(name, std::move(cycle));
}

namespace {

template <typename Map>
const typename Map::mapped_type& lookup(const Map& map, const std::string& name,
                                        const char* kind) {
  auto it = map.find(name);
  if (it == map.end()) throw LookupError(std::string("unknown ") + kind + " '" + name + "'");
  return it->second;
}

}  // namespace

const Relation& BeliefStructure::relation(const std::string& name) const {
  return lookup(relations_, name, "relation");
}
const Predicate& BeliefStructure::predicate(const std::string& name) const {
  return lookup(predicates_, name, "predicate");
}
const PredicateFamily& BeliefStructure::family(const std::string& name) const {
  return lookup(families_, name, "family");
}
const BeliefCycle& BeliefStructure::cycle(const std::string& name) const {
  return lookup(cycles_, name, "cycle");
}

// Relational algebra

Predicate image(const Relation& r, State x) {
  if (x >= r.from_size())
    throw RangeError("state " + std::to_string(x) + " out of range for sort '" + r.from_sort() +
                     "' of size " + std::to_string(r.from_size()));
  return {r.to_sort(), r.row(x)};
}

Relation compose(const Relation& r, const Relation& s) {
  if (r.to_sort() != s.from_sort() || r.to_size() != s.from_size())
    throw SortError("cannot compose " + r.from_sort() + "->" + r.to_sort() + " with " +
                    s.from_sort() + "->" + s.to_sort());
  Relation out(r.from_sort(), r.from_size(), s.to_sort(), s.to_size());
  for (State x = 0; x < r.from_size(); ++x) {
    BitSet acc(s.to_size());
    const BitSet& row = r.row(x);
    for (State y = row.first(); y < row.width(); y = row.next(y)) acc |= s.row(y);
    out.set_row(x, std::move(acc));
  }
  return out;
}

Predicate diagonal(const Relation& r) {
  if (!r.endogenous() || r.from_size() != r.to_size())
    throw SortError("diagonal needs an endogenous relation, got " + r.from_sort() + "->" +
                    r.to_sort());
  BitSet d(r.from_size());
  for (State x = 0; x < r.from_size(); ++x)
    if (r.test(x, x)) d.set(x);
  return {r.from_sort(), std::move(d)};
}

std::string cycle_base_sort(const BeliefStructure& m, const BeliefCycle& cycle) {
  if (cycle.relations.empty()) throw SortError("belief cycle has no relations");
  const Relation& first = m.relation(cycle.relations.front());
  std::string at = first.to_sort();
  for (std::size_t k = 1; k < cycle.relations.size(); ++k) {
    const Relation& r = m.relation(cycle.relations[k]);
    if (r.from_sort() != at)
      throw SortError("belief cycle breaks at '" + cycle.relations[k] + "': expected source sort '" +
                      at + "', found '" + r.from_sort() + "'");
    at = r.to_sort();
  }
  if (at != first.from_sort())
    throw SortError("belief cycle does not return to its base sort '" + first.from_sort() + "'");
  return first.from_sort();
}

Relation compose_cycle(const BeliefStructure& m, const BeliefCycle& cycle) {
  cycle_base_sort(m, cycle);
  Relation acc = m.relation(cycle.relations.front());
  for (std::size_t k = 1; k < cycle.relations.size(); ++k)
    acc = compose(acc, m.relation(cycle.relations[k]));
  return acc;
}

}  // namespace bk
