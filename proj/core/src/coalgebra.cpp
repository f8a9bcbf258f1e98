#include "bk/coalgebra.hpp"

#include <algorithm>
#include <limits>

#include "bk/completeness.hpp"

namespace bk {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

void enumerate(std::size_t n, std::size_t m, std::size_t start, Term& cur,
               std::vector<Term>& out) {
  out.push_back(cur);
  if (cur.size() + 1 >= m) return;
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(static_cast<std::uint32_t>(i));
    enumerate(n, m, i + 1, cur, out);
    cur.pop_back();
  }
}

// Next-level carrier over S x `other` (the opposite carrier at the current
// level); `same` is the carrier on this side at the current level, the
// codomain of the new connecting map.
Carrier build_carrier(std::size_t strategies, const Carrier& same, const Carrier& other,
                      std::size_t level, std::size_t m, std::size_t cap, const char* side) {
  const std::uint64_t pairs = static_cast<std::uint64_t>(strategies) * other.size();
  const std::uint64_t count = bounded_powerset_count(pairs, m);
  if (pairs > std::numeric_limits<std::uint32_t>::max() || count > cap)
    throw ResourceLimitError(std::string("stage ") + std::to_string(level + 1) + ": carrier " +
                             side + " would have " +
                             (count == kSaturated ? std::string("more than 2^64")
                                                  : std::to_string(count)) +
                             " elements, cap is " + std::to_string(cap));

  Carrier c;
  c.elements = bounded_powerset(static_cast<std::size_t>(pairs), m);
  c.index.reserve(c.elements.size());
  for (std::size_t i = 0; i < c.elements.size(); ++i)
    c.index.emplace(c.elements[i], static_cast<std::uint32_t>(i));
  c.down_size = same.size();
  c.down.resize(c.elements.size(), 0);
  if (level == 0) return c;  // unique map to the point

  // Direct image along id x down.
  const std::size_t width = other.size();
  const std::size_t lower_width = other.down_size;
  Term image;
  for (std::size_t i = 0; i < c.elements.size(); ++i) {
    image.clear();
    for (std::uint32_t code : c.elements[i]) {
      std::uint32_t s = code / static_cast<std::uint32_t>(width);
      std::uint32_t y = code % static_cast<std::uint32_t>(width);
      image.push_back(static_cast<std::uint32_t>(s * lower_width + other.down[y]));
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    auto idx = same.find(image);
    if (!idx) throw InternalError("direct image left the lower carrier");
    c.down[i] = *idx;
  }
  return c;
}

std::string render(const TerminalSequence& seq, std::size_t level, std::uint32_t index,
                   bool x_side) {
  if (level == 0) return "*";
  const Stage& st = seq.stages.at(level);
  const Carrier& c = x_side ? st.x : st.y;
  // X terms pair strategies with Y terms one level down, and vice versa.
  const std::size_t width =
      x_side ? seq.stages[level - 1].y.size() : seq.stages[level - 1].x.size();
  std::string out = "{";
  bool first = true;
  for (std::uint32_t code : c.elements.at(index)) {
    if (!first) out += ",";
    first = false;
    std::uint32_t s = code / static_cast<std::uint32_t>(width);
    std::uint32_t t = code % static_cast<std::uint32_t>(width);
    out += "(" + std::to_string(s) + "," + render(seq, level - 1, t, !x_side) + ")";
  }
  return out + "}";
}

// {(s, t') | (s, down(t')) in base}, over S x upper.
BitSet pullback(const Term& base, std::size_t strategies, const Carrier& upper,
                const std::vector<std::vector<std::uint32_t>>& preimage) {
  const std::size_t lower = upper.down_size;
  BitSet out(strategies * upper.size());
  for (std::uint32_t code : base) {
    std::size_t s = code / lower;
    std::size_t y = code % lower;
    for (std::uint32_t t : preimage[y]) out.set(s * upper.size() + t);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> preimages(const Carrier& c) {
  std::vector<std::vector<std::uint32_t>> pre(c.down_size);
  for (std::uint32_t t = 0; t < c.size(); ++t) pre[c.down[t]].push_back(t);
  return pre;
}

// Rows of the relation out of S_own x own: state (s, t) relates to
// (s', t') iff (s', down(t')) in t, where t' ranges over `other`.
Relation type_relation(const std::string& from, const std::string& to, std::size_t own_strategies,
                       const Carrier& own, std::size_t other_strategies, const Carrier& other) {
  const std::size_t lower = other.down_size;
  Relation r(from, own_strategies * own.size(), to, other_strategies * other.size());
  for (std::size_t t = 0; t < own.size(); ++t) {
    BitSet marks(other_strategies * lower);
    for (std::uint32_t code : own.elements[t]) marks.set(code);
    BitSet row(other_strategies * other.size());
    for (std::size_t s2 = 0; s2 < other_strategies; ++s2)
      for (std::size_t t2 = 0; t2 < other.size(); ++t2)
        if (marks.test(s2 * lower + other.down[t2])) row.set(s2 * other.size() + t2);
    for (std::size_t s = 0; s < own_strategies; ++s) r.set_row(s * own.size() + t, row);
  }
  return r;
}

ExtractedFamily extract_family(const Carrier& types, std::size_t type_strategies,
                               const Carrier& target, std::size_t target_strategies,
                               std::vector<BitSet>& predicates) {
  ExtractedFamily fam;
  auto pre = preimages(target);
  for (std::uint32_t t = 0; t < types.size(); ++t) {
    const Term& base = types.elements[t];
    if (base.empty()) continue;
    fam.bases.push_back(base);
    predicates.push_back(pullback(base, target_strategies, target, pre));
    std::vector<State> w;
    for (std::size_t s = 0; s < type_strategies; ++s) w.push_back(s * types.size() + t);
    fam.witnesses.push_back(std::move(w));
  }
  return fam;
}

bool check_side(const Relation& r, const Carrier& types, std::size_t strategies,
                const PredicateFamily& family, const ExtractedFamily& fam) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto t = types.find(fam.bases[i]);  // section: p0 -> the type p0
    if (!t) return false;
    for (std::size_t s = 0; s < strategies; ++s)  // retraction: type -> its image
      if (r.row(s * types.size() + *t) != family[i]) return false;
  }
  return true;
}

Term merge(const Term& a, const Term& b, bool intersect) {
  Term out;
  if (intersect)
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  else
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void closure_for(const std::string& side, const PredicateFamily& family,
                 const ExtractedFamily& fam, std::size_t m, const Relation& into_family,
                 const PredicateFamily& other_family, ClosureReport& report) {
  for (bool intersect : {true, false}) {
    ClosureRow row{side, intersect ? "intersection" : "union"};
    for (std::size_t i = 0; i < family.size(); ++i) {
      for (std::size_t j = i + 1; j < family.size(); ++j) {
        Term base = merge(fam.bases[i], fam.bases[j], intersect);
        if (base.empty() || base.size() >= m) {
          ++row.not_measurable;
          continue;
        }
        BitSet combined = intersect ? family[i] & family[j] : family[i] | family[j];
        family.contains(combined) ? ++row.holds : ++row.fails;
      }
    }
    report.rows.push_back(row);
  }
  // Images of family members through the relation that targets them land
  // in the opposite family.
  ClosureRow assumes{side, "assumes"};
  ClosureRow believes{side, "believes"};
  for (const BitSet& p : family.members()) {
    Predicate pred(family.sort(), p);
    other_family.contains(boxplus_set(into_family, pred).members) ? ++assumes.holds
                                                                  : ++assumes.fails;
    other_family.contains(box_set(into_family, pred).members) ? ++believes.holds
                                                              : ++believes.fails;
  }
  report.rows.push_back(assumes);
  report.rows.push_back(believes);
}

}  // namespace

void StrategyProfile::validate() const {
  if (sa < 1 || sb < 1) throw PreconditionError("strategy sets must be nonempty");
  if (m < 1) throw PreconditionError("powerset bound m must be at least 1");
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  std::size_t h = t.size();
  for (std::uint32_t v : t) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::optional<std::uint32_t> Carrier::find(const Term& t) const {
  auto it = index.find(t);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

bool Carrier::down_surjective() const {
  std::vector<bool> hit(down_size, false);
  for (std::uint32_t d : down) hit[d] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool Carrier::down_bijective() const {
  if (down_size == 0 || size() != down_size) return false;
  return down_surjective();
}

std::vector<Term> bounded_powerset(std::size_t n, std::size_t m) {
  std::vector<Term> out;
  if (m == 0) return out;
  Term cur;
  enumerate(n, m, 0, cur, out);
  return out;
}

__extension__ typedef unsigned __int128 Wide;

std::uint64_t bounded_powerset_count(std::uint64_t n, std::size_t m) {
  Wide total = 0;
  Wide binom = 1;  // C(n, i)
  for (std::uint64_t i = 0; i < m && i <= n; ++i) {
    total += binom;
    if (total >= kSaturated) return kSaturated;
    binom = binom * (n - i) / (i + 1);
  }
  return static_cast<std::uint64_t>(total);
}

Stage initial_stage() {
  Stage s;
  s.level = 0;
  for (Carrier* c : {&s.x, &s.y}) {
    c->elements = {Term{}};
    c->index.emplace(Term{}, 0);
  }
  return s;
}

Stage functor_apply(const Stage& stage, const StrategyProfile& profile, std::size_t cap) {
  profile.validate();
  Stage next;
  next.level = stage.level + 1;
  next.x = build_carrier(profile.sb, stage.x, stage.y, stage.level, profile.m, cap, "X");
  next.y = build_carrier(profile.sa, stage.y, stage.x, stage.level, profile.m, cap, "Y");
  return next;
}

TerminalSequence terminal_sequence(const StrategyProfile& profile, std::size_t depth,
                                   std::size_t cap) {
  profile.validate();
  TerminalSequence seq;
  seq.profile = profile;
  seq.stages.push_back(initial_stage());
  for (std::size_t k = 1; k <= depth; ++k) {
    try {
      seq.stages.push_back(functor_apply(seq.stages.back(), profile, cap));
    } catch (const ResourceLimitError& e) {
      throw CapExceeded(e.what(), std::move(seq));
    }
    const Stage& st = seq.stages.back();
    if (!seq.converged_at && st.x.down_bijective() && st.y.down_bijective())
      seq.converged_at = k;
  }
  return seq;
}

std::string render_x_term(const TerminalSequence& seq, std::size_t level, std::uint32_t index) {
  return render(seq, level, index, true);
}

std::string render_y_term(const TerminalSequence& seq, std::size_t level, std::uint32_t index) {
  return render(seq, level, index, false);
}

ExtractedModel extract_belief_model(const TerminalSequence& seq, std::size_t d) {
  if (d == 0) throw PreconditionError("extraction level must be at least 1");
  if (seq.stages.size() < d + 2)
    throw PreconditionError("extraction at level " + std::to_string(d) +
                            " needs stages through " + std::to_string(d + 1) + ", have " +
                            std::to_string(seq.stages.size() - 1));
  const StrategyProfile& prof = seq.profile;
  const Stage& st = seq.stages[d + 1];

  ExtractedModel out;
  out.level = d;
  out.m = prof.m;
  BeliefStructure& model = out.model;
  model.add_sort("Ua", prof.sa * st.x.size());
  model.add_sort("Ub", prof.sb * st.y.size());
  model.add_relation("Ra", type_relation("Ua", "Ub", prof.sa, st.x, prof.sb, st.y));
  model.add_relation("Rb", type_relation("Ub", "Ua", prof.sb, st.y, prof.sa, st.x));

  std::vector<BitSet> on_ub;
  std::vector<BitSet> on_ua;
  out.on_ub = extract_family(st.x, prof.sa, st.y, prof.sb, on_ub);
  out.on_ua = extract_family(st.y, prof.sb, st.x, prof.sa, on_ua);
  const std::size_t n_ub = on_ub.size();
  const std::size_t n_ua = on_ua.size();
  PredicateFamily pub("Ub", model.sort_size("Ub"), std::move(on_ub), true);
  PredicateFamily pua("Ua", model.sort_size("Ua"), std::move(on_ua), true);
  if (pub.size() != n_ub || pua.size() != n_ua)
    throw InternalError("distinct bases pulled back to equal predicates");
  model.add_family("PUb", std::move(pub));
  model.add_family("PUa", std::move(pua));
  return out;
}

RetractionReport check_retraction(const TerminalSequence& seq, std::size_t d) {
  ExtractedModel ex = extract_belief_model(seq, d);
  const Stage& st = seq.stages[d + 1];
  const BeliefStructure& m = ex.model;
  RetractionReport r;
  r.a_checked = m.family("PUb").size();
  r.b_checked = m.family("PUa").size();
  r.a_side = check_side(m.relation("Ra"), st.x, seq.profile.sa, m.family("PUb"), ex.on_ub);
  r.b_side = check_side(m.relation("Rb"), st.y, seq.profile.sb, m.family("PUa"), ex.on_ua);
  return r;
}

bool ClosureReport::all_hold() const {
  return std::all_of(rows.begin(), rows.end(), [](const ClosureRow& r) { return r.fails == 0; });
}

ClosureReport verify_closure(const ExtractedModel& ex) {
  const BeliefStructure& m = ex.model;
  ClosureReport report;
  closure_for("PUb", m.family("PUb"), ex.on_ub, ex.m, m.relation("Ra"), m.family("PUa"), report);
  closure_for("PUa", m.family("PUa"), ex.on_ua, ex.m, m.relation("Rb"), m.family("PUb"), report);
  return report;
}

}  // namespace bk
