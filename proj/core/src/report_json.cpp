#include "bk/report_json.hpp"

#include <algorithm>

namespace bk::json {

Json members(const BitSet& b) {
  Json out = Json::array();
  for (std::size_t x : b.members()) out.push_back(x);
  return out;
}

Json relation(const Relation& r) {
  Json pairs = Json::array();
  for (auto [x, y] : r.pairs()) pairs.push_back({x, y});
  return Json{{"from", r.from_sort()}, {"to", r.to_sort()}, {"pairs", std::move(pairs)}};
}

Json witness_report(const WitnessReport& r) {
  Json witnesses = Json::object();
  for (const auto& [p, x] : r.witnesses) witnesses[p.to_string()] = x;
  return Json{{"verdict", r.holds ? "holds" : "fails"},
              {"witnesses", std::move(witnesses)},
              {"failing_predicate", r.failing_predicate ? members(*r.failing_predicate) : Json()}};
}

Json bk_assumptions(const BkAssumptions& a) {
  return Json{{"A1", a.a1}, {"A2", a.a2}, {"A3", a.a3}, {"failing", a.failing()}};
}

Json diagonal_certificate(const DiagonalCertificate& c) {
  Json per_state = Json::array();
  for (std::size_t x = 0; x < c.per_state.size(); ++x)
    per_state.push_back(Json{{"state", x}, {"failing", c.per_state[x].failing()}});
  return Json{{"q", members(c.q.members)},
              {"D", members(c.d.members)},
              {"searched", c.searched},
              {"witness_found", c.witness_found},
              {"witness", c.witness ? Json(*c.witness) : Json()},
              {"d_in_class", c.d_in_class ? Json(*c.d_in_class) : Json()},
              {"per_state", std::move(per_state)}};
}

Json composition_report(const CompositionReport& r) {
  Json h3 = Json::array();
  for (const auto& e : r.hypothesis_3)
    h3.push_back(Json{{"p", members(e.p)}, {"boxplus", members(e.boxplus)},
                      {"in_family", e.in_family}});
  return Json{{"hypothesis_1", witness_report(r.hypothesis_1)},
              {"hypothesis_2", witness_report(r.hypothesis_2)},
              {"hypothesis_3", Json{{"verdict", r.hypothesis_3_holds ? "holds" : "fails"},
                                    {"entries", std::move(h3)}}},
              {"conclusion", witness_report(r.conclusion)},
              {"consistent", r.consistent}};
}

Json counterexample(const Counterexample& c) {
  Json evidence = Json::array();
  for (const auto& e : c.evidence) {
    if (e.kind == Evidence::Kind::EmptyImage)
      evidence.push_back(Json{{"state", e.x}, {"label", "empty_image"}});
    else
      evidence.push_back(Json{{"state", e.x}, {"label", "escaping_y"}, {"escaping_y", *e.y}});
  }
  Json family = Json::array();
  for (const auto& p : c.family_c.members()) family.push_back(members(p));
  return Json{{"p", members(c.p.members)},
              {"C", Json{{"sort", c.s.to_sort()}, {"size", c.s.to_size()}}},
              {"S", relation(c.s)},
              {"P_C", std::move(family)},
              {"composite", relation(c.composite)},
              {"evidence", std::move(evidence)},
              {"s_assumption_complete", c.s_assumption_complete},
              {"composite_assumption_complete", c.composite_assumption_complete}};
}

Json characterization(const Characterization& c) {
  return Json{{"verdict", c.complete ? "complete" : "incomplete"},
              {"belief", witness_report(c.belief)},
              {"counterexample", c.counterexample ? counterexample(*c.counterexample) : Json()}};
}

Json stage_sizes(const TerminalSequence& seq) {
  Json stages = Json::array();
  for (const auto& st : seq.stages)
    stages.push_back(Json{{"level", st.level}, {"x", st.x.size()}, {"y", st.y.size()}});
  return Json{{"profile", Json{{"sa", seq.profile.sa}, {"sb", seq.profile.sb}, {"m", seq.profile.m}}},
              {"stages", std::move(stages)},
              {"converged_at", seq.converged_at ? Json(*seq.converged_at) : Json()}};
}

Json retraction(const RetractionReport& r) {
  return Json{{"verdict", r.holds() ? "holds" : "fails"},
              {"a_side", r.a_side},
              {"b_side", r.b_side},
              {"a_checked", r.a_checked},
              {"b_checked", r.b_checked}};
}

Json closure(const ClosureReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"family", row.side},
                        {"construction", row.construction},
                        {"holds", row.holds},
                        {"fails", row.fails},
                        {"not_measurable", row.not_measurable}});
  return rows;
}

namespace {

bool flat(const Json& j) {
  if (!j.is_array()) return !j.is_object();
  for (const auto& e : j)
    if (e.is_object() || (e.is_array() && !std::all_of(e.begin(), e.end(), [](const Json& x) {
                            return x.is_primitive();
                          })))
      return false;
  return true;
}

void write(const Json& j, int indent, int depth, std::string& out) {
  if (flat(j)) {
    if (!j.is_array()) {
      out += j.dump();
      return;
    }
    out += '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      if (j[i].is_array()) {
        out += '[';
        for (std::size_t k = 0; k < j[i].size(); ++k) out += (k ? ", " : "") + j[i][k].dump();
        out += ']';
      } else {
        out += j[i].dump();
      }
    }
    out += ']';
    return;
  }
  const bool obj = j.is_object();
  if (j.empty()) {
    out += obj ? "{}" : "[]";
    return;
  }
  std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  out += obj ? "{\n" : "[\n";
  std::size_t i = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++i) {
    out += pad;
    if (obj) out += Json(it.key()).dump() + ": ";
    write(*it, indent, depth + 1, out);
    out += i + 1 < j.size() ? ",\n" : "\n";
  }
  out += std::string(static_cast<std::size_t>(indent * depth), ' ');
  out += obj ? '}' : ']';
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out + "\n";
}

}  // namespace bk::json
