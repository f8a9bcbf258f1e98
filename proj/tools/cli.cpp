#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "bk/coalgebra.hpp"
#include "bk/completeness.hpp"
#include "bk/composition.hpp"
#include "bk/error.hpp"
#include "bk/fixpoint.hpp"
#include "bk/formula.hpp"
#include "bk/model_io.hpp"
#include "bk/report_json.hpp"

namespace bk::cli {

namespace {

using Json = json::Json;

struct Options {
  std::string model;
  bool as_json = false;
  // eval
  std::string formula;
  std::optional<std::size_t> state;
  std::optional<std::string> sort;
  // complete / counterexample
  std::string relation;
  std::string family;
  std::string kind = "assumption";
  // fixpoint / certify / cycle
  std::string ra;
  std::string rb;
  std::string predicate;
  std::string op;
  std::string cycle;
  // compose
  std::string rab;
  std::string rbc;
  std::string family_b;
  std::string family_c;
  // coalgebra
  std::size_t sa = 1;
  std::size_t sb = 1;
  std::size_t m = 2;
  std::size_t depth = 4;
  std::size_t cap = kDefaultStageCap;
  std::optional<std::size_t> extract;
  std::size_t level = 1;
  std::string out_path;
  std::string sidecar_path;
};

class Printer {
 public:
  Printer(std::ostream& out, bool color) : out_(out), color_(color) {}

  std::string verdict(bool ok, const std::string& yes = "holds",
                      const std::string& no = "fails") const {
    const std::string& word = ok ? yes : no;
    if (!color_) return word;
    return (ok ? "\x1b[32m" : "\x1b[31m") + word + "\x1b[0m";
  }

  /// Rows of cells; columns padded to the widest cell.
  void table(const std::vector<std::vector<std::string>>& rows) const {
    std::vector<std::size_t> widths;
    for (const auto& row : rows)
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (widths.size() <= i) widths.push_back(0);
        widths[i] = std::max(widths[i], visible_width(row[i]));
      }
    for (const auto& row : rows) {
      std::string line;
      for (std::size_t i = 0; i < row.size(); ++i) {
        line += row[i];
        if (i + 1 < row.size()) line += std::string(widths[i] - visible_width(row[i]) + 2, ' ');
      }
      out_ << line << "\n";
    }
  }

  void line(const std::string& s = "") const { out_ << s << "\n"; }

 private:
  static std::size_t visible_width(const std::string& s) {
    std::size_t n = 0;
    bool esc = false;
    for (char c : s) {
      if (c == '\x1b') esc = true;
      else if (esc && c == 'm') esc = false;
      else if (!esc) ++n;
    }
    return n;
  }

  std::ostream& out_;
  bool color_;
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

void emit(std::ostream& out, const Json& j) { out << json::dump(j); }

/// A named predicate of the model, or an inline "{0,2}" on `sort`.
Predicate resolve_predicate(const BeliefStructure& m, const std::string& spec,
                            const std::string& sort) {
  if (spec.empty() || spec.front() != '{') {
    const Predicate& p = m.predicate(spec);
    if (p.sort != sort)
      throw SortError("predicate '" + spec + "' is on sort '" + p.sort + "', expected '" + sort +
                      "'");
    return p;
  }
  if (spec.back() != '}') throw ParseError("inline predicate must look like {0,1}", spec.size());
  std::size_t n = m.sort_size(sort);
  BitSet bits(n);
  std::string body = spec.substr(1, spec.size() - 2);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long x = 0;
    try {
      x = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ParseError("bad state '" + item + "' in inline predicate", 0);
    if (x >= n)
      throw RangeError("state " + item + " out of range for sort '" + sort + "' of size " +
                       std::to_string(n));
    bits.set(x);
  }
  return {sort, bits};
}

std::string family_label(const std::string& name, const PredicateFamily& f) {
  return name + " (" + std::to_string(f.size()) + " predicate" + (f.size() == 1 ? "" : "s") +
         " on " + f.sort() + ")";
}

std::string relation_label(const std::string& name, const Relation& r) {
  return name + " (" + r.from_sort() + " -> " + r.to_sort() + ")";
}

void print_witnesses(const Printer& pr, const WitnessReport& r) {
  if (r.holds) {
    std::vector<std::vector<std::string>> rows{{"predicate", "witness"}};
    for (const auto& [p, x] : r.witnesses) rows.push_back({p.to_string(), std::to_string(x)});
    if (rows.size() > 1) pr.table(rows);
  } else {
    pr.table({{"failing predicate", r.failing_predicate->to_string()}});
  }
}

// Subcommands

int cmd_eval(const Options& o, std::ostream& out, const Printer& pr) {
  BeliefStructure m = load_model_file(o.model);
  Formula f = parse_formula(o.formula);
  SortedFormula sf = sort_check(f, m, o.sort);
  if (o.state) {
    bool v = eval(sf, m, *o.state);
    if (o.as_json)
      emit(out, Json{{"formula", to_string(f)}, {"sort", sf.sort()}, {"state", *o.state},
                     {"value", v}});
    else
      pr.line(yes_no(v));
    return v ? kExitHolds : kExitFails;
  }
  Predicate ext = extension(sf, m);
  bool valid = ext.members.all();
  if (o.as_json) {
    emit(out, Json{{"formula", to_string(f)}, {"sort", sf.sort()},
                   {"extension", json::members(ext.members)}, {"valid", valid}});
  } else {
    std::vector<std::vector<std::string>> rows{{"state", "value"}};
    for (State x = 0; x < ext.width(); ++x) rows.push_back({std::to_string(x), yes_no(ext.contains(x))});
    pr.table(rows);
    pr.table({{"extension", ext.members.to_string()}});
  }
  return valid ? kExitHolds : kExitFails;
}

int cmd_complete(const Options& o, std::ostream& out, const Printer& pr) {
  BeliefStructure m = load_model_file(o.model);
  const Relation& r = m.relation(o.relation);
  const PredicateFamily& fam = m.family(o.family);
  WitnessReport rep;
  if (o.kind == "assumption") rep = is_assumption_complete(r, fam);
  else if (o.kind == "belief") rep = is_belief_complete(r, fam);
  else if (o.kind == "wps") rep = is_wps(r, fam);
  else rep = is_vwps(r, fam);
  if (o.as_json) {
    Json j{{"check", o.kind}, {"relation", o.relation}, {"family", o.family}};
    j.update(json::witness_report(rep));
    emit(out, j);
  } else {
    pr.table({{"check", o.kind},
              {"relation", relation_label(o.relation, r)},
              {"family", family_label(o.family, fam)},
              {"verdict", pr.verdict(rep.holds)}});
    print_witnesses(pr, rep);
  }
  return rep.holds ? kExitHolds : kExitFails;
}

int cmd_fixpoint(const Options& o, std::ostream& out, const Printer& pr) {
  BeliefStructure m = load_model_file(o.model);
  const Relation& ra = m.relation(o.ra);
  const Relation& rb = m.relation(o.rb);
  if (!o.op.empty()) {
    PropOperator op = PropOperator::from_name(o.op);
    Predicate q = q_predicate(ra, rb);
    BitSet pbits(q.width());
    for (State x = 0; x < q.width(); ++x) pbits.assign(x, op(q.contains(x)));
    Predicate p(ra.from_sort(), pbits);
    BkAssumptions a = check_bk_assumptions(ra, rb, p, o.state.value());
    std::optional<OperatorFixpoint> fp;
    if (a.all()) fp = operator_fixpoint(ra, rb, op, *o.state);
    if (fp && !fp->is_fixpoint) throw InternalError("operator fixpoint construction failed");
    if (o.as_json) {
      emit(out, Json{{"ra", o.ra}, {"rb", o.rb}, {"operator", op.name()}, {"state", *o.state},
                     {"q", json::members(q.members)}, {"p", json::members(p.members)},
                     {"assumptions", json::bk_assumptions(a)},
                     {"fixpoint", fp ? Json{{"value", fp->value}, {"is_fixpoint", fp->is_fixpoint}}
                                     : Json()}});
    } else {
      pr.table({{"operator", op.name()},
                {"state", std::to_string(*o.state)},
                {"q", q.members.to_string()},
                {"p = O(q)", p.members.to_string()},
                {"A1", yes_no(a.a1)},
                {"A2", yes_no(a.a2)},
                {"A3", yes_no(a.a3)},
                {"assumptions", pr.verdict(a.all())}});
      if (fp) pr.table({{"fixpoint", yes_no(fp->value)}});
    }
    return a.all() ? kExitHolds : kExitFails;
  }

  Predicate p = resolve_predicate(m, o.predicate, ra.from_sort());
  BkAssumptions a = check_bk_assumptions(ra, rb, p, o.state.value());
  std::optional<BasicLemmaResult> lemma;
  if (a.all()) lemma = basic_lemma_verify(ra, rb, p, *o.state);
  if (lemma && !lemma->holds()) throw InternalError("basic lemma violated");
  if (o.as_json) {
    emit(out, Json{{"ra", o.ra}, {"rb", o.rb}, {"state", *o.state},
                   {"predicate", json::members(p.members)},
                   {"assumptions", json::bk_assumptions(a)},
                   {"basic_lemma", lemma ? Json{{"p_at_c", lemma->p_at_c},
                                                {"q_at_c", lemma->q_at_c},
                                                {"holds", lemma->holds()}}
                                         : Json()}});
  } else {
    pr.table({{"predicate", p.members.to_string()},
              {"state", std::to_string(*o.state)},
              {"A1", yes_no(a.a1)},
              {"A2", yes_no(a.a2)},
              {"A3", yes_no(a.a3)},
              {"assumptions", pr.verdict(a.all())}});
    if (lemma)
      pr.table({{"p(c)", yes_no(lemma->p_at_c)},
                {"q(c)", yes_no(lemma->q_at_c)},
                {"basic lemma", pr.verdict(lemma->holds())}});
  }
  return a.all() ? kExitHolds : kExitFails;
}

int cmd_cycle(const Options& o, std::ostream& out, const Printer& pr) {
  BeliefStructure m = load_model_file(o.model);
  const BeliefCycle& cycle = m.cycle(o.cycle);
  std::string base = cycle_base_sort(m, cycle);
  Predicate p = resolve_predicate(m, o.predicate, base);
  GeneralizedAssumptions a = generalized_assumptions_check(m, cycle, p, o.state.value());
  std::optional<GeneralizedLemmaResult> lemma;
  if (a.all()) lemma = generalized_basic_lemma_verify(m, cycle, p, *o.state);
  if (lemma && !lemma->holds()) throw InternalError("generalized basic lemma violated");
  if (o.as_json) {
    Json conjuncts = Json::array();
    for (std::size_t i = 0; i < a.labels.size(); ++i)
      conjuncts.push_back(Json{{"formula", a.labels[i]}, {"holds", static_cast<bool>(a.verdicts[i])}});
    emit(out, Json{{"cycle", cycle.relations}, {"base_sort", base}, {"state", *o.state},
                   {"predicate", json::members(p.members)}, {"conjuncts", conjuncts},
                   {"lemma", lemma ? Json{{"composite_at_c", lemma->composite_at_c},
                                          {"p_at_c", lemma->p_at_c},
                                          {"holds", lemma->holds()}}
                                   : Json()}});
  } else {
    std::string names;
    for (const auto& r : cycle.relations) names += (names.empty() ? "" : " ; ") + r;
    pr.table({{"cycle", names}, {"base sort", base}, {"predicate", p.members.to_string()},
              {"state", std::to_string(*o.state)}});
    std::vector<std::vector<std::string>> rows{{"conjunct", "value"}};
    for (std::size_t i = 0; i < a.labels.size(); ++i)
      rows.push_back({a.labels[i], yes_no(a.verdicts[i])});
    pr.table(rows);
    pr.table({{"assumptions", pr.verdict(a.all())}});
    if (lemma)
      pr.table({{"R(c,c)", yes_no(lemma->composite_at_c)},
                {"p(c)", yes_no(lemma->p_at_c)},
                {"vwps at c", pr.verdict(lemma->holds())}});
  }
  return a.all() ? kExitHolds : kExitFails;
}

int cmd_compose(const Options& o, std::ostream& out, const Printer& pr) {
  BeliefStructure m = load_model_file(o.model);
  CompositionReport rep = composition_lemma_check(m.relation(o.rab), m.relation(o.rbc),
                                                  m.family(o.family_b), m.family(o.family_c));
  if (!rep.consistent) throw InternalError("composition lemma violated");
  if (o.as_json) {
    Json j{{"rab", o.rab}, {"rbc", o.rbc}, {"family_b", o.family_b}, {"family_c", o.family_c}};
    j.update(json::composition_report(rep));
    emit(out, j);
  } else {
    pr.table({{"R_ab", relation_label(o.rab, m.relation(o.rab))},
              {"R_bc", relation_label(o.rbc, m.relation(o.rbc))},
              {"P(B)", family_label(o.family_b, m.family(o.family_b))},
              {"P(C)", family_label(o.family_c, m.family(o.family_c))}});
    pr.line();
    pr.table({{"1. R_ab belief-complete for P(B)", pr.verdict(rep.hypothesis_1.holds)},
              {"2. R_bc assumption-complete for P(C)", pr.verdict(rep.hypothesis_2.holds)},
              {"3. comprehension", pr.verdict(rep.hypothesis_3_holds)},
              {"conclusion: R_ab;R_bc assumption-complete", pr.verdict(rep.conclusion.holds)}});
    pr.line();
    std::vector<std::vector<std::string>> rows{{"p", "assumed by", "in P(B)"}};
    for (const auto& e : rep.hypothesis_3)
      rows.push_back({e.p.to_string(), e.boxplus.to_string(), yes_no(e.in_family)});
    pr.table(rows);
  }
  return rep.conclusion.holds ? kExitHolds : kExitFails;
}

int cmd_counterexample(const Options& o, std::ostream& out, const Printer& pr) {
  BeliefStructure m = load_model_file(o.model);
  const Relation& r = m.relation(o.relation);
  PredicateFamily fam;
  if (!o.family.empty()) {
    fam = m.family(o.family);
  } else {
    Predicate p = resolve_predicate(m, o.predicate, r.to_sort());
    fam = PredicateFamily(p.sort, p.width(), {p.members});
  }
  Characterization c = characterize_belief_completeness(r, fam);
  if (c.counterexample && !c.counterexample->valid())
    throw InternalError("counterexample failed to verify");
  if (o.as_json) {
    Json j{{"relation", o.relation}};
    j.update(json::characterization(c));
    emit(out, j);
  } else {
    pr.table({{"relation", relation_label(o.relation, r)},
              {"verdict", pr.verdict(c.complete, "complete", "incomplete")}});
    if (c.complete) {
      print_witnesses(pr, c.belief);
    } else {
      const Counterexample& ce = *c.counterexample;
      std::string s_pairs, comp_pairs;
      for (auto [y, z] : ce.s.pairs())
        s_pairs += (s_pairs.empty() ? "" : " ") + ("(" + std::to_string(y) + "," + std::to_string(z) + ")");
      for (auto [x, z] : ce.composite.pairs())
        comp_pairs += (comp_pairs.empty() ? "" : " ") + ("(" + std::to_string(x) + "," + std::to_string(z) + ")");
      pr.table({{"failing predicate p", ce.p.members.to_string()},
                {"C", ce.s.to_sort() + " = {0,1}"},
                {"S", s_pairs.empty() ? "{}" : s_pairs},
                {"P(C)", "{{1}}"},
                {"R;S", comp_pairs.empty() ? "{}" : comp_pairs},
                {"S assumption-complete", yes_no(ce.s_assumption_complete)},
                {"R;S assumption-complete", yes_no(ce.composite_assumption_complete)}});
      std::vector<std::vector<std::string>> rows{{"state", "evidence"}};
      for (const auto& e : ce.evidence)
        rows.push_back({std::to_string(e.x), e.kind == Evidence::Kind::EmptyImage
                                                 ? "empty_image"
                                                 : "escaping_y " + std::to_string(*e.y)});
      pr.table(rows);
    }
  }
  return c.complete ? kExitHolds : kExitFails;
}

int cmd_coalgebra(const Options& o, std::ostream& out, const Printer& pr) {
  StrategyProfile prof{o.sa, o.sb, o.m};
  std::size_t depth = o.depth;
  if (o.extract) depth = std::max(depth, *o.extract + 1);
  TerminalSequence seq;
  try {
    seq = terminal_sequence(prof, depth, o.cap);
  } catch (const CapExceeded& e) {
    throw ResourceLimitError(std::string(e.what()) + " (last completed stage " +
                             std::to_string(e.last_completed_level()) + ")");
  }
  bool ok = true;
  Json extraction;
  std::vector<std::vector<std::string>> extraction_rows;
  ClosureReport closure;
  if (o.extract) {
    ExtractedModel ex = extract_belief_model(seq, *o.extract);
    const BeliefStructure& m = ex.model;
    WitnessReport ac_a = is_assumption_complete(m.relation("Ra"), m.family("PUb"));
    WitnessReport ac_b = is_assumption_complete(m.relation("Rb"), m.family("PUa"));
    RetractionReport ret = check_retraction(seq, *o.extract);
    closure = verify_closure(ex);
    ok = ac_a.holds && ac_b.holds && ret.holds();
    extraction = Json{{"level", *o.extract},
                      {"Ua", m.sort_size("Ua")},
                      {"Ub", m.sort_size("Ub")},
                      {"PUb", m.family("PUb").size()},
                      {"PUa", m.family("PUa").size()},
                      {"assumption_complete_a", ac_a.holds},
                      {"assumption_complete_b", ac_b.holds},
                      {"retraction", json::retraction(ret)},
                      {"closure", json::closure(closure)}};
    extraction_rows = {{"extraction level", std::to_string(*o.extract)},
                       {"|Ua| / |Ub|", std::to_string(m.sort_size("Ua")) + " / " +
                                           std::to_string(m.sort_size("Ub"))},
                       {"|PUb| / |PUa|", std::to_string(m.family("PUb").size()) + " / " +
                                             std::to_string(m.family("PUa").size())},
                       {"Ra assumption-complete for PUb", pr.verdict(ac_a.holds)},
                       {"Rb assumption-complete for PUa", pr.verdict(ac_b.holds)},
                       {"retraction", pr.verdict(ret.holds())}};
  }
  if (o.as_json) {
    Json j = json::stage_sizes(seq);
    j["extraction"] = extraction;
    emit(out, j);
  } else {
    pr.table({{"profile", "sa=" + std::to_string(prof.sa) + " sb=" + std::to_string(prof.sb) +
                              " m=" + std::to_string(prof.m)}});
    std::vector<std::vector<std::string>> rows{{"level", "|X|", "|Y|"}};
    for (const auto& st : seq.stages)
      rows.push_back({std::to_string(st.level), std::to_string(st.x.size()), std::to_string(st.y.size())});
    pr.table(rows);
    pr.table({{"converged at", seq.converged_at ? std::to_string(*seq.converged_at) : "none"}});
    if (o.extract) {
      pr.line();
      pr.table(extraction_rows);
      pr.line();
      std::vector<std::vector<std::string>> crow{{"family", "closure", "holds", "fails", "not measurable"}};
      for (const auto& r : closure.rows)
        crow.push_back({r.side, r.construction, std::to_string(r.holds), std::to_string(r.fails),
                        std::to_string(r.not_measurable)});
      pr.table(crow);
    }
  }
  return ok ? kExitHolds : kExitFails;
}

int cmd_coalgebra_export(const Options& o, std::ostream& out) {
  StrategyProfile prof{o.sa, o.sb, o.m};
  TerminalSequence seq;
  try {
    seq = terminal_sequence(prof, o.level + 1, o.cap);
  } catch (const CapExceeded& e) {
    throw ResourceLimitError(std::string(e.what()) + " (last completed stage " +
                             std::to_string(e.last_completed_level()) + ")");
  }
  ExtractedModel ex = extract_belief_model(seq, o.level);
  std::string model_text = serialize_model(ex.model);

  const Stage& st = seq.stages[o.level + 1];
  Json ua = Json::array();
  for (std::size_t s = 0; s < prof.sa; ++s)
    for (std::uint32_t t = 0; t < st.x.size(); ++t)
      ua.push_back("(" + std::to_string(s) + "," + render_x_term(seq, o.level + 1, t) + ")");
  Json ub = Json::array();
  for (std::size_t s = 0; s < prof.sb; ++s)
    for (std::uint32_t t = 0; t < st.y.size(); ++t)
      ub.push_back("(" + std::to_string(s) + "," + render_y_term(seq, o.level + 1, t) + ")");
  Json sidecar = json::stage_sizes(seq);
  sidecar["extraction_level"] = o.level;
  sidecar["states"] = Json{{"Ua", ua}, {"Ub", ub}};

  if (o.out_path.empty()) {
    out << model_text;
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!(f << model_text)) throw Error("cannot write '" + o.out_path + "'");
  }
  if (!o.sidecar_path.empty()) {
    std::ofstream f(o.sidecar_path, std::ios::binary);
    if (!(f << json::dump(sidecar))) throw Error("cannot write '" + o.sidecar_path + "'");
  }
  return kExitHolds;
}

int cmd_certify(const Options& o, std::ostream& out, const Printer& pr) {
  BeliefStructure m = load_model_file(o.model);
  const PredicateFamily* cls = o.family.empty() ? nullptr : &m.family(o.family);
  DiagonalCertificate cert = diagonal_certificate(m, o.ra, o.rb, cls);
  if (o.as_json) {
    Json j{{"ra", o.ra}, {"rb", o.rb}};
    j.update(json::diagonal_certificate(cert));
    emit(out, j);
  } else {
    pr.table({{"q", cert.q.members.to_string()},
              {"D = not q", cert.d.members.to_string()},
              {"candidates searched", std::to_string(cert.searched)},
              {"witness found", pr.verdict(!cert.witness_found, "false", "true")}});
    if (cert.d_in_class)
      pr.table({{"D in definable class", yes_no(*cert.d_in_class)}});
    std::vector<std::vector<std::string>> rows{{"state", "failing"}};
    for (std::size_t c = 0; c < cert.per_state.size(); ++c) {
      std::string labels;
      for (const auto& l : cert.per_state[c].failing()) labels += (labels.empty() ? "" : ",") + l;
      rows.push_back({std::to_string(c), labels.empty() ? "-" : labels});
    }
    pr.table(rows);
  }
  return cert.witness_found ? kExitFails : kExitHolds;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
  Options o;
  CLI::App app{"Finite belief-structure workbench", "bk"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  auto model_opt = [&](CLI::App* sub) {
    sub->add_option("--model", o.model, "Model file (JSON)")->required();
    sub->add_flag("--json", o.as_json, "Machine-readable report");
  };

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a modal formula");
  model_opt(eval_cmd);
  eval_cmd->add_option("--formula", o.formula, "Formula text")->required();
  eval_cmd->add_option("--state", o.state, "State index (omit to print the extension)");
  eval_cmd->add_option("--sort", o.sort, "Sort hint for formulas without atoms or modalities");

  auto* complete_cmd = app.add_subcommand("complete", "Check a completeness property");
  model_opt(complete_cmd);
  complete_cmd->add_option("--relation", o.relation)->required();
  complete_cmd->add_option("--family", o.family)->required();
  complete_cmd->add_option("--kind", o.kind)
      ->check(CLI::IsMember({"assumption", "belief", "wps", "vwps"}));

  auto* fixpoint_cmd = app.add_subcommand("fixpoint", "BK assumptions, basic lemma, operator fixpoints");
  model_opt(fixpoint_cmd);
  fixpoint_cmd->add_option("--ra", o.ra)->required();
  fixpoint_cmd->add_option("--rb", o.rb)->required();
  fixpoint_cmd->add_option("--state", o.state)->required();
  auto* pred_opt = fixpoint_cmd->add_option("--predicate", o.predicate, "Named predicate or {0,1}");
  auto* op_opt = fixpoint_cmd->add_option("--operator", o.op, "id | false | true | not")
                     ->check(CLI::IsMember({"id", "false", "true", "not"}));
  pred_opt->excludes(op_opt);

  auto* cycle_cmd = app.add_subcommand("cycle", "Generalized assumptions over a belief cycle");
  model_opt(cycle_cmd);
  cycle_cmd->add_option("--cycle", o.cycle)->required();
  cycle_cmd->add_option("--predicate", o.predicate)->required();
  cycle_cmd->add_option("--state", o.state)->required();

  auto* compose_cmd = app.add_subcommand("compose", "Composition lemma hypotheses and conclusion");
  model_opt(compose_cmd);
  compose_cmd->add_option("--rab", o.rab)->required();
  compose_cmd->add_option("--rbc", o.rbc)->required();
  compose_cmd->add_option("--family-b", o.family_b)->required();
  compose_cmd->add_option("--family-c", o.family_c)->required();

  auto* cex_cmd = app.add_subcommand("counterexample", "Characterize belief-completeness");
  model_opt(cex_cmd);
  cex_cmd->add_option("--relation", o.relation)->required();
  auto* cex_family = cex_cmd->add_option("--family", o.family);
  auto* cex_pred = cex_cmd->add_option("--predicate", o.predicate, "Named predicate or {0,1}");
  cex_family->excludes(cex_pred);

  auto* coalg_cmd = app.add_subcommand("coalgebra", "Terminal sequence and extracted models");
  coalg_cmd->add_option("--sa", o.sa)->check(CLI::PositiveNumber);
  coalg_cmd->add_option("--sb", o.sb)->check(CLI::PositiveNumber);
  coalg_cmd->add_option("--m", o.m)->check(CLI::PositiveNumber);
  coalg_cmd->add_option("--depth", o.depth);
  coalg_cmd->add_option("--cap", o.cap);
  coalg_cmd->add_option("--extract", o.extract, "Extract and check the model at this level")
      ->check(CLI::PositiveNumber);
  coalg_cmd->add_flag("--json", o.as_json);
  auto* export_cmd = coalg_cmd->add_subcommand("export", "Write the extracted model as JSON");
  export_cmd->add_option("--sa", o.sa)->check(CLI::PositiveNumber);
  export_cmd->add_option("--sb", o.sb)->check(CLI::PositiveNumber);
  export_cmd->add_option("--m", o.m)->check(CLI::PositiveNumber);
  export_cmd->add_option("--level", o.level)->check(CLI::PositiveNumber);
  export_cmd->add_option("--cap", o.cap);
  export_cmd->add_option("--out", o.out_path, "Model output (default: stdout)");
  export_cmd->add_option("--sidecar", o.sidecar_path, "Stage sizes and state terms");

  auto* certify_cmd = app.add_subcommand("certify", "Diagonal impossibility certificate");
  model_opt(certify_cmd);
  certify_cmd->add_option("--ra", o.ra)->required();
  certify_cmd->add_option("--rb", o.rb)->required();
  certify_cmd->add_option("--family", o.family, "Definable class to test D against");

  std::vector<const char*> argv{"bk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  if (fixpoint_cmd->parsed() && o.predicate.empty() && o.op.empty()) {
    err << "bk fixpoint: one of --predicate or --operator is required\n";
    return kExitError;
  }
  if (cex_cmd->parsed() && o.family.empty() && o.predicate.empty()) {
    err << "bk counterexample: one of --family or --predicate is required\n";
    return kExitError;
  }

  Printer pr(out, color);
  try {
    if (eval_cmd->parsed()) return cmd_eval(o, out, pr);
    if (complete_cmd->parsed()) return cmd_complete(o, out, pr);
    if (fixpoint_cmd->parsed()) return cmd_fixpoint(o, out, pr);
    if (cycle_cmd->parsed()) return cmd_cycle(o, out, pr);
    if (compose_cmd->parsed()) return cmd_compose(o, out, pr);
    if (cex_cmd->parsed()) return cmd_counterexample(o, out, pr);
    if (export_cmd->parsed()) return cmd_coalgebra_export(o, out);
    if (coalg_cmd->parsed()) return cmd_coalgebra(o, out, pr);
    if (certify_cmd->parsed()) return cmd_certify(o, out, pr);
  } catch (const InternalError& e) {
    err << "bk: internal error: " << e.what() << "\n";
    return kExitError;
  } catch (const ParseError& e) {
    err << "bk: parse error: " << e.what() << "\n";
    return kExitError;
  } catch (const ValidationError& e) {
    err << "bk: invalid model: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "bk: error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace bk::cli
