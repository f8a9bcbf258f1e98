#include "bk/formula.hpp"

#include <cctype>

#include "bk/error.hpp"

namespace bk {

namespace {

using Kind = Formula::Kind;

// Lexer

enum class Tok { Name, LBrack, RBrack, LAngle, RAngle, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t offset;
};

bool is_keyword(std::string_view s) {
  return s == "true" || s == "false" || s == "not" || s == "and" || s == "or";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ >= src_.size()) return {Tok::End, {}, src_.size()};
    std::size_t start = pos_;
    char c = src_[pos_];
    auto single = [&](Tok k) {
      ++pos_;
      return Token{k, src_.substr(start, 1), start};
    };
    switch (c) {
      case '[': return single(Tok::LBrack);
      case ']': return single(Tok::RBrack);
      case '<': return single(Tok::LAngle);
      case '>': return single(Tok::RAngle);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      return {Tok::Name, src_.substr(start, pos_ - start), start};
    }
    throw ParseError("syntax error at offset " + std::to_string(start) + ": unexpected character '" +
                         std::string(1, c) + "'",
                     start);
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + std::string(t.text) + "'";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { advance(); }

  Formula parse() {
    Formula f = parse_or();
    if (tok_.kind != Tok::End) fail("expected end of input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    std::string where = tok_.kind == Tok::End ? "at end of input"
                                              : "at offset " + std::to_string(tok_.offset);
    throw ParseError("syntax error " + where + ": " + expected + ", found " + describe(tok_),
                     tok_.offset);
  }

  void advance() { tok_ = lex_.next(); }

  bool at_keyword(std::string_view kw) const { return tok_.kind == Tok::Name && tok_.text == kw; }

  void expect(Tok k, const char* what) {
    if (tok_.kind != k) fail(std::string("expected ") + what);
    advance();
  }

  std::string expect_name() {
    if (tok_.kind != Tok::Name || is_keyword(tok_.text)) fail("expected a relation name");
    std::string n(tok_.text);
    advance();
    return n;
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.depth_ > kMaxFormulaDepth) p.fail("formula nested too deeply");
    }
    ~DepthGuard() { --p.depth_; }
    Parser& p;
  };

  Formula parse_or() {
    Formula f = parse_and();
    std::size_t chain = 0;
    while (at_keyword("or")) {
      if (depth_ + ++chain > kMaxFormulaDepth) fail("formula nested too deeply");
      advance();
      f = Formula::disj(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    std::size_t chain = 0;
    while (at_keyword("and")) {
      if (depth_ + ++chain > kMaxFormulaDepth) fail("formula nested too deeply");
      advance();
      f = Formula::conj(std::move(f), parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    DepthGuard guard(*this);
    if (at_keyword("not")) {
      advance();
      return Formula::negate(parse_unary());
    }
    if (tok_.kind == Tok::LBrack) {
      advance();
      if (tok_.kind == Tok::LBrack) {
        advance();
        std::string rel = expect_name();
        expect(Tok::RBrack, "']'");
        expect(Tok::RBrack, "']'");
        return Formula::boxplus(std::move(rel), parse_unary());
      }
      std::string rel = expect_name();
      expect(Tok::RBrack, "']'");
      return Formula::box(std::move(rel), parse_unary());
    }
    if (tok_.kind == Tok::LAngle) {
      advance();
      std::string rel = expect_name();
      expect(Tok::RAngle, "'>'");
      return Formula::diamond(std::move(rel), parse_unary());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    if (tok_.kind == Tok::LParen) {
      advance();
      Formula f = parse_or();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (at_keyword("true")) {
      advance();
      return Formula::truth();
    }
    if (at_keyword("false")) {
      advance();
      return Formula::falsity();
    }
    if (tok_.kind == Tok::Name && !is_keyword(tok_.text)) {
      Formula f = Formula::atom(std::string(tok_.text));
      advance();
      return f;
    }
    fail("expected a formula");
  }

  Lexer lex_;
  Token tok_{Tok::End, {}, 0};
  std::size_t depth_ = 0;
};

int precedence(const Formula& f) {
  switch (f.kind) {
    case Kind::Or: return 1;
    case Kind::And: return 2;
    case Kind::Not:
    case Kind::Box:
    case Kind::Diamond:
    case Kind::BoxPlus: return 3;
    default: return 4;
  }
}

void print(const Formula& f, int min_prec, std::string& out) {
  bool parens = precedence(f) < min_prec;
  if (parens) out += '(';
  switch (f.kind) {
    case Kind::True: out += "true"; break;
    case Kind::False: out += "false"; break;
    case Kind::Atom: out += f.name; break;
    case Kind::Not:
      out += "not ";
      print(f.args[0], 3, out);
      break;
    case Kind::Box:
      out += "[" + f.name + "] ";
      print(f.args[0], 3, out);
      break;
    case Kind::BoxPlus:
      out += "[[" + f.name + "]] ";
      print(f.args[0], 3, out);
      break;
    case Kind::Diamond:
      out += "<" + f.name + "> ";
      print(f.args[0], 3, out);
      break;
    case Kind::And:
      print(f.args[0], 2, out);
      out += " and ";
      print(f.args[1], 3, out);
      break;
    case Kind::Or:
      print(f.args[0], 1, out);
      out += " or ";
      print(f.args[1], 2, out);
      break;
  }
  if (parens) out += ')';
}

// Sort checking

struct SortChecker {
  const BeliefStructure& m;
  const AtomBindings& bindings;

  const Predicate& resolve_atom(const std::string& name) const {
    if (auto it = bindings.find(name); it != bindings.end()) return it->second;
    if (auto it = m.predicates().find(name); it != m.predicates().end()) return it->second;
    throw LookupError("unknown atom '" + name + "'");
  }

  const Relation& resolve_relation(const std::string& name) const {
    if (auto it = m.relations().find(name); it != m.relations().end()) return it->second;
    throw LookupError("unknown relation '" + name + "'");
  }

  // Bottom-up: the sort a subformula forces, or nullopt when polymorphic.
  std::optional<std::string> infer(const Formula& f) const {
    switch (f.kind) {
      case Kind::True:
      case Kind::False: return std::nullopt;
      case Kind::Atom: return resolve_atom(f.name).sort;
      case Kind::Not: return infer(f.args[0]);
      case Kind::And:
      case Kind::Or: {
        auto a = infer(f.args[0]);
        auto b = infer(f.args[1]);
        if (a && b && *a != *b)
          throw SortError("sort conflict in '" + to_string(f) + "': " + *a + " vs " + *b);
        return a ? a : b;
      }
      case Kind::Box:
      case Kind::Diamond:
      case Kind::BoxPlus: {
        const Relation& r = resolve_relation(f.name);
        auto body = infer(f.args[0]);
        if (body && *body != r.to_sort())
          throw SortError("sort conflict: relation " + f.name + " targets " + r.to_sort() +
                          " but its body speaks about " + *body);
        return r.from_sort();
      }
    }
    return std::nullopt;
  }

  // Top-down: annotate with the now-known sort.
  SortedNode annotate(const Formula& f, const std::string& sort) const {
    SortedNode n;
    n.kind = f.kind;
    n.sort = sort;
    n.name = f.name;
    switch (f.kind) {
      case Kind::Atom: n.atom = resolve_atom(f.name); break;
      case Kind::Not:
      case Kind::And:
      case Kind::Or:
        for (const auto& a : f.args) n.args.push_back(annotate(a, sort));
        break;
      case Kind::Box:
      case Kind::Diamond:
      case Kind::BoxPlus:
        n.args.push_back(annotate(f.args[0], resolve_relation(f.name).to_sort()));
        break;
      default: break;
    }
    return n;
  }
};

bool consistent(const SortedNode& n, const BeliefStructure& m) {
  if (!m.has_sort(n.sort)) return false;
  switch (n.kind) {
    case Kind::True:
    case Kind::False: return n.args.empty();
    case Kind::Atom:
      return n.args.empty() && n.atom.sort == n.sort && n.atom.width() == m.sort_size(n.sort);
    case Kind::Not:
      return n.args.size() == 1 && n.args[0].sort == n.sort && consistent(n.args[0], m);
    case Kind::And:
    case Kind::Or:
      return n.args.size() == 2 && n.args[0].sort == n.sort && n.args[1].sort == n.sort &&
             consistent(n.args[0], m) && consistent(n.args[1], m);
    case Kind::Box:
    case Kind::Diamond:
    case Kind::BoxPlus: {
      auto it = m.relations().find(n.name);
      if (it == m.relations().end() || n.args.size() != 1) return false;
      return it->second.from_sort() == n.sort && it->second.to_sort() == n.args[0].sort &&
             consistent(n.args[0], m);
    }
  }
  return false;
}

bool eval_node(const SortedNode& n, const BeliefStructure& m, State x) {
  switch (n.kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: return n.atom.contains(x);
    case Kind::Not: return !eval_node(n.args[0], m, x);
    case Kind::And: return eval_node(n.args[0], m, x) && eval_node(n.args[1], m, x);
    case Kind::Or: return eval_node(n.args[0], m, x) || eval_node(n.args[1], m, x);
    case Kind::Box: {
      const Relation& r = m.relation(n.name);
      for (State y = 0; y < r.to_size(); ++y)
        if (r.test(x, y) && !eval_node(n.args[0], m, y)) return false;
      return true;
    }
    case Kind::Diamond: {
      const Relation& r = m.relation(n.name);
      for (State y = 0; y < r.to_size(); ++y)
        if (r.test(x, y) && eval_node(n.args[0], m, y)) return true;
      return false;
    }
    case Kind::BoxPlus: {
      const Relation& r = m.relation(n.name);
      for (State y = 0; y < r.to_size(); ++y)
        if (r.test(x, y) != eval_node(n.args[0], m, y)) return false;
      return true;
    }
  }
  return false;
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, out);
  return out;
}

bool is_regular(const Formula& f) {
  switch (f.kind) {
    case Kind::True:
    case Kind::Atom: return true;
    case Kind::And: return is_regular(f.args[0]) && is_regular(f.args[1]);
    case Kind::Diamond: return is_regular(f.args[0]);
    default: return false;
  }
}

SortedFormula sort_check(const Formula& f, const BeliefStructure& m,
                         const std::optional<std::string>& hint, const AtomBindings& bindings) {
  SortChecker checker{m, bindings};
  auto inferred = checker.infer(f);
  if (hint) {
    if (!m.has_sort(*hint)) throw LookupError("unknown sort '" + *hint + "'");
    if (inferred && *inferred != *hint)
      throw SortError("sort conflict: formula speaks about " + *inferred + ", hint is " + *hint);
    inferred = hint;
  }
  if (!inferred)
    throw SortError("ambiguous sort for '" + to_string(f) + "': supply a sort hint");
  return SortedFormula{checker.annotate(f, *inferred)};
}

bool sorts_consistent(const SortedFormula& f, const BeliefStructure& m) {
  return consistent(f.root, m);
}

bool eval(const SortedFormula& f, const BeliefStructure& m, State x) {
  std::size_t n = m.sort_size(f.sort());
  if (x >= n)
    throw RangeError("state " + std::to_string(x) + " out of range for sort '" + f.sort() +
                     "' of size " + std::to_string(n));
  return eval_node(f.root, m, x);
}

Predicate extension(const SortedFormula& f, const BeliefStructure& m) {
  std::size_t n = m.sort_size(f.sort());
  BitSet bits(n);
  for (State x = 0; x < n; ++x)
    if (eval_node(f.root, m, x)) bits.set(x);
  return {f.sort(), std::move(bits)};
}

}  // namespace bk
