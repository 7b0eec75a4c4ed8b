#include "adsfuse/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace adsfuse::dl {

SyntaxError::SyntaxError(SourceLoc loc, const std::string& message)
    : Error(ErrorCode::Syntax,
            std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message),
      loc_(loc) {}

std::string_view to_string(QueryMode m) {
  switch (m) {
    case QueryMode::AboxSat: return "abox-sat";
    case QueryMode::TermSat: return "term-sat";
    case QueryMode::Relativized: return "relativized";
  }
  return "?";
}

std::optional<QueryMode> parse_query_mode(std::string_view s) {
  if (s == "abox-sat") return QueryMode::AboxSat;
  if (s == "term-sat") return QueryMode::TermSat;
  if (s == "relativized") return QueryMode::Relativized;
  return std::nullopt;
}

namespace {

const std::set<std::string, std::less<>> kConceptKeywords = {"top",     "bot",     "exists",
                                                             "forall",  "atleast", "atmost"};

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_concept_name(std::string_view s) { return is_identifier(s) && !kConceptKeywords.count(s); }

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLoc loc;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourceLoc loc{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), loc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && (std::isalpha(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        throw SyntaxError(loc, "malformed number");
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), loc});
      advance(j - i);
      continue;
    }
    if (c == '<' && i + 1 < src.size() && src[i + 1] == '=') {
      out.push_back({Tok::Punct, "<=", loc});
      advance(2);
      continue;
    }
    if (std::string_view("(){},;.!&|~^+-").find(c) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, c), loc});
      advance(1);
      continue;
    }
    throw SyntaxError(loc, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Document document() {
    Document doc;
    while (!at_end()) {
      const Token& t = peek();
      if (t.kind != Tok::Ident) fail(t, "expected 'component', 'tbox', 'abox' or 'query'");
      if (t.text == "component") {
        doc.components.push_back(component());
      } else if (t.text == "tbox") {
        tbox(doc);
      } else if (t.text == "abox") {
        abox(doc);
      } else if (t.text == "query") {
        if (doc.query) fail(t, "second query statement");
        doc.query = query();
      } else {
        fail(t, "expected 'component', 'tbox', 'abox' or 'query', got '" + t.text + "'");
      }
    }
    return doc;
  }

  Concept lone_concept() {
    Concept c = description();
    if (!at_end()) fail(peek(), "unexpected '" + peek().text + "' after concept");
    return c;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::End; }
  Token take() {
    Token t = peek();
    if (!at_end()) ++pos_;
    return t;
  }
  bool is_punct(std::string_view p, std::size_t k = 0) const {
    return peek(k).kind == Tok::Punct && peek(k).text == p;
  }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw SyntaxError(t.loc, t.kind == Tok::End ? msg + " at end of input" : msg);
  }
  Token expect_punct(std::string_view p) {
    if (!is_punct(p)) fail(peek(), "expected '" + std::string(p) + "'");
    return take();
  }
  Token expect_ident(const std::string& what) {
    if (peek().kind != Tok::Ident) fail(peek(), "expected " + what);
    return take();
  }
  unsigned number() {
    if (peek().kind != Tok::Number) fail(peek(), "expected a number");
    Token t = take();
    if (t.text.size() > 10 || std::stoull(t.text) > std::numeric_limits<std::int32_t>::max())
      fail(t, "number " + t.text + " exceeds 2147483647");
    return static_cast<unsigned>(std::stoul(t.text));
  }

  ComponentDecl component() {
    ComponentDecl d;
    d.loc = take().loc;
    d.index = static_cast<int>(number());
    d.logic_text = expect_ident("a logic name").text;
    if (is_punct("+")) {
      take();
      d.logic_text += '+';
    }
    if (!is_punct("{")) {
      if (is_punct(";")) take();
      return d;
    }
    take();
    while (!is_punct("}")) {
      Token kw = expect_ident("'roles', 'features', 'functional' or 'transitive'");
      std::vector<std::string>* flag = nullptr;
      if (kw.text == "transitive") {
        flag = &d.transitive;
      } else if (kw.text == "features" || kw.text == "functional") {
        flag = &d.functional;
      } else if (kw.text != "roles") {
        fail(kw, "expected 'roles', 'features', 'functional' or 'transitive'");
      }
      for (;;) {
        std::string r = expect_ident("a role name").text;
        if (std::find(d.roles.begin(), d.roles.end(), r) == d.roles.end()) d.roles.push_back(r);
        if (flag) flag->push_back(r);
        if (!is_punct(",")) break;
        take();
      }
      expect_punct(";");
    }
    take();
    return d;
  }

  void tbox(Document& doc) {
    take();
    expect_punct("{");
    while (!is_punct("}")) {
      Gci g;
      g.loc = peek().loc;
      g.lhs = description();
      expect_punct("<=");
      g.rhs = description();
      expect_punct(";");
      doc.tbox.push_back(std::move(g));
    }
    take();
  }

  void abox(Document& doc) {
    take();
    expect_punct("{");
    while (!is_punct("}")) {
      SourceLoc loc = peek().loc;
      Concept c = description();
      expect_punct("(");
      std::string first = expect_ident("an individual name").text;
      if (is_punct(",")) {
        take();
        std::string second = expect_ident("an individual name").text;
        expect_punct(")");
        if (c.kind != Concept::Kind::Name)
          throw SyntaxError(loc, "a role assertion needs a role name before '('");
        doc.abox.push_back(RoleFact{c.name, first, second, loc});
      } else {
        expect_punct(")");
        doc.abox.push_back(ConceptFact{std::move(c), first, loc});
      }
      expect_punct(";");
    }
    take();
  }

  Query query() {
    Query q;
    q.loc = take().loc;
    Token w = expect_ident("a query mode");
    std::string mode = w.text;
    if (is_punct("-")) {
      take();
      mode += '-' + expect_ident("a query mode").text;
    }
    auto m = parse_query_mode(mode);
    if (!m) fail(w, "unknown query mode '" + mode + "'");
    q.mode = *m;
    if (!is_punct(";")) q.target = description();
    expect_punct(";");
    return q;
  }

  // concept := conj ('|' conj)*
  Concept description() {
    Concept c = conjunction();
    while (is_punct("|")) {
      Token op = take();
      Concept rhs = conjunction();
      c = binary(Concept::Kind::Or, std::move(c), std::move(rhs), op.loc);
    }
    return c;
  }

  Concept conjunction() {
    Concept c = unary();
    while (is_punct("&")) {
      Token op = take();
      Concept rhs = unary();
      c = binary(Concept::Kind::And, std::move(c), std::move(rhs), op.loc);
    }
    return c;
  }

  static Concept binary(Concept::Kind k, Concept a, Concept b, SourceLoc loc) {
    Concept c;
    c.kind = k;
    c.loc = loc;
    c.args.push_back(std::move(a));
    c.args.push_back(std::move(b));
    return c;
  }

  Concept unary() {
    const Token& t = peek();
    Concept c;
    c.loc = t.loc;
    if (is_punct("!")) {
      take();
      c.kind = Concept::Kind::Not;
      c.args.push_back(unary());
      return c;
    }
    if (is_punct("(")) {
      take();
      Concept inner = description();
      expect_punct(")");
      return inner;
    }
    if (is_punct("{")) {
      take();
      c.kind = Concept::Kind::Nominal;
      c.name = expect_ident("an individual name").text;
      expect_punct("}");
      return c;
    }
    if (t.kind != Tok::Ident) fail(t, "expected a concept");
    std::string w = take().text;
    if (w == "top") {
      c.kind = Concept::Kind::Top;
    } else if (w == "bot") {
      c.kind = Concept::Kind::Bot;
    } else if (w == "exists" || w == "forall") {
      c.kind = w == "exists" ? Concept::Kind::Exists : Concept::Kind::Forall;
      c.role = role();
      expect_punct(".");
      c.args.push_back(unary());
    } else if (w == "atleast" || w == "atmost") {
      c.kind = w == "atleast" ? Concept::Kind::AtLeast : Concept::Kind::AtMost;
      if (is_punct("(") && peek(1).kind == Tok::Number) {
        take();
        c.count = number();
        expect_punct(",");
        c.role = role();
        expect_punct(")");
      } else {
        c.count = number();
        c.role = role();
      }
    } else {
      c.kind = Concept::Kind::Name;
      c.name = w;
    }
    return c;
  }

  // Binary role operators only appear inside parentheses.
  RoleExpr role() { return role_unary(); }

  RoleExpr role_or() {
    RoleExpr r = role_and();
    while (is_punct("|")) {
      SourceLoc loc = take().loc;
      r = role_binary(RoleExpr::Kind::Or, std::move(r), role_and(), loc);
    }
    return r;
  }
  RoleExpr role_and() {
    RoleExpr r = role_compose();
    while (is_punct("&")) {
      SourceLoc loc = take().loc;
      r = role_binary(RoleExpr::Kind::And, std::move(r), role_compose(), loc);
    }
    return r;
  }
  RoleExpr role_compose() {
    RoleExpr r = role_unary();
    while (is_punct(";")) {
      SourceLoc loc = take().loc;
      r = role_binary(RoleExpr::Kind::Compose, std::move(r), role_unary(), loc);
    }
    return r;
  }
  static RoleExpr role_binary(RoleExpr::Kind k, RoleExpr a, RoleExpr b, SourceLoc loc) {
    RoleExpr r;
    r.kind = k;
    r.loc = loc;
    r.args.push_back(std::move(a));
    r.args.push_back(std::move(b));
    return r;
  }

  RoleExpr role_unary() {
    RoleExpr r;
    r.loc = peek().loc;
    if (is_punct("~")) {
      take();
      r.kind = RoleExpr::Kind::Complement;
      r.args.push_back(role_unary());
      return r;
    }
    if (is_punct("(")) {
      take();
      r = role_or();
      expect_punct(")");
    } else {
      std::string name = expect_ident("a role").text;
      r.kind = name == "U" ? RoleExpr::Kind::Universal : RoleExpr::Kind::Name;
      if (r.kind == RoleExpr::Kind::Name) r.name = name;
    }
    while (is_punct("^")) {
      Token caret = take();
      RoleExpr wrapped;
      wrapped.loc = caret.loc;
      if (is_punct("-")) {
        wrapped.kind = RoleExpr::Kind::Inverse;
      } else if (is_punct("+")) {
        wrapped.kind = RoleExpr::Kind::Closure;
      } else {
        fail(peek(), "expected '-' or '+' after '^'");
      }
      take();
      wrapped.args.push_back(std::move(r));
      r = std::move(wrapped);
    }
    return r;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Document parse(std::string_view text) { return Parser(text).document(); }

Concept parse_concept(std::string_view text) { return Parser(text).lone_concept(); }

// ---------------------------------------------------------------------------
// Validation

namespace {

void role_names(const RoleExpr& r, std::vector<std::string>& out) {
  if (r.kind == RoleExpr::Kind::Name) out.push_back(r.name);
  for (const auto& a : r.args) role_names(a, out);
}

bool role_has(const RoleExpr& r, RoleExpr::Kind k) {
  if (r.kind == k) return true;
  return std::any_of(r.args.begin(), r.args.end(), [k](const RoleExpr& a) { return role_has(a, k); });
}

std::string_view ctor_word(Concept::Kind k) {
  switch (k) {
    case Concept::Kind::Exists: return "exists";
    case Concept::Kind::Forall: return "forall";
    case Concept::Kind::AtLeast: return "atleast";
    case Concept::Kind::AtMost: return "atmost";
    default: return "?";
  }
}

bool is_number_restriction(Concept::Kind k) {
  return k == Concept::Kind::AtLeast || k == Concept::Kind::AtMost;
}

bool logic_supports(Logic l, Concept::Kind k) {
  return !is_number_restriction(k) || l == Logic::ALCN;
}

class Validator {
 public:
  Validator(const Document& doc, const ValidateOptions& opts) : doc_(doc), opts_(opts) {}

  std::vector<Diagnostic> run() {
    components();
    for (const auto& g : doc_.tbox) {
      visit(g.lhs);
      visit(g.rhs);
    }
    for (const auto& f : doc_.abox) {
      if (auto* cf = std::get_if<ConceptFact>(&f)) {
        visit(cf->description);
        individuals_.emplace(cf->individual, cf->loc);
      } else {
        const auto& rf = std::get<RoleFact>(f);
        individuals_.emplace(rf.from, rf.loc);
        individuals_.emplace(rf.to, rf.loc);
        if (rf.role == "U") {
          add(rf.loc, "non-local", "the universal role cannot appear in a role assertion");
        } else if (!owner_.count(rf.role)) {
          add(rf.loc, "undeclared-role", "role " + rf.role + " is not declared by any component");
        }
      }
    }
    query();
    clashes();
    return std::move(out_);
  }

 private:
  void add(SourceLoc loc, std::string code, std::string msg) {
    out_.push_back({loc, std::move(code), std::move(msg)});
  }

  void components() {
    if (doc_.components.empty()) {
      add({1, 1}, "component", "the document declares no component");
      return;
    }
    std::set<int> seen;
    for (const auto& c : doc_.components) {
      if (c.index != 1 && c.index != 2) {
        add(c.loc, "component", "component index must be 1 or 2");
        continue;
      }
      if (!seen.insert(c.index).second)
        add(c.loc, "component", "component " + std::to_string(c.index) + " declared twice");
      auto logic = parse_logic(c.logic_text);
      if (!logic) {
        add(c.loc, "logic", "unknown logic '" + c.logic_text + "'");
        continue;
      }
      logic_[c.index] = *logic;
      for (const auto& r : c.roles) {
        if (r == "U") {
          add(c.loc, "non-local", "the universal role U is built in and cannot be declared");
          continue;
        }
        auto [it, fresh] = owner_.emplace(r, c.index);
        if (!fresh && it->second != c.index)
          add(c.loc, "cross-component role", "role " + r + " is declared in both components");
      }
      for (const auto& r : c.transitive)
        if (*logic != Logic::ALC_Rplus)
          add(c.loc, "logic-flag",
              "transitive role " + r + " needs ALC_R+, component " + std::to_string(c.index) +
                  " is " + c.logic_text);
      for (const auto& r : c.functional) {
        if (*logic != Logic::ALC_f)
          add(c.loc, "logic-flag",
              "feature " + r + " needs ALC_f, component " + std::to_string(c.index) + " is " +
                  c.logic_text);
        if (std::find(c.transitive.begin(), c.transitive.end(), r) != c.transitive.end())
          add(c.loc, "logic-flag", "role " + r + " cannot be both transitive and a feature");
      }
    }
    if (seen.size() == 1 && !seen.count(1))
      add(doc_.components.front().loc, "component", "a single component must be component 1");
  }

  void visit(const Concept& c) {
    switch (c.kind) {
      case Concept::Kind::Name: concepts_.emplace(c.name, c.loc); break;
      case Concept::Kind::Nominal:
        add(c.loc, "non-local",
            "nominal {" + c.name + "} is not local: its models are not closed under disjoint unions");
        break;
      case Concept::Kind::Exists:
      case Concept::Kind::Forall:
      case Concept::Kind::AtLeast:
      case Concept::Kind::AtMost: role_use(c); break;
      default: break;
    }
    for (const auto& a : c.args) visit(a);
  }

  void role_use(const Concept& c) {
    const RoleExpr& r = c.role;
    auto word = std::string(ctor_word(c.kind));
    if (role_has(r, RoleExpr::Kind::Complement))
      add(r.loc, "non-local",
          "role complement is not local: its models are not closed under disjoint unions");
    if (role_has(r, RoleExpr::Kind::Universal)) {
      if (r.kind != RoleExpr::Kind::Universal) {
        add(r.loc, "role-constructor", "the universal role may only appear on its own");
      } else if (is_number_restriction(c.kind)) {
        add(r.loc, "unsupported-constructor", word + " over the universal role is not supported");
      } else if (!opts_.with_universal) {
        add(r.loc, "non-local",
            "the universal role is not local; reasoning with it needs --with-universal");
      } else {
        universal_ = true;
      }
    }
    std::vector<std::string> names;
    role_names(r, names);
    std::set<int> owners;
    for (const auto& n : names) {
      auto it = owner_.find(n);
      if (it == owner_.end()) {
        add(r.loc, "undeclared-role", "role " + n + " is not declared by any component");
      } else {
        owners.insert(it->second);
      }
    }
    if (owners.size() > 1)
      add(r.loc, "cross-component role", "role description mixes roles of both components");
    if (!r.is_atomic() && r.kind != RoleExpr::Kind::Universal &&
        !role_has(r, RoleExpr::Kind::Complement))
      add(r.loc, "role-constructor",
          "role constructors are translated but not supported for reasoning: " + pretty(r));
    if (!r.is_atomic() || owners.size() != 1) return;
    int k = *owners.begin();
    if (!logic_.count(k) || logic_supports(logic_[k], c.kind)) return;
    int other = 3 - k;
    if (logic_.count(other) && logic_supports(logic_[other], c.kind)) {
      add(c.loc, "cross-component role",
          "cross-component role: " + word + " over " + r.name + " of component " +
              std::to_string(k) + " (" + std::string(logic_name(logic_[k])) +
              "), but number restrictions belong to component " + std::to_string(other));
    } else {
      add(c.loc, "unsupported-constructor",
          word + " is not available in " + std::string(logic_name(logic_[k])));
    }
  }

  void query() {
    if (!doc_.query) return;
    const Query& q = *doc_.query;
    if (q.mode == QueryMode::TermSat) {
      if (!q.target) add(q.loc, "query", "term-sat needs a concept");
      else visit(*q.target);
      if (!doc_.abox.empty()) add(q.loc, "query", "term-sat takes no abox; use relativized");
    } else if (q.target) {
      add(q.loc, "query", std::string(to_string(q.mode)) + " takes no concept");
    }
    if (q.mode == QueryMode::AboxSat && !doc_.tbox.empty())
      add(q.loc, "query", "abox-sat takes no tbox; use relativized");
    if (universal_)
      for (const auto& f : doc_.abox)
        if (auto* rf = std::get_if<RoleFact>(&f))
          add(rf->loc, "query", "role assertions cannot be combined with the universal role");
  }

  void clashes() {
    for (const auto& [name, loc] : concepts_) {
      if (owner_.count(name) || name == "U")
        add(loc, "name-clash", "'" + name + "' is used both as a concept and as a role");
      if (individuals_.count(name))
        add(loc, "name-clash", "'" + name + "' is used both as a concept and as an individual");
    }
    for (const auto& [name, loc] : individuals_)
      if (owner_.count(name))
        add(loc, "name-clash", "'" + name + "' is used both as an individual and as a role");
  }

  const Document& doc_;
  ValidateOptions opts_;
  std::vector<Diagnostic> out_;
  std::map<std::string, int> owner_;
  std::map<int, Logic> logic_;
  std::map<std::string, SourceLoc> concepts_;
  std::map<std::string, SourceLoc> individuals_;
  bool universal_ = false;
};

}  // namespace

std::vector<Diagnostic> validate(const Document& doc, const ValidateOptions& opts) {
  return Validator(doc, opts).run();
}

std::string format(const Diagnostic& d) {
  return std::to_string(d.loc.line) + ":" + std::to_string(d.loc.column) + ": " + d.code + ": " +
         d.message;
}

// ---------------------------------------------------------------------------
// Translation

namespace {

Component as_component(int index) { return index == 2 ? Component::Second : Component::First; }

class Translator {
 public:
  explicit Translator(const Document& doc) {
    for (const auto& c : doc.components)
      for (const auto& r : c.roles) owner_.emplace(r, as_component(c.index));
  }

  Signature& vocabulary() { return vocab_; }

  Component owner(const RoleExpr& r) const {
    std::vector<std::string> names;
    role_names(r, names);
    for (const auto& n : names)
      if (auto it = owner_.find(n); it != owner_.end()) return it->second;
    return Component::First;
  }

  Term term(const Concept& c) {
    switch (c.kind) {
      case Concept::Kind::Name:
        vocab_.add_set_var(c.name);
        return mk_var(c.name);
      case Concept::Kind::Top: return mk_top();
      case Concept::Kind::Bot: return mk_bot();
      case Concept::Kind::Not: return mk_not(term(c.args[0]));
      case Concept::Kind::And: {
        Term a = term(c.args[0]);
        return mk_and(a, term(c.args[1]));
      }
      case Concept::Kind::Or: {
        Term a = term(c.args[0]);
        return mk_or(a, term(c.args[1]));
      }
      case Concept::Kind::Nominal: return app(symbols::nominal(c.name, Component::First), {});
      case Concept::Kind::Exists:
      case Concept::Kind::Forall: {
        bool ex = c.kind == Concept::Kind::Exists;
        Symbol f;
        if (c.role.kind == RoleExpr::Kind::Universal) {
          f = ex ? symbols::universal_exists() : symbols::universal_forall();
        } else {
          std::string role = pretty(c.role);
          f = ex ? symbols::exists(role, owner(c.role), c.role.is_atomic())
                 : symbols::forall(role, owner(c.role), c.role.is_atomic());
        }
        declare(f);
        return mk_app(f, {term(c.args[0])});
      }
      case Concept::Kind::AtLeast:
      case Concept::Kind::AtMost: {
        std::string role = pretty(c.role);
        bool atomic = c.role.is_atomic();
        Symbol f = c.kind == Concept::Kind::AtLeast
                       ? symbols::at_least(c.count, role, owner(c.role), atomic)
                       : symbols::at_most(c.count, role, owner(c.role), atomic);
        return app(f, {});
      }
    }
    throw Error(ErrorCode::Internal, "unknown concept kind");
  }

  void declare_relation(const std::string& role) {
    auto it = owner_.find(role);
    vocab_.add_relation(role, it == owner_.end() ? Component::First : it->second);
  }

 private:
  void declare(Symbol f) { vocab_.add_function(f); }
  Term app(Symbol f, std::vector<Term> args) {
    declare(f);
    return mk_app(f, std::move(args));
  }

  std::map<std::string, Component> owner_;
  Signature vocab_;
};

}  // namespace

AssertionSet Translation::query_set() const {
  AssertionSet g;
  if (mode != QueryMode::AboxSat)
    for (const auto& inc : tbox) g.add(inc);
  if (mode == QueryMode::TermSat) {
    if (target) g.add(Membership{"$a", *target});
  } else {
    g.add_all(abox);
  }
  return g;
}

bool Translation::uses_universal() const {
  auto universal = [](Symbol f) { return f->is_universal(); };
  AssertionSet all = query_set();
  all.add_all(abox);
  for (Term t : all.terms())
    if (mentions(t, universal)) return true;
  return false;
}

Translation translate(const Document& doc) {
  Translation tr;
  Translator tl(doc);
  std::vector<ComponentDecl> decls = doc.components;
  std::sort(decls.begin(), decls.end(),
            [](const ComponentDecl& a, const ComponentDecl& b) { return a.index < b.index; });
  for (const auto& d : decls) {
    ComponentSpec spec;
    spec.index = as_component(d.index);
    auto logic = parse_logic(d.logic_text);
    if (!logic) throw Error(ErrorCode::Validation, "unknown logic '" + d.logic_text + "'");
    spec.logic = *logic;
    spec.roles = d.roles;
    spec.transitive = {d.transitive.begin(), d.transitive.end()};
    spec.functional = {d.functional.begin(), d.functional.end()};
    for (const auto& r : d.roles) tl.declare_relation(r);
    tr.components.push_back(std::move(spec));
  }
  auto flag_nonlocal = [&](const Concept& root) {
    std::vector<const Concept*> stack{&root};
    while (!stack.empty()) {
      const Concept* c = stack.back();
      stack.pop_back();
      if (c->kind == Concept::Kind::Nominal && !tr.components.empty())
        tr.components.front().nominals = true;
      if ((c->kind == Concept::Kind::Exists || c->kind == Concept::Kind::Forall ||
           is_number_restriction(c->kind)) &&
          role_has(c->role, RoleExpr::Kind::Complement)) {
        Component k = tl.owner(c->role);
        for (auto& s : tr.components)
          if (s.index == k) s.role_complement = true;
      }
      for (const auto& a : c->args) stack.push_back(&a);
    }
  };
  for (const auto& g : doc.tbox) {
    Term lhs = tl.term(g.lhs);
    tr.tbox.push_back(Inclusion{lhs, tl.term(g.rhs)});
    flag_nonlocal(g.lhs);
    flag_nonlocal(g.rhs);
  }
  for (const auto& f : doc.abox) {
    if (auto* cf = std::get_if<ConceptFact>(&f)) {
      tl.vocabulary().add_object(cf->individual);
      tr.abox.add(Membership{cf->individual, tl.term(cf->description)});
      flag_nonlocal(cf->description);
    } else {
      const auto& rf = std::get<RoleFact>(f);
      tl.declare_relation(rf.role);
      tl.vocabulary().add_object(rf.from);
      tl.vocabulary().add_object(rf.to);
      tr.abox.add(RoleAssertion{rf.role, rf.from, rf.to});
    }
  }
  if (doc.query) {
    tr.mode = doc.query->mode;
    if (doc.query->target) {
      tr.target = tl.term(*doc.query->target);
      flag_nonlocal(*doc.query->target);
    }
  }
  tr.vocabulary = std::move(tl.vocabulary());
  return tr;
}

Term translate_concept(const Document& doc, const Concept& c) { return Translator(doc).term(c); }

FusionSignature fusion_signature(const Translation& tr) {
  if (tr.components.size() != 2)
    throw Error(ErrorCode::Precondition, "a fusion needs exactly two components");
  return fuse(tr.components[0], tr.components[1], tr.vocabulary);
}

// ---------------------------------------------------------------------------
// Pretty printing

namespace {

[[noreturn]] void untranslatable(const std::string& what) {
  throw Error(ErrorCode::Untranslatable, what + " has no rendering in the document syntax");
}

std::string role_text(const RoleExpr& r) {
  switch (r.kind) {
    case RoleExpr::Kind::Name: return r.name;
    case RoleExpr::Kind::Universal: return "U";
    case RoleExpr::Kind::Inverse: return role_text(r.args[0]) + "^-";
    case RoleExpr::Kind::Closure: return role_text(r.args[0]) + "^+";
    case RoleExpr::Kind::Complement: return "~" + role_text(r.args[0]);
    case RoleExpr::Kind::And: return "(" + role_text(r.args[0]) + " & " + role_text(r.args[1]) + ")";
    case RoleExpr::Kind::Or: return "(" + role_text(r.args[0]) + " | " + role_text(r.args[1]) + ")";
    case RoleExpr::Kind::Compose:
      return "(" + role_text(r.args[0]) + " ; " + role_text(r.args[1]) + ")";
  }
  return "?";
}

// Precedence levels: 0 disjunction, 1 conjunction, 2 unary.
std::string term_text(Term t, int level) {
  auto wrap = [level](int own, std::string s) { return own < level ? "(" + s + ")" : s; };
  switch (t.kind()) {
    case TermKind::Var:
      if (t.is_surrogate()) untranslatable("surrogate variable " + t.name());
      if (!is_concept_name(t.name())) untranslatable("set variable '" + t.name() + "'");
      return t.name();
    case TermKind::Top: return "top";
    case TermKind::Bot: return "bot";
    case TermKind::Not: return "!" + term_text(t.arg(0), 2);
    case TermKind::And: return wrap(1, term_text(t.arg(0), 1) + " & " + term_text(t.arg(1), 2));
    case TermKind::Or: return wrap(0, term_text(t.arg(0), 0) + " | " + term_text(t.arg(1), 1));
    case TermKind::App: break;
  }
  Symbol f = t.symbol();
  switch (f->constructor()) {
    case Constructor::Exists: return "exists " + f->role() + " . " + term_text(t.arg(0), 2);
    case Constructor::Forall: return "forall " + f->role() + " . " + term_text(t.arg(0), 2);
    case Constructor::UniversalExists: return "exists U . " + term_text(t.arg(0), 2);
    case Constructor::UniversalForall: return "forall U . " + term_text(t.arg(0), 2);
    case Constructor::AtLeast: return "atleast " + std::to_string(f->count()) + " " + f->role();
    case Constructor::AtMost: return "atmost " + std::to_string(f->count()) + " " + f->role();
    case Constructor::Nominal: return "{" + f->role() + "}";
    default: untranslatable("symbol " + f->name());
  }
}

std::string concept_text(const Concept& c, int level) {
  auto wrap = [level](int own, std::string s) { return own < level ? "(" + s + ")" : s; };
  switch (c.kind) {
    case Concept::Kind::Name: return c.name;
    case Concept::Kind::Top: return "top";
    case Concept::Kind::Bot: return "bot";
    case Concept::Kind::Not: return "!" + concept_text(c.args[0], 2);
    case Concept::Kind::And:
      return wrap(1, concept_text(c.args[0], 1) + " & " + concept_text(c.args[1], 2));
    case Concept::Kind::Or:
      return wrap(0, concept_text(c.args[0], 0) + " | " + concept_text(c.args[1], 1));
    case Concept::Kind::Exists:
      return "exists " + role_text(c.role) + " . " + concept_text(c.args[0], 2);
    case Concept::Kind::Forall:
      return "forall " + role_text(c.role) + " . " + concept_text(c.args[0], 2);
    case Concept::Kind::AtLeast: return "atleast " + std::to_string(c.count) + " " + role_text(c.role);
    case Concept::Kind::AtMost: return "atmost " + std::to_string(c.count) + " " + role_text(c.role);
    case Concept::Kind::Nominal: return "{" + c.name + "}";
  }
  return "?";
}

// Only names, constants and nominals may stand directly before "(a)".
std::string fact_head(Term t) {
  bool bare = t.kind() == TermKind::Var || t.kind() == TermKind::Top ||
              t.kind() == TermKind::Bot ||
              (t.is_app() && t.symbol()->constructor() == Constructor::Nominal);
  return bare ? term_text(t, 2) : "(" + term_text(t, 0) + ")";
}

void require_individual(const std::string& name) {
  if (!is_identifier(name)) untranslatable("object '" + name + "'");
}

}  // namespace

std::string pretty(Term t) { return term_text(t, 0); }
std::string pretty(const Concept& c) { return concept_text(c, 0); }
std::string pretty(const RoleExpr& r) { return role_text(r); }

std::string pretty(const Assertion& a) {
  if (auto* inc = std::get_if<Inclusion>(&a)) return pretty(inc->lhs) + " <= " + pretty(inc->rhs);
  if (auto* r = std::get_if<RoleAssertion>(&a)) {
    require_individual(r->from);
    require_individual(r->to);
    if (!is_identifier(r->role) || r->role == "U") untranslatable("role '" + r->role + "'");
    return r->role + "(" + r->from + ", " + r->to + ")";
  }
  const auto& m = std::get<Membership>(a);
  require_individual(m.object);
  return fact_head(m.term) + "(" + m.object + ")";
}

std::string pretty(const Translation& tr) {
  std::ostringstream out;
  for (const auto& c : tr.components) {
    out << "component " << index_of(c.index) << " " << logic_name(c.logic) << " {\n";
    std::vector<std::string> plain;
    for (const auto& r : c.roles)
      if (!c.transitive.count(r) && !c.functional.count(r)) plain.push_back(r);
    auto line = [&](std::string_view kw, const std::vector<std::string>& names) {
      if (names.empty()) return;
      out << "  " << kw << " ";
      for (std::size_t i = 0; i < names.size(); ++i) out << (i ? ", " : "") << names[i];
      out << ";\n";
    };
    line("roles", plain);
    line("transitive", {c.transitive.begin(), c.transitive.end()});
    line("features", {c.functional.begin(), c.functional.end()});
    out << "}\n";
  }
  if (!tr.tbox.empty()) {
    out << "tbox {\n";
    for (const auto& inc : tr.tbox) out << "  " << pretty(Assertion{inc}) << ";\n";
    out << "}\n";
  }
  if (!tr.abox.empty()) {
    out << "abox {\n";
    for (const auto& a : tr.abox) out << "  " << pretty(a) << ";\n";
    out << "}\n";
  }
  out << "query " << to_string(tr.mode);
  if (tr.target) out << " " << pretty(*tr.target);
  out << ";\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Semantics on the syntax tree

std::vector<PointSet> dl_eval(const RoleExpr& r, const FiniteInterpretation& m) {
  const unsigned n = m.size();
  std::vector<PointSet> rel(n, 0);
  switch (r.kind) {
    case RoleExpr::Kind::Name:
      for (unsigned p = 0; p < n; ++p) rel[p] = m.successors(r.name, p);
      break;
    case RoleExpr::Kind::Universal:
      for (unsigned p = 0; p < n; ++p) rel[p] = m.full();
      break;
    case RoleExpr::Kind::Inverse: {
      auto base = dl_eval(r.args[0], m);
      for (unsigned p = 0; p < n; ++p)
        for (unsigned q = 0; q < n; ++q)
          if (base[q] & point_bit(p)) rel[p] |= point_bit(q);
      break;
    }
    case RoleExpr::Kind::Closure: {
      rel = dl_eval(r.args[0], m);
      for (bool changed = true; changed;) {
        changed = false;
        for (unsigned p = 0; p < n; ++p) {
          PointSet next = rel[p];
          for (unsigned q = 0; q < n; ++q)
            if (rel[p] & point_bit(q)) next |= rel[q];
          if (next != rel[p]) {
            rel[p] = next;
            changed = true;
          }
        }
      }
      break;
    }
    case RoleExpr::Kind::Complement: {
      auto base = dl_eval(r.args[0], m);
      for (unsigned p = 0; p < n; ++p) rel[p] = m.full() & ~base[p];
      break;
    }
    case RoleExpr::Kind::And:
    case RoleExpr::Kind::Or:
    case RoleExpr::Kind::Compose: {
      auto a = dl_eval(r.args[0], m);
      auto b = dl_eval(r.args[1], m);
      for (unsigned p = 0; p < n; ++p) {
        if (r.kind == RoleExpr::Kind::And) {
          rel[p] = a[p] & b[p];
        } else if (r.kind == RoleExpr::Kind::Or) {
          rel[p] = a[p] | b[p];
        } else {
          for (unsigned q = 0; q < n; ++q)
            if (a[p] & point_bit(q)) rel[p] |= b[q];
        }
      }
      break;
    }
  }
  return rel;
}

PointSet dl_eval(const Concept& c, const FiniteInterpretation& m) {
  const unsigned n = m.size();
  switch (c.kind) {
    case Concept::Kind::Name: return m.var(c.name);
    case Concept::Kind::Top: return m.full();
    case Concept::Kind::Bot: return 0;
    case Concept::Kind::Not: return m.full() & ~dl_eval(c.args[0], m);
    case Concept::Kind::And: return dl_eval(c.args[0], m) & dl_eval(c.args[1], m);
    case Concept::Kind::Or: return dl_eval(c.args[0], m) | dl_eval(c.args[1], m);
    case Concept::Kind::Nominal: {
      auto p = m.nominal(c.name);
      if (!p) p = m.object(c.name);
      if (!p) throw Error(ErrorCode::UninterpretedSymbol, "individual " + c.name + " is unassigned");
      return point_bit(*p);
    }
    default: break;
  }
  auto rel = dl_eval(c.role, m);
  PointSet body = c.args.empty() ? 0 : dl_eval(c.args[0], m);
  PointSet out = 0;
  for (unsigned p = 0; p < n; ++p) {
    bool in = false;
    switch (c.kind) {
      case Concept::Kind::Exists: in = (rel[p] & body) != 0; break;
      case Concept::Kind::Forall: in = (rel[p] & ~body) == 0; break;
      case Concept::Kind::AtLeast: in = cardinality(rel[p]) >= c.count; break;
      case Concept::Kind::AtMost: in = cardinality(rel[p]) <= c.count; break;
      default: break;
    }
    if (in) out |= point_bit(p);
  }
  return out;
}

}  // namespace adsfuse::dl
