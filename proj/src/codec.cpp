#include "adsfuse/codec.hpp"

#include "adsfuse/error.hpp"

namespace adsfuse::codec {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::Json, msg); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    bad(std::string("field '") + key + "': " + e.what());
  }
}

Component component_from(int c) {
  if (c < 0 || c > 2) bad("component must be 0, 1 or 2");
  return static_cast<Component>(c);
}

Constructor constructor_from(const std::string& s) {
  for (int k = 0; k <= static_cast<int>(Constructor::Disagreement); ++k) {
    auto c = static_cast<Constructor>(k);
    if (to_string(c) == s) return c;
  }
  bad("unknown constructor '" + s + "'");
}

std::vector<Term> args_of(const json& j, std::size_t n) {
  const json& a = field(j, "args");
  if (!a.is_array() || a.size() != n) bad("'args' must hold " + std::to_string(n) + " terms");
  std::vector<Term> out;
  for (const auto& x : a) out.push_back(term_from_json(x));
  return out;
}

json points(PointSet s) {
  json arr = json::array();
  for (unsigned p = 0; p < kMaxDomain; ++p)
    if (s & point_bit(p)) arr.push_back(p);
  return arr;
}

}  // namespace

json to_json(Symbol f) {
  json j;
  j["ctor"] = std::string(to_string(f->constructor()));
  j["name"] = f->name();
  if (f->constructor() != Constructor::Opaque) j["role"] = f->role();
  j["arity"] = f->arity();
  j["count"] = f->count();
  j["component"] = index_of(f->component());
  j["atomic"] = f->role_atomic();
  return j;
}

json to_json(Term t) {
  json j;
  switch (t.kind()) {
    case TermKind::Var:
      j["op"] = "var";
      j["name"] = t.name();
      return j;
    case TermKind::Top: j["op"] = "top"; return j;
    case TermKind::Bot: j["op"] = "bot"; return j;
    case TermKind::Not: j["op"] = "not"; break;
    case TermKind::And: j["op"] = "and"; break;
    case TermKind::Or: j["op"] = "or"; break;
    case TermKind::App:
      j["op"] = "app";
      j["symbol"] = to_json(t.symbol());
      break;
  }
  j["args"] = json::array();
  for (Term a : t.args()) j["args"].push_back(to_json(a));
  return j;
}

json to_json(const Assertion& a) {
  json j;
  if (auto* inc = std::get_if<Inclusion>(&a)) {
    j["kind"] = "sub";
    j["lhs"] = to_json(inc->lhs);
    j["rhs"] = to_json(inc->rhs);
  } else if (auto* r = std::get_if<RoleAssertion>(&a)) {
    j["kind"] = "rel";
    j["role"] = r->role;
    j["from"] = r->from;
    j["to"] = r->to;
  } else {
    const auto& m = std::get<Membership>(a);
    j["kind"] = "member";
    j["obj"] = m.object;
    j["term"] = to_json(m.term);
  }
  return j;
}

json to_json(const AssertionSet& gamma) {
  json arr = json::array();
  for (const auto& a : gamma) arr.push_back(to_json(a));
  return arr;
}

json to_json(const Signature& sig) {
  json j;
  j["set_vars"] = sig.set_vars();
  j["objects"] = sig.objects();
  j["relations"] = json::array();
  for (const auto& [name, c] : sig.relations())
    j["relations"].push_back({{"name", name}, {"component", index_of(c)}});
  j["functions"] = json::array();
  for (Symbol f : sig.functions()) j["functions"].push_back(to_json(f));
  return j;
}

json to_json(const FiniteInterpretation& m) {
  json j;
  j["domain"] = m.size();
  json roles = json::object(), transitive = json::array(), functional = json::array();
  for (const auto& [name, rows] : m.roles()) {
    json edges = json::array();
    for (unsigned p = 0; p < rows.size(); ++p)
      for (unsigned q = 0; q < m.size(); ++q)
        if (rows[p] & point_bit(q)) edges.push_back({p, q});
    roles[name] = edges;
    RoleFlags fl = m.flags(name);
    if (fl.transitive) transitive.push_back(name);
    if (fl.functional) functional.push_back(name);
  }
  j["roles"] = roles;
  j["transitive"] = transitive;
  j["functional"] = functional;
  json vars = json::object();
  for (const auto& [name, s] : m.vars()) vars[name] = points(s);
  j["vars"] = vars;
  json objects = json::object();
  for (const auto& [name, p] : m.objects()) objects[name] = p;
  j["objects"] = objects;
  json nominals = json::object();
  for (const auto& [name, p] : m.nominals()) nominals[name] = p;
  j["nominals"] = nominals;
  return j;
}

Symbol symbol_from_json(const json& j) {
  Constructor ctor = constructor_from(get<std::string>(j, "ctor"));
  unsigned arity = get<unsigned>(j, "arity");
  unsigned count = j.contains("count") ? get<unsigned>(j, "count") : 0;
  Component c = component_from(get<int>(j, "component"));
  bool atomic = j.contains("atomic") ? get<bool>(j, "atomic") : true;
  std::string key = ctor == Constructor::Opaque ? get<std::string>(j, "name")
                                                : get<std::string>(j, "role");
  Symbol f = symbols::make(ctor, key, arity, count, c, atomic);
  if (f->arity() != arity) bad("symbol " + f->name() + " has arity " + std::to_string(f->arity()));
  return f;
}

Term term_from_json(const json& j) {
  std::string op = get<std::string>(j, "op");
  if (op == "var") {
    std::string name = get<std::string>(j, "name");
    if (name.empty()) bad("empty variable name");
    return mk_var(name);
  }
  if (op == "top") return mk_top();
  if (op == "bot") return mk_bot();
  if (op == "not") return mk_not(args_of(j, 1)[0]);
  if (op == "and" || op == "or") {
    auto a = args_of(j, 2);
    return op == "and" ? mk_and(a[0], a[1]) : mk_or(a[0], a[1]);
  }
  if (op == "app") {
    Symbol f = symbol_from_json(field(j, "symbol"));
    return mk_app(f, args_of(j, f->arity()));
  }
  bad("unknown op '" + op + "'");
}

Assertion assertion_from_json(const json& j) {
  std::string kind = get<std::string>(j, "kind");
  if (kind == "sub") return Inclusion{term_from_json(field(j, "lhs")), term_from_json(field(j, "rhs"))};
  if (kind == "rel")
    return RoleAssertion{get<std::string>(j, "role"), get<std::string>(j, "from"),
                         get<std::string>(j, "to")};
  if (kind == "member") return Membership{get<std::string>(j, "obj"), term_from_json(field(j, "term"))};
  bad("unknown assertion kind '" + kind + "'");
}

AssertionSet assertions_from_json(const json& j) {
  if (!j.is_array()) bad("assertion set must be an array");
  AssertionSet g;
  for (const auto& a : j) g.add(assertion_from_json(a));
  return g;
}

Signature signature_from_json(const json& j) {
  Signature sig;
  try {
    for (const auto& v : field(j, "set_vars")) sig.add_set_var(v.get<std::string>());
    for (const auto& o : field(j, "objects")) sig.add_object(o.get<std::string>());
    for (const auto& r : field(j, "relations"))
      sig.add_relation(get<std::string>(r, "name"), component_from(get<int>(r, "component")));
  } catch (const json::exception& e) {
    bad(e.what());
  }
  for (const auto& f : field(j, "functions")) sig.add_function(symbol_from_json(f));
  return sig;
}

FiniteInterpretation model_from_json(const json& j) {
  unsigned n = get<unsigned>(j, "domain");
  if (n == 0 || n > kMaxDomain) bad("domain must be in 1.." + std::to_string(kMaxDomain));
  FiniteInterpretation m(n);
  auto point = [n](const json& p) {
    if (!p.is_number_unsigned() || p.get<unsigned>() >= n) bad("point out of range");
    return p.get<unsigned>();
  };
  auto names = [&](const char* key) {
    std::vector<std::string> out;
    if (j.contains(key))
      for (const auto& x : j.at(key)) {
        if (!x.is_string()) bad(std::string("'") + key + "' must list role names");
        out.push_back(x.get<std::string>());
      }
    return out;
  };
  std::map<std::string, RoleFlags> flags;
  for (const auto& r : names("transitive")) flags[r].transitive = true;
  for (const auto& r : names("functional")) flags[r].functional = true;
  if (j.contains("roles")) {
    for (const auto& [name, edges] : j.at("roles").items()) {
      m.declare_role(name, flags[name]);
      for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 2) bad("edges must be [from, to] pairs");
        m.add_edge(name, point(e[0]), point(e[1]));
      }
    }
  }
  for (const auto& [name, fl] : flags)
    if (!m.has_role(name)) m.declare_role(name, fl);
  if (j.contains("vars"))
    for (const auto& [name, ps] : j.at("vars").items()) {
      PointSet s = 0;
      for (const auto& p : ps) s |= point_bit(point(p));
      m.set_var(name, s);
    }
  if (j.contains("objects"))
    for (const auto& [name, p] : j.at("objects").items()) m.set_object(name, point(p));
  if (j.contains("nominals"))
    for (const auto& [name, p] : j.at("nominals").items()) m.set_nominal(name, point(p));
  return m;
}

}  // namespace adsfuse::codec
