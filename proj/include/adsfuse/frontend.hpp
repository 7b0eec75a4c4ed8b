#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "adsfuse/assertion.hpp"
#include "adsfuse/error.hpp"
#include "adsfuse/fusion.hpp"
#include "adsfuse/model.hpp"
#include "adsfuse/reasoner.hpp"
#include "adsfuse/signature.hpp"

namespace adsfuse::dl {

struct SourceLoc {
  int line = 0;
  int column = 0;
};

class SyntaxError : public Error {
 public:
  SyntaxError(SourceLoc loc, const std::string& message);
  SourceLoc loc() const { return loc_; }

 private:
  SourceLoc loc_;
};

struct RoleExpr {
  enum class Kind { Name, Universal, Inverse, Closure, Complement, And, Or, Compose };
  Kind kind = Kind::Name;
  std::string name;
  std::vector<RoleExpr> args;
  SourceLoc loc;

  bool is_atomic() const { return kind == Kind::Name; }
};

struct Concept {
  enum class Kind { Name, Top, Bot, Not, And, Or, Exists, Forall, AtLeast, AtMost, Nominal };
  Kind kind = Kind::Top;
  std::string name;  // concept name, or the individual of a nominal
  unsigned count = 0;
  RoleExpr role;
  std::vector<Concept> args;
  SourceLoc loc;
};

struct ComponentDecl {
  int index = 1;
  std::string logic_text;
  std::vector<std::string> roles;  // declaration order, flagged roles included
  std::vector<std::string> transitive;
  std::vector<std::string> functional;
  SourceLoc loc;
};

struct Gci {
  Concept lhs;
  Concept rhs;
  SourceLoc loc;
};

struct ConceptFact {
  Concept description;
  std::string individual;
  SourceLoc loc;
};

struct RoleFact {
  std::string role;
  std::string from;
  std::string to;
  SourceLoc loc;
};

using Fact = std::variant<ConceptFact, RoleFact>;

enum class QueryMode { AboxSat, TermSat, Relativized };
std::string_view to_string(QueryMode m);
std::optional<QueryMode> parse_query_mode(std::string_view s);

struct Query {
  QueryMode mode = QueryMode::Relativized;
  std::optional<Concept> target;  // term-sat only
  SourceLoc loc;
};

struct Document {
  std::vector<ComponentDecl> components;
  std::vector<Gci> tbox;
  std::vector<Fact> abox;
  std::optional<Query> query;
};

Document parse(std::string_view text);
// A single concept in the document syntax.
Concept parse_concept(std::string_view text);

struct Diagnostic {
  SourceLoc loc;
  std::string code;
  std::string message;
};

struct ValidateOptions {
  bool with_universal = false;
};

// Empty when the document may be handed to the reasoners.
std::vector<Diagnostic> validate(const Document& doc, const ValidateOptions& opts = {});
std::string format(const Diagnostic& d);

// Concept names become set variables and individuals become object
// variables under their own names; role-indexed constructors become the
// matching function symbols tagged with the owning component.
struct Translation {
  std::vector<ComponentSpec> components;  // index order; one or two entries
  Signature vocabulary;
  std::vector<Inclusion> tbox;
  AssertionSet abox;
  QueryMode mode = QueryMode::Relativized;
  std::optional<Term> target;

  // The assertion set whose satisfiability answers the query.
  AssertionSet query_set() const;
  bool uses_universal() const;
};

// Structural: complex roles and non-local constructors are translated as well
// (undeclared roles land in component 1). Reasoning needs validate() first.
Translation translate(const Document& doc);
Term translate_concept(const Document& doc, const Concept& c);

FusionSignature fusion_signature(const Translation& tr);

// Throws Untranslatable for surrogates, opaque symbols and names the grammar
// cannot spell.
std::string pretty(Term t);
std::string pretty(const Assertion& a);
std::string pretty(const Concept& c);
std::string pretty(const RoleExpr& r);
// A whole document; parse + translate gives back the same translation.
std::string pretty(const Translation& tr);

// Set-theoretic semantics evaluated on the syntax tree itself, independent of
// the translation. Nominals read the nominal table, then the objects.
PointSet dl_eval(const Concept& c, const FiniteInterpretation& m);
std::vector<PointSet> dl_eval(const RoleExpr& r, const FiniteInterpretation& m);

}  // namespace adsfuse::dl
