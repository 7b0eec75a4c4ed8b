#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "adsfuse/codec.hpp"
#include "adsfuse/driver.hpp"
#include "adsfuse/error.hpp"
#include "adsfuse/frontend.hpp"
#include "adsfuse/oracle.hpp"
#include "adsfuse/selftest.hpp"

namespace {

using namespace adsfuse;
using codec::json;

enum Exit { kSat = 0, kUnsat = 1, kUsage = 2, kResource = 3 };

// Thrown for anything that should end in exit status 2.
struct UsageError {
  std::string kind;
  std::string message;
};

struct Common {
  std::string file;
  bool json_out = false;
  bool with_universal = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"io", "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

dl::Translation load(const Common& c) {
  dl::Document doc;
  try {
    doc = dl::parse(read_file(c.file));
  } catch (const dl::SyntaxError& e) {
    throw UsageError{"syntax", c.file + ":" + e.what()};
  }
  auto diags = dl::validate(doc, dl::ValidateOptions{c.with_universal});
  if (!diags.empty()) {
    std::string msg;
    for (const auto& d : diags) msg += (msg.empty() ? "" : "\n") + c.file + ":" + dl::format(d);
    throw UsageError{"validation", msg};
  }
  return dl::translate(doc);
}

std::size_t parse_cap(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long n = 0;
  try {
    n = std::stoul(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || n == 0 || n > 64)
    throw UsageError{"caps", "ADSFUSE_CAPS: " + key + " must be an integer in 1..64"};
  return n;
}

FusionCaps caps_from_env() {
  FusionCaps caps;
  const char* env = std::getenv("ADSFUSE_CAPS");
  if (!env || !*env) return caps;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError{"caps", "ADSFUSE_CAPS: expected key=value, got '" + item + "'"};
    std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "types")
      caps.types = parse_cap(key, value);
    else if (key == "subsets")
      caps.subsets = parse_cap(key, value);
    else if (key == "sigma")
      caps.sigma = parse_cap(key, value);
    else
      throw UsageError{"caps", "ADSFUSE_CAPS: unknown key '" + key + "'"};
  }
  return caps;
}

ModelClass model_class(const dl::Translation& tr) {
  ModelClass cls;
  for (const auto& c : tr.components)
    for (const auto& [role, flags] : c.model_class().roles) cls.add(role, flags);
  return cls;
}

std::string show(Term t) {
  try {
    return dl::pretty(t);
  } catch (const Error&) {
    return to_prefix(t);
  }
}

json terms(const TypeAtomSet& atoms) {
  json out = json::array();
  for (Term t : atoms.atoms()) out.push_back(show(t));
  return out;
}

json types(const std::vector<TypeDescriptor>& ts) {
  json out = json::array();
  for (const auto& t : ts) out.push_back(t.sign_string());
  return out;
}

json typing(const std::map<std::string, std::size_t>& m) {
  json out = json::object();
  for (const auto& [obj, k] : m) out[obj] = k;
  return out;
}

std::string verdict_name(const Verdict& v) { return std::string(to_string(v.kind)); }

// ---------------------------------------------------------------------------

struct CheckArgs {
  Common common;
  std::string engine = "auto";
  std::string d_search = "maximal";
  bool trace = false;
  bool oracle_check = false;
  unsigned max_domain = 4;
  std::string emit_dir;
  unsigned jobs = 1;
};

json subproblem_file(const Subproblem& s) {
  json j;
  j["choice"] = s.choice;
  j["component"] = index_of(s.component);
  j["verdict"] = std::string(to_string(s.verdict));
  j["assertions"] = codec::to_json(s.gamma);
  return j;
}

void emit_subproblems(const std::string& dir, const RunOutcome& out) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  if (!out.fusion) return;
  for (const auto& s : out.fusion->subproblems) {
    auto path = fs::path(dir) /
                ("choice-" + std::to_string(s.choice) + "-component-" + std::to_string(index_of(s.component)) + ".json");
    std::ofstream(path) << subproblem_file(s).dump(2) << "\n";
  }
}

json report(const dl::Translation& tr, const CheckArgs& a, const RunOutcome& out) {
  json j;
  j["verdict"] = verdict_name(out.verdict);
  j["query"] = std::string(dl::to_string(tr.mode));
  j["route"] = out.route;
  j["engine"] = a.engine;
  json comps = json::array();
  for (const auto& c : tr.components) {
    json cj;
    cj["index"] = index_of(c.index);
    cj["logic"] = std::string(logic_name(c.logic));
    cj["calls"] = out.component_calls[c.index == Component::Second ? 1 : 0];
    std::size_t subs = 0;
    if (out.fusion)
      for (const auto& s : out.fusion->subproblems) subs += s.component == c.index;
    cj["subproblems"] = subs;
    comps.push_back(cj);
  }
  j["components"] = comps;
  if (out.fusion && out.fusion->typed) {
    const auto& s = *out.fusion->typed;
    json d;
    d["atoms"] = s.atoms ? terms(*s.atoms) : json::array();
    d["types"] = types(s.types);
    d["typing"] = typing(s.typing);
    j["search"] = d;
  } else if (out.fusion && out.fusion->covering) {
    const auto& p = *out.fusion->covering;
    json d;
    d["index"] = index_of(p.index);
    d["depths"] = json::array({p.first_depth, p.second_depth});
    d["covers"] = json::array({show(p.first_cover), show(p.second_cover)});
    d["atoms"] = p.atoms ? terms(*p.atoms) : json::array();
    d["sigma"] = types(p.sigma);
    d["typing"] = typing(p.typing);
    j["search"] = d;
  }
  if (out.verdict.witness) j["witness"] = codec::to_json(*out.verdict.witness);
  return j;
}

json oracle_report(const dl::Translation& tr, const CheckArgs& a, const Verdict& v) {
  json o;
  o["max_domain"] = a.max_domain;
  try {
    auto r = find_model(tr.query_set(), model_class(tr), a.max_domain);
    o["result"] = r.found() ? "found" : "not-found";
    o["agrees"] = !(r.found() && v.is_unsat());
    if (r.found()) o["model"] = codec::to_json(*r.model);
  } catch (const ResourceError& e) {
    o["result"] = "budget";
    o["agrees"] = true;
  }
  return o;
}

void print_text(const json& j, std::ostream& os) {
  os << "verdict: " << j["verdict"].get<std::string>() << "\n";
  os << "query: " << j["query"].get<std::string>() << "\n";
  os << "route: " << j["route"].get<std::string>() << "\n";
  for (const auto& c : j["components"])
    os << "component " << c["index"] << " (" << c["logic"].get<std::string>() << "): " << c["calls"]
       << " calls, " << c["subproblems"] << " final subproblems\n";
  if (j.contains("search")) {
    const auto& s = j["search"];
    if (s.contains("index")) os << "sigma index: " << s["index"] << "\n";
    os << "atoms:";
    for (const auto& t : s["atoms"]) os << "\n  " << t.get<std::string>();
    os << "\n" << (s.contains("sigma") ? "sigma:" : "types:");
    for (const auto& t : s[s.contains("sigma") ? "sigma" : "types"]) os << " " << t.get<std::string>();
    os << "\ntyping:";
    for (const auto& [obj, k] : s["typing"].items()) os << " " << obj << "->" << k;
    os << "\n";
  }
  if (j.contains("oracle")) {
    const auto& o = j["oracle"];
    os << "oracle (domain <= " << o["max_domain"] << "): " << o["result"].get<std::string>()
       << (o["agrees"].get<bool>() ? "" : "  DISAGREES WITH ENGINE") << "\n";
  }
}

int run_check(const CheckArgs& a) {
  auto tr = load(a.common);
  RunOptions opts;
  opts.engine = a.engine == "typed" ? FusionEngineKind::Typed
                : a.engine == "covering" ? FusionEngineKind::Covering : FusionEngineKind::Auto;
  opts.fusion.caps = caps_from_env();
  opts.fusion.d_search = a.d_search == "exhaustive" ? DSearch::Exhaustive : DSearch::Maximal;
  opts.fusion.record_subproblems = true;
  if (a.trace) opts.fusion.trace = [](const std::string& line) { std::cerr << "trace: " << line << "\n"; };
  RunOutcome out;
  try {
    out = run_query(tr, opts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Precondition) throw UsageError{"precondition", e.what()};
    throw;
  }
  if (!a.emit_dir.empty()) emit_subproblems(a.emit_dir, out);
  json j = report(tr, a, out);
  if (a.oracle_check) j["oracle"] = oracle_report(tr, a, out.verdict);
  if (a.common.json_out)
    std::cout << j.dump(2) << "\n";
  else
    print_text(j, std::cout);
  if (j.contains("oracle") && !j["oracle"]["agrees"].get<bool>()) {
    std::cerr << "error: the oracle found a model of an input the engine rejected\n";
    return 4;
  }
  return out.verdict.is_sat() ? kSat : kUnsat;
}

int run_translate(const Common& c) {
  auto tr = load(c);
  auto gamma = tr.query_set();
  if (c.json_out) {
    json j;
    j["query"] = std::string(dl::to_string(tr.mode));
    j["signature"] = codec::to_json(tr.vocabulary);
    j["assertions"] = codec::to_json(gamma);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "# query: " << dl::to_string(tr.mode) << "\n";
    for (const auto& a : gamma) std::cout << to_prefix(a) << "\n";
  }
  return 0;
}

struct OracleArgs {
  Common common;
  unsigned max_domain = 4;
  std::string model_file;
};

int run_find_model(const OracleArgs& a) {
  auto tr = load(a.common);
  auto r = find_model(tr.query_set(), model_class(tr), a.max_domain);
  json j;
  j["result"] = r.found() ? "found" : "not-found";
  j["max_domain"] = a.max_domain;
  if (r.found()) j["model"] = codec::to_json(*r.model);
  std::cout << j.dump(a.common.json_out ? 2 : -1) << "\n";
  return r.found() ? 0 : 1;
}

int run_model_check(const OracleArgs& a) {
  auto tr = load(a.common);
  FiniteInterpretation m = [&] {
    try {
      return codec::model_from_json(json::parse(read_file(a.model_file)));
    } catch (const json::exception& e) {
      throw UsageError{"json", a.model_file + ": " + e.what()};
    } catch (const Error& e) {
      throw UsageError{"json", a.model_file + ": " + e.what()};
    }
  }();
  bool ok = check(tr.query_set(), m);
  std::cout << (ok ? "holds" : "fails") << "\n";
  return ok ? 0 : 1;
}

struct SelftestArgs {
  std::vector<std::string> suites;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  double scale = 1.0;
  bool inject_fault = false;
  bool json_out = false;
};

int run_selftest(const SelftestArgs& a) {
  selftest::Config cfg;
  cfg.seed = a.seed;
  cfg.jobs = a.jobs;
  cfg.scale = a.scale;
  cfg.inject_fault = a.inject_fault;
  auto names = a.suites.empty() ? selftest::suite_names() : a.suites;
  bool all = true;
  json reports = json::array();
  for (const auto& name : names) {
    auto rep = selftest::run_suite(name, cfg);
    all = all && rep.passed();
    json r;
    r["suite"] = rep.suite;
    r["passed"] = rep.passed();
    json checks = json::array();
    for (const auto& c : rep.checks) {
      checks.push_back({{"name", c.name}, {"cases", c.cases}, {"failures", c.failures}, {"samples", c.samples}});
      if (!a.json_out) {
        std::cout << (c.passed() ? "ok   " : "FAIL ") << name << "/" << c.name << "  " << c.cases - c.failures
                  << "/" << c.cases << "\n";
        for (const auto& s : c.samples) std::cout << "       " << s << "\n";
      }
    }
    r["checks"] = checks;
    r["counters"] = rep.counters;
    if (!a.json_out && !rep.counters.empty()) {
      std::cout << "     " << name << " counters:";
      for (const auto& [k, v] : rep.counters) std::cout << " " << k << "=" << v;
      std::cout << "\n";
    }
    reports.push_back(r);
  }
  if (a.json_out) std::cout << json{{"seed", a.seed}, {"passed", all}, {"suites", reports}}.dump(2) << "\n";
  return all ? 0 : 1;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("file", c.file, "input document (.adl)")->required();
  cmd->add_flag("--json", c.json_out, "machine-readable output");
  cmd->add_flag("--with-universal", c.with_universal, "accept the universal role U");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedures for fusions of description logics"};
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "decide the query of a document");
  add_common(check_cmd, check_args.common);
  check_cmd->add_option("--engine", check_args.engine, "fusion engine")
      ->check(CLI::IsMember({"typed", "covering", "auto"}));
  check_cmd->add_option("--d-search", check_args.d_search, "type-set search of the relativized engine")
      ->check(CLI::IsMember({"maximal", "exhaustive"}));
  check_cmd->add_flag("--trace", check_args.trace, "log engine steps to stderr");
  check_cmd->add_flag("--oracle-check", check_args.oracle_check, "cross-check with the finite model finder");
  check_cmd->add_option("--max-domain", check_args.max_domain, "oracle domain bound")->check(CLI::Range(1, 6));
  check_cmd->add_option("--emit-subproblems", check_args.emit_dir, "write component subproblems to DIR");
  check_cmd->add_option("--jobs", check_args.jobs, "worker threads")->check(CLI::PositiveNumber);

  Common translate_args;
  auto* translate_cmd = app.add_subcommand("translate", "print the assertion set a document denotes");
  add_common(translate_cmd, translate_args);

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "bounded finite model search");
  oracle_cmd->require_subcommand(1);
  auto* find_cmd = oracle_cmd->add_subcommand("find-model", "search for a model up to a domain bound");
  add_common(find_cmd, oracle_args.common);
  find_cmd->add_option("--max-domain", oracle_args.max_domain, "largest domain tried")->check(CLI::Range(1, 6));
  auto* model_check_cmd = oracle_cmd->add_subcommand("check", "check a JSON model against a document");
  add_common(model_check_cmd, oracle_args.common);
  model_check_cmd->add_option("--model", oracle_args.model_file, "model file")->required();

  SelftestArgs st;
  auto* st_cmd = app.add_subcommand("selftest", "run the randomized agreement and law suites");
  st_cmd->add_option("--suite", st.suites, "suite to run (repeatable)")
      ->check(CLI::IsMember(adsfuse::selftest::suite_names()));
  st_cmd->add_option("--seed", st.seed, "random seed");
  st_cmd->add_option("--jobs", st.jobs, "worker threads")->check(CLI::PositiveNumber);
  st_cmd->add_option("--scale", st.scale, "case count multiplier")->check(CLI::Range(0.001, 100.0));
  st_cmd->add_flag("--inject-fault", st.inject_fault, "disable the tableau's atomic clash rule");
  st_cmd->add_flag("--json", st.json_out, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  bool json_out = false;
  try {
    if (check_cmd->parsed()) {
      json_out = check_args.common.json_out;
      return run_check(check_args);
    }
    if (translate_cmd->parsed()) {
      json_out = translate_args.json_out;
      return run_translate(translate_args);
    }
    if (find_cmd->parsed()) {
      json_out = oracle_args.common.json_out;
      return run_find_model(oracle_args);
    }
    if (model_check_cmd->parsed()) return run_model_check(oracle_args);
    return run_selftest(st);
  } catch (const UsageError& e) {
    if (json_out) std::cout << json{{"error", e.kind}, {"message", e.message}}.dump(2) << "\n";
    std::cerr << e.message << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    if (json_out) std::cout << json{{"error", "resource"}, {"detail", e.detail()}}.dump(2) << "\n";
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const Error& e) {
    if (json_out) std::cout << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
