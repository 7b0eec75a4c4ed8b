#include "adsfuse/driver.hpp"

#include "adsfuse/error.hpp"

namespace adsfuse {

namespace {

RunOutcome single_component(const dl::Translation& tr, const RunOptions& opts) {
  RunOutcome out;
  auto reasoner = make_reasoner(tr.components.front(), opts.fusion.reasoner);
  AssertionSet gamma = tr.query_set();
  if (tr.uses_universal()) {
    out.route = "universal";
    out.verdict = lift_universal(
        gamma, [&](const AssertionSet& g) { return reasoner->decide_relativized_sat(g, false); },
        opts.fusion.caps.sigma);
  } else {
    out.route = "component";
    out.verdict = gamma.has_term_assertions() ? reasoner->decide_relativized_sat(gamma)
                                              : reasoner->decide_object_sat(gamma);
  }
  out.component_calls[0] = reasoner->stats().calls;
  return out;
}

}  // namespace

RunOutcome run_query(const dl::Translation& tr, const RunOptions& opts) {
  if (tr.components.empty()) throw Error(ErrorCode::Precondition, "no component declared");
  const bool covering = opts.engine == FusionEngineKind::Covering;
  if (tr.uses_universal() && covering)
    throw Error(ErrorCode::Precondition, "the covering-term search takes no universal role");
  if (tr.components.size() == 1) return single_component(tr, opts);

  FusionEngine engine(fusion_signature(tr), opts.fusion);
  RunOutcome out;
  AssertionSet gamma = tr.query_set();
  if (tr.uses_universal()) {
    out.route = "universal";
    out.verdict = engine.decide_with_universal(gamma);
  } else if (tr.mode == dl::QueryMode::TermSat && tr.target) {
    if (tr.tbox.empty() && opts.engine != FusionEngineKind::Typed) {
      out.route = "covering";
      out.fusion = engine.decide_term_sat(*tr.target);
    } else if (covering) {
      throw Error(ErrorCode::Precondition, "the covering-term search takes no term assertions");
    } else {
      out.route = "typed";
      out.fusion = engine.decide_relativized_term_sat(*tr.target, tr.tbox);
    }
  } else {
    bool relativized = opts.engine == FusionEngineKind::Typed ||
                       (opts.engine == FusionEngineKind::Auto && gamma.has_term_assertions());
    out.route = relativized ? "typed" : "covering";
    out.fusion = engine.decide(gamma, opts.engine);
  }
  if (out.fusion) out.verdict = out.fusion->verdict;
  out.stats = engine.stats();
  out.component_calls[0] = out.stats.component_calls[1];
  out.component_calls[1] = out.stats.component_calls[2];
  return out;
}

}  // namespace adsfuse
