#include "ckab/statespace.hpp"

#include <sstream>

namespace ckab {

namespace {

std::string fact_list(const ABox& a) {
    std::string s;
    for (const auto& f : a.facts())
        s += (s.empty() ? "" : ", ") + to_string(f);
    return "{" + s + "}";
}

std::string call_list(const ServiceCallMap& m) {
    std::string s;
    for (const auto& [c, v] : m)
        s += (s.empty() ? "" : ", ") + to_string(c) + " -> " + v;
    return "{" + s + "}";
}

} // namespace

SimulationTrace simulate(const CkabSpec& spec, size_t steps, const ServiceBackend& backend) {
    KbProjector kb(spec.ctbox, build_theory(spec.dimensions));
    auto project = [&](const ContextState& c) -> const Reasoner& { return kb.at(c); };
    SimulationTrace trace;
    trace.initial = SystemState{spec.initial_abox, {}, spec.initial_context, Phase::Stable};
    SystemState cur = trace.initial;
    for (size_t n = 0; n < steps; ++n) {
        const Reasoner& here = kb.at(cur.ctx);
        std::optional<SimulationStep> chosen;
        for (const auto& rule : spec.process) {
            const ActionSpec* action = spec.find_action(rule.action);
            if (!action)
                continue;
            for (const auto& sigma : enabled_bindings(here, cur.abox, cur.ctx, kb.theory(), rule, *action)) {
                auto pending = do_action(here, cur.abox, *action, sigma);
                Evaluation ev = evaluate_concrete(pending, cur.scmap, backend);
                ServiceCallMap m = cur.scmap;
                m.insert(ev.theta.begin(), ev.theta.end());
                for (const auto& cs : context_step(ev.abox, cur.ctx, spec.context_rules, project, kb.theory())) {
                    if (!kb.at(cs.ctx).is_consistent(ev.abox))
                        continue;
                    SimulationStep step;
                    step.action = action->name + "(";
                    for (size_t i = 0; i < action->params.size(); ++i)
                        step.action += (i ? ", " : "") + sigma.at(action->params[i]);
                    step.action += ")";
                    step.rules = cs.rules;
                    ABox marked = ev.abox;
                    marked.insert({kMarkerConcept, {kMarkerConstant}});
                    step.intermediate = SystemState{std::move(marked), m, cur.ctx, Phase::Intermediate};
                    step.stable = SystemState{ev.abox, m, cs.ctx, Phase::Stable};
                    chosen = std::move(step);
                    break;
                }
                if (chosen)
                    break;
            }
            if (chosen)
                break;
        }
        if (!chosen) {
            trace.stop_reason = "no executable action with a consistent successor";
            break;
        }
        cur = chosen->stable;
        trace.steps.push_back(std::move(*chosen));
    }
    return trace;
}

std::string format_trace(const SimulationTrace& trace) {
    std::ostringstream out;
    auto state = [&](const char* tag, const SystemState& s) {
        out << tag << " context " << to_string(s.ctx) << "\n";
        out << "  abox " << fact_list(s.abox) << "\n";
        out << "  calls " << call_list(s.scmap) << "\n";
    };
    state("step 0:", trace.initial);
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& st = trace.steps[i];
        out << "step " << i + 1 << ": action " << st.action << "\n";
        std::string rules;
        for (size_t r : st.rules)
            rules += (rules.empty() ? "" : ", ") + std::string("r") + std::to_string(r);
        out << "  context rules " << (rules.empty() ? "-" : rules) << "\n";
        state("  ->", st.stable);
    }
    if (!trace.stop_reason.empty())
        out << "stopped: " << trace.stop_reason << "\n";
    return out.str();
}

} // namespace ckab
