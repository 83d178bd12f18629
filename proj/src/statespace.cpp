#include "ckab/statespace.hpp"

#include <algorithm>
#include <functional>
#include <thread>

namespace ckab {

const char* to_string(Phase p) { return p == Phase::Stable ? "stable" : "intermediate"; }

bool SystemState::operator<(const SystemState& o) const {
    if (phase != o.phase)
        return phase < o.phase;
    if (ctx != o.ctx)
        return ctx < o.ctx;
    if (abox != o.abox)
        return abox < o.abox;
    return scmap < o.scmap;
}

std::string canonical_form(const SystemState& s) {
    std::string out = to_string(s.phase);
    out += "|" + to_string(s.ctx) + "|";
    for (const auto& f : s.abox.facts())
        out += to_string(f) + ";";
    out += "|";
    for (const auto& [c, v] : s.scmap)
        out += to_string(c) + "=" + v + ";";
    return out;
}

std::string state_digest(const SystemState& s) { return hex_digest(fnv1a(canonical_form(s))); }

KbProjector::KbProjector(ContextualizedTBox ctbox, ContextTheory theory)
    : ctbox_(std::move(ctbox)), theory_(std::move(theory)) {}

const Reasoner& KbProjector::at(const ContextState& ctx) const {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(ctx);
    if (it == cache_.end())
        it = cache_.emplace(ctx, std::make_unique<Reasoner>(kb_in_context(ctbox_, ctx, theory_))).first;
    return *it->second;
}

TransitionSystem::TransitionSystem(std::shared_ptr<const KbProjector> kb) : kb_(std::move(kb)) {}

std::pair<size_t, bool> TransitionSystem::add_state(SystemState s) {
    if (auto it = index_.find(s); it != index_.end())
        return {it->second, false};
    size_t i = states_.size();
    ids_.push_back(state_digest(s));
    index_.emplace(s, i);
    states_.push_back(std::move(s));
    succ_.emplace_back();
    pred_.emplace_back();
    return {i, true};
}

bool TransitionSystem::add_edge(size_t from, size_t to, std::string label) {
    if (!edge_set_.emplace(from, to).second)
        return false;
    edges_.push_back({from, to, std::move(label)});
    succ_[from].push_back(to);
    pred_[to].push_back(from);
    return true;
}

std::optional<size_t> TransitionSystem::find(const SystemState& s) const {
    auto it = index_.find(s);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

size_t TransitionSystem::stable_count() const {
    return static_cast<size_t>(
        std::count_if(states_.begin(), states_.end(), [](const SystemState& s) { return s.phase == Phase::Stable; }));
}

bool TransitionSystem::same_structure(const TransitionSystem& o) const {
    return states_ == o.states_ && ids_ == o.ids_ && edges_ == o.edges_;
}

int derive_k(const CkabSpec& spec) {
    int k = 0;
    for (const auto& a : spec.actions) {
        std::set<std::string> terms;
        std::function<void(const HeadTerm&)> walk = [&](const HeadTerm& t) {
            if (t.kind != HeadTerm::Kind::Call)
                return;
            std::string key = t.name + "(";
            for (const auto& x : t.args) {
                walk(x);
                key += x.name + (x.kind == HeadTerm::Kind::Call ? "(..)" : "") + ",";
            }
            terms.insert(key + ")");
        };
        for (const auto& e : a.effects)
            for (const auto& h : e.head)
                for (const auto& t : h.args)
                    walk(t);
        k = std::max(k, static_cast<int>(terms.size()));
    }
    return k;
}

std::vector<std::string> abstraction_domain(const CkabSpec& spec, int k, const std::set<std::string>& extra) {
    std::set<std::string> named = spec.declared_constants();
    named.insert(extra.begin(), extra.end());
    std::vector<std::string> out(named.begin(), named.end());
    for (int i = 1; i <= k; ++i)
        out.push_back("_f" + std::to_string(i));
    return out;
}

namespace {

struct Candidate {
    std::string label;
    SystemState intermediate;
    std::vector<std::pair<SystemState, std::string>> stable;
};

std::string binding_label(const ActionSpec& a, const Substitution& sigma) {
    std::string s = a.name + "(";
    for (size_t i = 0; i < a.params.size(); ++i)
        s += (i ? ", " : "") + sigma.at(a.params[i]);
    return s + ")";
}

std::string rules_label(const std::vector<size_t>& rules) {
    std::string s = "ctx";
    for (size_t i = 0; i < rules.size(); ++i)
        s += (i ? "," : " ") + std::string("r") + std::to_string(rules[i]);
    return s;
}

std::vector<Candidate> expand(const CkabSpec& spec, const KbProjector& kb, const SystemState& s,
                              const std::vector<std::string>& domain) {
    std::vector<Candidate> out;
    const auto& theory = kb.theory();
    const Reasoner& here = kb.at(s.ctx);
    auto project = [&](const ContextState& c) -> const Reasoner& { return kb.at(c); };
    std::set<std::pair<std::string, Substitution>> seen;
    for (const auto& rule : spec.process) {
        const ActionSpec* action = spec.find_action(rule.action);
        if (!action)
            continue;
        for (const auto& sigma : enabled_bindings(here, s.abox, s.ctx, theory, rule, *action)) {
            if (!seen.emplace(action->name, sigma).second)
                continue;
            std::string label = binding_label(*action, sigma);
            for (auto& succ : action_step(here, s.abox, s.scmap, *action, sigma, domain)) {
                Candidate c;
                c.label = label;
                for (const auto& cs : context_step(succ.abox, s.ctx, spec.context_rules, project, theory)) {
                    if (!kb.at(cs.ctx).is_consistent(succ.abox))
                        continue;
                    c.stable.push_back({SystemState{succ.abox, succ.scmap, cs.ctx, Phase::Stable}, rules_label(cs.rules)});
                }
                if (c.stable.empty())
                    continue;
                ABox marked = succ.abox;
                marked.insert({kMarkerConcept, {kMarkerConstant}});
                c.intermediate = SystemState{std::move(marked), std::move(succ.scmap), s.ctx, Phase::Intermediate};
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

std::set<std::string> visible_adom(const ABox& a) {
    auto d = a.adom();
    d.erase(kMarkerConstant);
    return d;
}

} // namespace

TransitionSystem build(const CkabSpec& spec, const BuildConfig& config) {
    auto kb = std::make_shared<KbProjector>(spec.ctbox, build_theory(spec.dimensions));
    TransitionSystem ts(kb);
    ts.k = config.k ? *config.k : derive_k(spec);
    ts.value_domain = abstraction_domain(spec, ts.k, config.extra_constants);
    ts.spec_digest = spec.digest();

    // Constants accumulated along each state's discovery path.
    std::vector<std::set<std::string>> cumulative;
    std::vector<size_t> parent;
    auto path_to = [&](size_t i) {
        std::vector<size_t> p{i};
        while (p.back() != 0)
            p.push_back(parent[p.back()]);
        std::reverse(p.begin(), p.end());
        return p;
    };

    bool stop = false;
    auto admit = [&](SystemState st, size_t from) -> std::optional<size_t> {
        if (auto existing = ts.find(st))
            return existing;
        if (ts.size() >= config.state_cap) {
            ts.complete = false;
            ts.incomplete_reason = "state cap of " + std::to_string(config.state_cap) + " reached";
            stop = true;
            return std::nullopt;
        }
        auto values = cumulative[from];
        auto here = visible_adom(st.abox);
        values.insert(here.begin(), here.end());
        size_t i = ts.add_state(std::move(st)).first;
        cumulative.push_back(std::move(values));
        parent.push_back(from);
        if (config.run_bound && cumulative[i].size() >= *config.run_bound && !ts.bound_violation) {
            ts.bound_violation = RunBoundViolation{*config.run_bound, path_to(i),
                                                   {cumulative[i].begin(), cumulative[i].end()}};
            ts.complete = false;
            ts.incomplete_reason = "run bound of " + std::to_string(*config.run_bound) + " reached";
            stop = true;
        }
        return i;
    };

    if (config.state_cap == 0) {
        ts.complete = false;
        ts.incomplete_reason = "state cap of 0 reached";
        return ts;
    }
    SystemState s0{spec.initial_abox, {}, spec.initial_context, Phase::Stable};
    auto v0 = visible_adom(s0.abox);
    ts.add_state(std::move(s0));
    cumulative.push_back(v0);
    parent.push_back(0);
    if (config.run_bound && v0.size() >= *config.run_bound) {
        ts.bound_violation = RunBoundViolation{*config.run_bound, {0}, {v0.begin(), v0.end()}};
        ts.complete = false;
        ts.incomplete_reason = "run bound of " + std::to_string(*config.run_bound) + " reached";
        return ts;
    }

    std::vector<size_t> frontier{0};
    unsigned threads = std::max(1u, config.threads);
    while (!frontier.empty() && !stop) {
        std::vector<std::vector<Candidate>> results(frontier.size());
        auto work = [&](size_t lo, size_t step) {
            for (size_t j = lo; j < frontier.size(); j += step)
                results[j] = expand(spec, *kb, ts.state(frontier[j]), ts.value_domain);
        };
        if (threads == 1 || frontier.size() == 1) {
            work(0, 1);
        } else {
            std::vector<std::thread> pool;
            size_t n = std::min<size_t>(threads, frontier.size());
            for (size_t t = 0; t < n; ++t)
                pool.emplace_back(work, t, n);
            for (auto& t : pool)
                t.join();
        }
        std::vector<size_t> next;
        for (size_t j = 0; j < frontier.size() && !stop; ++j) {
            size_t src = frontier[j];
            for (auto& c : results[j]) {
                auto mid = admit(std::move(c.intermediate), src);
                if (!mid)
                    break;
                ts.add_edge(src, *mid, c.label);
                for (auto& [st, label] : c.stable) {
                    if (stop)
                        break;
                    size_t count = ts.size();
                    auto dst = admit(std::move(st), *mid);
                    if (!dst)
                        break;
                    ts.add_edge(*mid, *dst, label);
                    if (ts.size() > count)
                        next.push_back(*dst);
                }
                if (stop)
                    break;
            }
        }
        frontier = std::move(next);
    }
    return ts;
}

} // namespace ckab
