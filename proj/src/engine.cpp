#include "ckab/engine.hpp"

#include <algorithm>
#include <functional>

namespace ckab {

std::string to_string(const ServiceCall& c) {
    std::string s = c.function + "(";
    for (size_t i = 0; i < c.args.size(); ++i)
        s += (i ? ", " : "") + c.args[i];
    return s + ")";
}

int HeadTerm::call_depth() const {
    if (kind != Kind::Call)
        return 0;
    int d = 0;
    for (const auto& a : args)
        d = std::max(d, a.call_depth());
    return d + 1;
}

bool GroundTerm::operator<(const GroundTerm& o) const {
    if (is_call != o.is_call)
        return is_call < o.is_call;
    if (name != o.name)
        return name < o.name;
    return args < o.args;
}

bool PendingFact::operator<(const PendingFact& o) const {
    if (predicate != o.predicate)
        return predicate < o.predicate;
    return args < o.args;
}

std::string to_string(const GroundTerm& t) {
    if (!t.is_call)
        return t.name;
    std::string s = t.name + "(";
    for (size_t i = 0; i < t.args.size(); ++i)
        s += (i ? ", " : "") + to_string(t.args[i]);
    return s + ")";
}

std::string to_string(const PendingFact& f) {
    std::string s = f.predicate + "(";
    for (size_t i = 0; i < f.args.size(); ++i)
        s += (i ? ", " : "") + to_string(f.args[i]);
    return s + ")";
}

Substitution rule_to_parameters(const CondActionRule& rule, const ActionSpec& action, const Substitution& rule_binding) {
    Substitution out;
    for (size_t i = 0; i < rule.vars.size() && i < action.params.size(); ++i)
        out[action.params[i]] = rule_binding.at(rule.vars[i]);
    return out;
}

bool executable(const Reasoner& tbox_in_ctx, const ABox& abox, const ContextState& ctx, const ContextTheory& theory,
                const CondActionRule& rule, const Substitution& sigma) {
    if (!entails(ctx, theory, rule.guard))
        return false;
    // Parameters bound outside the active domain simply fail the query.
    auto domain = query_domain(abox);
    for (const auto& v : rule.vars) {
        auto it = sigma.find(v);
        if (it == sigma.end() || std::find(domain.begin(), domain.end(), it->second) == domain.end())
            return false;
    }
    return tbox_in_ctx.holds(rule.query, abox, sigma);
}

std::vector<Substitution> enabled_bindings(const Reasoner& tbox_in_ctx, const ABox& abox, const ContextState& ctx,
                                           const ContextTheory& theory, const CondActionRule& rule,
                                           const ActionSpec& action) {
    std::vector<Substitution> out;
    if (!entails(ctx, theory, rule.guard))
        return out;
    auto ans = tbox_in_ctx.answers(rule.query, abox);
    auto domain = query_domain(abox);
    for (const auto& s : ans.substitutions()) {
        // Rule variables not mentioned by the query would range over adom;
        // the validator rejects such rules, so every variable is bound here.
        bool total = std::all_of(rule.vars.begin(), rule.vars.end(), [&](const std::string& v) { return s.count(v); });
        if (total)
            out.push_back(rule_to_parameters(rule, action, s));
    }
    return out;
}

namespace {

GroundTerm instantiate(const HeadTerm& t, const Substitution& binding) {
    switch (t.kind) {
    case HeadTerm::Kind::Constant: return {t.name, {}, false};
    case HeadTerm::Kind::Variable: {
        auto it = binding.find(t.name);
        if (it == binding.end())
            throw SpecError("head variable '" + t.name + "' is not bound");
        return {it->second, {}, false};
    }
    case HeadTerm::Kind::Call: {
        GroundTerm g{t.name, {}, true};
        for (const auto& a : t.args)
            g.args.push_back(instantiate(a, binding));
        return g;
    }
    }
    return {};
}

void collect_calls(const GroundTerm& t, std::vector<std::pair<int, GroundTerm>>& out, int& depth) {
    if (!t.is_call) {
        depth = 0;
        return;
    }
    int inner = 0;
    for (const auto& a : t.args) {
        int d = 0;
        collect_calls(a, out, d);
        inner = std::max(inner, d);
    }
    depth = inner + 1;
    out.emplace_back(depth, t);
}

bool is_ground_call(const GroundTerm& t) {
    return t.is_call && std::none_of(t.args.begin(), t.args.end(), [](const GroundTerm& a) { return a.is_call; });
}

ServiceCall as_call(const GroundTerm& t) {
    ServiceCall c{t.name, {}};
    for (const auto& a : t.args)
        c.args.push_back(a.name);
    return c;
}

GroundTerm substitute(const GroundTerm& t, const ServiceCallMap& theta) {
    if (!t.is_call)
        return t;
    if (is_ground_call(t)) {
        auto it = theta.find(as_call(t));
        if (it != theta.end())
            return {it->second, {}, false};
        return t;
    }
    GroundTerm out{t.name, {}, true};
    for (const auto& a : t.args)
        out.args.push_back(substitute(a, theta));
    return out;
}

PendingFactSet substitute(const PendingFactSet& p, const ServiceCallMap& theta) {
    PendingFactSet out;
    for (const auto& f : p) {
        PendingFact g{f.predicate, {}};
        for (const auto& a : f.args)
            g.args.push_back(substitute(a, theta));
        out.insert(std::move(g));
    }
    return out;
}

// Calls whose arguments are all constants, in canonical order.
std::vector<ServiceCall> innermost_calls(const PendingFactSet& p) {
    std::set<ServiceCall> out;
    std::function<void(const GroundTerm&)> walk = [&](const GroundTerm& t) {
        if (!t.is_call)
            return;
        if (is_ground_call(t))
            out.insert(as_call(t));
        else
            for (const auto& a : t.args)
                walk(a);
    };
    for (const auto& f : p)
        for (const auto& a : f.args)
            walk(a);
    return {out.begin(), out.end()};
}

ABox ground(const PendingFactSet& p) {
    ABox out;
    for (const auto& f : p) {
        Fact g{f.predicate, {}};
        for (const auto& a : f.args)
            g.args.push_back(a.name);
        out.insert(std::move(g));
    }
    return out;
}

void enumerate(const PendingFactSet& p, const ServiceCallMap& scmap, const ServiceCallMap& theta,
               const std::vector<std::string>& domain, std::vector<Evaluation>& out) {
    auto pending = innermost_calls(p);
    if (pending.empty()) {
        out.push_back({theta, ground(p)});
        return;
    }
    std::vector<std::vector<std::string>> choices;
    for (const auto& c : pending) {
        if (auto it = scmap.find(c); it != scmap.end())
            choices.push_back({it->second});
        else if (auto jt = theta.find(c); jt != theta.end())
            choices.push_back({jt->second});
        else
            choices.push_back(domain);
    }
    if (std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); }))
        return;
    std::vector<size_t> idx(pending.size(), 0);
    while (true) {
        ServiceCallMap next = theta;
        for (size_t i = 0; i < pending.size(); ++i)
            next[pending[i]] = choices[i][idx[i]];
        enumerate(substitute(p, next), scmap, next, domain, out);
        // Odometer with the first call most significant.
        size_t i = pending.size();
        while (i > 0) {
            --i;
            if (++idx[i] < choices[i].size())
                break;
            idx[i] = 0;
            if (i == 0)
                return;
        }
    }
}

} // namespace

PendingFactSet do_action(const Reasoner& tbox_in_ctx, const ABox& abox, const ActionSpec& action,
                         const Substitution& sigma) {
    PendingFactSet out;
    for (const auto& e : action.effects) {
        Ecq body = Ecq::atom(e.qplus);
        if (e.qminus)
            body = Ecq::conj(std::move(body), *e.qminus);
        Substitution fixed;
        for (const auto& p : action.params)
            if (sigma.count(p))
                fixed[p] = sigma.at(p);
        auto ans = tbox_in_ctx.answers(body, abox, fixed);
        for (auto rho : ans.substitutions()) {
            rho.insert(fixed.begin(), fixed.end());
            for (const auto& h : e.head) {
                PendingFact f{h.predicate, {}};
                for (const auto& t : h.args)
                    f.args.push_back(instantiate(t, rho));
                out.insert(std::move(f));
            }
        }
    }
    return out;
}

std::vector<GroundTerm> calls(const PendingFactSet& p) {
    std::vector<std::pair<int, GroundTerm>> found;
    for (const auto& f : p)
        for (const auto& a : f.args) {
            int d = 0;
            collect_calls(a, found, d);
        }
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first)
            return x.first < y.first;
        return x.second < y.second;
    });
    std::vector<GroundTerm> out;
    for (auto& [d, t] : found)
        if (out.empty() || !(out.back() == t))
            out.push_back(std::move(t));
    return out;
}

std::vector<Evaluation> evaluations(const PendingFactSet& p, const ServiceCallMap& scmap,
                                    const std::vector<std::string>& value_domain) {
    std::vector<Evaluation> out;
    enumerate(p, scmap, {}, value_domain, out);
    return out;
}

std::string TableBackend::call(const ServiceCall& c) const {
    auto it = table_.find(c);
    if (it == table_.end())
        throw SpecError("service table has no entry for " + to_string(c));
    return it->second;
}

std::string HashBackend::call(const ServiceCall& c) const {
    if (domain_.empty())
        throw SpecError("hash service backend has an empty value domain");
    std::uint64_t h = fnv1a(std::to_string(seed_));
    h = fnv1a(to_string(c), h);
    return domain_[h % domain_.size()];
}

Evaluation evaluate_concrete(const PendingFactSet& p, const ServiceCallMap& scmap, const ServiceBackend& backend) {
    Evaluation ev;
    PendingFactSet cur = p;
    while (true) {
        auto pending = innermost_calls(cur);
        if (pending.empty())
            break;
        for (const auto& c : pending) {
            if (auto it = scmap.find(c); it != scmap.end())
                ev.theta[c] = it->second;
            else if (!ev.theta.count(c))
                ev.theta[c] = backend.call(c);
        }
        cur = substitute(cur, ev.theta);
    }
    ev.abox = ground(cur);
    return ev;
}

std::vector<ActionSuccessor> action_step(const Reasoner& tbox_in_ctx, const ABox& abox, const ServiceCallMap& scmap,
                                         const ActionSpec& action, const Substitution& sigma,
                                         const std::vector<std::string>& value_domain) {
    auto pending = do_action(tbox_in_ctx, abox, action, sigma);
    std::vector<ActionSuccessor> out;
    for (auto& ev : evaluations(pending, scmap, value_domain)) {
        ServiceCallMap m = scmap;
        m.insert(ev.theta.begin(), ev.theta.end());
        out.push_back({std::move(ev.abox), std::move(m)});
    }
    return out;
}

std::vector<ContextSuccessor> context_step(const ABox& abox, const ContextState& ctx,
                                           const std::vector<ContextEvolutionRule>& rules,
                                           const TBoxProjector& project, const ContextTheory& theory) {
    std::map<ContextState, std::vector<size_t>> found;
    const Reasoner& kb = project(ctx);
    for (size_t i = 0; i < rules.size(); ++i) {
        const auto& r = rules[i];
        if (!entails(ctx, theory, r.guard))
            continue;
        if (!kb.holds(r.query, abox))
            continue;
        found[apply_evolution(ctx, r.head)].push_back(i);
    }
    std::vector<ContextSuccessor> out;
    for (auto& [c, idx] : found)
        out.push_back({c, std::move(idx)});
    return out;
}

} // namespace ckab
