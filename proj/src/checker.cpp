#include "ckab/checker.hpp"

#include "ckab/dsl.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>

namespace ckab {

using K = MuFormula::Kind;

size_t count(const StateSet& s) { return static_cast<size_t>(std::count(s.begin(), s.end(), true)); }

Checker::Checker(const TransitionSystem& ts) : ts_(ts) {
    std::set<std::string> all;
    for (const auto& s : ts.states()) {
        auto d = query_domain(s.abox);
        state_domain_.emplace_back(d.begin(), d.end());
        all.insert(d.begin(), d.end());
    }
    all_values_.assign(all.begin(), all.end());
}

const Checker::NodeInfo& Checker::info(const MuFormula& f) {
    auto it = info_.find(&f);
    if (it != info_.end())
        return it->second;
    NodeInfo n;
    auto fi = f.free_individuals();
    n.free_individuals.assign(fi.begin(), fi.end());
    n.fixpoint_closed = f.free_fixpoint_vars().empty();
    if (n.fixpoint_closed)
        n.text = pretty_print(f);
    return info_.emplace(&f, std::move(n)).first->second;
}

std::string Checker::cache_key(const MuFormula& f, const Substitution& v) {
    std::string key = info(f).text;
    for (const auto& x : info(f).free_individuals) {
        auto it = v.find(x);
        key += "|" + x + "=" + (it == v.end() ? "?" : it->second);
    }
    return key;
}

StateSet Checker::pre_exists(const StateSet& s) const {
    StateSet out(ts_.size(), false);
    for (size_t i = 0; i < ts_.size(); ++i)
        for (size_t t : ts_.successors(i))
            if (s[t]) {
                out[i] = true;
                break;
            }
    return out;
}

StateSet Checker::pre_forall(const StateSet& s) const {
    StateSet out(ts_.size(), true);
    for (size_t i = 0; i < ts_.size(); ++i)
        for (size_t t : ts_.successors(i))
            if (!s[t]) {
                out[i] = false;
                break;
            }
    return out;
}

StateSet Checker::extension(const MuFormula& f, const Substitution& v, const FixpointValuation& V) {
    info_.clear();
    return eval(f, v, V);
}

StateSet Checker::eval(const MuFormula& f, const Substitution& v, const FixpointValuation& V) {
    const size_t n = ts_.size();
    bool cacheable = info(f).fixpoint_closed;
    std::string key;
    if (cacheable) {
        key = cache_key(f, v);
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second;
    }
    StateSet out(n, false);
    switch (f.kind) {
    case K::True: out.assign(n, true); break;
    case K::False: break;
    case K::Query: {
        Substitution local;
        for (const auto& x : info(f).free_individuals) {
            auto it = v.find(x);
            if (it == v.end())
                throw SpecError("individual variable '" + x + "' is not bound");
            local.emplace(x, it->second);
        }
        for (size_t i = 0; i < n; ++i)
            out[i] = ts_.kb_at(i).holds(f.query, ts_.state(i).abox, local);
        break;
    }
    case K::Context:
        for (size_t i = 0; i < n; ++i)
            out[i] = entails(ts_.state(i).ctx, ts_.kb().theory(), f.context);
        break;
    case K::Not:
        out = eval(f.args[0], v, V);
        out.flip();
        break;
    case K::And:
    case K::Or:
    case K::Implies: {
        StateSet a = eval(f.args[0], v, V), b = eval(f.args[1], v, V);
        for (size_t i = 0; i < n; ++i)
            out[i] = f.kind == K::And ? (a[i] && b[i]) : f.kind == K::Or ? (a[i] || b[i]) : (!a[i] || b[i]);
        break;
    }
    case K::Exists:
    case K::Forall: {
        bool ex = f.kind == K::Exists;
        out.assign(n, !ex);
        Substitution inner = v;
        for (const auto& d : all_values_) {
            inner[f.name] = d;
            StateSet body = eval(f.args[0], inner, V);
            for (size_t i = 0; i < n; ++i)
                if (state_domain_[i].count(d) && body[i] == ex)
                    out[i] = ex;
        }
        break;
    }
    case K::DiamDiam: out = pre_exists(pre_exists(eval(f.args[0], v, V))); break;
    case K::DiamBox: out = pre_exists(pre_forall(eval(f.args[0], v, V))); break;
    case K::BoxDiam: out = pre_forall(pre_exists(eval(f.args[0], v, V))); break;
    case K::BoxBox: out = pre_forall(pre_forall(eval(f.args[0], v, V))); break;
    case K::Var: {
        auto it = V.find(f.name);
        if (it == V.end())
            throw SpecError("fixpoint variable '" + f.name + "' is not bound");
        out = it->second;
        break;
    }
    case K::Mu:
    case K::Nu: {
        if (!f.is_monotone())
            throw SpecError("fixpoint body is not monotone in '" + f.name + "'");
        FixpointValuation inner = V;
        StateSet cur(n, f.kind == K::Nu);
        // Approximants grow (mu) or shrink (nu) monotonically and settle
        // after at most |states| + 1 rounds.
        for (size_t round = 0; round <= n + 1; ++round) {
            inner[f.name] = cur;
            ++iterations_;
            StateSet nxt = eval(f.args[0], v, inner);
            if (nxt == cur)
                break;
            cur = std::move(nxt);
        }
        out = std::move(cur);
        break;
    }
    }
    if (cacheable)
        cache_.emplace(std::move(key), out);
    return out;
}

std::vector<size_t> Checker::explain(const MuFormula& f, size_t start, bool want, size_t max_pairs) {
    info_.clear();
    ExplainState st{{start}, max_pairs, {}, false};
    Substitution v;
    FixpointValuation V;
    std::map<std::string, Binder> binders;
    explain_at(f, start, want, v, V, binders, st);
    return st.path;
}

void Checker::explain_at(const MuFormula& f, size_t s, bool want, Substitution& v, FixpointValuation& V,
                         std::map<std::string, Binder>& binders, ExplainState& st) {
    if (st.stopped)
        return;
    explain_step(f, s, want, v, V, binders, st);
}

void Checker::explain_step(const MuFormula& f, size_t s, bool want, Substitution& v, FixpointValuation& V,
                           std::map<std::string, Binder>& binders, ExplainState& st) {
    auto truth = [&](const MuFormula& g, size_t at) { return static_cast<bool>(eval(g, v, V)[at]); };
    switch (f.kind) {
    case K::Not: return explain_at(f.args[0], s, !want, v, V, binders, st);
    case K::And:
    case K::Or:
    case K::Implies: {
        // Follow the operand that decides the outcome.
        bool lhs_want = f.kind == K::Implies ? !want : want;
        bool decisive_lhs = f.kind == K::And ? !want : want;
        if (decisive_lhs && truth(f.args[0], s) == lhs_want)
            return explain_at(f.args[0], s, lhs_want, v, V, binders, st);
        if (truth(f.args[1], s) == want)
            return explain_at(f.args[1], s, want, v, V, binders, st);
        return explain_at(f.args[0], s, lhs_want, v, V, binders, st);
    }
    case K::Exists:
    case K::Forall: {
        bool ex = f.kind == K::Exists;
        // A deciding value exists when Exists holds or Forall fails.
        if (ex != want)
            return;
        auto saved = v.count(f.name) ? std::optional<std::string>(v[f.name]) : std::nullopt;
        for (const auto& d : state_domain_[s]) {
            v[f.name] = d;
            if (truth(f.args[0], s) == want) {
                explain_at(f.args[0], s, want, v, V, binders, st);
                break;
            }
        }
        if (saved)
            v[f.name] = *saved;
        else
            v.erase(f.name);
        return;
    }
    case K::DiamDiam:
    case K::DiamBox:
    case K::BoxDiam:
    case K::BoxBox: {
        bool first_exists = f.kind == K::DiamDiam || f.kind == K::DiamBox;
        bool second_exists = f.kind == K::DiamDiam || f.kind == K::BoxDiam;
        // An existential choice (diamond holding, box failing) picks a
        // deciding successor; a universal one is shown by its first branch.
        bool pick_first = first_exists == want;
        bool pick_second = second_exists == want;
        if (st.pairs_left == 0) {
            st.stopped = true;
            return;
        }
        std::string key = std::to_string(reinterpret_cast<std::uintptr_t>(&f)) + "@" + std::to_string(s);
        for (const auto& [x, d] : v)
            key += "|" + x + "=" + d;
        for (const auto& [z, set] : V)
            key += "|" + z + ":" + std::to_string(count(set));
        if (!st.visited.insert(key).second) {
            st.stopped = true;
            return;
        }
        StateSet target = eval(f.args[0], v, V);
        auto second_ok = [&](size_t mid) {
            const auto& ts = ts_.successors(mid);
            if (pick_second)
                return std::any_of(ts.begin(), ts.end(), [&](size_t t) { return target[t] == want; });
            return std::all_of(ts.begin(), ts.end(), [&](size_t t) { return target[t] == want; });
        };
        const auto& mids = ts_.successors(s);
        std::optional<size_t> mid;
        for (size_t m : mids)
            if (!pick_first || second_ok(m)) {
                mid = m;
                break;
            }
        if (!mid) {
            st.stopped = true;
            return;
        }
        st.path.push_back(*mid);
        std::optional<size_t> next;
        for (size_t t : ts_.successors(*mid))
            if (!pick_second || target[t] == want) {
                next = t;
                break;
            }
        if (!next) {
            st.stopped = true;
            return;
        }
        st.path.push_back(*next);
        --st.pairs_left;
        return explain_at(f.args[0], *next, want, v, V, binders, st);
    }
    case K::Mu:
    case K::Nu: {
        auto saved_binder = binders.count(f.name) ? std::optional<Binder>(binders.at(f.name)) : std::nullopt;
        Binder b{&f, V, {}};
        // A least fixpoint that holds (or a greatest one that fails) is
        // explained along decreasing approximant ranks, so every unfolding
        // makes progress.
        if ((f.kind == K::Mu) == want) {
            FixpointValuation inner = V;
            StateSet x(ts_.size(), f.kind == K::Nu);
            b.approximants.push_back(x);
            while (true) {
                inner[f.name] = x;
                StateSet nx = eval(f.args[0], v, inner);
                if (nx == x)
                    break;
                x = std::move(nx);
                b.approximants.push_back(x);
            }
        }
        binders[f.name] = b;
        unfold(b, s, want, v, V, binders, st);
        if (saved_binder)
            binders[f.name] = *saved_binder;
        else
            binders.erase(f.name);
        return;
    }
    case K::Var: {
        auto it = binders.find(f.name);
        if (it == binders.end())
            return;
        // Unguarded occurrences can come back to the same variable without
        // moving along the path.
        std::string key = f.name + "@" + std::to_string(s) + "#" + std::to_string(st.path.size());
        for (const auto& [x, d] : v)
            key += "|" + x + "=" + d;
        if (!st.visited.insert(key).second)
            return;
        Binder b = it->second;
        return unfold(b, s, want, v, V, binders, st);
    }
    default: return;
    }
}

void Checker::unfold(const Binder& b, size_t s, bool want, Substitution& v, FixpointValuation& V,
                     std::map<std::string, Binder>& binders, ExplainState& st) {
    const MuFormula& f = *b.formula;
    FixpointValuation saved = V;
    V = b.outer;
    if (b.approximants.empty()) {
        V[f.name] = eval(f, v, V);
    } else {
        bool least = f.kind == K::Mu;
        size_t r = 1;
        while (r < b.approximants.size() && b.approximants[r][s] != least)
            ++r;
        if (r == b.approximants.size()) {
            V = std::move(saved);
            st.stopped = true;
            return;
        }
        V[f.name] = b.approximants[r - 1];
    }
    explain_at(f.args[0], s, want, v, V, binders, st);
    V = std::move(saved);
}

namespace {

void collect_closed(const MuFormula& f, std::vector<const MuFormula*>& out) {
    if (f.free_individuals().empty() && f.free_fixpoint_vars().empty())
        out.push_back(&f);
    for (const auto& a : f.args)
        collect_closed(a, out);
}

} // namespace

CheckResult model_check(const TransitionSystem& ts, const MuFormula& f) {
    if (!f.free_individuals().empty())
        throw SpecError("property has free individual variable '" + *f.free_individuals().begin() + "'");
    if (!f.free_fixpoint_vars().empty())
        throw SpecError("property has free fixpoint variable '" + *f.free_fixpoint_vars().begin() + "'");
    Checker c(ts);
    CheckResult r;
    r.extent = c.extension(f);
    r.holds = r.extent[ts.initial()];
    r.path = c.explain(f, ts.initial(), r.holds);
    std::vector<const MuFormula*> closed;
    collect_closed(f, closed);
    std::set<std::string> seen;
    for (const MuFormula* g : closed) {
        std::string text = pretty_print(*g);
        if (!seen.insert(text).second)
            continue;
        r.subformulas.push_back({text, count(c.extension(*g))});
    }
    r.iterations = c.iterations();
    return r;
}

std::string format_path(const TransitionSystem& ts, const std::vector<size_t>& path) {
    std::string s;
    for (size_t i = 0; i < path.size(); ++i) {
        if (i) {
            std::string label;
            for (const auto& e : ts.edges())
                if (e.from == path[i - 1] && e.to == path[i]) {
                    label = e.label;
                    break;
                }
            s += " --" + label + "--> ";
        }
        s += "s" + std::to_string(path[i]);
    }
    return s;
}

} // namespace ckab
