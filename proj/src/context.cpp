#include "ckab/context.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>

namespace ckab {

const char* to_string(Severity s) {
    switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Note: return "note";
    }
    return "error";
}

std::string format_diagnostic(const std::string& file, const Diagnostic& d) {
    return file + ":" + std::to_string(d.pos.line) + ":" + std::to_string(d.pos.column) + ": " +
           to_string(d.severity) + ": " + d.message;
}

std::string hex_digest(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

DimensionDomain DimensionDomain::create(std::string name, std::string root,
                                        const std::vector<std::pair<std::string, std::string>>& edges) {
    DimensionDomain d;
    d.name_ = std::move(name);
    d.root_ = std::move(root);
    d.parent_[d.root_] = "";
    d.children_[d.root_];
    for (const auto& [child, par] : edges) {
        if (child == d.root_)
            throw SpecError("dimension '" + d.name_ + "': root value '" + child + "' cannot have a parent");
        if (d.parent_.count(child))
            throw SpecError("dimension '" + d.name_ + "': value '" + child + "' declared more than once");
        d.parent_[child] = par;
        d.children_[child];
    }
    for (const auto& [child, par] : edges) {
        if (!d.parent_.count(par))
            throw SpecError("dimension '" + d.name_ + "': parent value '" + par + "' is not declared");
        d.children_[par].push_back(child);
    }
    // Pre-order walk from the root; anything not visited is a cycle or a forest.
    std::function<void(const std::string&)> walk = [&](const std::string& v) {
        d.values_.push_back(v);
        for (const auto& c : d.children_[v])
            walk(c);
    };
    walk(d.root_);
    if (d.values_.size() != d.parent_.size())
        throw SpecError("dimension '" + d.name_ + "': values are not all reachable from root '" + d.root_ + "'");
    return d;
}

std::optional<std::string> DimensionDomain::parent(const std::string& v) const {
    auto it = parent_.find(v);
    if (it == parent_.end() || it->second.empty())
        return std::nullopt;
    return it->second;
}

const std::vector<std::string>& DimensionDomain::children(const std::string& v) const {
    static const std::vector<std::string> none;
    auto it = children_.find(v);
    return it == children_.end() ? none : it->second;
}

std::vector<std::string> DimensionDomain::ancestors_or_self(const std::string& v) const {
    std::vector<std::string> out;
    std::optional<std::string> cur = v;
    while (cur) {
        out.push_back(*cur);
        cur = parent(*cur);
    }
    return out;
}

std::vector<std::string> DimensionDomain::subtree(const std::string& v) const {
    std::vector<std::string> out;
    std::vector<std::string> stack{v};
    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        out.push_back(cur);
        const auto& ch = children(cur);
        for (auto it = ch.rbegin(); it != ch.rend(); ++it)
            stack.push_back(*it);
    }
    return out;
}

bool DimensionDomain::is_ancestor_or_self(const std::string& anc, const std::string& v) const {
    std::optional<std::string> cur = v;
    while (cur) {
        if (*cur == anc)
            return true;
        cur = parent(*cur);
    }
    return false;
}

ContextSignature::ContextSignature(std::vector<DimensionDomain> dims) : dims_(std::move(dims)) {
    for (size_t i = 0; i < dims_.size(); ++i)
        for (size_t j = i + 1; j < dims_.size(); ++j)
            if (dims_[i].name() == dims_[j].name())
                throw SpecError("dimension '" + dims_[i].name() + "' declared more than once");
}

const DimensionDomain* ContextSignature::find(const std::string& name) const {
    for (const auto& d : dims_)
        if (d.name() == name)
            return &d;
    return nullptr;
}

const DimensionDomain& ContextSignature::at(const std::string& name) const {
    if (auto* d = find(name))
        return *d;
    throw SpecError("undeclared context dimension '" + name + "'");
}

bool ContextExpr::is_positive() const {
    if (kind == Kind::Not || kind == Kind::Implies)
        return false;
    return std::all_of(args.begin(), args.end(), [](const ContextExpr& a) { return a.is_positive(); });
}

ContextTheory build_theory(const ContextSignature& sig) {
    ContextTheory th;
    th.signature = sig;
    for (const auto& dim : sig.dimensions()) {
        for (const auto& v : dim.values()) {
            if (auto p = dim.parent(v))
                th.implications.insert({dim.name(), v, *p});
            const auto& ch = dim.children(v);
            for (const auto& a : ch)
                for (const auto& b : ch)
                    if (a != b)
                        th.disjointness.insert({dim.name(), a, b});
        }
    }
    return th;
}

void validate_context(const ContextState& ctx, const ContextSignature& sig) {
    for (const auto& [d, v] : ctx.assignments) {
        const auto& dom = sig.at(d);
        if (!dom.contains(v))
            throw SpecError("value '" + v + "' is not in the domain of dimension '" + d + "'");
    }
    for (const auto& dom : sig.dimensions())
        if (!ctx.assignments.count(dom.name()))
            throw SpecError("context does not assign dimension '" + dom.name() + "'");
}

void validate_expr(const ContextExpr& e, const ContextSignature& sig) {
    if (e.kind == ContextExpr::Kind::Atom) {
        const auto& dom = sig.at(e.dimension);
        if (!dom.contains(e.value))
            throw SpecError("value '" + e.value + "' is not in the domain of dimension '" + e.dimension + "'");
    }
    for (const auto& a : e.args)
        validate_expr(a, sig);
}

void validate_partial(const PartialAssignment& p, const ContextSignature& sig) {
    for (const auto& [d, v] : p.assignments) {
        const auto& dom = sig.at(d);
        if (!dom.contains(v))
            throw SpecError("value '" + v + "' is not in the domain of dimension '" + d + "'");
    }
}

bool evaluate(const ContextExpr& e, const TruthAssignment& model) {
    using K = ContextExpr::Kind;
    switch (e.kind) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: return model.count({e.dimension, e.value}) > 0;
    case K::Not: return !evaluate(e.args[0], model);
    case K::And: return evaluate(e.args[0], model) && evaluate(e.args[1], model);
    case K::Or: return evaluate(e.args[0], model) || evaluate(e.args[1], model);
    case K::Implies: return !evaluate(e.args[0], model) || evaluate(e.args[1], model);
    }
    return false;
}

namespace {

void collect_dimensions(const ContextExpr& e, std::set<std::string>& out) {
    if (e.kind == ContextExpr::Kind::Atom)
        out.insert(e.dimension);
    for (const auto& a : e.args)
        collect_dimensions(a, out);
}

// Per-dimension chain models: one per node w below the assigned value.
std::vector<std::vector<ContextAtom>> chain_models(const DimensionDomain& dom, const std::string& value) {
    std::vector<std::vector<ContextAtom>> out;
    for (const auto& w : dom.subtree(value)) {
        std::vector<ContextAtom> atoms;
        for (const auto& a : dom.ancestors_or_self(w))
            atoms.emplace_back(dom.name(), a);
        out.push_back(std::move(atoms));
    }
    return out;
}

// Calls fn on every combination of per-dimension chains; stops early when fn
// returns false. Returns false iff stopped early.
bool for_each_model(const ContextState& ctx, const ContextTheory& theory, const std::vector<std::string>& dims,
                    const std::function<bool(const TruthAssignment&)>& fn) {
    std::vector<std::vector<std::vector<ContextAtom>>> per_dim;
    for (const auto& d : dims) {
        const auto& dom = theory.signature.at(d);
        auto it = ctx.assignments.find(d);
        if (it == ctx.assignments.end())
            throw SpecError("context does not assign dimension '" + d + "'");
        per_dim.push_back(chain_models(dom, it->second));
    }
    std::vector<size_t> idx(per_dim.size(), 0);
    while (true) {
        TruthAssignment m;
        for (size_t i = 0; i < per_dim.size(); ++i)
            m.insert(per_dim[i][idx[i]].begin(), per_dim[i][idx[i]].end());
        if (!fn(m))
            return false;
        size_t i = 0;
        for (; i < per_dim.size(); ++i) {
            if (++idx[i] < per_dim[i].size())
                break;
            idx[i] = 0;
        }
        if (i == per_dim.size())
            return true;
    }
}

} // namespace

std::vector<TruthAssignment> models_of(const ContextState& ctx, const ContextTheory& theory) {
    std::vector<std::string> dims;
    for (const auto& d : theory.signature.dimensions())
        dims.push_back(d.name());
    std::vector<TruthAssignment> out;
    for_each_model(ctx, theory, dims, [&](const TruthAssignment& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

bool entails(const ContextState& ctx, const ContextTheory& theory, const ContextExpr& expr) {
    validate_expr(expr, theory.signature);
    std::set<std::string> mentioned;
    collect_dimensions(expr, mentioned);
    std::vector<std::string> dims(mentioned.begin(), mentioned.end());
    return for_each_model(ctx, theory, dims, [&](const TruthAssignment& m) { return evaluate(expr, m); });
}

ContextState apply_evolution(const ContextState& ctx, const PartialAssignment& update) {
    ContextState out = ctx;
    for (const auto& [d, v] : update.assignments)
        out.assignments[d] = v;
    return out;
}

std::string to_string(const ContextState& ctx) {
    std::string s;
    for (const auto& [d, v] : ctx.assignments) {
        if (!s.empty())
            s += ", ";
        s += d + ":" + v;
    }
    return s;
}

} // namespace ckab
