#include "ckab/kb.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace ckab {

std::set<std::string> ContextualizedTBox::vocabulary() const {
    std::set<std::string> out;
    for (const auto& g : assertions) {
        const auto& t = g.assertion;
        switch (t.kind) {
        case TBoxAssertion::Kind::ConceptInclusion:
            out.insert(t.lhs_concept.name);
            out.insert(t.rhs_concept.name);
            break;
        case TBoxAssertion::Kind::RoleInclusion:
            out.insert(t.lhs_role.name);
            out.insert(t.rhs_role.name);
            break;
        case TBoxAssertion::Kind::Functionality:
            out.insert(t.lhs_role.name);
            break;
        }
    }
    return out;
}

TBox kb_in_context(const ContextualizedTBox& ctbox, const ContextState& ctx, const ContextTheory& theory) {
    TBox out;
    for (const auto& g : ctbox.assertions)
        if (entails(ctx, theory, g.guard) && std::find(out.begin(), out.end(), g.assertion) == out.end())
            out.push_back(g.assertion);
    return out;
}

std::string to_string(const Role& r) { return r.inverse ? r.name + "^-" : r.name; }

std::string to_string(const BasicConcept& b) {
    return b.kind == BasicConcept::Kind::Atomic ? b.name : "exists " + to_string(b.role());
}

std::string to_string(const TBoxAssertion& t) {
    switch (t.kind) {
    case TBoxAssertion::Kind::ConceptInclusion:
        return to_string(t.lhs_concept) + " [= " + (t.negative ? "!" : "") + to_string(t.rhs_concept);
    case TBoxAssertion::Kind::RoleInclusion:
        return to_string(t.lhs_role) + " [= " + (t.negative ? "!" : "") + to_string(t.rhs_role);
    case TBoxAssertion::Kind::Functionality:
        return "funct " + to_string(t.lhs_role);
    }
    return {};
}

std::string to_string(const Fact& f) {
    std::string s = f.predicate + "(";
    for (size_t i = 0; i < f.args.size(); ++i)
        s += (i ? ", " : "") + f.args[i];
    return s + ")";
}

std::set<std::string> ABox::adom() const {
    std::set<std::string> out;
    for (const auto& f : facts_)
        out.insert(f.args.begin(), f.args.end());
    return out;
}

std::vector<std::string> query_domain(const ABox& abox) {
    std::vector<std::string> out;
    for (const auto& c : abox.adom())
        if (c != kMarkerConstant)
            out.push_back(c);
    return out;
}

UCQ UCQ::from_atoms(std::vector<std::string> free_vars, std::vector<QueryAtom> atoms) {
    UCQ q;
    q.free_vars = std::move(free_vars);
    ConjunctiveQuery cq;
    for (const auto& v : q.free_vars)
        cq.head.push_back(Term::var(v));
    cq.atoms = std::move(atoms);
    q.disjuncts.push_back(std::move(cq));
    return q;
}

std::set<std::string> Ecq::free_vars() const {
    switch (kind) {
    case Kind::True:
    case Kind::False: return {};
    case Kind::Query: return {query.free_vars.begin(), query.free_vars.end()};
    case Kind::Exists:
    case Kind::Forall: {
        auto s = args[0].free_vars();
        s.erase(var);
        return s;
    }
    default: {
        std::set<std::string> s;
        for (const auto& a : args) {
            auto f = a.free_vars();
            s.insert(f.begin(), f.end());
        }
        return s;
    }
    }
}

std::vector<Substitution> AnswerSet::substitutions() const {
    std::vector<Substitution> out;
    for (const auto& t : tuples) {
        Substitution s;
        for (size_t i = 0; i < vars.size(); ++i)
            s[vars[i]] = t[i];
        out.push_back(std::move(s));
    }
    return out;
}

std::string to_string(const Term& t) { return t.name; }

std::string to_string(const QueryAtom& a) {
    std::string s = a.predicate + "(";
    for (size_t i = 0; i < a.args.size(); ++i)
        s += (i ? ", " : "") + to_string(a.args[i]);
    return s + ")";
}

std::string to_string(const ConjunctiveQuery& q, const std::vector<std::string>& free_vars) {
    std::set<std::string> existential;
    for (const auto& a : q.atoms)
        for (const auto& t : a.args)
            if (t.is_var() && std::find(free_vars.begin(), free_vars.end(), t.name) == free_vars.end())
                existential.insert(t.name);
    std::string s;
    bool head_is_identity = q.head.size() == free_vars.size();
    for (size_t i = 0; head_is_identity && i < free_vars.size(); ++i)
        head_is_identity = q.head[i] == Term::var(free_vars[i]);
    if (!head_is_identity) {
        s += "{";
        for (size_t i = 0; i < q.head.size(); ++i)
            s += (i ? ", " : "") + free_vars[i] + "=" + q.head[i].name;
        s += "} ";
    }
    if (!existential.empty()) {
        s += "exists ";
        bool first = true;
        for (const auto& v : existential) {
            s += (first ? "" : ", ") + v;
            first = false;
        }
        s += ". ";
    }
    for (size_t i = 0; i < q.atoms.size(); ++i)
        s += (i ? " & " : "") + to_string(q.atoms[i]);
    return s;
}

std::string to_string(const UCQ& q) {
    std::string s = "(";
    for (size_t i = 0; i < q.free_vars.size(); ++i)
        s += (i ? "," : "") + q.free_vars[i];
    s += ")[";
    for (size_t i = 0; i < q.disjuncts.size(); ++i)
        s += (i ? " | " : "") + to_string(q.disjuncts[i], q.free_vars);
    return s + "]";
}

namespace {

using Binding = std::map<std::string, std::string>;

std::optional<std::string> resolve(const Term& t, const Binding& b) {
    if (!t.is_var())
        return t.name;
    auto it = b.find(t.name);
    if (it == b.end())
        return std::nullopt;
    return it->second;
}

void join(const std::vector<QueryAtom>& atoms, std::vector<bool>& done, Binding& b, const ABox& abox,
          const std::function<void(const Binding&)>& emit) {
    // Pick the pending atom with the longest bound prefix, then most bound terms.
    int best = -1, best_prefix = -1, best_bound = -1;
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (done[i])
            continue;
        int prefix = 0, bound = 0;
        bool in_prefix = true;
        for (const auto& t : atoms[i].args) {
            bool is_bound = resolve(t, b).has_value();
            bound += is_bound;
            if (in_prefix && is_bound)
                ++prefix;
            else
                in_prefix = false;
        }
        if (prefix > best_prefix || (prefix == best_prefix && bound > best_bound)) {
            best = static_cast<int>(i);
            best_prefix = prefix;
            best_bound = bound;
        }
    }
    if (best < 0) {
        emit(b);
        return;
    }
    const auto& atom = atoms[best];
    std::vector<std::string> prefix;
    for (int k = 0; k < best_prefix; ++k)
        prefix.push_back(*resolve(atom.args[k], b));
    done[best] = true;
    abox.for_each_match(atom.predicate, prefix, [&](const Fact& f) {
        if (f.args.size() != atom.args.size())
            return;
        std::vector<std::string> newly;
        bool ok = true;
        for (size_t k = 0; k < atom.args.size() && ok; ++k) {
            const auto& t = atom.args[k];
            if (auto v = resolve(t, b)) {
                ok = (*v == f.args[k]);
            } else {
                b[t.name] = f.args[k];
                newly.push_back(t.name);
            }
        }
        if (ok)
            join(atoms, done, b, abox, emit);
        for (const auto& n : newly)
            b.erase(n);
    });
    done[best] = false;
}

} // namespace

AnswerSet evaluate_ucq(const UCQ& q, const ABox& abox, const Substitution& fixed) {
    AnswerSet out;
    out.vars = q.free_vars;
    for (const auto& cq : q.disjuncts) {
        Binding b;
        bool ok = true;
        for (size_t i = 0; i < q.free_vars.size() && ok; ++i) {
            auto it = fixed.find(q.free_vars[i]);
            if (it == fixed.end())
                continue;
            const auto& h = cq.head[i];
            if (!h.is_var()) {
                ok = h.name == it->second;
            } else {
                auto [pos, inserted] = b.emplace(h.name, it->second);
                ok = inserted || pos->second == it->second;
            }
        }
        if (!ok)
            continue;
        std::vector<bool> done(cq.atoms.size(), false);
        join(cq.atoms, done, b, abox, [&](const Binding& full) {
            std::vector<std::string> tuple;
            tuple.reserve(cq.head.size());
            for (const auto& h : cq.head) {
                auto v = resolve(h, full);
                if (!v)
                    return; // unsafe head variable; never produced by the parser
                tuple.push_back(*v);
            }
            out.tuples.insert(std::move(tuple));
        });
    }
    return out;
}

} // namespace ckab
