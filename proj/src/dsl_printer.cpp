#include "ckab/dsl.hpp"

#include <functional>

namespace ckab {

namespace {

// Binding strength: binders and implication bind loosest.
enum Level { kImplies = 0, kOr = 1, kAnd = 2, kUnary = 3, kPrimary = 4 };

std::string wrap(const std::string& s, int own, int needed) { return own < needed ? "(" + s + ")" : s; }

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i)
        s += (i ? sep : "") + parts[i];
    return s;
}

std::string print_atom(const QueryAtom& a) {
    std::vector<std::string> args;
    for (const auto& t : a.args)
        args.push_back(t.name);
    return a.predicate + "(" + join(args, ", ") + ")";
}

std::vector<std::string> existentials(const ConjunctiveQuery& cq, const std::vector<std::string>& free) {
    std::vector<std::string> out;
    for (const auto& a : cq.atoms)
        for (const auto& t : a.args)
            if (t.is_var() && std::find(free.begin(), free.end(), t.name) == free.end() &&
                std::find(out.begin(), out.end(), t.name) == out.end())
                out.push_back(t.name);
    std::sort(out.begin(), out.end());
    return out;
}

std::string print_cq(const ConjunctiveQuery& cq, const std::vector<std::string>& free) {
    std::string s;
    auto ex = existentials(cq, free);
    if (!ex.empty())
        s = "exists " + join(ex, ", ") + ". ";
    if (cq.atoms.empty())
        return s + "true";
    std::vector<std::string> atoms;
    for (const auto& a : cq.atoms)
        atoms.push_back(print_atom(a));
    return s + join(atoms, " & ");
}

bool is_plain_atom(const UCQ& q) {
    return q.disjuncts.size() == 1 && q.disjuncts[0].atoms.size() == 1 && existentials(q.disjuncts[0], q.free_vars).empty();
}

std::string print_ucq_operand(const UCQ& q) {
    if (is_plain_atom(q))
        return print_atom(q.disjuncts[0].atoms[0]);
    return pretty_print(q);
}

std::string print_ctx(const ContextExpr& e, int needed) {
    using K = ContextExpr::Kind;
    switch (e.kind) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Atom: return e.dimension + ":" + e.value;
    case K::Not: return "!" + print_ctx(e.args[0], kUnary);
    case K::And: return wrap(print_ctx(e.args[0], kAnd) + " & " + print_ctx(e.args[1], kUnary), kAnd, needed);
    case K::Or: return wrap(print_ctx(e.args[0], kOr) + " | " + print_ctx(e.args[1], kAnd), kOr, needed);
    case K::Implies:
        return wrap(print_ctx(e.args[0], kOr) + " -> " + print_ctx(e.args[1], kImplies), kImplies, needed);
    }
    return "";
}

std::string print_ecq(const Ecq& q, int needed) {
    using K = Ecq::Kind;
    switch (q.kind) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Query: return print_ucq_operand(q.query);
    case K::Not: return "!" + print_ecq(q.args[0], kUnary);
    case K::And: return wrap(print_ecq(q.args[0], kAnd) + " & " + print_ecq(q.args[1], kUnary), kAnd, needed);
    case K::Or: return wrap(print_ecq(q.args[0], kOr) + " | " + print_ecq(q.args[1], kAnd), kOr, needed);
    case K::Implies:
        return wrap(print_ecq(q.args[0], kOr) + " -> " + print_ecq(q.args[1], kImplies), kImplies, needed);
    case K::Exists:
    case K::Forall:
        return wrap(std::string(q.kind == K::Exists ? "exists " : "forall ") + q.var + ". " +
                        print_ecq(q.args[0], kImplies),
                    kImplies, needed);
    }
    return "";
}

std::string print_mu(const MuFormula& f, int needed) {
    using K = MuFormula::Kind;
    switch (f.kind) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Query:
        if (f.query.kind == Ecq::Kind::Query)
            return print_ucq_operand(f.query.query);
        return "ecq(" + print_ecq(f.query, kImplies) + ")";
    case K::Context:
        if (f.context.kind == ContextExpr::Kind::Atom)
            return print_ctx(f.context, kPrimary);
        return "ctx(" + print_ctx(f.context, kImplies) + ")";
    case K::Not: return "!" + print_mu(f.args[0], kUnary);
    case K::And: return wrap(print_mu(f.args[0], kAnd) + " & " + print_mu(f.args[1], kUnary), kAnd, needed);
    case K::Or: return wrap(print_mu(f.args[0], kOr) + " | " + print_mu(f.args[1], kAnd), kOr, needed);
    case K::Implies:
        return wrap(print_mu(f.args[0], kOr) + " -> " + print_mu(f.args[1], kImplies), kImplies, needed);
    case K::DiamDiam: return "<-><->" + print_mu(f.args[0], kUnary);
    case K::DiamBox: return "<->[-]" + print_mu(f.args[0], kUnary);
    case K::BoxDiam: return "[-]<->" + print_mu(f.args[0], kUnary);
    case K::BoxBox: return "[-][-]" + print_mu(f.args[0], kUnary);
    case K::Var: return f.name;
    case K::Exists:
    case K::Forall:
    case K::Mu:
    case K::Nu: {
        const char* kw = f.kind == K::Exists ? "exists " : f.kind == K::Forall ? "forall " : f.kind == K::Mu ? "mu " : "nu ";
        return wrap(kw + f.name + ". " + print_mu(f.args[0], kImplies), kImplies, needed);
    }
    }
    return "";
}

std::string print_role(const Role& r) { return r.name + (r.inverse ? "^-" : ""); }

std::string print_basic(const BasicConcept& b) {
    if (b.kind == BasicConcept::Kind::Atomic)
        return b.name;
    return "exists " + print_role(b.role());
}

std::string print_tbox(const TBoxAssertion& t) {
    using K = TBoxAssertion::Kind;
    switch (t.kind) {
    case K::Functionality: return "funct " + print_role(t.lhs_role);
    case K::ConceptInclusion:
        return print_basic(t.lhs_concept) + " [= " + (t.negative ? "!" : "") + print_basic(t.rhs_concept);
    case K::RoleInclusion: return print_role(t.lhs_role) + " [= " + (t.negative ? "!" : "") + print_role(t.rhs_role);
    }
    return "";
}

std::string guard_suffix(const ContextExpr& g) {
    if (g.kind == ContextExpr::Kind::True)
        return "";
    return " @ " + print_ctx(g, kImplies);
}

std::string print_head_term(const HeadTerm& t) {
    if (t.kind != HeadTerm::Kind::Call)
        return t.name;
    std::vector<std::string> args;
    for (const auto& a : t.args)
        args.push_back(print_head_term(a));
    return t.name + "(" + join(args, ", ") + ")";
}

std::string print_effect(const EffectSpec& e) {
    std::string s;
    const UCQ& q = e.qplus;
    bool conj_form = q.disjuncts.size() == 1 && existentials(q.disjuncts[0], q.free_vars).empty();
    if (conj_form && q.disjuncts[0].atoms.empty())
        s = "true";
    else if (conj_form)
        s = print_cq(q.disjuncts[0], q.free_vars);
    else
        s = pretty_print(q);
    if (e.qminus)
        s += " & (" + print_ecq(*e.qminus, kImplies) + ")";
    std::vector<std::string> facts;
    for (const auto& h : e.head) {
        std::vector<std::string> args;
        for (const auto& t : h.args)
            args.push_back(print_head_term(t));
        facts.push_back(h.predicate + "(" + join(args, ", ") + ")");
    }
    return s + " ~> {" + join(facts, ", ") + "}";
}

std::string print_tree(const DimensionDomain& d, const std::string& v) {
    const auto& kids = d.children(v);
    if (kids.empty())
        return v;
    std::vector<std::string> parts;
    for (const auto& k : kids)
        parts.push_back(print_tree(d, k));
    return v + "(" + join(parts, ", ") + ")";
}

} // namespace

std::string pretty_print(const ContextExpr& e) { return print_ctx(e, kImplies); }

std::string pretty_print(const Ecq& q) { return print_ecq(q, kImplies); }

std::string pretty_print(const MuFormula& f) { return print_mu(f, kImplies); }

std::string pretty_print(const UCQ& q) {
    std::vector<std::string> parts;
    for (const auto& cq : q.disjuncts)
        parts.push_back(print_cq(cq, q.free_vars));
    return "[" + join(parts, " | ") + "]";
}

std::string pretty_print(const CkabSpec& spec) {
    std::string out = "dimensions\n";
    for (const auto& d : spec.dimensions.dimensions())
        out += "  " + d.name() + " = " + print_tree(d, d.root()) + "\n";
    if (!spec.concepts.empty())
        out += "\nconcepts " + join(spec.concepts, ", ") + "\n";
    if (!spec.roles.empty())
        out += "roles " + join(spec.roles, ", ") + "\n";
    if (!spec.services.empty()) {
        std::vector<std::string> parts;
        for (const auto& s : spec.services)
            parts.push_back(s.name + "/" + std::to_string(s.arity));
        out += "services " + join(parts, ", ") + "\n";
    }
    if (!spec.constants.empty())
        out += "constants " + join(spec.constants, ", ") + "\n";
    if (!spec.ctbox.assertions.empty()) {
        out += "\ntbox\n";
        for (const auto& g : spec.ctbox.assertions)
            out += "  " + print_tbox(g.assertion) + guard_suffix(g.guard) + "\n";
    }
    if (!spec.initial_abox.empty()) {
        out += "\nabox\n";
        for (const auto& f : spec.initial_abox.facts())
            out += "  " + f.predicate + "(" + join(f.args, ", ") + ")\n";
    }
    if (!spec.initial_context.assignments.empty()) {
        std::vector<std::string> parts;
        for (const auto& d : spec.dimensions.dimensions())
            if (auto it = spec.initial_context.assignments.find(d.name()); it != spec.initial_context.assignments.end())
                parts.push_back(d.name() + ":" + it->second);
        out += "\ninit-context " + join(parts, ", ") + "\n";
    }
    if (!spec.actions.empty()) {
        out += "\nactions\n";
        for (const auto& a : spec.actions) {
            out += "  action " + a.name + "(" + join(a.params, ", ") + ")\n";
            for (const auto& e : a.effects)
                out += "    " + print_effect(e) + "\n";
        }
    }
    if (!spec.process.empty()) {
        out += "\nprocess\n";
        for (const auto& r : spec.process)
            out += "  " + print_ecq(r.query, kOr) + guard_suffix(r.guard) + " |-> " + r.action + "(" +
                   join(r.vars, ", ") + ")\n";
    }
    if (!spec.context_rules.empty()) {
        out += "\ncontext-rules\n";
        for (const auto& r : spec.context_rules) {
            std::vector<std::string> parts;
            for (const auto& d : spec.dimensions.dimensions())
                if (auto it = r.head.assignments.find(d.name()); it != r.head.assignments.end())
                    parts.push_back(d.name() + ":" + it->second);
            out += "  " + print_ecq(r.query, kOr) + guard_suffix(r.guard) + " |-> {" + join(parts, ", ") + "}\n";
        }
    }
    return out;
}

} // namespace ckab
