#pragma once

// Random instances for oracle comparisons: dimension trees, contexts and
// context expressions; DL-Lite_A TBoxes, ABoxes and UCQs; alternating
// transition systems and closed mu-calculus formulas over them.

#include "oracles/context_oracle.hpp"
#include "oracles/mu_oracle.hpp"

#include "ckab/checker.hpp"
#include "ckab/kb.hpp"
#include "ckab/statespace.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace gen {

using Rng = std::mt19937;

inline size_t pick(Rng& rng, size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// ---------------------------------------------------------------------------
// Contexts

inline oracle::Tree tree(Rng& rng, const std::string& dim, size_t max_values) {
    oracle::Tree t;
    t.dimension = dim;
    size_t n = 1 + pick(rng, max_values);
    for (size_t i = 0; i < n; ++i) {
        t.values.push_back(dim + "v" + std::to_string(i));
        if (i > 0)
            t.parent[t.values.back()] = t.values[pick(rng, i)];
    }
    return t;
}

inline ckab::DimensionDomain to_domain(const oracle::Tree& t) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (size_t i = 1; i < t.values.size(); ++i)
        edges.emplace_back(t.values[i], t.parent.at(t.values[i]));
    return ckab::DimensionDomain::create(t.dimension, t.values[0], edges);
}

inline ckab::ContextSignature signature(const std::vector<oracle::Tree>& trees) {
    std::vector<ckab::DimensionDomain> dims;
    for (const auto& t : trees)
        dims.push_back(to_domain(t));
    return ckab::ContextSignature(std::move(dims));
}

inline std::map<std::string, std::string> context(Rng& rng, const std::vector<oracle::Tree>& trees) {
    std::map<std::string, std::string> c;
    for (const auto& t : trees)
        c[t.dimension] = t.values[pick(rng, t.values.size())];
    return c;
}

inline ckab::ContextExpr context_expr(Rng& rng, const std::vector<oracle::Tree>& trees, int depth) {
    using E = ckab::ContextExpr;
    size_t choice = depth <= 0 ? pick(rng, 2) : pick(rng, 8);
    if (choice == 0 || choice == 1) {
        if (coin(rng, 0.1))
            return coin(rng) ? E::top() : E::bottom();
        const auto& t = trees[pick(rng, trees.size())];
        return E::atom(t.dimension, t.values[pick(rng, t.values.size())]);
    }
    switch (choice) {
    case 2:
    case 3: return E::negate(context_expr(rng, trees, depth - 1));
    case 4: return E::conj(context_expr(rng, trees, depth - 1), context_expr(rng, trees, depth - 1));
    case 5:
    case 6: return E::disj(context_expr(rng, trees, depth - 1), context_expr(rng, trees, depth - 1));
    default: return E::implies(context_expr(rng, trees, depth - 1), context_expr(rng, trees, depth - 1));
    }
}

// ---------------------------------------------------------------------------
// Knowledge bases

inline const std::vector<std::string> kConcepts{"A", "B", "C"};
inline const std::vector<std::string> kRoles{"P", "R"};
inline const std::vector<std::string> kIndividuals{"a", "b", "c", "d"};

inline ckab::Role role(Rng& rng) { return {kRoles[pick(rng, kRoles.size())], coin(rng)}; }

inline ckab::BasicConcept basic_concept(Rng& rng) {
    if (coin(rng, 0.6))
        return ckab::BasicConcept::atomic(kConcepts[pick(rng, kConcepts.size())]);
    return ckab::BasicConcept::exists(role(rng));
}

/// At most `max_size` assertions; functional roles never occur on the right
/// of a positive role inclusion.
inline ckab::TBox tbox(Rng& rng, size_t max_size) {
    using T = ckab::TBoxAssertion;
    ckab::TBox t;
    size_t n = pick(rng, max_size + 1);
    for (size_t i = 0; i < n; ++i) {
        size_t k = pick(rng, 10);
        if (k < 5)
            t.push_back(T::concept_inclusion(basic_concept(rng), basic_concept(rng)));
        else if (k < 7)
            t.push_back(T::role_inclusion(role(rng), role(rng)));
        else if (k < 8)
            t.push_back(T::concept_inclusion(basic_concept(rng), basic_concept(rng), true));
        else if (k < 9)
            t.push_back(T::role_inclusion(role(rng), role(rng), true));
        else
            t.push_back(T::functionality(role(rng)));
    }
    std::set<std::string> specialised;
    for (const auto& a : t)
        if (a.kind == T::Kind::RoleInclusion && !a.negative)
            specialised.insert(a.rhs_role.name);
    t.erase(std::remove_if(t.begin(), t.end(),
                           [&](const T& a) { return a.kind == T::Kind::Functionality && specialised.count(a.lhs_role.name); }),
            t.end());
    return t;
}

inline ckab::ABox abox(Rng& rng, size_t max_facts) {
    ckab::ABox a;
    size_t n = pick(rng, max_facts + 1);
    for (size_t i = 0; i < n; ++i) {
        const auto& x = kIndividuals[pick(rng, kIndividuals.size())];
        if (coin(rng))
            a.insert({kConcepts[pick(rng, kConcepts.size())], {x}});
        else
            a.insert({kRoles[pick(rng, kRoles.size())], {x, kIndividuals[pick(rng, kIndividuals.size())]}});
    }
    return a;
}

/// One or two disjuncts of at most `max_atoms` atoms sharing at most
/// `max_free` free variables.
inline ckab::UCQ ucq(Rng& rng, size_t max_atoms, size_t max_free) {
    std::vector<std::string> free;
    size_t nf = pick(rng, max_free + 1);
    for (size_t i = 0; i < nf; ++i)
        free.push_back(i == 0 ? "x" : "y");
    ckab::UCQ q;
    q.free_vars = free;
    size_t nd = 1 + pick(rng, 2);
    for (size_t d = 0; d < nd; ++d) {
        ckab::ConjunctiveQuery cq;
        for (const auto& v : free)
            cq.head.push_back(ckab::Term::var(v));
        size_t na = std::max<size_t>(1 + pick(rng, max_atoms), free.size());
        na = std::min(na, max_atoms);
        std::vector<std::string> vars = free;
        vars.push_back("z");
        vars.push_back("w");
        auto term = [&]() {
            if (coin(rng, 0.15))
                return ckab::Term::constant(kIndividuals[pick(rng, kIndividuals.size())]);
            return ckab::Term::var(vars[pick(rng, vars.size())]);
        };
        for (size_t i = 0; i < na; ++i) {
            if (coin(rng))
                cq.atoms.push_back({kConcepts[pick(rng, kConcepts.size())], {term()}});
            else
                cq.atoms.push_back({kRoles[pick(rng, kRoles.size())], {term(), term()}});
        }
        // Every free variable must occur in the body.
        for (size_t i = 0; i < free.size(); ++i) {
            bool found = false;
            for (const auto& a : cq.atoms)
                for (const auto& t : a.args)
                    found |= t.is_var() && t.name == free[i];
            if (!found)
                cq.atoms[i % cq.atoms.size()].args[0] = ckab::Term::var(free[i]);
        }
        bool all_found = true;
        for (const auto& v : free) {
            bool found = false;
            for (const auto& a : cq.atoms)
                for (const auto& t : a.args)
                    found |= t.is_var() && t.name == v;
            all_found &= found;
        }
        if (!all_found) {
            --d;
            continue;
        }
        q.disjuncts.push_back(std::move(cq));
    }
    return q;
}

// ---------------------------------------------------------------------------
// Transition systems and formulas

struct RandomSystem {
    oracle::Tree dim;
    std::unique_ptr<ckab::TransitionSystem> ts;
    oracle::Kripke kripke;
};

inline const std::vector<std::string> kTsConstants{"a", "b", "c"};

/// Leaves are single-atom queries over P/1, Q/1, R/2 or `D:v` context atoms,
/// decided by fact membership and the tree order.
inline bool local_truth(const oracle::Tree& dim, const ckab::SystemState& s, const ckab::MuFormula& f,
                        const std::map<std::string, std::string>& v) {
    if (f.kind == ckab::MuFormula::Kind::Context) {
        if (f.context.kind != ckab::ContextExpr::Kind::Atom)
            throw std::logic_error("oracle handles context atoms only");
        return oracle::value_entails(dim, s.ctx.assignments.at(f.context.dimension), f.context.value);
    }
    const auto& q = f.query;
    if (q.kind != ckab::Ecq::Kind::Query || q.query.disjuncts.size() != 1 || q.query.disjuncts[0].atoms.size() != 1)
        throw std::logic_error("oracle handles single-atom queries only");
    const auto& atom = q.query.disjuncts[0].atoms[0];
    ckab::Fact fact{atom.predicate, {}};
    for (const auto& t : atom.args)
        fact.args.push_back(t.is_var() ? v.at(t.name) : t.name);
    return s.abox.contains(fact);
}

inline oracle::Kripke kripke_of(const ckab::TransitionSystem& ts,
                                std::function<bool(size_t, const ckab::MuFormula&,
                                                   const std::map<std::string, std::string>&)> local) {
    oracle::Kripke k;
    k.size = ts.size();
    for (size_t i = 0; i < ts.size(); ++i) {
        k.succ.push_back(ts.successors(i));
        std::set<std::string> d;
        for (const auto& f : ts.state(i).abox.facts())
            for (const auto& a : f.args)
                if (a != ckab::kMarkerConstant)
                    d.insert(a);
        k.domain.push_back(std::move(d));
    }
    k.local = std::move(local);
    return k;
}

inline RandomSystem alternating_system(Rng& rng, size_t max_states) {
    RandomSystem r;
    r.dim = tree(rng, "D", 4);
    auto sig = signature({r.dim});
    auto kb = std::make_shared<ckab::KbProjector>(ckab::ContextualizedTBox{}, ckab::build_theory(sig));
    r.ts = std::make_unique<ckab::TransitionSystem>(kb);
    size_t n = 1 + pick(rng, max_states);
    std::vector<size_t> stable, inter;
    while (r.ts->size() < n) {
        ckab::SystemState s;
        s.phase = r.ts->size() == 0 || coin(rng) ? ckab::Phase::Stable : ckab::Phase::Intermediate;
        for (const auto& c : kTsConstants) {
            if (coin(rng, 0.4))
                s.abox.insert({"P", {c}});
            if (coin(rng, 0.3))
                s.abox.insert({"Q", {c}});
            if (coin(rng, 0.2))
                s.abox.insert({"R", {c, kTsConstants[pick(rng, kTsConstants.size())]}});
        }
        if (s.phase == ckab::Phase::Intermediate)
            s.abox.insert({ckab::kMarkerConcept, {ckab::kMarkerConstant}});
        s.ctx.assignments["D"] = r.dim.values[pick(rng, r.dim.values.size())];
        auto [idx, fresh] = r.ts->add_state(s);
        if (fresh)
            (s.phase == ckab::Phase::Stable ? stable : inter).push_back(idx);
    }
    auto connect = [&](const std::vector<size_t>& from, const std::vector<size_t>& to, const char* label) {
        if (to.empty())
            return;
        for (size_t s : from) {
            size_t deg = pick(rng, 3);
            for (size_t e = 0; e < deg; ++e)
                r.ts->add_edge(s, to[pick(rng, to.size())], label);
        }
    };
    connect(stable, inter, "act");
    connect(inter, stable, "ctx");
    const oracle::Tree dim = r.dim;
    const ckab::TransitionSystem* ts = r.ts.get();
    r.kripke = kripke_of(*r.ts, [dim, ts](size_t s, const ckab::MuFormula& f, const std::map<std::string, std::string>& v) {
        return local_truth(dim, ts->state(s), f, v);
    });
    return r;
}

struct FormulaGen {
    Rng& rng;
    const oracle::Tree& dim;
    int max_depth = 5;
    int max_fixpoints = 2;

    ckab::MuFormula leaf(const std::vector<std::string>& indiv) {
        using M = ckab::MuFormula;
        size_t k = pick(rng, 10);
        if (k == 0)
            return coin(rng) ? M::top() : M::bottom();
        if (k < 4)
            return M::local(ckab::ContextExpr::atom("D", dim.values[pick(rng, dim.values.size())]));
        auto term = [&]() {
            if (!indiv.empty() && coin(rng, 0.7))
                return ckab::Term::var(indiv[pick(rng, indiv.size())]);
            return ckab::Term::constant(kTsConstants[pick(rng, kTsConstants.size())]);
        };
        ckab::QueryAtom a;
        if (k < 7)
            a = {"P", {term()}};
        else if (k < 9)
            a = {"Q", {term()}};
        else
            a = {"R", {term(), term()}};
        std::set<std::string> fv;
        for (const auto& t : a.args)
            if (t.is_var())
                fv.insert(t.name);
        std::vector<std::string> free(fv.begin(), fv.end());
        ckab::UCQ q;
        q.free_vars = free;
        ckab::ConjunctiveQuery cq;
        for (const auto& v : free)
            cq.head.push_back(ckab::Term::var(v));
        cq.atoms.push_back(a);
        q.disjuncts.push_back(cq);
        return M::local(ckab::Ecq::atom(q));
    }

    /// `fix` lists fixpoint variables that may occur (positively).
    ckab::MuFormula formula(int depth, std::vector<std::string> fix, std::vector<std::string> indiv, int fix_left) {
        using M = ckab::MuFormula;
        using K = M::Kind;
        if (depth <= 0) {
            if (!fix.empty() && coin(rng, 0.5))
                return M::var(fix[pick(rng, fix.size())]);
            return leaf(indiv);
        }
        size_t k = pick(rng, 14);
        switch (k) {
        case 0: return leaf(indiv);
        case 1:
            if (!fix.empty())
                return M::var(fix[pick(rng, fix.size())]);
            return leaf(indiv);
        case 2: return M::unary(K::Not, formula(depth - 1, {}, indiv, 0));
        case 3: return M::binary(K::And, formula(depth - 1, fix, indiv, fix_left), formula(depth - 1, fix, indiv, fix_left));
        case 4: return M::binary(K::Or, formula(depth - 1, fix, indiv, fix_left), formula(depth - 1, fix, indiv, fix_left));
        case 5: return M::binary(K::Implies, formula(depth - 1, {}, indiv, 0), formula(depth - 1, fix, indiv, fix_left));
        case 6:
        case 7: {
            std::string x = "x" + std::to_string(indiv.size() + 1);
            indiv.push_back(x);
            return M::binder(k == 6 ? K::Exists : K::Forall, x, formula(depth - 1, fix, indiv, fix_left));
        }
        case 8: return M::unary(K::DiamDiam, formula(depth - 1, fix, indiv, fix_left));
        case 9: return M::unary(K::DiamBox, formula(depth - 1, fix, indiv, fix_left));
        case 10: return M::unary(K::BoxDiam, formula(depth - 1, fix, indiv, fix_left));
        case 11: return M::unary(K::BoxBox, formula(depth - 1, fix, indiv, fix_left));
        default: {
            if (fix_left <= 0)
                return M::unary(coin(rng) ? K::DiamDiam : K::BoxBox, formula(depth - 1, fix, indiv, fix_left));
            std::string z = "Z" + std::to_string(max_fixpoints - fix_left + 1);
            fix.push_back(z);
            return M::binder(coin(rng) ? K::Mu : K::Nu, z, formula(depth - 1, fix, indiv, fix_left - 1));
        }
        }
    }

    ckab::MuFormula closed() { return formula(max_depth, {}, {}, max_fixpoints); }
};

} // namespace gen
