#include "ckab/kb.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>

namespace ckab {

namespace {

QueryAtom role_atom(const Role& r, const Term& a, const Term& b) {
    return r.inverse ? QueryAtom{r.name, {b, a}} : QueryAtom{r.name, {a, b}};
}

class PerfectRef {
public:
    PerfectRef(const UCQ& q, const TBox& tbox) : free_vars_(q.free_vars) {
        for (const auto& t : tbox)
            if (t.is_positive_inclusion())
                inclusions_.push_back(t);
        for (const auto& cq : q.disjuncts)
            add(cq);
    }

    UCQ run() {
        while (!work_.empty()) {
            ConjunctiveQuery cq = work_.front();
            work_.pop_front();
            for (size_t i = 0; i < cq.atoms.size(); ++i)
                for (const auto& pi : inclusions_)
                    if (auto replaced = apply(cq, cq.atoms[i], pi)) {
                        ConjunctiveQuery next = cq;
                        next.atoms[i] = *replaced;
                        add(next);
                    }
            for (size_t i = 0; i < cq.atoms.size(); ++i)
                for (size_t j = i + 1; j < cq.atoms.size(); ++j)
                    if (auto reduced = reduce(cq, i, j))
                        add(*reduced);
        }
        UCQ out;
        out.free_vars = free_vars_;
        out.disjuncts = order_;
        return out;
    }

private:
    Term fresh() { return Term::var("_n" + std::to_string(counter_++)); }

    QueryAtom concept_atom(const BasicConcept& b, const Term& t) {
        if (b.kind == BasicConcept::Kind::Atomic)
            return {b.name, {t}};
        return role_atom(b.role(), t, fresh());
    }

    static bool is_bound(const ConjunctiveQuery& cq, const Term& t) {
        if (!t.is_var())
            return true;
        if (std::find(cq.head.begin(), cq.head.end(), t) != cq.head.end())
            return true;
        int n = 0;
        for (const auto& a : cq.atoms)
            for (const auto& x : a.args)
                n += (x == t);
        return n > 1;
    }

    // The atom replacing `g` when positive inclusion `pi` applies to it.
    std::optional<QueryAtom> apply(const ConjunctiveQuery& cq, const QueryAtom& g, const TBoxAssertion& pi) {
        if (pi.kind == TBoxAssertion::Kind::ConceptInclusion) {
            const auto& rhs = pi.rhs_concept;
            if (rhs.kind == BasicConcept::Kind::Atomic) {
                if (g.args.size() == 1 && g.predicate == rhs.name)
                    return concept_atom(pi.lhs_concept, g.args[0]);
                return std::nullopt;
            }
            if (g.args.size() != 2 || g.predicate != rhs.name)
                return std::nullopt;
            if (!rhs.inverse && !is_bound(cq, g.args[1]))
                return concept_atom(pi.lhs_concept, g.args[0]);
            if (rhs.inverse && !is_bound(cq, g.args[0]))
                return concept_atom(pi.lhs_concept, g.args[1]);
            return std::nullopt;
        }
        if (pi.kind == TBoxAssertion::Kind::RoleInclusion) {
            const auto& rhs = pi.rhs_role;
            if (g.args.size() != 2 || g.predicate != rhs.name)
                return std::nullopt;
            // g asserts rhs(a, b).
            const Term& a = rhs.inverse ? g.args[1] : g.args[0];
            const Term& b = rhs.inverse ? g.args[0] : g.args[1];
            return role_atom(pi.lhs_role, a, b);
        }
        return std::nullopt;
    }

    std::optional<ConjunctiveQuery> reduce(const ConjunctiveQuery& cq, size_t i, size_t j) const {
        const auto& a = cq.atoms[i];
        const auto& b = cq.atoms[j];
        if (a.predicate != b.predicate || a.args.size() != b.args.size())
            return std::nullopt;
        std::map<std::string, Term> subst;
        auto find = [&](Term t) {
            while (t.is_var()) {
                auto it = subst.find(t.name);
                if (it == subst.end())
                    break;
                t = it->second;
            }
            return t;
        };
        auto in_head = [&](const Term& t) { return std::find(cq.head.begin(), cq.head.end(), t) != cq.head.end(); };
        for (size_t k = 0; k < a.args.size(); ++k) {
            Term x = find(a.args[k]);
            Term y = find(b.args[k]);
            if (x == y)
                continue;
            if (!x.is_var() && !y.is_var())
                return std::nullopt;
            if (!x.is_var())
                std::swap(x, y);
            // x is a variable; bind an existential in preference to a head variable.
            if (y.is_var() && in_head(x) && !in_head(y))
                subst[y.name] = x;
            else
                subst[x.name] = y;
        }
        ConjunctiveQuery out = cq;
        for (auto& h : out.head)
            h = find(h);
        for (auto& atom : out.atoms)
            for (auto& t : atom.args)
                t = find(t);
        return out;
    }

    ConjunctiveQuery canonicalize(ConjunctiveQuery cq) const {
        auto dedupe = [](std::vector<QueryAtom>& atoms) {
            std::sort(atoms.begin(), atoms.end());
            atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
        };
        dedupe(cq.atoms);
        auto is_existential = [&](const Term& t) {
            return t.is_var() && std::find(cq.head.begin(), cq.head.end(), t) == cq.head.end();
        };
        for (int round = 0; round < 3; ++round) {
            auto masked = [&](const QueryAtom& a) {
                QueryAtom m = a;
                for (auto& t : m.args)
                    if (is_existential(t))
                        t.name = "?";
                return m;
            };
            std::stable_sort(cq.atoms.begin(), cq.atoms.end(),
                             [&](const QueryAtom& x, const QueryAtom& y) { return masked(x) < masked(y); });
            std::map<std::string, std::string> rename;
            for (const auto& atom : cq.atoms)
                for (const auto& t : atom.args)
                    if (is_existential(t) && !rename.count(t.name))
                        rename[t.name] = "_v" + std::to_string(rename.size());
            for (auto& atom : cq.atoms)
                for (auto& t : atom.args)
                    if (is_existential(t))
                        t.name = rename[t.name];
        }
        dedupe(cq.atoms);
        return cq;
    }

    void add(const ConjunctiveQuery& cq) {
        auto c = canonicalize(cq);
        if (seen_.insert(c).second) {
            order_.push_back(c);
            work_.push_back(std::move(c));
        }
    }

    std::vector<std::string> free_vars_;
    std::vector<TBoxAssertion> inclusions_;
    std::set<ConjunctiveQuery> seen_;
    std::vector<ConjunctiveQuery> order_;
    std::deque<ConjunctiveQuery> work_;
    int counter_ = 0;
};

} // namespace

UCQ rewrite_ucq(const UCQ& q, const TBox& tbox) { return PerfectRef(q, tbox).run(); }

} // namespace ckab
