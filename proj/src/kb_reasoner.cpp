#include "ckab/kb.hpp"

#include <functional>

namespace ckab {

namespace {

QueryAtom role_atom(const Role& r, const std::string& a, const std::string& b) {
    return r.inverse ? QueryAtom{r.name, {Term::var(b), Term::var(a)}} : QueryAtom{r.name, {Term::var(a), Term::var(b)}};
}

QueryAtom concept_atom(const BasicConcept& c, const std::string& x, const std::string& filler) {
    if (c.kind == BasicConcept::Kind::Atomic)
        return {c.name, {Term::var(x)}};
    return role_atom(c.role(), x, filler);
}

class EcqEvaluator {
public:
    EcqEvaluator(const Reasoner& r, const ABox& abox) : reasoner_(r), abox_(abox), domain_(query_domain(abox)) {}

    const std::vector<std::string>& domain() const { return domain_; }

    bool holds(const Ecq& q, Substitution& env) const {
        using K = Ecq::Kind;
        switch (q.kind) {
        case K::True: return true;
        case K::False: return false;
        case K::Query: {
            Substitution fixed;
            for (const auto& v : q.query.free_vars) {
                auto it = env.find(v);
                if (it == env.end())
                    throw SpecError("query variable '" + v + "' is not bound");
                fixed.emplace(v, it->second);
            }
            return reasoner_.certain_answers(q.query, abox_, fixed).boolean();
        }
        case K::Not: return !holds(q.args[0], env);
        case K::And: return holds(q.args[0], env) && holds(q.args[1], env);
        case K::Or: return holds(q.args[0], env) || holds(q.args[1], env);
        case K::Implies: return !holds(q.args[0], env) || holds(q.args[1], env);
        case K::Exists:
        case K::Forall: {
            bool want = q.kind == K::Exists;
            auto saved = env.find(q.var) != env.end() ? std::optional<std::string>(env[q.var]) : std::nullopt;
            bool result = !want;
            for (const auto& d : domain_) {
                env[q.var] = d;
                if (holds(q.args[0], env) == want) {
                    result = want;
                    break;
                }
            }
            if (saved)
                env[q.var] = *saved;
            else
                env.erase(q.var);
            return result;
        }
        }
        return false;
    }

private:
    const Reasoner& reasoner_;
    const ABox& abox_;
    std::vector<std::string> domain_;
};

} // namespace

Reasoner::Reasoner(TBox tbox) : tbox_(std::move(tbox)) {
    for (const auto& t : tbox_) {
        if (!t.negative && t.kind != TBoxAssertion::Kind::Functionality)
            continue;
        if (t.kind == TBoxAssertion::Kind::ConceptInclusion) {
            violation_queries_.push_back(
                UCQ::from_atoms({}, {concept_atom(t.lhs_concept, "x", "y1"), concept_atom(t.rhs_concept, "x", "y2")}));
        } else if (t.kind == TBoxAssertion::Kind::RoleInclusion) {
            violation_queries_.push_back(
                UCQ::from_atoms({}, {role_atom(t.lhs_role, "x", "y"), role_atom(t.rhs_role, "x", "y")}));
        } else {
            functional_roles_.push_back(UCQ::from_atoms({"x", "y"}, {role_atom(t.lhs_role, "x", "y")}));
        }
    }
}

const UCQ& Reasoner::rewritten(const UCQ& q) const {
    std::string key = to_string(q);
    {
        std::shared_lock lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end())
            return *it->second;
    }
    auto rew = std::make_unique<UCQ>(rewrite_ucq(q, tbox_));
    std::unique_lock lock(mutex_);
    auto [it, inserted] = cache_.emplace(std::move(key), std::move(rew));
    return *it->second;
}

AnswerSet Reasoner::certain_answers(const UCQ& q, const ABox& abox, const Substitution& fixed) const {
    return evaluate_ucq(rewritten(q), abox, fixed);
}

bool Reasoner::holds(const Ecq& q, const ABox& abox, const Substitution& valuation) const {
    EcqEvaluator ev(*this, abox);
    Substitution env = valuation;
    return ev.holds(q, env);
}

AnswerSet Reasoner::answers(const Ecq& q, const ABox& abox, const Substitution& fixed) const {
    AnswerSet out;
    for (const auto& v : q.free_vars())
        if (!fixed.count(v))
            out.vars.push_back(v);

    EcqEvaluator ev(*this, abox);
    Substitution env = fixed;

    // When the leftmost conjunct is a UCQ covering every open variable, its
    // certain answers are the only candidates worth checking.
    const Ecq* lead = &q;
    while (lead->kind == Ecq::Kind::And)
        lead = &lead->args[0];
    if (lead->kind == Ecq::Kind::Query) {
        std::set<std::string> lead_vars(lead->query.free_vars.begin(), lead->query.free_vars.end());
        bool covers = std::all_of(out.vars.begin(), out.vars.end(), [&](const std::string& v) { return lead_vars.count(v); });
        if (covers) {
            Substitution lead_fixed;
            for (const auto& v : lead->query.free_vars)
                if (fixed.count(v))
                    lead_fixed[v] = fixed.at(v);
            for (const auto& s : certain_answers(lead->query, abox, lead_fixed).substitutions()) {
                std::vector<std::string> tuple;
                for (const auto& v : out.vars)
                    tuple.push_back(s.at(v));
                for (size_t i = 0; i < out.vars.size(); ++i)
                    env[out.vars[i]] = tuple[i];
                if (ev.holds(q, env))
                    out.tuples.insert(tuple);
            }
            return out;
        }
    }

    std::vector<std::string> tuple(out.vars.size());
    std::function<void(size_t)> enumerate = [&](size_t i) {
        if (i == out.vars.size()) {
            if (ev.holds(q, env))
                out.tuples.insert(tuple);
            return;
        }
        for (const auto& d : ev.domain()) {
            tuple[i] = d;
            env[out.vars[i]] = d;
            enumerate(i + 1);
        }
        env.erase(out.vars[i]);
    };
    enumerate(0);
    return out;
}

bool Reasoner::is_consistent(const ABox& abox) const {
    for (const auto& q : violation_queries_)
        if (certain_answers(q, abox).boolean())
            return false;
    for (const auto& q : functional_roles_) {
        std::map<std::string, std::string> filler;
        for (const auto& t : certain_answers(q, abox).tuples) {
            auto [it, inserted] = filler.emplace(t[0], t[1]);
            if (!inserted && it->second != t[1])
                return false;
        }
    }
    return true;
}

AnswerSet certain_answers_ucq(const UCQ& q, const TBox& tbox, const ABox& abox) {
    return Reasoner(tbox).certain_answers(q, abox);
}

AnswerSet answer_ecq(const Ecq& q, const TBox& tbox, const ABox& abox) { return Reasoner(tbox).answers(q, abox); }

bool is_consistent(const TBox& tbox, const ABox& abox) { return Reasoner(tbox).is_consistent(abox); }

} // namespace ckab
