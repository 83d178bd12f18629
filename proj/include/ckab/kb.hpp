#pragma once

// DL-Lite knowledge bases: TBox and ABox representation, contextualized TBox
// projection, UCQ rewriting and certain answers, ECQ evaluation and
// consistency checking.

#include "ckab/common.hpp"
#include "ckab/context.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace ckab {

// ---------------------------------------------------------------------------
// TBox

/// Basic role: P or P^-.
struct Role {
    std::string name;
    bool inverse = false;

    auto operator<=>(const Role&) const = default;
};

/// Basic concept: N or exists R.
struct BasicConcept {
    enum class Kind { Atomic, Exists };
    Kind kind = Kind::Atomic;
    std::string name;   // concept name, or the role name for Exists
    bool inverse = false; // Exists only

    static BasicConcept atomic(std::string n) { return {Kind::Atomic, std::move(n), false}; }
    static BasicConcept exists(Role r) { return {Kind::Exists, std::move(r.name), r.inverse}; }
    Role role() const { return {name, inverse}; }

    auto operator<=>(const BasicConcept&) const = default;
};

struct TBoxAssertion {
    enum class Kind { ConceptInclusion, RoleInclusion, Functionality };

    Kind kind = Kind::ConceptInclusion;
    bool negative = false;
    BasicConcept lhs_concept, rhs_concept;
    Role lhs_role, rhs_role; // Functionality uses lhs_role only

    static TBoxAssertion concept_inclusion(BasicConcept lhs, BasicConcept rhs, bool negative = false) {
        TBoxAssertion t;
        t.kind = Kind::ConceptInclusion;
        t.negative = negative;
        t.lhs_concept = std::move(lhs);
        t.rhs_concept = std::move(rhs);
        return t;
    }
    static TBoxAssertion role_inclusion(Role lhs, Role rhs, bool negative = false) {
        TBoxAssertion t;
        t.kind = Kind::RoleInclusion;
        t.negative = negative;
        t.lhs_role = std::move(lhs);
        t.rhs_role = std::move(rhs);
        return t;
    }
    static TBoxAssertion functionality(Role r) {
        TBoxAssertion t;
        t.kind = Kind::Functionality;
        t.lhs_role = std::move(r);
        return t;
    }

    bool is_positive_inclusion() const { return kind != Kind::Functionality && !negative; }

    auto operator<=>(const TBoxAssertion&) const = default;
};

using TBox = std::vector<TBoxAssertion>;

struct GuardedAssertion {
    TBoxAssertion assertion;
    ContextExpr guard;

    bool operator==(const GuardedAssertion&) const = default;
};

struct ContextualizedTBox {
    std::vector<GuardedAssertion> assertions;

    bool operator==(const ContextualizedTBox&) const = default;

    /// Concept and role names occurring in any assertion, regardless of guard.
    std::set<std::string> vocabulary() const;
};

/// T^C: the assertions whose guards are entailed by ctx and the theory.
TBox kb_in_context(const ContextualizedTBox& ctbox, const ContextState& ctx, const ContextTheory& theory);

std::string to_string(const Role& r);
std::string to_string(const BasicConcept& b);
std::string to_string(const TBoxAssertion& t);

// ---------------------------------------------------------------------------
// ABox

struct Fact {
    std::string predicate;
    std::vector<std::string> args;

    auto operator<=>(const Fact&) const = default;
};

std::string to_string(const Fact& f);

class ABox {
public:
    ABox() = default;
    ABox(std::initializer_list<Fact> facts) : facts_(facts) {}
    explicit ABox(std::set<Fact> facts) : facts_(std::move(facts)) {}

    const std::set<Fact>& facts() const { return facts_; }
    bool insert(Fact f) { return facts_.insert(std::move(f)).second; }
    bool erase(const Fact& f) { return facts_.erase(f) > 0; }
    bool contains(const Fact& f) const { return facts_.count(f) > 0; }
    size_t size() const { return facts_.size(); }
    bool empty() const { return facts_.empty(); }

    /// Constants occurring in the ABox, sorted.
    std::set<std::string> adom() const;

    /// Facts with the given predicate whose leading arguments equal `prefix`.
    template <typename Fn> void for_each_match(const std::string& predicate, const std::vector<std::string>& prefix, Fn&& fn) const {
        Fact probe{predicate, prefix};
        for (auto it = facts_.lower_bound(probe); it != facts_.end() && it->predicate == predicate; ++it) {
            if (it->args.size() < prefix.size() || !std::equal(prefix.begin(), prefix.end(), it->args.begin()))
                break;
            fn(*it);
        }
    }

    auto operator<=>(const ABox&) const = default;

private:
    std::set<Fact> facts_;
};

// ---------------------------------------------------------------------------
// Queries

struct Term {
    enum class Kind { Variable, Constant };
    Kind kind = Kind::Variable;
    std::string name;

    static Term var(std::string n) { return {Kind::Variable, std::move(n)}; }
    static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
    bool is_var() const { return kind == Kind::Variable; }

    auto operator<=>(const Term&) const = default;
};

struct QueryAtom {
    std::string predicate;
    std::vector<Term> args;

    auto operator<=>(const QueryAtom&) const = default;
};

/// A conjunctive query. `head` lists one term per free variable of the
/// enclosing UCQ; for user-written queries head[i] is the i-th free variable,
/// rewriting may specialise head positions to constants or merge them.
struct ConjunctiveQuery {
    std::vector<Term> head;
    std::vector<QueryAtom> atoms;

    auto operator<=>(const ConjunctiveQuery&) const = default;
};

struct UCQ {
    std::vector<std::string> free_vars;
    std::vector<ConjunctiveQuery> disjuncts;

    bool operator==(const UCQ&) const = default;

    /// Single-disjunct query whose atoms all use free variables only.
    static UCQ from_atoms(std::vector<std::string> free_vars, std::vector<QueryAtom> atoms);
};

/// EQL-Lite(UCQ): first-order combinations of certain-answer UCQ atoms with
/// quantification over the active domain.
struct Ecq {
    enum class Kind { True, False, Query, Not, And, Or, Implies, Exists, Forall };

    Kind kind = Kind::True;
    UCQ query;        // Query
    std::string var;  // Exists / Forall
    std::vector<Ecq> args;

    static Ecq top() { return {}; }
    static Ecq atom(UCQ q) { Ecq e; e.kind = Kind::Query; e.query = std::move(q); return e; }
    static Ecq negate(Ecq a) { Ecq e; e.kind = Kind::Not; e.args = {std::move(a)}; return e; }
    static Ecq conj(Ecq a, Ecq b) { Ecq e; e.kind = Kind::And; e.args = {std::move(a), std::move(b)}; return e; }
    static Ecq disj(Ecq a, Ecq b) { Ecq e; e.kind = Kind::Or; e.args = {std::move(a), std::move(b)}; return e; }
    static Ecq exists(std::string v, Ecq a) { Ecq e; e.kind = Kind::Exists; e.var = std::move(v); e.args = {std::move(a)}; return e; }
    static Ecq forall(std::string v, Ecq a) { Ecq e; e.kind = Kind::Forall; e.var = std::move(v); e.args = {std::move(a)}; return e; }

    bool operator==(const Ecq&) const = default;

    std::set<std::string> free_vars() const;
};

using Substitution = std::map<std::string, std::string>;

/// Answer tuples aligned with `vars`. A boolean query is true iff `tuples`
/// contains the empty tuple.
struct AnswerSet {
    std::vector<std::string> vars;
    std::set<std::vector<std::string>> tuples;

    bool boolean() const { return !tuples.empty(); }
    std::vector<Substitution> substitutions() const;
};

std::string to_string(const Term& t);
std::string to_string(const QueryAtom& a);
std::string to_string(const ConjunctiveQuery& q, const std::vector<std::string>& free_vars);
std::string to_string(const UCQ& q);

/// Backward rewriting over the positive inclusions of `tbox`: evaluating
/// the result over any T-consistent ABox yields the certain answers.
UCQ rewrite_ucq(const UCQ& q, const TBox& tbox);

/// Plain (TBox-free) evaluation. Bindings in `fixed` restrict the free
/// variables they mention; the result still ranges over all free variables.
AnswerSet evaluate_ucq(const UCQ& q, const ABox& abox, const Substitution& fixed = {});

/// Caches rewritings for one TBox. Safe to share between threads.
class Reasoner {
public:
    explicit Reasoner(TBox tbox);

    const TBox& tbox() const { return tbox_; }

    const UCQ& rewritten(const UCQ& q) const;
    AnswerSet certain_answers(const UCQ& q, const ABox& abox, const Substitution& fixed = {}) const;
    bool holds(const Ecq& q, const ABox& abox, const Substitution& valuation = {}) const;
    AnswerSet answers(const Ecq& q, const ABox& abox, const Substitution& fixed = {}) const;
    bool is_consistent(const ABox& abox) const;

private:
    TBox tbox_;
    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<std::string, std::unique_ptr<UCQ>> cache_;
    std::vector<UCQ> violation_queries_;
    std::vector<UCQ> functional_roles_;
};

AnswerSet certain_answers_ucq(const UCQ& q, const TBox& tbox, const ABox& abox);
/// Answers over the free variables of Q; quantifiers range over adom(abox)
/// minus the reserved marker constant.
AnswerSet answer_ecq(const Ecq& q, const TBox& tbox, const ABox& abox);
bool is_consistent(const TBox& tbox, const ABox& abox);

/// Quantification domain used by ECQ evaluation: adom minus reserved names.
std::vector<std::string> query_domain(const ABox& abox);

} // namespace ckab
