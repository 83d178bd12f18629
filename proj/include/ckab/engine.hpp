#pragma once

// Single-step execution semantics: action executability, effect application,
// service-call extraction and evaluation, and the action/context transition
// relations.

#include "ckab/context.hpp"
#include "ckab/kb.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ckab {

/// Ground service call f(c1, ..., cn) over constants.
struct ServiceCall {
    std::string function;
    std::vector<std::string> args;

    auto operator<=>(const ServiceCall&) const = default;
};

std::string to_string(const ServiceCall& c);

/// Results of calls issued so far; functional by construction.
using ServiceCallMap = std::map<ServiceCall, std::string>;

/// Term in an effect head: variable, constant, or service call over terms.
struct HeadTerm {
    enum class Kind { Variable, Constant, Call };
    Kind kind = Kind::Variable;
    std::string name;
    std::vector<HeadTerm> args;

    static HeadTerm var(std::string n) { return {Kind::Variable, std::move(n), {}}; }
    static HeadTerm constant(std::string n) { return {Kind::Constant, std::move(n), {}}; }
    static HeadTerm call(std::string f, std::vector<HeadTerm> a) { return {Kind::Call, std::move(f), std::move(a)}; }

    bool operator==(const HeadTerm&) const = default;
    /// Nesting depth of service calls (0 for variables and constants).
    int call_depth() const;
};

struct HeadFact {
    std::string predicate;
    std::vector<HeadTerm> args;

    bool operator==(const HeadFact&) const = default;
};

/// q+ & Q- ~> head. An absent Q- is true.
struct EffectSpec {
    UCQ qplus;
    std::optional<Ecq> qminus;
    std::vector<HeadFact> head;

    bool operator==(const EffectSpec&) const = default;
};

struct ActionSpec {
    std::string name;
    std::vector<std::string> params;
    std::vector<EffectSpec> effects;

    bool operator==(const ActionSpec&) const = default;
};

/// <Q(x1..xn), guard> |-> action(x1..xn). `vars[i]` binds the i-th action
/// parameter; the free variables of `query` are exactly `vars`.
struct CondActionRule {
    Ecq query;
    ContextExpr guard;
    std::string action;
    std::vector<std::string> vars;

    bool operator==(const CondActionRule&) const = default;
};

/// <Q, guard> |-> C_new with Q boolean.
struct ContextEvolutionRule {
    Ecq query;
    ContextExpr guard;
    PartialAssignment head;

    bool operator==(const ContextEvolutionRule&) const = default;
};

/// Ground term that may still contain service calls.
struct GroundTerm {
    std::string name;
    std::vector<GroundTerm> args;
    bool is_call = false;

    bool operator==(const GroundTerm&) const = default;
    bool operator<(const GroundTerm& o) const;
};

struct PendingFact {
    std::string predicate;
    std::vector<GroundTerm> args;

    bool operator==(const PendingFact&) const = default;
    bool operator<(const PendingFact& o) const;
};

using PendingFactSet = std::set<PendingFact>;

std::string to_string(const GroundTerm& t);
std::string to_string(const PendingFact& f);

/// Maps rule variables to the action's parameter names.
Substitution rule_to_parameters(const CondActionRule& rule, const ActionSpec& action, const Substitution& rule_binding);

/// The rule's query holds for sigma (over rule variables) and its guard is
/// entailed by ctx.
bool executable(const Reasoner& tbox_in_ctx, const ABox& abox, const ContextState& ctx, const ContextTheory& theory,
                const CondActionRule& rule, const Substitution& sigma);

/// Every parameter substitution (over action parameters) under which `rule`
/// enables its action.
std::vector<Substitution> enabled_bindings(const Reasoner& tbox_in_ctx, const ABox& abox, const ContextState& ctx,
                                           const ContextTheory& theory, const CondActionRule& rule,
                                           const ActionSpec& action);

/// Effect instantiation: union over effects of head instantiations for every
/// certain answer of [q+] & Q- under sigma.
PendingFactSet do_action(const Reasoner& tbox_in_ctx, const ABox& abox, const ActionSpec& action,
                         const Substitution& sigma);

/// Every service-call term in p, nested ones included, innermost first.
std::vector<GroundTerm> calls(const PendingFactSet& p);

/// Result of substituting every call in a pending fact set.
struct Evaluation {
    ServiceCallMap theta;
    ABox abox;
};

/// Every total theta over calls(p) into `value_domain` that agrees with
/// `scmap`. Calls are assigned innermost first; enumeration is lexicographic
/// in call order and domain order.
std::vector<Evaluation> evaluations(const PendingFactSet& p, const ServiceCallMap& scmap,
                                    const std::vector<std::string>& value_domain);

/// Pure function from a call to a constant (concrete simulation mode).
class ServiceBackend {
public:
    virtual ~ServiceBackend() = default;
    virtual std::string call(const ServiceCall& c) const = 0;
};

/// Looks results up in a fixed table; throws SpecError on a miss.
class TableBackend : public ServiceBackend {
public:
    explicit TableBackend(ServiceCallMap table) : table_(std::move(table)) {}
    std::string call(const ServiceCall& c) const override;

private:
    ServiceCallMap table_;
};

/// Deterministically hashes (seed, call) onto a value domain.
class HashBackend : public ServiceBackend {
public:
    HashBackend(std::uint64_t seed, std::vector<std::string> domain) : seed_(seed), domain_(std::move(domain)) {}
    std::string call(const ServiceCall& c) const override;

private:
    std::uint64_t seed_;
    std::vector<std::string> domain_;
};

/// Single evaluation where fresh calls are answered by `backend`.
Evaluation evaluate_concrete(const PendingFactSet& p, const ServiceCallMap& scmap, const ServiceBackend& backend);

struct ActionSuccessor {
    ABox abox;
    ServiceCallMap scmap;
};

/// One successor per evaluation: A' = do(...)theta, m' = m + theta. Context
/// unchanged; consistency is not checked here.
std::vector<ActionSuccessor> action_step(const Reasoner& tbox_in_ctx, const ABox& abox, const ServiceCallMap& scmap,
                                         const ActionSpec& action, const Substitution& sigma,
                                         const std::vector<std::string>& value_domain);

struct ContextSuccessor {
    ContextState ctx;
    std::vector<size_t> rules; // indices of the rules producing ctx
};

/// Context transitions: one successor context per distinct result of a
/// firing rule, in context order. Never touches the ABox or the call map.
using TBoxProjector = std::function<const Reasoner&(const ContextState&)>;
std::vector<ContextSuccessor> context_step(const ABox& abox, const ContextState& ctx,
                                           const std::vector<ContextEvolutionRule>& rules,
                                           const TBoxProjector& project, const ContextTheory& theory);

} // namespace ckab
