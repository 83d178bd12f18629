#pragma once

// Context dimensions with tree-shaped value domains, the propositional
// context expression language over dimension assignments, the domain
// theory (generalization implications plus sibling disjointness), and
// entailment of context expressions by a context.

#include "ckab/common.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ckab {

/// A context dimension and its finite tree of values. The root is the most
/// general value; a child is strictly more specific than its parent.
class DimensionDomain {
public:
    DimensionDomain() = default;

    /// Builds and validates a domain from parent edges (child, parent).
    /// Throws SpecError on cycles, multiple parents, unreachable values or
    /// edges into the root.
    static DimensionDomain create(std::string name, std::string root,
                                  const std::vector<std::pair<std::string, std::string>>& edges);

    const std::string& name() const { return name_; }
    const std::string& root() const { return root_; }
    /// Values in pre-order (root first, children in declaration order).
    const std::vector<std::string>& values() const { return values_; }

    bool contains(const std::string& v) const { return parent_.count(v) > 0; }
    std::optional<std::string> parent(const std::string& v) const;
    const std::vector<std::string>& children(const std::string& v) const;

    /// v, parent(v), ..., root.
    std::vector<std::string> ancestors_or_self(const std::string& v) const;
    /// All values below v including v itself, in pre-order.
    std::vector<std::string> subtree(const std::string& v) const;
    bool is_ancestor_or_self(const std::string& anc, const std::string& v) const;

    bool operator==(const DimensionDomain& o) const {
        return name_ == o.name_ && root_ == o.root_ && values_ == o.values_ && parent_ == o.parent_;
    }

private:
    std::string name_;
    std::string root_;
    std::vector<std::string> values_;
    // parent_[root] is empty.
    std::map<std::string, std::string> parent_;
    std::map<std::string, std::vector<std::string>> children_;
};

/// The declared set of dimensions, looked up by name.
class ContextSignature {
public:
    ContextSignature() = default;
    explicit ContextSignature(std::vector<DimensionDomain> dims);

    const std::vector<DimensionDomain>& dimensions() const { return dims_; }
    const DimensionDomain* find(const std::string& name) const;
    const DimensionDomain& at(const std::string& name) const;
    bool empty() const { return dims_.empty(); }

    bool operator==(const ContextSignature& o) const { return dims_ == o.dims_; }

private:
    std::vector<DimensionDomain> dims_;
};

/// A context: exactly one value per declared dimension.
struct ContextState {
    std::map<std::string, std::string> assignments;

    auto operator<=>(const ContextState&) const = default;
    bool operator==(const ContextState&) const = default;
};

/// At most one value per dimension; absent dimensions keep their value.
struct PartialAssignment {
    std::map<std::string, std::string> assignments;

    bool operator==(const PartialAssignment&) const = default;
};

/// Propositional formula over atoms `d:v`. Or/Implies/True/False are kept as
/// nodes for faithful printing; semantically they are the usual abbreviations.
struct ContextExpr {
    enum class Kind { True, False, Atom, Not, And, Or, Implies };

    Kind kind = Kind::True;
    std::string dimension;
    std::string value;
    std::vector<ContextExpr> args;

    static ContextExpr top() { return {}; }
    static ContextExpr bottom() { return {Kind::False, {}, {}, {}}; }
    static ContextExpr atom(std::string d, std::string v) { return {Kind::Atom, std::move(d), std::move(v), {}}; }
    static ContextExpr negate(ContextExpr e) { return {Kind::Not, {}, {}, {std::move(e)}}; }
    static ContextExpr conj(ContextExpr a, ContextExpr b) { return {Kind::And, {}, {}, {std::move(a), std::move(b)}}; }
    static ContextExpr disj(ContextExpr a, ContextExpr b) { return {Kind::Or, {}, {}, {std::move(a), std::move(b)}}; }
    static ContextExpr implies(ContextExpr a, ContextExpr b) { return {Kind::Implies, {}, {}, {std::move(a), std::move(b)}}; }

    bool operator==(const ContextExpr&) const = default;

    /// True iff the expression contains no negation or implication.
    bool is_positive() const;
};

/// An atom `d:v` being true in a propositional model.
using ContextAtom = std::pair<std::string, std::string>;
/// A propositional model: the set of true atoms.
using TruthAssignment = std::set<ContextAtom>;

/// The domain theory: `d:v1 -> d:v2` for every edge v1 below v2, and
/// `d:v1 -> !d:v2` for every ordered pair of distinct siblings.
struct ContextTheory {
    struct Implication {
        std::string dimension, from, to;
        auto operator<=>(const Implication&) const = default;
    };
    struct Disjointness {
        std::string dimension, value, excluded;
        auto operator<=>(const Disjointness&) const = default;
    };

    ContextSignature signature;
    std::set<Implication> implications;
    std::set<Disjointness> disjointness;
};

ContextTheory build_theory(const ContextSignature& sig);

/// Throws SpecError if `ctx` is not total over `sig` or uses unknown values.
void validate_context(const ContextState& ctx, const ContextSignature& sig);
/// Throws SpecError on undeclared dimensions or values.
void validate_expr(const ContextExpr& e, const ContextSignature& sig);
/// Throws SpecError on undeclared dimensions or values.
void validate_partial(const PartialAssignment& p, const ContextSignature& sig);

/// Evaluates an expression in a single propositional model.
bool evaluate(const ContextExpr& e, const TruthAssignment& model);

/// Every model of ctx together with the theory. Per dimension the true atoms
/// form a root-to-w chain for some w in the subtree of the assigned value;
/// models across dimensions combine as a Cartesian product.
std::vector<TruthAssignment> models_of(const ContextState& ctx, const ContextTheory& theory);

/// ctx + theory |= expr. Only dimensions mentioned in expr are enumerated.
bool entails(const ContextState& ctx, const ContextTheory& theory, const ContextExpr& expr);

ContextState apply_evolution(const ContextState& ctx, const PartialAssignment& update);

std::string to_string(const ContextState& ctx);

} // namespace ckab
