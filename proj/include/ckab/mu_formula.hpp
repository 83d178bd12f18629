#pragma once

#include "ckab/context.hpp"
#include "ckab/kb.hpp"

#include <set>
#include <string>
#include <vector>

namespace ckab {

/// Context-sensitive first-order mu-calculus. Step modalities only occur in
/// pairs: the first symbol quantifies over the action transition, the second
/// over the context transition that follows it.
struct MuFormula {
    enum class Kind {
        True,
        False,
        Query,   // local ECQ
        Context, // local context expression
        Not,
        And,
        Or,
        Implies,
        Exists,
        Forall,
        DiamDiam, // <-><->
        DiamBox,  // <->[-]
        BoxDiam,  // [-]<->
        BoxBox,   // [-][-]
        Var,
        Mu,
        Nu,
    };

    Kind kind = Kind::True;
    Ecq query;
    ContextExpr context;
    std::string name; // bound individual variable or fixpoint variable
    std::vector<MuFormula> args;

    bool operator==(const MuFormula&) const = default;

    static MuFormula top() { return {}; }
    static MuFormula bottom() { MuFormula f; f.kind = Kind::False; return f; }
    static MuFormula local(Ecq q) { MuFormula f; f.kind = Kind::Query; f.query = std::move(q); return f; }
    static MuFormula local(ContextExpr c) { MuFormula f; f.kind = Kind::Context; f.context = std::move(c); return f; }
    static MuFormula unary(Kind k, MuFormula a) { MuFormula f; f.kind = k; f.args = {std::move(a)}; return f; }
    static MuFormula binary(Kind k, MuFormula a, MuFormula b) { MuFormula f; f.kind = k; f.args = {std::move(a), std::move(b)}; return f; }
    static MuFormula binder(Kind k, std::string n, MuFormula body) { MuFormula f; f.kind = k; f.name = std::move(n); f.args = {std::move(body)}; return f; }
    static MuFormula var(std::string z) { MuFormula f; f.kind = Kind::Var; f.name = std::move(z); return f; }

    bool is_modality() const {
        return kind == Kind::DiamDiam || kind == Kind::DiamBox || kind == Kind::BoxDiam || kind == Kind::BoxBox;
    }
    bool is_fixpoint() const { return kind == Kind::Mu || kind == Kind::Nu; }

    /// Individual variables occurring free.
    std::set<std::string> free_individuals() const;
    /// Fixpoint variables occurring free.
    std::set<std::string> free_fixpoint_vars() const;
    /// Every bound fixpoint variable occurs under an even number of negations
    /// (implication antecedents count as negated) relative to its binder.
    bool is_monotone() const;
    /// Number of nested fixpoint binders on the deepest path.
    int fixpoint_depth() const;
};

/// phi[Z / !Z] for the free occurrences of Z.
MuFormula negate_var(const MuFormula& f, const std::string& z);

} // namespace ckab
