#pragma once

// Model checking of context-sensitive mu-calculus properties over a finite
// transition system: extension sets by Kleene iteration, verdicts at the
// initial state, and witness/counterexample paths.

#include "ckab/mu_formula.hpp"
#include "ckab/statespace.hpp"

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace ckab {

/// Membership vector over state indices.
using StateSet = std::vector<bool>;
/// Fixpoint variable valuation.
using FixpointValuation = std::map<std::string, StateSet>;

size_t count(const StateSet& s);

class Checker {
public:
    explicit Checker(const TransitionSystem& ts);

    /// States satisfying f under individual valuation v and fixpoint
    /// valuation V. Throws SpecError on unbound variables or a fixpoint
    /// body that is not monotone.
    StateSet extension(const MuFormula& f, const Substitution& v = {}, const FixpointValuation& V = {});

    /// Fixpoint iterations performed so far.
    size_t iterations() const { return iterations_; }

    /// A path from `start` illustrating why f evaluates to `want` there:
    /// one action/context edge pair per modal step taken, capped at
    /// `max_pairs` pairs. Stops early at a repeated (state, subformula).
    std::vector<size_t> explain(const MuFormula& f, size_t start, bool want, size_t max_pairs = 64);

private:
    struct NodeInfo {
        std::vector<std::string> free_individuals;
        bool fixpoint_closed = true;
        std::string text; // cache key prefix for fixpoint-closed nodes
    };

    const NodeInfo& info(const MuFormula& f);
    StateSet eval(const MuFormula& f, const Substitution& v, const FixpointValuation& V);
    StateSet pre_exists(const StateSet& s) const;
    StateSet pre_forall(const StateSet& s) const;
    std::string cache_key(const MuFormula& f, const Substitution& v);

    struct Binder {
        const MuFormula* formula;
        FixpointValuation outer;
        std::vector<StateSet> approximants; // empty: unfold to the fixpoint itself
    };
    struct ExplainState {
        std::vector<size_t> path;
        size_t pairs_left;
        std::set<std::string> visited;
        bool stopped = false;
    };
    void explain_at(const MuFormula& f, size_t s, bool want, Substitution& v, FixpointValuation& V,
                    std::map<std::string, Binder>& binders, ExplainState& st);
    void unfold(const Binder& b, size_t s, bool want, Substitution& v, FixpointValuation& V,
                std::map<std::string, Binder>& binders, ExplainState& st);
    void explain_step(const MuFormula& f, size_t s, bool want, Substitution& v, FixpointValuation& V,
                      std::map<std::string, Binder>& binders, ExplainState& st);

    const TransitionSystem& ts_;
    std::vector<std::string> all_values_;
    std::vector<std::set<std::string>> state_domain_;
    // Valid for the duration of one public call only.
    std::unordered_map<const MuFormula*, NodeInfo> info_;
    std::unordered_map<std::string, StateSet> cache_;
    size_t iterations_ = 0;
};

struct SubformulaExtent {
    std::string formula;
    size_t states = 0;
};

struct CheckResult {
    bool holds = false;
    StateSet extent;
    /// Witness (holding) or counterexample (failing) path from the initial
    /// state; a single state when the verdict is decided locally.
    std::vector<size_t> path;
    std::vector<SubformulaExtent> subformulas;
    size_t iterations = 0;
};

/// Decides s0 in ext(f). f must be closed.
CheckResult model_check(const TransitionSystem& ts, const MuFormula& f);

std::string format_path(const TransitionSystem& ts, const std::vector<size_t>& path);

} // namespace ckab
