#pragma once

// The alternating action/context transition system of a CKAB: explicit-state
// construction with State(inter)-tagged intermediate states, content-based
// deduplication, consistency filtering, the run-bound monitor, weak
// acyclicity analysis, and DOT/JSON export.

#include "ckab/context.hpp"
#include "ckab/dsl.hpp"
#include "ckab/engine.hpp"
#include "ckab/kb.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace ckab {

enum class Phase { Stable, Intermediate };

const char* to_string(Phase p);

struct SystemState {
    ABox abox;
    ServiceCallMap scmap;
    ContextState ctx;
    Phase phase = Phase::Stable;

    bool operator==(const SystemState&) const = default;
    bool operator<(const SystemState& o) const;
};

/// Canonical text of a state's content; equal states have equal text.
std::string canonical_form(const SystemState& s);
/// Hash of canonical_form.
std::string state_digest(const SystemState& s);

/// Memoized T^C per context, shared by the builder and the checker.
class KbProjector {
public:
    KbProjector(ContextualizedTBox ctbox, ContextTheory theory);

    const Reasoner& at(const ContextState& ctx) const;
    const ContextTheory& theory() const { return theory_; }
    const ContextualizedTBox& ctbox() const { return ctbox_; }

private:
    ContextualizedTBox ctbox_;
    ContextTheory theory_;
    mutable std::mutex mutex_;
    mutable std::map<ContextState, std::unique_ptr<Reasoner>> cache_;
};

struct Transition {
    size_t from = 0;
    size_t to = 0;
    std::string label;

    bool operator==(const Transition&) const = default;
};

struct RunBoundViolation {
    size_t bound = 0;
    std::vector<size_t> path; // state indices from the initial state
    std::vector<std::string> values;
};

class TransitionSystem {
public:
    explicit TransitionSystem(std::shared_ptr<const KbProjector> kb);

    /// Inserts a state unless an equal one exists; returns its index and
    /// whether it is new.
    std::pair<size_t, bool> add_state(SystemState s);
    /// Adds an edge unless present; returns true when new.
    bool add_edge(size_t from, size_t to, std::string label);
    std::optional<size_t> find(const SystemState& s) const;

    const std::vector<SystemState>& states() const { return states_; }
    const SystemState& state(size_t i) const { return states_[i]; }
    const std::string& id(size_t i) const { return ids_[i]; }
    size_t size() const { return states_.size(); }
    size_t initial() const { return 0; }
    const std::vector<Transition>& edges() const { return edges_; }
    const std::vector<size_t>& successors(size_t i) const { return succ_[i]; }
    const std::vector<size_t>& predecessors(size_t i) const { return pred_[i]; }

    const KbProjector& kb() const { return *kb_; }
    std::shared_ptr<const KbProjector> kb_ptr() const { return kb_; }
    /// T^{cntx(s)} for state s.
    const Reasoner& kb_at(size_t i) const { return kb_->at(states_[i].ctx); }

    size_t stable_count() const;
    size_t intermediate_count() const { return size() - stable_count(); }

    /// Same states, ids, initial state and edges (labels included).
    bool same_structure(const TransitionSystem& o) const;

    // Construction metadata.
    bool complete = true;
    std::string incomplete_reason;
    std::optional<RunBoundViolation> bound_violation;
    std::vector<std::string> value_domain;
    int k = 0;
    std::string spec_digest;

private:
    std::shared_ptr<const KbProjector> kb_;
    std::vector<SystemState> states_;
    std::vector<std::string> ids_;
    std::map<SystemState, size_t> index_;
    std::vector<Transition> edges_;
    std::set<std::pair<size_t, size_t>> edge_set_;
    std::vector<std::vector<size_t>> succ_, pred_;
};

struct BuildConfig {
    std::optional<int> k;          // fresh abstract values; derived from the actions when absent
    size_t state_cap = 100000;
    std::optional<size_t> run_bound;
    unsigned threads = 1;
    std::set<std::string> extra_constants; // e.g. constants mentioned by properties
};

/// Number of distinct service-call terms in the heads of the action with
/// the most of them.
int derive_k(const CkabSpec& spec);

/// adom(A0), declared and extra constants (sorted), then k fresh values.
std::vector<std::string> abstraction_domain(const CkabSpec& spec, int k, const std::set<std::string>& extra);

/// Breadth-first construction from <A0, {}, C0>. Expansion of one frontier
/// layer may run on several threads; merging is sequential in frontier
/// order, so the result does not depend on the thread count.
TransitionSystem build(const CkabSpec& spec, const BuildConfig& config);

// ---------------------------------------------------------------------------
// Weak acyclicity

struct Position {
    std::string predicate;
    int index = 1; // 1-based

    auto operator<=>(const Position&) const = default;
};

std::string to_string(const Position& p);

struct DependencyGraph {
    struct Edge {
        Position from, to;
        bool special = false;
        auto operator<=>(const Edge&) const = default;
    };
    std::set<Position> nodes;
    std::set<Edge> edges;
};

DependencyGraph dependency_graph(const CkabSpec& spec);

struct WeakAcyclicityReport {
    bool weakly_acyclic = true;
    /// Positions of one cycle through a special edge, first element repeated
    /// at the end; empty when weakly acyclic.
    std::vector<Position> cycle;
    DependencyGraph graph;
};

WeakAcyclicityReport check_weak_acyclicity(const CkabSpec& spec);

// ---------------------------------------------------------------------------
// Export

std::string export_dot(const TransitionSystem& ts);
std::string export_json(const TransitionSystem& ts, int indent = 2);
/// Rebuilds a transition system from export_json output. Local formulas
/// are evaluated against `kb`; pass the projector of the originating spec.
TransitionSystem load_json(const std::string& text, std::shared_ptr<const KbProjector> kb);

// ---------------------------------------------------------------------------
// Concrete simulation

struct SimulationStep {
    std::string action;       // applied action with its arguments
    std::vector<size_t> rules; // context rules producing the new context
    SystemState intermediate;
    SystemState stable;
};

struct SimulationTrace {
    SystemState initial;
    std::vector<SimulationStep> steps;
    std::string stop_reason; // empty when all requested steps ran
};

/// Runs up to `steps` action/context pairs, answering fresh service calls
/// with `backend`. At each stable state the first executable rule binding
/// (process order, then binding order) whose result has a consistent
/// context successor is taken, together with its first such successor.
SimulationTrace simulate(const CkabSpec& spec, size_t steps, const ServiceBackend& backend);

std::string format_trace(const SimulationTrace& trace);

} // namespace ckab
