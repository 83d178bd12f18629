// Acceptance suite: each criterion prints one PASS/FAIL line. Exit status
// is nonzero if any criterion fails.

#include "oracles/chase_oracle.hpp"
#include "oracles/context_oracle.hpp"
#include "oracles/generators.hpp"
#include "oracles/mu_oracle.hpp"

#include "ckab/checker.hpp"
#include "ckab/cli.hpp"
#include "ckab/dsl.hpp"
#include "ckab/statespace.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ckab;
namespace fs = std::filesystem;

namespace {

const std::string kData = CKAB_DATA_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CkabSpec load(const std::string& name) {
    auto r = parse_spec(read(kData + "/" + name));
    if (!r.ok())
        throw std::runtime_error(name + " does not parse");
    return *r.value;
}

std::vector<oracle::Tree> trees_of(const ContextSignature& sig) {
    std::vector<oracle::Tree> out;
    for (const auto& d : sig.dimensions()) {
        oracle::Tree t;
        t.dimension = d.name();
        t.values = d.values();
        for (const auto& v : d.values())
            if (auto p = d.parent(v))
                t.parent[v] = *p;
        out.push_back(std::move(t));
    }
    return out;
}

// 1 -------------------------------------------------------------------------

Outcome context_entailment() {
    gen::Rng rng(1001);
    size_t checks = 0, mismatches = 0;
    for (int i = 0; i < 200; ++i) {
        std::vector<oracle::Tree> trees;
        size_t nd = 1 + gen::pick(rng, 4);
        for (size_t d = 0; d < nd; ++d)
            trees.push_back(gen::tree(rng, "d" + std::to_string(d), 6));
        auto theory = build_theory(gen::signature(trees));
        auto ctx = gen::context(rng, trees);
        for (int j = 0; j < 5; ++j) {
            auto e = gen::context_expr(rng, trees, 5);
            ++checks;
            if (entails(ContextState{ctx}, theory, e) != oracle::entails(trees, ctx, e))
                ++mismatches;
        }
    }
    return {mismatches == 0, std::to_string(checks) + " entailment checks, " + std::to_string(mismatches) + " mismatches"};
}

// 2 -------------------------------------------------------------------------

Outcome certain_answers() {
    gen::Rng rng(2002);
    size_t kbs = 0, queries = 0, mismatches = 0, rejected = 0;
    while (kbs < 100) {
        TBox t = gen::tbox(rng, 6);
        ABox a = gen::abox(rng, 10);
        auto chased = oracle::chase(t, a);
        if (!chased || !oracle::consistent(t, *chased)) {
            ++rejected;
            continue;
        }
        ++kbs;
        for (int j = 0; j < 5; ++j) {
            UCQ q = gen::ucq(rng, 3, 2);
            ++queries;
            auto got = certain_answers_ucq(q, t, a);
            auto want = oracle::evaluate(q, *chased);
            if (got.vars != q.free_vars || got.tuples != want)
                ++mismatches;
        }
    }
    return {mismatches == 0, std::to_string(kbs) + " KBs (" + std::to_string(rejected) + " non-terminating or inconsistent skipped), " +
                                 std::to_string(queries) + " UCQs, " + std::to_string(mismatches) + " mismatches"};
}

// 3 -------------------------------------------------------------------------

Outcome construction_fidelity() {
    CkabSpec spec = load("retail.ckab");
    BuildConfig cfg;
    cfg.k = 1;
    TransitionSystem ts = build(spec, cfg);
    if (!ts.complete)
        return {false, "construction incomplete: " + ts.incomplete_reason};
    auto trees = trees_of(spec.dimensions);
    size_t phase_bad = 0, inconsistent = 0, call_bad = 0;
    for (const auto& e : ts.edges()) {
        if (ts.state(e.from).phase == ts.state(e.to).phase)
            ++phase_bad;
        const auto& m1 = ts.state(e.from).scmap;
        const auto& m2 = ts.state(e.to).scmap;
        for (const auto& [call, value] : m1) {
            auto it = m2.find(call);
            if (it == m2.end() || it->second != value)
                ++call_bad;
        }
    }
    std::map<ContextState, TBox> projected;
    for (size_t i = 0; i < ts.size(); ++i) {
        const auto& s = ts.state(i);
        if (s.phase != Phase::Stable)
            continue;
        auto [it, fresh] = projected.try_emplace(s.ctx);
        if (fresh)
            for (const auto& g : spec.ctbox.assertions)
                if (oracle::entails(trees, s.ctx.assignments, g.guard))
                    it->second.push_back(g.assertion);
        auto chased = oracle::chase(it->second, s.abox);
        if (!chased || !oracle::consistent(it->second, *chased))
            ++inconsistent;
    }
    return {phase_bad + inconsistent + call_bad == 0,
            std::to_string(ts.size()) + " states, " + std::to_string(ts.edges().size()) + " edges; phase violations " +
                std::to_string(phase_bad) + ", inconsistent stable states " + std::to_string(inconsistent) +
                ", call-map violations " + std::to_string(call_bad)};
}

// 4, 5 ----------------------------------------------------------------------

MuFormula dual(const MuFormula& f, const std::set<std::string>& flipped) {
    using K = MuFormula::Kind;
    auto d = [&](const MuFormula& g) { return dual(g, flipped); };
    switch (f.kind) {
    case K::True: return MuFormula::bottom();
    case K::False: return MuFormula::top();
    case K::Query:
    case K::Context: return MuFormula::unary(K::Not, f);
    case K::Not: {
        // Var occurrences inside a negation cannot be bound here, so the
        // operand is closed with respect to the dualised variables.
        return f.args[0];
    }
    case K::And: return MuFormula::binary(K::Or, d(f.args[0]), d(f.args[1]));
    case K::Or: return MuFormula::binary(K::And, d(f.args[0]), d(f.args[1]));
    case K::Implies: return MuFormula::binary(K::And, f.args[0], d(f.args[1]));
    case K::Exists: return MuFormula::binder(K::Forall, f.name, d(f.args[0]));
    case K::Forall: return MuFormula::binder(K::Exists, f.name, d(f.args[0]));
    case K::DiamDiam: return MuFormula::unary(K::BoxBox, d(f.args[0]));
    case K::DiamBox: return MuFormula::unary(K::BoxDiam, d(f.args[0]));
    case K::BoxDiam: return MuFormula::unary(K::DiamBox, d(f.args[0]));
    case K::BoxBox: return MuFormula::unary(K::DiamDiam, d(f.args[0]));
    case K::Var:
        if (!flipped.count(f.name))
            throw std::logic_error("free fixpoint variable in dual");
        return f;
    case K::Mu:
    case K::Nu: {
        auto inner = flipped;
        inner.insert(f.name);
        return MuFormula::binder(f.kind == K::Mu ? K::Nu : K::Mu, f.name, dual(f.args[0], inner));
    }
    }
    throw std::logic_error("bad formula");
}

/// psi[!Z / Z]
MuFormula negate_occurrences(const MuFormula& f, const std::string& z) {
    if (f.kind == MuFormula::Kind::Var && f.name == z)
        return MuFormula::unary(MuFormula::Kind::Not, f);
    if ((f.kind == MuFormula::Kind::Mu || f.kind == MuFormula::Kind::Nu) && f.name == z)
        return f;
    MuFormula g = f;
    for (auto& a : g.args)
        a = negate_occurrences(a, z);
    return g;
}

Outcome checker_vs_oracle() {
    gen::Rng rng(4004);
    size_t verdict_bad = 0, extent_bad = 0;
    for (int i = 0; i < 100; ++i) {
        auto sys = gen::alternating_system(rng, 8);
        gen::FormulaGen fg{rng, sys.dim};
        MuFormula f = fg.closed();
        auto r = model_check(*sys.ts, f);
        auto want = oracle::MuOracle(sys.kripke).extension(f);
        if (r.holds != static_cast<bool>(want[0]))
            ++verdict_bad;
        if (r.extent != want)
            ++extent_bad;
    }
    return {verdict_bad + extent_bad == 0, "100 formulas; verdict mismatches " + std::to_string(verdict_bad) +
                                               ", extent mismatches " + std::to_string(extent_bad)};
}

Outcome dualities() {
    using K = MuFormula::Kind;
    gen::Rng rng(4004);
    size_t checks = 0, bad = 0;
    auto same = [&](Checker& c, const MuFormula& a, const MuFormula& b) {
        ++checks;
        if (c.extension(a) != c.extension(b))
            ++bad;
    };
    for (int i = 0; i < 100; ++i) {
        auto sys = gen::alternating_system(rng, 8);
        gen::FormulaGen fg{rng, sys.dim};
        MuFormula f = fg.closed();
        Checker c(*sys.ts);
        MuFormula not_f = MuFormula::unary(K::Not, f);
        same(c, not_f, dual(f, {}));
        const std::pair<K, K> pairs[] = {{K::DiamDiam, K::BoxBox}, {K::DiamBox, K::BoxDiam}, {K::BoxDiam, K::DiamBox},
                                         {K::BoxBox, K::DiamDiam}};
        for (auto [m, dm] : pairs)
            same(c, MuFormula::unary(K::Not, MuFormula::unary(m, f)), MuFormula::unary(dm, not_f));
        same(c, MuFormula::unary(K::Not, MuFormula::binder(K::Exists, "y", f)), MuFormula::binder(K::Forall, "y", not_f));
        // Fixpoints over a body with a fresh positive variable.
        gen::FormulaGen body_gen{rng, sys.dim, 4, 1};
        MuFormula psi = body_gen.formula(4, {"W"}, {}, 1);
        for (K fx : {K::Mu, K::Nu}) {
            K dfx = fx == K::Mu ? K::Nu : K::Mu;
            same(c, MuFormula::unary(K::Not, MuFormula::binder(fx, "W", psi)),
                 MuFormula::binder(dfx, "W", MuFormula::unary(K::Not, negate_occurrences(psi, "W"))));
        }
    }
    return {bad == 0, std::to_string(checks) + " duality checks, " + std::to_string(bad) + " counterexamples"};
}

// 6 -------------------------------------------------------------------------

Outcome weak_acyclicity() {
    CkabSpec retail = load("retail.ckab");
    auto r = check_weak_acyclicity(retail);
    Position p{"hasTTD", 2};
    bool self_loop = r.graph.edges.count({p, p, true}) > 0;
    bool flagged = !r.weakly_acyclic && r.cycle == std::vector<Position>{p, p} && self_loop;

    CkabSpec nocalls = load("retail-nocalls.ckab");
    auto r2 = check_weak_acyclicity(nocalls);
    BuildConfig cfg;
    int k = derive_k(nocalls);
    cfg.run_bound = nocalls.initial_abox.adom().size() + static_cast<size_t>(k) + 1;
    TransitionSystem ts = build(nocalls, cfg);
    bool bounded = ts.complete && !ts.bound_violation;
    std::string detail = std::string("retail: ") + (flagged ? "not weakly acyclic, special self-loop at hasTTD.2" : "NOT flagged") +
                         "; call-free variant: " + (r2.weakly_acyclic ? "weakly acyclic" : "NOT certified") + ", b=" +
                         std::to_string(*cfg.run_bound) + ", " + std::to_string(ts.size()) + " states, " +
                         (bounded ? "no run-bound violation" : "violation or incomplete: " + ts.incomplete_reason);
    return {flagged && r2.weakly_acyclic && bounded, detail};
}

// 7 -------------------------------------------------------------------------

bool oracle_verdict(const CkabSpec& spec, const MuFormula& f) {
    // CustOrder and Delivered are never derived by the TBox, so plain fact
    // membership decides them.
    for (const auto& g : spec.ctbox.assertions) {
        const auto& t = g.assertion;
        if (t.kind == TBoxAssertion::Kind::ConceptInclusion && !t.negative &&
            (t.rhs_concept.name == "CustOrder" || t.rhs_concept.name == "Delivered"))
            throw std::logic_error("oracle assumption violated");
    }
    TransitionSystem ts = build(spec, {});
    auto trees = trees_of(spec.dimensions);
    auto k = gen::kripke_of(ts, [&](size_t s, const MuFormula& leaf, const std::map<std::string, std::string>& v) {
        const auto& st = ts.state(s);
        if (leaf.kind == MuFormula::Kind::Context)
            return oracle::entails(trees, st.ctx.assignments, leaf.context);
        const auto& atom = leaf.query.query.disjuncts.at(0).atoms.at(0);
        Fact fact{atom.predicate, {}};
        for (const auto& t : atom.args)
            fact.args.push_back(t.is_var() ? v.at(t.name) : t.name);
        return st.abox.contains(fact);
    });
    return oracle::MuOracle(k).extension(f)[0];
}

Outcome example_property() {
    std::string prop = kData + "/ex4.mu";
    std::ostringstream out1, err1, out2, err2;
    cli::CheckOptions opts;
    int holds_code = cli::cmd_check(kData + "/retail-delivery.ckab", prop, opts, out1, err1);
    int fails_code = cli::cmd_check(kData + "/retail-stuck.ckab", prop, opts, out2, err2);
    bool witness = out2.str().find("counterexample s0 --") != std::string::npos;

    CkabSpec delivery = load("retail-delivery.ckab"), stuck = load("retail-stuck.ckab");
    auto f = parse_property(read(prop), delivery);
    if (!f.ok())
        return {false, "property does not parse"};
    bool o1 = oracle_verdict(delivery, *f.value);
    bool o2 = oracle_verdict(stuck, *f.value);
    bool pass = holds_code == cli::kOk && fails_code == cli::kFails && witness && o1 && !o2;
    return {pass, "delivery variant exit " + std::to_string(holds_code) + " (oracle " + (o1 ? "holds" : "fails") +
                      "), stuck variant exit " + std::to_string(fails_code) + " (oracle " + (o2 ? "holds" : "fails") +
                      ")" + (witness ? ", counterexample path reported" : ", no counterexample path")};
}

// 8 -------------------------------------------------------------------------

std::string mutate(gen::Rng& rng, std::string s) {
    static const std::vector<std::string> tokens{
        "(", ")", "{", "}", "[", "]", "|->", "~>", "@", "&", "|", "!", ",", ".", ":", ";", "\n", "exists ", "forall ",
        "mu Z. ", "nu Z. ", "<-><->", "[-][-]", "<->", "[-]", "true", "false", "action ", "tbox\n", "abox\n",
        "dimensions\n", "process\n", "context-rules\n", "init-context\n", "State(inter)", "funct ", "[=", "^-", "x",
        "S:PS", "PP:", "newTTD(x, y)", "Z", "ecq(", "ctx(", "#", "->", "=", "/2", "0", "9999999999999999999999"};
    int ops = 1 + static_cast<int>(gen::pick(rng, 4));
    for (int i = 0; i < ops; ++i) {
        size_t pos = s.empty() ? 0 : gen::pick(rng, s.size() + 1);
        switch (gen::pick(rng, 6)) {
        case 0:
            if (!s.empty())
                s.erase(pos < s.size() ? pos : 0, 1 + gen::pick(rng, 40));
            break;
        case 1: s.insert(pos, tokens[gen::pick(rng, tokens.size())]); break;
        case 2: s.insert(pos, 1, static_cast<char>(gen::pick(rng, 256))); break;
        case 3:
            if (!s.empty()) {
                size_t from = gen::pick(rng, s.size());
                s.insert(pos, s.substr(from, 1 + gen::pick(rng, 60)));
            }
            break;
        case 4: s.resize(pos); break;
        default: s.insert(pos, std::string(1 + gen::pick(rng, 300), "([{"[gen::pick(rng, 3)])); break;
        }
    }
    return s;
}

Outcome round_trip_and_fuzz() {
    std::vector<std::string> specs, props;
    for (const auto& e : fs::directory_iterator(kData)) {
        if (e.path().extension() == ".ckab")
            specs.push_back(e.path().string());
        else if (e.path().extension() == ".mu")
            props.push_back(e.path().string());
    }
    std::sort(specs.begin(), specs.end());
    std::sort(props.begin(), props.end());
    size_t round_trips = 0, rt_bad = 0;
    std::vector<std::string> spec_texts, prop_texts;
    std::vector<std::string> failed;
    for (const auto& p : specs) {
        spec_texts.push_back(read(p));
        auto a = parse_spec(spec_texts.back());
        ++round_trips;
        if (!a.ok()) {
            ++rt_bad;
            failed.push_back(fs::path(p).filename().string());
            continue;
        }
        std::string printed = pretty_print(*a.value);
        auto b = parse_spec(printed);
        if (!b.ok() || !(*b.value == *a.value) || pretty_print(*b.value) != printed) {
            ++rt_bad;
            failed.push_back(fs::path(p).filename().string());
        }
    }
    for (const auto& p : props) {
        // Properties use the vocabulary of the .ckab file with the same stem.
        fs::path own = fs::path(p).replace_extension(".ckab");
        CkabSpec vocabulary = load(fs::exists(own) ? own.filename().string() : "retail.ckab");
        prop_texts.push_back(read(p));
        auto a = parse_properties(prop_texts.back(), vocabulary);
        ++round_trips;
        if (!a.ok()) {
            ++rt_bad;
            failed.push_back(fs::path(p).filename().string());
            continue;
        }
        for (const auto& f : *a.value) {
            auto b = parse_property(pretty_print(f), vocabulary);
            if (!b.ok() || !(*b.value == f)) {
                ++rt_bad;
                failed.push_back(fs::path(p).filename().string());
            }
        }
    }

    CkabSpec vocabulary = load("retail.ckab");
    gen::Rng rng(8008);
    size_t crashes = 0, silent = 0, accepted = 0;
    for (int i = 0; i < 10000; ++i) {
        bool property = !prop_texts.empty() && gen::coin(rng, 0.25);
        const auto& pool = property ? prop_texts : spec_texts;
        std::string input = mutate(rng, pool[gen::pick(rng, pool.size())]);
        try {
            std::vector<Diagnostic> diags;
            bool ok;
            if (property) {
                auto r = parse_properties(input, vocabulary);
                ok = r.ok();
                diags = r.diagnostics;
            } else {
                auto r = parse_spec(input);
                ok = r.ok();
                diags = r.diagnostics;
            }
            if (ok)
                ++accepted;
            else if (!has_errors(diags))
                ++silent;
        } catch (...) {
            ++crashes;
        }
    }
    return {rt_bad == 0 && crashes == 0 && silent == 0,
            std::to_string(round_trips) + " corpus files, " + std::to_string(rt_bad) + " round-trip failures" +
                (failed.empty() ? std::string() : " (" + failed.front() + ")") + "; 10000 fuzz inputs (" +
                std::to_string(accepted) + " still valid), " + std::to_string(crashes) + " exceptions, " +
                std::to_string(silent) + " rejected without an error diagnostic"};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s; // 0: no time limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "context entailment agrees with truth-table enumeration", 10, context_entailment},
        {2, "certain answers agree with the chase", 30, certain_answers},
        {3, "retail construction: alternation, consistency, call functionality", 60, construction_fidelity},
        {4, "model checker agrees with the brute-force fixpoint oracle", 0, checker_vs_oracle},
        {5, "negation, fixpoint and modality dualities", 0, dualities},
        {6, "weak-acyclicity analysis and run-bounded construction", 0, weak_acyclicity},
        {7, "order-delivery property on the delivery and stuck variants", 120, example_property},
        {8, "parser round trip on the corpus and fuzzing", 0, round_trip_and_fuzz},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs > c.limit_s) {
            o.pass = false;
            o.detail += "; exceeded " + std::to_string(static_cast<int>(c.limit_s)) + " s";
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " (" << timing
                  << ")" << std::endl;
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
