#include "doctest.h"

#include "ckab/statespace.hpp"

#include <fstream>
#include <sstream>

using namespace ckab;

namespace {

std::string read(const std::string& name) {
    std::ifstream in(std::string(CKAB_DATA_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CkabSpec load(const char* name) {
    auto r = parse_spec(read(name));
    REQUIRE(r.ok());
    return *r.value;
}

CkabSpec parse(const std::string& text) {
    auto r = parse_spec(text);
    for (const auto& d : r.diagnostics)
        MESSAGE(format_diagnostic("<inline>", d));
    REQUIRE(r.ok());
    return *r.value;
}

const char* kCounter = R"(dimensions
  M = any(a, b)
concepts
  Num
services
  next/1
abox
  Num(n0)
actions
  action inc()
    Num(x) ~> {Num(next(x))}
process
  true |-> inc()
context-rules
  true |-> {}
init-context
  M:a
)";

} // namespace

TEST_CASE("minimal system") {
    CkabSpec s = load("minimal.ckab");
    TransitionSystem ts = build(s, {});
    CHECK(ts.complete);
    CHECK(ts.size() == 4);
    CHECK(ts.stable_count() == 2);
    CHECK(ts.edges().size() == 4);
    CHECK(ts.state(0).phase == Phase::Stable);
    for (const auto& e : ts.edges())
        CHECK(ts.state(e.from).phase != ts.state(e.to).phase);
    for (size_t i = 0; i < ts.size(); ++i)
        if (ts.state(i).phase == Phase::Intermediate) {
            CHECK(ts.state(i).abox.contains(Fact{kMarkerConcept, {kMarkerConstant}}));
            CHECK(ts.kb_at(i).is_consistent(ts.state(i).abox));
        }
}

TEST_CASE("fresh values are bounded by k") {
    CkabSpec s = parse(kCounter);
    CHECK(derive_k(s) == 1);
    CHECK(abstraction_domain(s, 2, {"c"}) == std::vector<std::string>{"c", "n0", "_f1", "_f2"});
    TransitionSystem ts = build(s, {});
    CHECK(ts.complete);
    CHECK(ts.value_domain == std::vector<std::string>{"n0", "_f1"});
    // next(n0) and next(_f1) are chosen from {n0, _f1}.
    std::set<std::string> seen;
    for (const auto& st : ts.states())
        for (const auto& [c, v] : st.scmap)
            seen.insert(v);
    CHECK(seen == std::set<std::string>{"n0", "_f1"});
}

TEST_CASE("state cap") {
    CkabSpec s = load("retail.ckab");
    BuildConfig cfg;
    cfg.state_cap = 1;
    TransitionSystem ts = build(s, cfg);
    CHECK(!ts.complete);
    CHECK(ts.size() == 1);
    CHECK(ts.incomplete_reason.find("state cap") != std::string::npos);
}

TEST_CASE("run-bound monitor reports a path") {
    CkabSpec s = parse(kCounter);
    BuildConfig cfg;
    cfg.k = 3;
    cfg.run_bound = 3;
    TransitionSystem ts = build(s, cfg);
    REQUIRE(ts.bound_violation);
    CHECK(!ts.complete);
    const auto& v = *ts.bound_violation;
    CHECK(v.values.size() >= 3);
    CHECK(v.path.front() == 0);
    for (size_t i = 1; i < v.path.size(); ++i) {
        const auto& succ = ts.successors(v.path[i - 1]);
        CHECK(std::find(succ.begin(), succ.end(), v.path[i]) != succ.end());
    }
    cfg.run_bound = 100;
    CHECK(!build(s, cfg).bound_violation);
}

TEST_CASE("construction does not depend on the thread count") {
    CkabSpec s = load("retail-nocalls.ckab");
    BuildConfig one, many;
    many.threads = 4;
    TransitionSystem a = build(s, one), b = build(s, many);
    CHECK(a.same_structure(b));
    CHECK(export_json(a) == export_json(b));
}

TEST_CASE("all-inconsistent successors add no intermediate state") {
    CkabSpec s = parse(R"(dimensions
  M = any(a, b)
concepts
  P, Q
tbox
  P [= !Q
abox
  P(c)
actions
  action bad()
    P(x) ~> {P(x), Q(x)}
process
  true |-> bad()
context-rules
  true |-> {}
init-context
  M:a
)");
    TransitionSystem ts = build(s, {});
    CHECK(ts.size() == 1);
    CHECK(ts.edges().empty());
}

TEST_CASE("inconsistent context successors are filtered") {
    CkabSpec s = parse(R"(dimensions
  M = any(a, b)
concepts
  P, Q
tbox
  P [= !Q @ M:b
abox
  P(c), Q(c)
actions
  action stay()
    P(x) ~> {P(x)}
    Q(x) ~> {Q(x)}
process
  true |-> stay()
context-rules
  true |-> {M:b}
  true |-> {}
init-context
  M:a
)");
    TransitionSystem ts = build(s, {});
    CHECK(ts.size() == 2);
    for (const auto& st : ts.states())
        CHECK(st.ctx.assignments.at("M") == "a");
}

TEST_CASE("JSON export round trip") {
    CkabSpec s = load("retail-nocalls.ckab");
    TransitionSystem ts = build(s, {});
    std::string text = export_json(ts);
    TransitionSystem back = load_json(text, ts.kb_ptr());
    CHECK(back.same_structure(ts));
    CHECK(export_json(back) == text);
    CHECK_THROWS_AS(load_json("{", ts.kb_ptr()), SpecError);
    CHECK_THROWS_AS(load_json(R"({"spec_digest":"x"})", ts.kb_ptr()), SpecError);
    std::string dot = export_dot(ts);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("style=dashed") != std::string::npos);
}

TEST_CASE("weak acyclicity") {
    auto retail = check_weak_acyclicity(load("retail.ckab"));
    CHECK(!retail.weakly_acyclic);
    CHECK(retail.cycle == std::vector<Position>{{"hasTTD", 2}, {"hasTTD", 2}});
    CHECK(check_weak_acyclicity(load("retail-nocalls.ckab")).weakly_acyclic);
    CHECK(!check_weak_acyclicity(parse(kCounter)).weakly_acyclic);

    // Calls over constants only create no special edge out of a position.
    CkabSpec constant_call = parse(R"(dimensions
  M = any(a)
concepts
  Num
services
  seed/1
abox
  Num(n0)
actions
  action reset()
    Num(x) ~> {Num(seed(n0))}
process
  true |-> reset()
context-rules
  true |-> {}
init-context
  M:a
)");
    auto r = check_weak_acyclicity(constant_call);
    CHECK(r.weakly_acyclic);
    CHECK(r.cycle.empty());
}

TEST_CASE("simulation") {
    CkabSpec s = load("retail.ckab");
    TableBackend table({{ServiceCall{"newTTD", {"w1", "d1"}}, "d2"}});
    auto zero = simulate(s, 0, table);
    CHECK(zero.steps.empty());
    CHECK(format_trace(zero).rfind("step 0: context PP:N, S:PS\n", 0) == 0);
    auto t = simulate(s, 3, table);
    REQUIRE(t.steps.size() == 3);
    CHECK(t.steps[0].action == "deliver(o1)");
    HashBackend h(3, {"v1", "v2"});
    CHECK(format_trace(simulate(s, 6, h)) == format_trace(simulate(s, 6, h)));
}
