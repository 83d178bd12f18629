#include "ckab/statespace.hpp"

#include "json.hpp"

#include <sstream>

namespace ckab {

using nlohmann::ordered_json;

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

ordered_json state_json(const TransitionSystem& ts, size_t i) {
    const SystemState& s = ts.state(i);
    ordered_json j;
    j["index"] = i;
    j["id"] = ts.id(i);
    j["phase"] = to_string(s.phase);
    ordered_json ctx = ordered_json::object();
    for (const auto& [d, v] : s.ctx.assignments)
        ctx[d] = v;
    j["context"] = ctx;
    ordered_json facts = ordered_json::array();
    for (const auto& f : s.abox.facts()) {
        ordered_json fact = ordered_json::array();
        fact.push_back(f.predicate);
        for (const auto& a : f.args)
            fact.push_back(a);
        facts.push_back(fact);
    }
    j["abox"] = facts;
    ordered_json calls = ordered_json::array();
    for (const auto& [c, v] : s.scmap)
        calls.push_back({{"function", c.function}, {"args", c.args}, {"value", v}});
    j["scmap"] = calls;
    return j;
}

} // namespace

std::string export_dot(const TransitionSystem& ts) {
    std::ostringstream out;
    out << "digraph ckab {\n  node [shape=box];\n";
    for (size_t i = 0; i < ts.size(); ++i) {
        const SystemState& s = ts.state(i);
        out << "  s" << i << " [label=\"s" << i << "\\n" << dot_escape(to_string(s.ctx)) << "\\n|A|="
            << s.abox.size() << "\"";
        if (s.phase == Phase::Intermediate)
            out << ", style=dashed";
        if (i == ts.initial())
            out << ", penwidth=2";
        out << "];\n";
    }
    for (const auto& e : ts.edges())
        out << "  s" << e.from << " -> s" << e.to << " [label=\"" << dot_escape(e.label) << "\"];\n";
    out << "}\n";
    return out.str();
}

std::string export_json(const TransitionSystem& ts, int indent) {
    ordered_json j;
    j["spec_digest"] = ts.spec_digest;
    j["initial"] = ts.initial();
    j["complete"] = ts.complete;
    if (!ts.complete)
        j["incomplete_reason"] = ts.incomplete_reason;
    j["k"] = ts.k;
    j["value_domain"] = ts.value_domain;
    ordered_json states = ordered_json::array();
    for (size_t i = 0; i < ts.size(); ++i)
        states.push_back(state_json(ts, i));
    j["states"] = states;
    ordered_json edges = ordered_json::array();
    for (const auto& e : ts.edges())
        edges.push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
    j["transitions"] = edges;
    return j.dump(indent) + "\n";
}

TransitionSystem load_json(const std::string& text, std::shared_ptr<const KbProjector> kb) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("invalid transition-system JSON: ") + e.what());
    }
    TransitionSystem ts(std::move(kb));
    try {
        ts.spec_digest = j.at("spec_digest").get<std::string>();
        ts.complete = j.at("complete").get<bool>();
        if (j.contains("incomplete_reason"))
            ts.incomplete_reason = j.at("incomplete_reason").get<std::string>();
        ts.k = j.at("k").get<int>();
        ts.value_domain = j.at("value_domain").get<std::vector<std::string>>();
        if (j.at("initial").get<size_t>() != 0)
            throw SpecError("transition-system JSON: initial state must have index 0");
        for (const auto& sj : j.at("states")) {
            SystemState s;
            std::string phase = sj.at("phase").get<std::string>();
            if (phase != "stable" && phase != "intermediate")
                throw SpecError("transition-system JSON: unknown phase '" + phase + "'");
            s.phase = phase == "stable" ? Phase::Stable : Phase::Intermediate;
            for (const auto& [d, v] : sj.at("context").items())
                s.ctx.assignments[d] = v.get<std::string>();
            for (const auto& fj : sj.at("abox")) {
                auto parts = fj.get<std::vector<std::string>>();
                if (parts.empty())
                    throw SpecError("transition-system JSON: empty fact");
                s.abox.insert({parts[0], {parts.begin() + 1, parts.end()}});
            }
            for (const auto& cj : sj.at("scmap"))
                s.scmap[{cj.at("function").get<std::string>(), cj.at("args").get<std::vector<std::string>>()}] =
                    cj.at("value").get<std::string>();
            auto [idx, fresh] = ts.add_state(std::move(s));
            if (!fresh || idx != sj.at("index").get<size_t>() || ts.id(idx) != sj.at("id").get<std::string>())
                throw SpecError("transition-system JSON: state " + std::to_string(idx) + " does not match its id");
        }
        for (const auto& ej : j.at("transitions")) {
            size_t from = ej.at("from").get<size_t>(), to = ej.at("to").get<size_t>();
            if (from >= ts.size() || to >= ts.size())
                throw SpecError("transition-system JSON: transition refers to a missing state");
            ts.add_edge(from, to, ej.at("label").get<std::string>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw SpecError(std::string("malformed transition-system JSON: ") + e.what());
    }
    return ts;
}

} // namespace ckab
