#include "ckab/statespace.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace ckab {

std::string to_string(const Position& p) { return p.predicate + "." + std::to_string(p.index); }

namespace {

using Positions = std::map<std::string, std::set<Position>>;

void collect_query_positions(const UCQ& q, Positions& out) {
    for (const auto& cq : q.disjuncts)
        for (const auto& a : cq.atoms)
            for (size_t i = 0; i < a.args.size(); ++i)
                if (a.args[i].is_var())
                    out[a.args[i].name].insert({a.predicate, static_cast<int>(i + 1)});
}

// Positive occurrences only: variables under negation carry no data.
void collect_ecq_positions(const Ecq& q, Positions& out) {
    switch (q.kind) {
    case Ecq::Kind::Query: collect_query_positions(q.query, out); break;
    case Ecq::Kind::And:
    case Ecq::Kind::Or:
        collect_ecq_positions(q.args[0], out);
        collect_ecq_positions(q.args[1], out);
        break;
    case Ecq::Kind::Exists:
    case Ecq::Kind::Implies: collect_ecq_positions(q.args.back(), out); break;
    default: break;
    }
}

bool mentions(const HeadTerm& t, const std::string& v) {
    if (t.kind == HeadTerm::Kind::Variable)
        return t.name == v;
    return std::any_of(t.args.begin(), t.args.end(), [&](const HeadTerm& a) { return mentions(a, v); });
}

} // namespace

DependencyGraph dependency_graph(const CkabSpec& spec) {
    DependencyGraph g;
    for (const auto& c : spec.concepts)
        g.nodes.insert({c, 1});
    for (const auto& r : spec.roles) {
        g.nodes.insert({r, 1});
        g.nodes.insert({r, 2});
    }
    for (const auto& a : spec.actions) {
        // Parameters not constrained by an effect query take their values
        // from the invoking rules' queries.
        Positions param_positions;
        for (const auto& rule : spec.process) {
            if (rule.action != a.name)
                continue;
            Positions rp;
            collect_ecq_positions(rule.query, rp);
            for (size_t i = 0; i < rule.vars.size() && i < a.params.size(); ++i)
                param_positions[a.params[i]].insert(rp[rule.vars[i]].begin(), rp[rule.vars[i]].end());
        }
        for (const auto& e : a.effects) {
            Positions body;
            collect_query_positions(e.qplus, body);
            for (const auto& p : a.params)
                if (!body.count(p) && param_positions.count(p))
                    body[p] = param_positions[p];
            for (const auto& h : e.head) {
                for (size_t i = 0; i < h.args.size(); ++i) {
                    Position target{h.predicate, static_cast<int>(i + 1)};
                    const HeadTerm& t = h.args[i];
                    for (const auto& [var, sources] : body) {
                        bool direct = t.kind == HeadTerm::Kind::Variable && t.name == var;
                        bool via_call = t.kind == HeadTerm::Kind::Call && mentions(t, var);
                        if (!direct && !via_call)
                            continue;
                        for (const auto& src : sources)
                            g.edges.insert({src, target, via_call});
                    }
                }
            }
        }
    }
    return g;
}

WeakAcyclicityReport check_weak_acyclicity(const CkabSpec& spec) {
    WeakAcyclicityReport rep;
    rep.graph = dependency_graph(spec);
    std::map<Position, std::vector<Position>> adj;
    for (const auto& e : rep.graph.edges)
        adj[e.from].push_back(e.to);

    // Shortest path from `from` to `to`, inclusive.
    auto path = [&](const Position& from, const Position& to) -> std::optional<std::vector<Position>> {
        std::map<Position, Position> prev;
        std::deque<Position> queue{from};
        std::set<Position> seen{from};
        while (!queue.empty()) {
            Position cur = queue.front();
            queue.pop_front();
            if (cur == to) {
                std::vector<Position> out{cur};
                while (!(out.back() == from))
                    out.push_back(prev.at(out.back()));
                std::reverse(out.begin(), out.end());
                return out;
            }
            for (const auto& n : adj[cur])
                if (seen.insert(n).second) {
                    prev.emplace(n, cur);
                    queue.push_back(n);
                }
        }
        return std::nullopt;
    };

    for (const auto& e : rep.graph.edges) {
        if (!e.special)
            continue;
        if (auto back = path(e.to, e.from)) {
            rep.weakly_acyclic = false;
            rep.cycle.push_back(e.from);
            rep.cycle.insert(rep.cycle.end(), back->begin(), back->end());
            return rep;
        }
    }
    return rep;
}

} // namespace ckab
