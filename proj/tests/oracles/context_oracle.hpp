#pragma once

// Exhaustive propositional reference for context entailment. Each dimension
// contributes one boolean atom per value; the domain theory (child implies
// parent, siblings exclude each other) is rebuilt here from the raw tree and
// every truth assignment of every dimension is tried.

#include "ckab/context.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

struct Tree {
    std::string dimension;
    std::vector<std::string> values; // values[0] is the root
    std::map<std::string, std::string> parent;
};

inline bool eval_expr(const ckab::ContextExpr& e, const std::set<std::pair<std::string, std::string>>& truth) {
    using K = ckab::ContextExpr::Kind;
    switch (e.kind) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: return truth.count({e.dimension, e.value}) > 0;
    case K::Not: return !eval_expr(e.args[0], truth);
    case K::And: return eval_expr(e.args[0], truth) && eval_expr(e.args[1], truth);
    case K::Or: return eval_expr(e.args[0], truth) || eval_expr(e.args[1], truth);
    case K::Implies: return !eval_expr(e.args[0], truth) || eval_expr(e.args[1], truth);
    }
    throw std::logic_error("bad context expression");
}

/// Subsets of one dimension's atoms that satisfy the theory and make `v` true.
inline std::vector<std::vector<std::string>> dimension_models(const Tree& t, const std::string& v) {
    const size_t n = t.values.size();
    if (n > 20)
        throw std::length_error("dimension too large for enumeration");
    std::vector<std::vector<std::string>> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        auto on = [&](const std::string& x) {
            for (size_t i = 0; i < n; ++i)
                if (t.values[i] == x)
                    return ((mask >> i) & 1u) != 0;
            return false;
        };
        if (!on(v))
            continue;
        bool ok = true;
        for (const auto& [child, par] : t.parent)
            if (on(child) && !on(par))
                ok = false;
        for (size_t i = 0; ok && i < n; ++i)
            for (size_t j = 0; ok && j < n; ++j) {
                if (i == j)
                    continue;
                auto pi = t.parent.find(t.values[i]), pj = t.parent.find(t.values[j]);
                bool siblings = pi != t.parent.end() && pj != t.parent.end() && pi->second == pj->second;
                if (siblings && on(t.values[i]) && on(t.values[j]))
                    ok = false;
            }
        if (!ok)
            continue;
        std::vector<std::string> m;
        for (size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1u)
                m.push_back(t.values[i]);
        out.push_back(std::move(m));
    }
    return out;
}

/// ctx + theory |= e, by enumerating the product of all dimensions' models.
inline bool entails(const std::vector<Tree>& dims, const std::map<std::string, std::string>& ctx,
                    const ckab::ContextExpr& e) {
    std::vector<std::vector<std::vector<std::string>>> per_dim;
    for (const auto& t : dims)
        per_dim.push_back(dimension_models(t, ctx.at(t.dimension)));
    std::vector<size_t> idx(dims.size(), 0);
    for (const auto& m : per_dim)
        if (m.empty())
            return true; // unsatisfiable premises
    while (true) {
        std::set<std::pair<std::string, std::string>> truth;
        for (size_t d = 0; d < dims.size(); ++d)
            for (const auto& v : per_dim[d][idx[d]])
                truth.insert({dims[d].dimension, v});
        if (!eval_expr(e, truth))
            return false;
        size_t d = 0;
        while (d < dims.size() && ++idx[d] == per_dim[d].size())
            idx[d++] = 0;
        if (d == dims.size())
            return true;
    }
}

/// Whether the single-dimension value `state_value` entails `d:v`.
inline bool value_entails(const Tree& t, const std::string& state_value, const std::string& v) {
    for (std::string x = state_value;;) {
        if (x == v)
            return true;
        auto it = t.parent.find(x);
        if (it == t.parent.end())
            return false;
        x = it->second;
    }
}

} // namespace oracle
