#include "ckab/mu_formula.hpp"

#include <algorithm>

namespace ckab {

using K = MuFormula::Kind;

std::set<std::string> MuFormula::free_individuals() const {
    std::set<std::string> out;
    switch (kind) {
    case K::Query: return query.free_vars();
    case K::Exists:
    case K::Forall:
        out = args[0].free_individuals();
        out.erase(name);
        return out;
    default:
        for (const auto& a : args) {
            auto s = a.free_individuals();
            out.insert(s.begin(), s.end());
        }
        return out;
    }
}

std::set<std::string> MuFormula::free_fixpoint_vars() const {
    std::set<std::string> out;
    switch (kind) {
    case K::Var: return {name};
    case K::Mu:
    case K::Nu:
        out = args[0].free_fixpoint_vars();
        out.erase(name);
        return out;
    default:
        for (const auto& a : args) {
            auto s = a.free_fixpoint_vars();
            out.insert(s.begin(), s.end());
        }
        return out;
    }
}

namespace {

// Polarity of every free occurrence of z: bit 0 = positive, bit 1 = negative.
int polarity(const MuFormula& f, const std::string& z, bool negated) {
    switch (f.kind) {
    case K::Var: return f.name == z ? (negated ? 2 : 1) : 0;
    case K::Not: return polarity(f.args[0], z, !negated);
    case K::Implies: return polarity(f.args[0], z, !negated) | polarity(f.args[1], z, negated);
    case K::Mu:
    case K::Nu:
        return f.name == z ? 0 : polarity(f.args[0], z, negated);
    default: {
        int p = 0;
        for (const auto& a : f.args)
            p |= polarity(a, z, negated);
        return p;
    }
    }
}

} // namespace

bool MuFormula::is_monotone() const {
    if (is_fixpoint() && (polarity(args[0], name, false) & 2))
        return false;
    return std::all_of(args.begin(), args.end(), [](const MuFormula& a) { return a.is_monotone(); });
}

int MuFormula::fixpoint_depth() const {
    int d = 0;
    for (const auto& a : args)
        d = std::max(d, a.fixpoint_depth());
    return d + (is_fixpoint() ? 1 : 0);
}

MuFormula negate_var(const MuFormula& f, const std::string& z) {
    if (f.kind == K::Var)
        return f.name == z ? MuFormula::unary(K::Not, f) : f;
    if (f.is_fixpoint() && f.name == z)
        return f;
    MuFormula out = f;
    for (auto& a : out.args)
        a = negate_var(a, z);
    return out;
}

} // namespace ckab
