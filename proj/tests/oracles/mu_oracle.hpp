#pragma once

// Reference semantics of mu-calculus formulas over a finite Kripke
// structure. Fixpoints of small structures are taken from the lattice
// directly: the least fixpoint is the intersection of all pre-fixpoints and
// the greatest the union of all post-fixpoints. Larger structures fall back
// to plain Kleene iteration. Local formulas are decided by a callback.

#include "ckab/mu_formula.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using Set = std::vector<bool>;

struct Kripke {
    size_t size = 0;
    std::vector<std::vector<size_t>> succ;
    std::vector<std::set<std::string>> domain; // quantification domain per state
    /// Truth of a Query or Context leaf at a state under an individual valuation.
    std::function<bool(size_t, const ckab::MuFormula&, const std::map<std::string, std::string>&)> local;
};

class MuOracle {
public:
    explicit MuOracle(const Kripke& k, size_t lattice_limit = 12) : k_(k), lattice_limit_(lattice_limit) {
        for (const auto& d : k.domain)
            all_.insert(d.begin(), d.end());
    }

    Set extension(const ckab::MuFormula& f, const std::map<std::string, std::string>& v = {},
                  const std::map<std::string, Set>& V = {}) const {
        using K = ckab::MuFormula::Kind;
        const size_t n = k_.size;
        Set out(n, false);
        switch (f.kind) {
        case K::True: return Set(n, true);
        case K::False: return out;
        case K::Query:
        case K::Context:
            for (size_t s = 0; s < n; ++s)
                out[s] = k_.local(s, f, v);
            return out;
        case K::Not: {
            Set a = extension(f.args[0], v, V);
            for (size_t s = 0; s < n; ++s)
                out[s] = !a[s];
            return out;
        }
        case K::And:
        case K::Or:
        case K::Implies: {
            Set a = extension(f.args[0], v, V), b = extension(f.args[1], v, V);
            for (size_t s = 0; s < n; ++s)
                out[s] = f.kind == K::And ? a[s] && b[s] : f.kind == K::Or ? a[s] || b[s] : !a[s] || b[s];
            return out;
        }
        case K::Exists:
        case K::Forall: {
            bool ex = f.kind == K::Exists;
            std::map<std::string, Set> per_value;
            for (const auto& d : all_) {
                auto w = v;
                w[f.name] = d;
                per_value[d] = extension(f.args[0], w, V);
            }
            for (size_t s = 0; s < n; ++s) {
                bool r = !ex;
                for (const auto& d : k_.domain[s])
                    if (per_value[d][s] == ex)
                        r = ex;
                out[s] = r;
            }
            return out;
        }
        case K::DiamDiam:
        case K::DiamBox:
        case K::BoxDiam:
        case K::BoxBox: {
            bool first_ex = f.kind == K::DiamDiam || f.kind == K::DiamBox;
            bool second_ex = f.kind == K::DiamDiam || f.kind == K::BoxDiam;
            Set body = extension(f.args[0], v, V);
            for (size_t s = 0; s < n; ++s) {
                bool r = !first_ex;
                for (size_t m : k_.succ[s]) {
                    bool inner = !second_ex;
                    for (size_t t : k_.succ[m])
                        if (body[t] == second_ex)
                            inner = second_ex;
                    if (inner == first_ex)
                        r = first_ex;
                }
                out[s] = r;
            }
            return out;
        }
        case K::Var: return V.at(f.name);
        case K::Mu:
        case K::Nu: return n <= lattice_limit_ ? lattice_fixpoint(f, v, V) : kleene_fixpoint(f, v, V);
        }
        throw std::logic_error("bad formula");
    }

private:
    Set lattice_fixpoint(const ckab::MuFormula& f, const std::map<std::string, std::string>& v,
                         std::map<std::string, Set> V) const {
        const size_t n = k_.size;
        bool least = f.kind == ckab::MuFormula::Kind::Mu;
        Set acc(n, least);
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            Set x(n);
            for (size_t s = 0; s < n; ++s)
                x[s] = (mask >> s) & 1u;
            V[f.name] = x;
            Set fx = extension(f.args[0], v, V);
            bool pre = true, post = true;
            for (size_t s = 0; s < n; ++s) {
                if (fx[s] && !x[s])
                    pre = false;
                if (x[s] && !fx[s])
                    post = false;
            }
            for (size_t s = 0; s < n; ++s) {
                if (least && pre)
                    acc[s] = acc[s] && x[s];
                if (!least && post)
                    acc[s] = acc[s] || x[s];
            }
        }
        return acc;
    }

    Set kleene_fixpoint(const ckab::MuFormula& f, const std::map<std::string, std::string>& v,
                        std::map<std::string, Set> V) const {
        Set x(k_.size, f.kind == ckab::MuFormula::Kind::Nu);
        while (true) {
            V[f.name] = x;
            Set nx = extension(f.args[0], v, V);
            if (nx == x)
                return x;
            x = std::move(nx);
        }
    }

    const Kripke& k_;
    size_t lattice_limit_;
    std::set<std::string> all_;
};

} // namespace oracle
