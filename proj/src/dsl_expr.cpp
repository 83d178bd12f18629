#include "dsl_expr.hpp"

#include <algorithm>

namespace ckab::dsl {

namespace {

constexpr int kMaxDepth = 200;

bool is_keyword(const std::string& w) {
    static const std::set<std::string> words{"true", "false", "exists", "forall", "mu", "nu", "ecq", "ctx"};
    return words.count(w) > 0;
}

} // namespace

ExprParser::DepthGuard::DepthGuard(ExprParser& parser) : p(parser) {
    if (++p.depth_ > kMaxDepth) {
        --p.depth_;
        p.fail("expression nested too deeply");
    }
}

const Token& ExprParser::peek(size_t k) const {
    size_t i = pos_ + k;
    if (i >= end_)
        i = end_ - 1;
    // The last token of a range is always End or Newline; anything past the
    // range reads as that terminator.
    return toks_[std::min(i, toks_.size() - 1)];
}

const Token& ExprParser::next() {
    const Token& t = peek();
    if (pos_ < end_)
        ++pos_;
    return t;
}

bool ExprParser::accept(Tok k) {
    if (!at(k))
        return false;
    next();
    return true;
}

bool ExprParser::accept_word(const char* w) {
    if (!at_word(w))
        return false;
    next();
    return true;
}

const Token& ExprParser::expect(Tok k, const char* what) {
    if (!at(k)) {
        const Token& t = peek();
        std::string found = t.kind == Tok::Ident || t.kind == Tok::Int ? "'" + t.text + "'" : describe(t.kind);
        fail(std::string("expected ") + what + ", found " + found);
    }
    return next();
}

std::string ExprParser::expect_ident(const char* what) { return expect(Tok::Ident, what).text; }

void ExprParser::fail_at(SourcePos p, const std::string& msg) const { throw SyntaxError{{Severity::Error, msg, p}}; }

void ExprParser::skip_line() {
    while (!at_end() && !at(Tok::Newline))
        next();
    accept(Tok::Newline);
}

bool ExprParser::in_scope(const std::string& v) const {
    return std::find(scope_.begin(), scope_.end(), v) != scope_.end();
}

// ---------------------------------------------------------------------------
// Context expressions

ContextExpr ExprParser::context_expr() { return ctx_implication(); }

ContextExpr ExprParser::ctx_implication() {
    DepthGuard g(*this);
    ContextExpr lhs = ctx_disjunction();
    if (accept(Tok::Arrow))
        return ContextExpr::implies(std::move(lhs), ctx_implication());
    return lhs;
}

ContextExpr ExprParser::ctx_disjunction() {
    ContextExpr e = ctx_conjunction();
    while (accept(Tok::Pipe))
        e = ContextExpr::disj(std::move(e), ctx_conjunction());
    return e;
}

ContextExpr ExprParser::ctx_conjunction() {
    ContextExpr e = ctx_unary();
    while (accept(Tok::Amp))
        e = ContextExpr::conj(std::move(e), ctx_unary());
    return e;
}

ContextExpr ExprParser::ctx_unary() {
    DepthGuard g(*this);
    if (accept(Tok::Bang))
        return ContextExpr::negate(ctx_unary());
    if (accept(Tok::LParen)) {
        ContextExpr e = ctx_implication();
        expect(Tok::RParen, "')'");
        return e;
    }
    if (accept_word("true"))
        return ContextExpr::top();
    if (accept_word("false"))
        return ContextExpr::bottom();
    return context_atom();
}

ContextExpr ExprParser::context_atom() {
    SourcePos p = peek().pos;
    std::string d = expect_ident("context atom 'dimension:value'");
    expect(Tok::Colon, "':' in context atom");
    std::string v = expect_ident("dimension value");
    const DimensionDomain* dom = voc_.dims ? voc_.dims->find(d) : nullptr;
    if (!dom)
        error(p, "undeclared dimension '" + d + "'");
    else if (!dom->contains(v))
        error(p, "value '" + v + "' is not in the domain of dimension '" + d + "'");
    return ContextExpr::atom(std::move(d), std::move(v));
}

// ---------------------------------------------------------------------------
// Queries

Term ExprParser::term() {
    SourcePos p = peek().pos;
    std::string name = expect_ident("term");
    if (name == kMarkerConstant)
        error(p, std::string("'") + kMarkerConstant + "' is a reserved name");
    if (voc_.constants.count(name))
        return Term::constant(std::move(name));
    if (tracking_ && !in_scope(name))
        error(p, "free individual variable '" + name + "'");
    return Term::var(std::move(name));
}

QueryAtom ExprParser::atom() {
    SourcePos p = peek().pos;
    QueryAtom a;
    a.predicate = expect_ident("predicate");
    expect(Tok::LParen, "'('");
    if (!at(Tok::RParen)) {
        a.args.push_back(term());
        while (accept(Tok::Comma))
            a.args.push_back(term());
    }
    expect(Tok::RParen, "')'");
    if (a.predicate == kMarkerConcept) {
        error(p, std::string("'") + kMarkerConcept + "' is a reserved name");
    } else if (auto it = voc_.predicates.find(a.predicate); it == voc_.predicates.end()) {
        error(p, "undeclared predicate '" + a.predicate + "'");
    } else if (static_cast<int>(a.args.size()) != it->second) {
        error(p, "predicate '" + a.predicate + "' expects " + std::to_string(it->second) + " argument" +
                     (it->second == 1 ? "" : "s") + ", got " + std::to_string(a.args.size()));
    }
    return a;
}

UCQ single_atom_ucq(QueryAtom a) { return conjunction_ucq({std::move(a)}); }

UCQ conjunction_ucq(std::vector<QueryAtom> atoms) {
    std::set<std::string> vars;
    for (const auto& a : atoms)
        for (const auto& t : a.args)
            if (t.is_var())
                vars.insert(t.name);
    return UCQ::from_atoms({vars.begin(), vars.end()}, std::move(atoms));
}

UCQ ExprParser::bracket_ucq() {
    SourcePos start = peek().pos;
    UCQ q;
    std::optional<std::set<std::string>> shared_free;
    do {
        std::vector<std::string> existential;
        if (accept_word("exists")) {
            existential.push_back(bound_variable());
            while (accept(Tok::Comma))
                existential.push_back(bound_variable());
            expect(Tok::Dot, "'.' after quantified variables");
        }
        for (const auto& v : existential)
            push_var(v);
        std::vector<QueryAtom> atoms;
        if (accept_word("true")) {
            // empty conjunction
        } else {
            atoms.push_back(atom());
            while (accept(Tok::Amp))
                atoms.push_back(atom());
        }
        for (size_t i = 0; i < existential.size(); ++i)
            pop_var();
        std::set<std::string> free;
        for (const auto& a : atoms)
            for (const auto& t : a.args)
                if (t.is_var() && std::find(existential.begin(), existential.end(), t.name) == existential.end())
                    free.insert(t.name);
        if (shared_free && *shared_free != free)
            error(start, "disjuncts of a UCQ must have the same free variables");
        if (!shared_free)
            shared_free = free;
        ConjunctiveQuery cq;
        for (const auto& v : free)
            cq.head.push_back(Term::var(v));
        cq.atoms = std::move(atoms);
        q.disjuncts.push_back(std::move(cq));
    } while (accept(Tok::Pipe));
    expect(Tok::RBracket, "']' closing the UCQ");
    q.free_vars.assign(shared_free->begin(), shared_free->end());
    // Later disjuncts with a mismatching variable set were reported; keep
    // the heads aligned with the first disjunct's variables.
    for (auto& cq : q.disjuncts) {
        cq.head.clear();
        for (const auto& v : q.free_vars)
            cq.head.push_back(Term::var(v));
    }
    return q;
}

std::string ExprParser::bound_variable() {
    SourcePos p = peek().pos;
    std::string v = expect_ident("variable");
    if (voc_.constants.count(v))
        error(p, "variable '" + v + "' has the name of a declared constant");
    if (is_keyword(v))
        error(p, "'" + v + "' is a keyword");
    return v;
}

Ecq ExprParser::ecq() { return ecq_implication(); }

Ecq ExprParser::ecq_implication() {
    DepthGuard g(*this);
    if (at_word("exists") || at_word("forall")) {
        bool ex = next().text == "exists";
        std::string v = bound_variable();
        expect(Tok::Dot, "'.' after quantified variable");
        push_var(v);
        Ecq body = ecq_implication();
        pop_var();
        return ex ? Ecq::exists(std::move(v), std::move(body)) : Ecq::forall(std::move(v), std::move(body));
    }
    Ecq lhs = ecq_disjunction();
    if (accept(Tok::Arrow)) {
        Ecq e;
        e.kind = Ecq::Kind::Implies;
        e.args = {std::move(lhs), ecq_implication()};
        return e;
    }
    return lhs;
}

Ecq ExprParser::ecq_disjunction() {
    Ecq e = ecq_conjunction();
    while (accept(Tok::Pipe))
        e = Ecq::disj(std::move(e), ecq_conjunction());
    return e;
}

Ecq ExprParser::ecq_conjunction() {
    Ecq e = ecq_unary();
    while (accept(Tok::Amp))
        e = Ecq::conj(std::move(e), ecq_unary());
    return e;
}

Ecq ExprParser::ecq_unary() {
    DepthGuard g(*this);
    if (accept(Tok::Bang))
        return Ecq::negate(ecq_unary());
    if (at_word("exists") || at_word("forall"))
        return ecq_implication();
    if (accept(Tok::LParen)) {
        Ecq e = ecq_implication();
        expect(Tok::RParen, "')'");
        return e;
    }
    if (accept(Tok::LBracket))
        return Ecq::atom(bracket_ucq());
    if (accept_word("true"))
        return Ecq::top();
    if (accept_word("false")) {
        Ecq e;
        e.kind = Ecq::Kind::False;
        return e;
    }
    if (at_context_atom())
        fail("context atoms are not allowed in a query");
    if (!at_atom())
        fail(std::string("expected query, found ") +
             (at(Tok::Ident) ? "'" + peek().text + "'" : describe(peek().kind)));
    return Ecq::atom(single_atom_ucq(atom()));
}

} // namespace ckab::dsl
