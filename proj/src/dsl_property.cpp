#include "ckab/dsl.hpp"

#include "dsl_expr.hpp"
#include "dsl_lexer.hpp"

#include <algorithm>

namespace ckab {

using dsl::ExprParser;
using dsl::SyntaxError;
using dsl::Tok;
using dsl::Token;

namespace {

using K = MuFormula::Kind;

bool occurs_negatively(const MuFormula& f, const std::string& z, bool negated) {
    switch (f.kind) {
    case K::Var: return f.name == z && negated;
    case K::Not: return occurs_negatively(f.args[0], z, !negated);
    case K::Implies:
        return occurs_negatively(f.args[0], z, !negated) || occurs_negatively(f.args[1], z, negated);
    case K::Mu:
    case K::Nu:
        if (f.name == z)
            return false;
        return occurs_negatively(f.args[0], z, negated);
    default:
        for (const auto& a : f.args)
            if (occurs_negatively(a, z, negated))
                return true;
        return false;
    }
}

class PropertyParser {
public:
    PropertyParser(const std::vector<Token>& toks, size_t begin, size_t end, const dsl::Vocabulary& voc,
                   std::vector<Diagnostic>& diags)
        : p_(toks, begin, end, voc, diags) {
        p_.track_scope(true);
    }

    MuFormula formula() {
        ExprParser::DepthGuard g(p_);
        SourcePos pos = p_.peek().pos;
        if (p_.at_word("mu") || p_.at_word("nu")) {
            K k = p_.next().text == "mu" ? K::Mu : K::Nu;
            std::string z = p_.expect_ident("fixpoint variable");
            p_.expect(Tok::Dot, "'.' after fixpoint variable");
            fix_scope_.push_back(z);
            MuFormula body = formula();
            fix_scope_.pop_back();
            if (occurs_negatively(body, z, false))
                p_.error(pos, "fixpoint body is not monotone in '" + z + "'");
            return MuFormula::binder(k, std::move(z), std::move(body));
        }
        if (p_.at_word("exists") || p_.at_word("forall")) {
            K k = p_.next().text == "exists" ? K::Exists : K::Forall;
            SourcePos vpos = p_.peek().pos;
            std::string x = p_.expect_ident("variable");
            if (p_.vocabulary().constants.count(x))
                p_.error(vpos, "variable '" + x + "' has the name of a declared constant");
            p_.expect(Tok::Dot, "'.' after quantified variable");
            p_.push_var(x);
            MuFormula body = formula();
            p_.pop_var();
            return MuFormula::binder(k, std::move(x), std::move(body));
        }
        MuFormula lhs = disjunction();
        if (p_.accept(Tok::Arrow))
            return MuFormula::binary(K::Implies, std::move(lhs), formula());
        return lhs;
    }

    ExprParser& tokens() { return p_; }

private:
    MuFormula disjunction() {
        MuFormula f = conjunction();
        while (p_.accept(Tok::Pipe))
            f = MuFormula::binary(K::Or, std::move(f), conjunction());
        return f;
    }

    MuFormula conjunction() {
        MuFormula f = unary();
        while (p_.accept(Tok::Amp))
            f = MuFormula::binary(K::And, std::move(f), unary());
        return f;
    }

    MuFormula unary() {
        ExprParser::DepthGuard g(p_);
        if (p_.accept(Tok::Bang))
            return MuFormula::unary(K::Not, unary());
        if (auto m = modality())
            return MuFormula::unary(*m, unary());
        if (p_.at_word("mu") || p_.at_word("nu") || p_.at_word("exists") || p_.at_word("forall"))
            return formula();
        return primary();
    }

    std::optional<K> modality() {
        switch (p_.peek().kind) {
        case Tok::DiamDiam: p_.next(); return K::DiamDiam;
        case Tok::DiamBox: p_.next(); return K::DiamBox;
        case Tok::BoxDiam: p_.next(); return K::BoxDiam;
        case Tok::BoxBox: p_.next(); return K::BoxBox;
        case Tok::LoneDiam:
        case Tok::LoneBox: {
            SourcePos pos = p_.peek().pos;
            bool first_diamond = p_.next().kind == Tok::LoneDiam;
            if (!p_.at(Tok::LoneDiam) && !p_.at(Tok::LoneBox))
                p_.fail_at(pos, "step modalities must be used in pairs: <-><->, <->[-], [-]<->, [-][-]");
            bool second_diamond = p_.next().kind == Tok::LoneDiam;
            if (first_diamond)
                return second_diamond ? K::DiamDiam : K::DiamBox;
            return second_diamond ? K::BoxDiam : K::BoxBox;
        }
        default: return std::nullopt;
        }
    }

    MuFormula primary() {
        if (p_.accept(Tok::LParen)) {
            MuFormula f = formula();
            p_.expect(Tok::RParen, "')'");
            return f;
        }
        if (p_.accept_word("true"))
            return MuFormula::top();
        if (p_.accept_word("false"))
            return MuFormula::bottom();
        if (p_.at_word("ecq") && p_.at(Tok::LParen, 1)) {
            p_.next();
            p_.next();
            Ecq q = p_.ecq();
            p_.expect(Tok::RParen, "')'");
            return MuFormula::local(std::move(q));
        }
        if (p_.at_word("ctx") && p_.at(Tok::LParen, 1)) {
            p_.next();
            p_.next();
            ContextExpr c = p_.context_expr();
            p_.expect(Tok::RParen, "')'");
            return MuFormula::local(std::move(c));
        }
        if (p_.accept(Tok::LBracket))
            return MuFormula::local(Ecq::atom(p_.bracket_ucq()));
        if (p_.at_context_atom())
            return MuFormula::local(p_.context_atom());
        if (p_.at_atom())
            return MuFormula::local(Ecq::atom(dsl::single_atom_ucq(p_.atom())));
        if (p_.at(Tok::Ident)) {
            SourcePos pos = p_.peek().pos;
            std::string z = p_.next().text;
            if (std::find(fix_scope_.begin(), fix_scope_.end(), z) == fix_scope_.end())
                p_.error(pos, "unbound fixpoint variable '" + z + "'");
            return MuFormula::var(std::move(z));
        }
        if (p_.at(Tok::Invalid))
            p_.fail("invalid token");
        p_.fail(std::string("expected formula, found ") + dsl::describe(p_.peek().kind));
    }

    ExprParser p_;
    std::vector<std::string> fix_scope_;
};

dsl::Vocabulary vocabulary_of(const CkabSpec& spec) {
    dsl::Vocabulary voc;
    voc.dims = &spec.dimensions;
    for (const auto& c : spec.concepts)
        voc.predicates[c] = 1;
    for (const auto& r : spec.roles)
        voc.predicates[r] = 2;
    voc.constants = spec.declared_constants();
    for (const auto& s : spec.services)
        voc.services[s.name] = s.arity;
    return voc;
}

} // namespace

ParseResult<std::vector<MuFormula>> parse_properties(std::string_view text, const CkabSpec& spec) {
    ParseResult<std::vector<MuFormula>> out;
    auto raw = dsl::tokenize(text, out.diagnostics);
    std::vector<Token> toks;
    for (auto& t : raw)
        if (t.kind != Tok::Newline)
            toks.push_back(std::move(t));
    auto voc = vocabulary_of(spec);
    std::vector<MuFormula> formulas;
    size_t begin = 0;
    while (begin < toks.size() && toks[begin].kind != Tok::End) {
        size_t end = begin;
        while (toks[end].kind != Tok::Semicolon && toks[end].kind != Tok::End)
            ++end;
        if (end == begin) {
            ++begin;
            continue;
        }
        // Each property is parsed over [begin, end] with the separator as
        // its terminator.
        PropertyParser pp(toks, begin, end + 1, voc, out.diagnostics);
        try {
            MuFormula f = pp.formula();
            if (!pp.tokens().at(Tok::Semicolon) && !pp.tokens().at(Tok::End))
                pp.tokens().fail(std::string("unexpected ") +
                                 (pp.tokens().at(Tok::Ident) ? "'" + pp.tokens().peek().text + "'"
                                                             : dsl::describe(pp.tokens().peek().kind)));
            formulas.push_back(std::move(f));
        } catch (const SyntaxError& e) {
            out.diagnostics.push_back(e.diag);
        }
        begin = end + 1;
    }
    if (formulas.empty() && !has_errors(out.diagnostics))
        out.diagnostics.push_back({Severity::Error, "no property found", toks.back().pos});
    std::stable_sort(out.diagnostics.begin(), out.diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.pos < b.pos; });
    if (!has_errors(out.diagnostics))
        out.value = std::move(formulas);
    return out;
}

ParseResult<MuFormula> parse_property(std::string_view text, const CkabSpec& spec) {
    auto all = parse_properties(text, spec);
    ParseResult<MuFormula> out;
    out.diagnostics = std::move(all.diagnostics);
    if (all.value) {
        if (all.value->size() == 1)
            out.value = std::move(all.value->front());
        else
            out.diagnostics.push_back({Severity::Error, "expected exactly one property", {1, 1}});
    }
    return out;
}

} // namespace ckab
