#pragma once

#include "ckab/context.hpp"
#include "ckab/engine.hpp"
#include "ckab/kb.hpp"
#include "dsl_lexer.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace ckab::dsl {

struct SyntaxError {
    Diagnostic diag;
};

/// Names an expression may refer to.
struct Vocabulary {
    const ContextSignature* dims = nullptr;
    std::map<std::string, int> predicates; // name -> arity
    std::set<std::string> constants;
    std::map<std::string, int> services;
};

/// Recursive-descent parser over a token range, shared by the spec and
/// property front ends. Syntax errors throw SyntaxError; semantic problems
/// are recorded as diagnostics and parsing continues.
class ExprParser {
public:
    ExprParser(const std::vector<Token>& toks, size_t begin, size_t end, const Vocabulary& voc,
               std::vector<Diagnostic>& diags)
        : toks_(toks), pos_(begin), end_(end), voc_(voc), diags_(diags) {}

    const Token& peek(size_t k = 0) const;
    const Token& next();
    bool at(Tok k, size_t ahead = 0) const { return peek(ahead).kind == k; }
    bool at_word(const char* w, size_t ahead = 0) const { return at(Tok::Ident, ahead) && peek(ahead).text == w; }
    bool accept(Tok k);
    bool accept_word(const char* w);
    const Token& expect(Tok k, const char* what);
    std::string expect_ident(const char* what);
    [[noreturn]] void fail(const std::string& msg) const { fail_at(peek().pos, msg); }
    [[noreturn]] void fail_at(SourcePos p, const std::string& msg) const;
    void error(SourcePos p, std::string msg) { diags_.push_back({Severity::Error, std::move(msg), p}); }
    void warning(SourcePos p, std::string msg) { diags_.push_back({Severity::Warning, std::move(msg), p}); }
    bool at_end() const { return pos_ >= end_ || peek().kind == Tok::End; }
    size_t position() const { return pos_; }
    void skip_line();

    ContextExpr context_expr();
    ContextExpr context_atom();
    Ecq ecq();
    /// Bracketed UCQ body after '['; consumes the closing ']'.
    UCQ bracket_ucq();
    QueryAtom atom();
    Term term();
    bool at_atom() const { return at(Tok::Ident) && at(Tok::LParen, 1); }
    bool at_context_atom() const { return at(Tok::Ident) && at(Tok::Colon, 1) && at(Tok::Ident, 2); }

    /// Variables bound by enclosing quantifiers. When enabled, any other
    /// variable is reported as free.
    void track_scope(bool on) { tracking_ = on; }
    void push_var(const std::string& v) { scope_.push_back(v); }
    void pop_var() { scope_.pop_back(); }
    bool in_scope(const std::string& v) const;

    struct DepthGuard {
        explicit DepthGuard(ExprParser& p);
        ~DepthGuard() { --p.depth_; }
        ExprParser& p;
    };

private:
    ContextExpr ctx_implication();
    ContextExpr ctx_disjunction();
    ContextExpr ctx_conjunction();
    ContextExpr ctx_unary();
    Ecq ecq_implication();
    Ecq ecq_disjunction();
    Ecq ecq_conjunction();
    Ecq ecq_unary();
    std::string bound_variable();

    const std::vector<Token>& toks_;
    size_t pos_;
    size_t end_;
    const Vocabulary& voc_;
    std::vector<Diagnostic>& diags_;
    bool tracking_ = false;
    std::vector<std::string> scope_;
    int depth_ = 0;

public:
    const Vocabulary& vocabulary() const { return voc_; }
};

UCQ single_atom_ucq(QueryAtom a);
/// Combines plain atoms into one CQ with every variable free.
UCQ conjunction_ucq(std::vector<QueryAtom> atoms);

} // namespace ckab::dsl
