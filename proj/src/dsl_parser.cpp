#include "ckab/dsl.hpp"

#include "dsl_expr.hpp"
#include "dsl_lexer.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

namespace ckab {

using dsl::ExprParser;
using dsl::SyntaxError;
using dsl::Tok;
using dsl::Token;

namespace {

constexpr std::array<const char*, 11> kSections{"dimensions", "concepts", "roles",   "services",      "constants",
                                                "abox",       "tbox",     "actions", "process",       "context-rules",
                                                "init-context"};

bool is_section(const std::string& w) {
    return std::find_if(kSections.begin(), kSections.end(), [&](const char* s) { return w == s; }) != kSections.end();
}

struct Section {
    SourcePos pos;
    size_t begin = 0; // first token after the keyword
    size_t end = 0;   // one past the last token (a Newline or End)
};

struct RawSide {
    bool exists = false;
    std::string name;
    bool inverse = false;
    SourcePos pos;
};

struct RawTBoxLine {
    bool funct = false;
    RawSide lhs, rhs;
    bool negative = false;
    ContextExpr guard;
    SourcePos pos;
};

class SpecParser {
public:
    explicit SpecParser(std::string_view text) { toks_ = dsl::tokenize(text, diags_); }

    ParseResult<CkabSpec> run();

private:
    ExprParser section_parser(const Section& s) { return ExprParser(toks_, s.begin, s.end, voc_, diags_); }
    void error(SourcePos p, std::string msg) { diags_.push_back({Severity::Error, std::move(msg), p}); }
    void warning(SourcePos p, std::string msg) { diags_.push_back({Severity::Warning, std::move(msg), p}); }

    // Runs `item` once per logical line of the section, recovering from
    // syntax errors at line granularity.
    template <typename Fn> void for_each_line(const Section& s, Fn&& item) {
        ExprParser p = section_parser(s);
        while (!p.at_end()) {
            if (p.accept(Tok::Newline))
                continue;
            try {
                item(p);
                if (!p.at_end() && !p.at(Tok::Newline))
                    p.fail(std::string("unexpected ") +
                           (p.at(Tok::Ident) ? "'" + p.peek().text + "'" : dsl::describe(p.peek().kind)));
            } catch (const SyntaxError& e) {
                diags_.push_back(e.diag);
                p.skip_line();
            }
        }
    }

    void split_sections();
    void check_name(SourcePos p, const std::string& n);
    void parse_dimensions(const Section& s);
    std::vector<std::pair<std::string, SourcePos>> name_list(const Section& s);
    void parse_services(const Section& s);
    void parse_abox(const Section& s);
    void parse_tbox(const Section& s);
    void resolve_vocabulary();
    void parse_init_context(const Section* s);
    void parse_actions(const Section& s);
    void parse_effect(ExprParser& p, ActionSpec& action);
    HeadTerm head_term(ExprParser& p, const std::set<std::string>& vars, int depth);
    void parse_process(const Section& s);
    void parse_context_rules(const Section& s);
    void final_checks();

    std::vector<Token> toks_;
    std::vector<Diagnostic> diags_;
    std::map<std::string, Section> sections_;
    dsl::Vocabulary voc_;
    CkabSpec spec_;

    std::set<std::string> declared_concepts_, declared_roles_;
    std::map<std::string, SourcePos> abox_unary_, abox_binary_;
    std::vector<RawTBoxLine> raw_tbox_;
    std::set<std::string> adom0_;
    std::vector<std::pair<std::string, SourcePos>> process_actions_;
};

void SpecParser::split_sections() {
    bool line_start = true;
    Section* open = nullptr;
    bool complained = false;
    for (size_t i = 0; i < toks_.size(); ++i) {
        const Token& t = toks_[i];
        if (t.kind == Tok::Newline) {
            line_start = true;
            continue;
        }
        if (line_start && t.kind == Tok::Ident && is_section(t.text)) {
            if (open)
                open->end = i;
            if (sections_.count(t.text)) {
                error(t.pos, "duplicate " + t.text + " section");
                open = nullptr;
                complained = true;
            } else {
                open = &sections_[t.text];
                open->pos = t.pos;
                open->begin = i + 1;
            }
            line_start = false;
            continue;
        }
        line_start = false;
        if (t.kind == Tok::End)
            break;
        if (!open && !complained) {
            error(t.pos, "expected a section keyword");
            complained = true;
        }
    }
    if (open)
        open->end = toks_.size();
}

void SpecParser::check_name(SourcePos p, const std::string& n) {
    if (n == kMarkerConcept || n == kMarkerConstant)
        error(p, "'" + n + "' is a reserved name");
}

void SpecParser::parse_dimensions(const Section& s) {
    std::vector<DimensionDomain> dims;
    for_each_line(s, [&](ExprParser& p) {
        SourcePos pos = p.peek().pos;
        std::string name = p.expect_ident("dimension name");
        p.expect(Tok::Equals, "'=' after dimension name");
        std::vector<std::pair<std::string, std::string>> edges;
        std::string root = p.expect_ident("root value");
        std::function<void(const std::string&)> children = [&](const std::string& parent) {
            ExprParser::DepthGuard g(p);
            if (!p.accept(Tok::LParen))
                return;
            do {
                std::string v = p.expect_ident("dimension value");
                edges.emplace_back(v, parent);
                children(v);
            } while (p.accept(Tok::Comma));
            p.expect(Tok::RParen, "')' closing child values");
        };
        children(root);
        if (std::any_of(dims.begin(), dims.end(), [&](const DimensionDomain& d) { return d.name() == name; })) {
            error(pos, "dimension '" + name + "' declared more than once");
            return;
        }
        try {
            dims.push_back(DimensionDomain::create(name, root, edges));
        } catch (const SpecError& e) {
            error(pos, e.what());
        }
    });
    spec_.dimensions = ContextSignature(std::move(dims));
}

std::vector<std::pair<std::string, SourcePos>> SpecParser::name_list(const Section& s) {
    std::vector<std::pair<std::string, SourcePos>> out;
    for_each_line(s, [&](ExprParser& p) {
        do {
            SourcePos pos = p.peek().pos;
            std::string n = p.expect_ident("name");
            check_name(pos, n);
            if (std::any_of(out.begin(), out.end(), [&](const auto& e) { return e.first == n; }))
                error(pos, "'" + n + "' declared more than once");
            else
                out.emplace_back(n, pos);
        } while (p.accept(Tok::Comma));
    });
    return out;
}

void SpecParser::parse_services(const Section& s) {
    for_each_line(s, [&](ExprParser& p) {
        do {
            SourcePos pos = p.peek().pos;
            std::string n = p.expect_ident("service name");
            p.expect(Tok::Slash, "'/' and arity after service name");
            const Token& a = p.expect(Tok::Int, "service arity");
            int arity = 0;
            try {
                arity = std::stoi(a.text);
            } catch (const std::exception&) {
                error(a.pos, "service arity out of range");
            }
            check_name(pos, n);
            if (arity < 1)
                error(a.pos, "service '" + n + "' must take at least one argument");
            if (voc_.services.count(n))
                error(pos, "service '" + n + "' declared more than once");
            else {
                voc_.services[n] = arity;
                spec_.services.push_back({n, arity});
            }
        } while (p.accept(Tok::Comma));
    });
}

void SpecParser::parse_abox(const Section& s) {
    for_each_line(s, [&](ExprParser& p) {
        do {
            SourcePos pos = p.peek().pos;
            Fact f;
            f.predicate = p.expect_ident("fact");
            p.expect(Tok::LParen, "'('");
            if (!p.at(Tok::RParen)) {
                do {
                    SourcePos ap = p.peek().pos;
                    f.args.push_back(p.expect_ident("constant"));
                    check_name(ap, f.args.back());
                } while (p.accept(Tok::Comma));
            }
            p.expect(Tok::RParen, "')'");
            check_name(pos, f.predicate);
            if (f.args.size() == 1)
                abox_unary_.emplace(f.predicate, pos);
            else if (f.args.size() == 2)
                abox_binary_.emplace(f.predicate, pos);
            else {
                error(pos, "fact '" + f.predicate + "' must have one or two arguments");
                return;
            }
            for (const auto& c : f.args)
                adom0_.insert(c);
            spec_.initial_abox.insert(std::move(f));
        } while (p.accept(Tok::Comma));
    });
}

void SpecParser::parse_tbox(const Section& s) {
    auto side = [](ExprParser& p) {
        RawSide r;
        r.pos = p.peek().pos;
        r.exists = p.accept_word("exists");
        r.name = p.expect_ident(r.exists ? "role name" : "concept or role name");
        r.inverse = p.accept(Tok::Inverse);
        return r;
    };
    for_each_line(s, [&](ExprParser& p) {
        RawTBoxLine line;
        line.pos = p.peek().pos;
        if (p.accept_word("funct")) {
            line.funct = true;
            line.lhs = side(p);
            if (line.lhs.exists)
                p.fail_at(line.lhs.pos, "funct expects a role");
        } else {
            line.lhs = side(p);
            p.expect(Tok::Subsumed, "'[='");
            line.negative = p.accept(Tok::Bang);
            line.rhs = side(p);
        }
        if (p.accept(Tok::At))
            line.guard = p.context_expr();
        raw_tbox_.push_back(std::move(line));
    });
}

void SpecParser::resolve_vocabulary() {
    std::set<std::string> roles = declared_roles_, concepts = declared_concepts_;
    std::map<std::string, SourcePos> first_use;
    auto mark_role = [&](const RawSide& r) {
        if (r.exists || r.inverse)
            roles.insert(r.name);
        first_use.emplace(r.name, r.pos);
    };
    for (const auto& l : raw_tbox_) {
        mark_role(l.lhs);
        if (l.funct)
            roles.insert(l.lhs.name);
        else
            mark_role(l.rhs);
    }
    for (const auto& [n, pos] : abox_binary_) {
        roles.insert(n);
        first_use.emplace(n, pos);
    }
    for (const auto& [n, pos] : abox_unary_) {
        concepts.insert(n);
        first_use.emplace(n, pos);
    }
    // Plain names in a TBox line are roles only when the other side is.
    for (const auto& l : raw_tbox_)
        for (const RawSide* r : {&l.lhs, &l.rhs})
            if (!l.funct || r == &l.lhs)
                if (!r->name.empty() && !roles.count(r->name))
                    concepts.insert(r->name);
    for (const auto& n : concepts)
        if (roles.count(n)) {
            auto it = first_use.find(n);
            error(it == first_use.end() ? SourcePos{1, 1} : it->second,
                  "'" + n + "' is used both as a concept and as a role");
        }
    for (const auto& n : concepts) {
        check_name(first_use.count(n) ? first_use[n] : SourcePos{1, 1}, n);
        voc_.predicates[n] = 1;
    }
    for (const auto& n : roles) {
        check_name(first_use.count(n) ? first_use[n] : SourcePos{1, 1}, n);
        voc_.predicates[n] = 2;
    }
    for (const auto& n : roles)
        if (voc_.services.count(n))
            error(first_use.count(n) ? first_use[n] : SourcePos{1, 1}, "'" + n + "' is both a role and a service");
    spec_.concepts.assign(concepts.begin(), concepts.end());
    spec_.roles.assign(roles.begin(), roles.end());

    auto is_role = [&](const RawSide& r) { return voc_.predicates.count(r.name) && voc_.predicates[r.name] == 2; };
    for (const auto& l : raw_tbox_) {
        TBoxAssertion t;
        if (l.funct) {
            t = TBoxAssertion::functionality({l.lhs.name, l.lhs.inverse});
        } else if (!l.lhs.exists && !l.rhs.exists && is_role(l.lhs) && is_role(l.rhs)) {
            t = TBoxAssertion::role_inclusion({l.lhs.name, l.lhs.inverse}, {l.rhs.name, l.rhs.inverse}, l.negative);
        } else {
            bool bad = false;
            for (const RawSide* r : {&l.lhs, &l.rhs})
                if (!r->exists && is_role(*r)) {
                    error(r->pos, "role '" + r->name + "' used where a concept is expected");
                    bad = true;
                }
            if (bad)
                continue;
            auto basic = [](const RawSide& r) {
                return r.exists ? BasicConcept::exists({r.name, r.inverse}) : BasicConcept::atomic(r.name);
            };
            t = TBoxAssertion::concept_inclusion(basic(l.lhs), basic(l.rhs), l.negative);
        }
        spec_.ctbox.assertions.push_back({std::move(t), l.guard});
    }
}

void SpecParser::parse_init_context(const Section* s) {
    if (!s) {
        if (!spec_.dimensions.empty())
            error({1, 1}, "missing init-context section");
        return;
    }
    for_each_line(*s, [&](ExprParser& p) {
        do {
            SourcePos pos = p.peek().pos;
            ContextExpr a = p.context_atom();
            if (spec_.initial_context.assignments.count(a.dimension))
                error(pos, "dimension '" + a.dimension + "' assigned more than once in the initial context");
            else
                spec_.initial_context.assignments[a.dimension] = a.value;
        } while (p.accept(Tok::Comma));
    });
    for (const auto& d : spec_.dimensions.dimensions())
        if (!spec_.initial_context.assignments.count(d.name()))
            error(s->pos, "initial context does not assign dimension '" + d.name() + "'");
}

HeadTerm SpecParser::head_term(ExprParser& p, const std::set<std::string>& vars, int depth) {
    ExprParser::DepthGuard g(p);
    SourcePos pos = p.peek().pos;
    std::string name = p.expect_ident("head term");
    if (p.accept(Tok::LParen)) {
        std::vector<HeadTerm> args;
        if (!p.at(Tok::RParen)) {
            do
                args.push_back(head_term(p, vars, depth + 1));
            while (p.accept(Tok::Comma));
        }
        p.expect(Tok::RParen, "')'");
        auto it = voc_.services.find(name);
        if (it == voc_.services.end())
            error(pos, "undeclared service '" + name + "'");
        else if (it->second != static_cast<int>(args.size()))
            error(pos, "service '" + name + "' expects " + std::to_string(it->second) + " argument" +
                           (it->second == 1 ? "" : "s") + ", got " + std::to_string(args.size()));
        if (depth > 0)
            warning(pos, "nested service call '" + name + "'");
        return HeadTerm::call(std::move(name), std::move(args));
    }
    if (vars.count(name))
        return HeadTerm::var(std::move(name));
    if (adom0_.count(name))
        return HeadTerm::constant(std::move(name));
    if (voc_.constants.count(name))
        error(pos, "constant '" + name + "' in an effect head must occur in the initial ABox");
    else
        error(pos, "head term '" + name + "' is neither a parameter, a free variable of the effect query, " +
                       "nor a constant of the initial ABox");
    return HeadTerm::constant(std::move(name));
}

void SpecParser::parse_effect(ExprParser& p, ActionSpec& action) {
    EffectSpec e;
    if (p.accept(Tok::LBracket)) {
        e.qplus = p.bracket_ucq();
    } else if (p.accept_word("true")) {
        e.qplus = UCQ::from_atoms({}, {});
    } else {
        std::vector<QueryAtom> atoms{p.atom()};
        while (p.at(Tok::Amp) && p.at(Tok::Ident, 1) && p.at(Tok::LParen, 2)) {
            p.next();
            atoms.push_back(p.atom());
        }
        e.qplus = dsl::conjunction_ucq(std::move(atoms));
    }
    SourcePos qminus_pos = p.peek().pos;
    if (p.accept(Tok::Amp)) {
        qminus_pos = p.peek().pos;
        e.qminus = p.ecq();
    }
    p.expect(Tok::Leadsto, "'~>'");
    std::set<std::string> vars(action.params.begin(), action.params.end());
    vars.insert(e.qplus.free_vars.begin(), e.qplus.free_vars.end());
    if (e.qminus)
        for (const auto& v : e.qminus->free_vars())
            if (!vars.count(v))
                error(qminus_pos, "free variable '" + v + "' of the effect filter does not occur in the effect query");
    p.expect(Tok::LBrace, "'{' starting the effect head");
    if (!p.at(Tok::RBrace)) {
        do {
            SourcePos pos = p.peek().pos;
            HeadFact h;
            h.predicate = p.expect_ident("head fact");
            p.expect(Tok::LParen, "'('");
            if (!p.at(Tok::RParen)) {
                do
                    h.args.push_back(head_term(p, vars, 0));
                while (p.accept(Tok::Comma));
            }
            p.expect(Tok::RParen, "')'");
            if (h.predicate == kMarkerConcept)
                error(pos, std::string("'") + kMarkerConcept + "' is a reserved name");
            else if (auto it = voc_.predicates.find(h.predicate); it == voc_.predicates.end())
                error(pos, "undeclared predicate '" + h.predicate + "'");
            else if (it->second != static_cast<int>(h.args.size()))
                error(pos, "predicate '" + h.predicate + "' expects " + std::to_string(it->second) + " argument" +
                               (it->second == 1 ? "" : "s") + ", got " + std::to_string(h.args.size()));
            e.head.push_back(std::move(h));
        } while (p.accept(Tok::Comma));
    }
    p.expect(Tok::RBrace, "'}' closing the effect head");
    action.effects.push_back(std::move(e));
}

void SpecParser::parse_actions(const Section& s) {
    ActionSpec* current = nullptr;
    for_each_line(s, [&](ExprParser& p) {
        if (p.accept_word("action")) {
            SourcePos pos = p.peek().pos;
            ActionSpec a;
            a.name = p.expect_ident("action name");
            p.expect(Tok::LParen, "'(' after action name");
            if (!p.at(Tok::RParen)) {
                do {
                    SourcePos pp = p.peek().pos;
                    std::string v = p.expect_ident("parameter");
                    if (voc_.constants.count(v))
                        error(pp, "parameter '" + v + "' has the name of a declared constant");
                    if (std::find(a.params.begin(), a.params.end(), v) != a.params.end())
                        error(pp, "duplicate parameter '" + v + "'");
                    a.params.push_back(std::move(v));
                } while (p.accept(Tok::Comma));
            }
            p.expect(Tok::RParen, "')'");
            if (spec_.find_action(a.name))
                error(pos, "action '" + a.name + "' declared more than once");
            spec_.actions.push_back(std::move(a));
            current = &spec_.actions.back();
            return;
        }
        if (!current)
            p.fail("expected 'action' before effects");
        parse_effect(p, *current);
    });
}

void SpecParser::parse_process(const Section& s) {
    for_each_line(s, [&](ExprParser& p) {
        CondActionRule r;
        SourcePos qpos = p.peek().pos;
        r.query = p.ecq();
        if (p.accept(Tok::At))
            r.guard = p.context_expr();
        p.expect(Tok::MapsTo, "'|->'");
        SourcePos apos = p.peek().pos;
        r.action = p.expect_ident("action name");
        p.expect(Tok::LParen, "'('");
        if (!p.at(Tok::RParen)) {
            do {
                SourcePos vp = p.peek().pos;
                std::string v = p.expect_ident("rule variable");
                if (voc_.constants.count(v))
                    error(vp, "rule argument '" + v + "' must be a variable");
                if (std::find(r.vars.begin(), r.vars.end(), v) != r.vars.end())
                    error(vp, "duplicate rule variable '" + v + "'");
                r.vars.push_back(std::move(v));
            } while (p.accept(Tok::Comma));
        }
        p.expect(Tok::RParen, "')'");
        auto fv = r.query.free_vars();
        for (const auto& v : fv)
            if (std::find(r.vars.begin(), r.vars.end(), v) == r.vars.end())
                error(qpos, "free variable '" + v + "' of the rule query is not an action argument");
        for (const auto& v : r.vars)
            if (!fv.count(v))
                error(apos, "argument '" + v + "' does not occur free in the rule query");
        // Constants outside the initial ABox are legal but suspicious.
        std::function<void(const Ecq&)> scan = [&](const Ecq& q) {
            if (q.kind == Ecq::Kind::Query) {
                for (const auto& cq : q.query.disjuncts)
                    for (const auto& a : cq.atoms)
                        for (const auto& t : a.args)
                            if (!t.is_var() && !adom0_.count(t.name))
                                warning(qpos, "constant '" + t.name + "' in a rule query does not occur in the initial ABox");
            }
            for (const auto& a : q.args)
                scan(a);
        };
        scan(r.query);
        process_actions_.emplace_back(r.action, apos);
        spec_.process.push_back(std::move(r));
    });
}

void SpecParser::parse_context_rules(const Section& s) {
    for_each_line(s, [&](ExprParser& p) {
        ContextEvolutionRule r;
        SourcePos qpos = p.peek().pos;
        r.query = p.ecq();
        for (const auto& v : r.query.free_vars())
            error(qpos, "context rule query must be closed, but '" + v + "' is free");
        if (p.accept(Tok::At))
            r.guard = p.context_expr();
        p.expect(Tok::MapsTo, "'|->'");
        p.expect(Tok::LBrace, "'{' starting the new context assignment");
        if (!p.at(Tok::RBrace)) {
            do {
                SourcePos pos = p.peek().pos;
                ContextExpr a = p.context_atom();
                if (r.head.assignments.count(a.dimension)) {
                    error(pos, "duplicate dimension in C_new: '" + a.dimension + "' assigned more than once");
                    continue;
                }
                if (const auto* d = spec_.dimensions.find(a.dimension); d && d->contains(a.value) &&
                                                                       !d->children(a.value).empty())
                    warning(pos, "context rule assigns non-leaf value '" + a.value + "' to '" + a.dimension + "'");
                r.head.assignments[a.dimension] = a.value;
            } while (p.accept(Tok::Comma));
        }
        p.expect(Tok::RBrace, "'}'");
        spec_.context_rules.push_back(std::move(r));
    });
}

void SpecParser::final_checks() {
    for (const auto& [name, pos] : process_actions_) {
        const ActionSpec* a = spec_.find_action(name);
        if (!a)
            error(pos, "undeclared action '" + name + "'");
    }
    for (size_t i = 0; i < spec_.process.size(); ++i) {
        const ActionSpec* a = spec_.find_action(spec_.process[i].action);
        if (a && a->params.size() != spec_.process[i].vars.size())
            error(process_actions_[i].second, "action '" + a->name + "' expects " + std::to_string(a->params.size()) +
                                                  " argument" + (a->params.size() == 1 ? "" : "s") + ", got " +
                                                  std::to_string(spec_.process[i].vars.size()));
    }
    if (has_errors(diags_))
        return;
    auto theory = build_theory(spec_.dimensions);
    Reasoner kb(kb_in_context(spec_.ctbox, spec_.initial_context, theory));
    if (!kb.is_consistent(spec_.initial_abox)) {
        auto it = sections_.find("abox");
        error(it == sections_.end() ? SourcePos{1, 1} : it->second.pos,
              "initial ABox is inconsistent with the TBox of the initial context");
    }
}

ParseResult<CkabSpec> SpecParser::run() {
    split_sections();
    auto find = [&](const char* n) -> const Section* {
        auto it = sections_.find(n);
        return it == sections_.end() ? nullptr : &it->second;
    };
    if (const Section* s = find("dimensions"))
        parse_dimensions(*s);
    else
        error({1, 1}, "missing dimensions section");
    voc_.dims = &spec_.dimensions;
    if (const Section* s = find("concepts"))
        for (auto& [n, p] : name_list(*s))
            declared_concepts_.insert(n);
    if (const Section* s = find("roles"))
        for (auto& [n, p] : name_list(*s))
            declared_roles_.insert(n);
    if (const Section* s = find("services"))
        parse_services(*s);
    if (const Section* s = find("constants")) {
        std::set<std::string> cs;
        for (auto& [n, p] : name_list(*s))
            cs.insert(n);
        spec_.constants.assign(cs.begin(), cs.end());
    }
    if (const Section* s = find("abox"))
        parse_abox(*s);
    if (const Section* s = find("tbox"))
        parse_tbox(*s);
    resolve_vocabulary();
    voc_.constants = adom0_;
    voc_.constants.insert(spec_.constants.begin(), spec_.constants.end());
    for (const auto& c : voc_.constants)
        if (voc_.predicates.count(c) || voc_.services.count(c))
            error({1, 1}, "'" + c + "' is used both as a constant and as a predicate or service");
    parse_init_context(find("init-context"));
    if (const Section* s = find("actions"))
        parse_actions(*s);
    if (const Section* s = find("process"))
        parse_process(*s);
    if (const Section* s = find("context-rules"))
        parse_context_rules(*s);
    final_checks();

    ParseResult<CkabSpec> out;
    std::stable_sort(diags_.begin(), diags_.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.pos < b.pos; });
    out.diagnostics = std::move(diags_);
    if (!has_errors(out.diagnostics))
        out.value = std::move(spec_);
    return out;
}

} // namespace

ParseResult<CkabSpec> parse_spec(std::string_view text) { return SpecParser(text).run(); }

const ActionSpec* CkabSpec::find_action(const std::string& name) const {
    for (const auto& a : actions)
        if (a.name == name)
            return &a;
    return nullptr;
}

bool CkabSpec::is_concept(const std::string& n) const { return std::binary_search(concepts.begin(), concepts.end(), n); }

bool CkabSpec::is_role(const std::string& n) const { return std::binary_search(roles.begin(), roles.end(), n); }

std::set<std::string> CkabSpec::declared_constants() const {
    std::set<std::string> out = initial_abox.adom();
    out.insert(constants.begin(), constants.end());
    return out;
}

std::string CkabSpec::digest() const { return hex_digest(fnv1a(pretty_print(*this))); }

} // namespace ckab
