#pragma once

// Textual CKAB specifications (.ckab) and property files (.mu): lexer,
// parser with validation, and a pretty printer whose output parses back to
// the same structure.

#include "ckab/common.hpp"
#include "ckab/context.hpp"
#include "ckab/engine.hpp"
#include "ckab/kb.hpp"
#include "ckab/mu_formula.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ckab {

struct ServiceDecl {
    std::string name;
    int arity = 0;

    bool operator==(const ServiceDecl&) const = default;
};

/// A complete CKAB: contextualized TBox, initial ABox, actions, process,
/// initial context and context-evolution rules, plus the declarations they
/// draw on.
struct CkabSpec {
    ContextSignature dimensions;
    std::vector<std::string> concepts;
    std::vector<std::string> roles;
    std::vector<ServiceDecl> services;
    std::vector<std::string> constants;
    ContextualizedTBox ctbox;
    ABox initial_abox;
    std::vector<ActionSpec> actions;
    std::vector<CondActionRule> process;
    ContextState initial_context;
    std::vector<ContextEvolutionRule> context_rules;

    bool operator==(const CkabSpec&) const = default;

    const ActionSpec* find_action(const std::string& name) const;
    bool is_concept(const std::string& n) const;
    bool is_role(const std::string& n) const;
    /// adom(A0) plus the constants section.
    std::set<std::string> declared_constants() const;
    /// Hash of the canonical printed form.
    std::string digest() const;
};

template <typename T> struct ParseResult {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return value.has_value() && !has_errors(diagnostics); }
};

ParseResult<CkabSpec> parse_spec(std::string_view text);

/// Parses one or more `;`-separated properties. Constants are resolved
/// against the spec's declared constants; predicates and dimensions against
/// its vocabulary.
ParseResult<std::vector<MuFormula>> parse_properties(std::string_view text, const CkabSpec& spec);
ParseResult<MuFormula> parse_property(std::string_view text, const CkabSpec& spec);

std::string pretty_print(const CkabSpec& spec);
std::string pretty_print(const MuFormula& f);
std::string pretty_print(const ContextExpr& e);
std::string pretty_print(const Ecq& q);
std::string pretty_print(const UCQ& q);

} // namespace ckab
