#pragma once

#include "ckab/common.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ckab::dsl {

enum class Tok {
    Ident,
    Int,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Colon,
    Semicolon,
    Slash,
    At,
    Amp,
    Pipe,
    Bang,
    Equals,
    Leadsto,    // ~>
    Arrow,      // ->
    MapsTo,     // |->
    Subsumed,   // [=
    Inverse,    // ^-
    DiamDiam,   // <-><->
    DiamBox,    // <->[-]
    BoxDiam,    // [-]<->
    BoxBox,     // [-][-]
    LoneDiam,   // <-> without a partner
    LoneBox,    // [-] without a partner
    Newline,
    End,
    Invalid,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourcePos pos;
};

const char* describe(Tok t);

/// Newlines inside (), [] and {} are dropped; `#` and `//` start comments.
/// Lexical errors become Invalid tokens plus a diagnostic.
std::vector<Token> tokenize(std::string_view text, std::vector<Diagnostic>& diags);

} // namespace ckab::dsl
