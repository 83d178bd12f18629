#include "dsl_lexer.hpp"

#include <cctype>

namespace ckab::dsl {

const char* describe(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::Semicolon: return "';'";
    case Tok::Slash: return "'/'";
    case Tok::At: return "'@'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Bang: return "'!'";
    case Tok::Equals: return "'='";
    case Tok::Leadsto: return "'~>'";
    case Tok::Arrow: return "'->'";
    case Tok::MapsTo: return "'|->'";
    case Tok::Subsumed: return "'[='";
    case Tok::Inverse: return "'^-'";
    case Tok::DiamDiam: return "'<-><->'";
    case Tok::DiamBox: return "'<->[-]'";
    case Tok::BoxDiam: return "'[-]<->'";
    case Tok::BoxBox: return "'[-][-]'";
    case Tok::LoneDiam: return "'<->'";
    case Tok::LoneBox: return "'[-]'";
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
    case Tok::Invalid: return "invalid token";
    }
    return "token";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

} // namespace

std::vector<Token> tokenize(std::string_view text, std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    size_t i = 0;
    int line = 1, col = 1;
    int depth = 0;

    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto starts = [&](std::string_view s) { return text.substr(i, s.size()) == s; };
    auto emit = [&](Tok k, size_t len) {
        out.push_back({k, std::string(text.substr(i, len)), {line, col}});
        advance(len);
    };

    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            if (depth == 0 && (out.empty() || out.back().kind != Tok::Newline))
                out.push_back({Tok::Newline, "\n", {line, col}});
            advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#' || starts("//")) {
            while (i < text.size() && text[i] != '\n')
                advance(1);
            continue;
        }
        if (ident_start(c)) {
            size_t j = i;
            while (j < text.size() && ident_char(text[j]))
                ++j;
            std::string_view word = text.substr(i, j - i);
            // The two hyphenated section keywords.
            if ((word == "init" && text.substr(j, 8) == "-context") || (word == "context" && text.substr(j, 6) == "-rules"))
                j += word == "init" ? 8 : 6;
            emit(Tok::Ident, j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && ident_char(text[j]))
                ++j;
            bool digits_only = true;
            for (size_t k = i; k < j; ++k)
                digits_only = digits_only && std::isdigit(static_cast<unsigned char>(text[k]));
            emit(digits_only ? Tok::Int : Tok::Ident, j - i);
            continue;
        }
        if (starts("<-><->")) { emit(Tok::DiamDiam, 6); continue; }
        if (starts("<->[-]")) { emit(Tok::DiamBox, 6); continue; }
        if (starts("[-]<->")) { emit(Tok::BoxDiam, 6); continue; }
        if (starts("[-][-]")) { emit(Tok::BoxBox, 6); continue; }
        if (starts("<->")) { emit(Tok::LoneDiam, 3); continue; }
        if (starts("[-]")) { emit(Tok::LoneBox, 3); continue; }
        if (starts("[=")) { emit(Tok::Subsumed, 2); continue; }
        if (starts("|->")) { emit(Tok::MapsTo, 3); continue; }
        if (starts("~>")) { emit(Tok::Leadsto, 2); continue; }
        if (starts("->")) { emit(Tok::Arrow, 2); continue; }
        if (starts("^-")) { emit(Tok::Inverse, 2); continue; }
        Tok k = Tok::Invalid;
        switch (c) {
        case '(': k = Tok::LParen; ++depth; break;
        case ')': k = Tok::RParen; depth = depth > 0 ? depth - 1 : 0; break;
        case '[': k = Tok::LBracket; ++depth; break;
        case ']': k = Tok::RBracket; depth = depth > 0 ? depth - 1 : 0; break;
        case '{': k = Tok::LBrace; ++depth; break;
        case '}': k = Tok::RBrace; depth = depth > 0 ? depth - 1 : 0; break;
        case ',': k = Tok::Comma; break;
        case '.': k = Tok::Dot; break;
        case ':': k = Tok::Colon; break;
        case ';': k = Tok::Semicolon; break;
        case '/': k = Tok::Slash; break;
        case '@': k = Tok::At; break;
        case '&': k = Tok::Amp; break;
        case '|': k = Tok::Pipe; break;
        case '!': k = Tok::Bang; break;
        case '=': k = Tok::Equals; break;
        default: break;
        }
        if (k == Tok::Invalid) {
            std::string shown = (static_cast<unsigned char>(c) >= 0x20 && static_cast<unsigned char>(c) < 0x7f)
                                    ? std::string(1, c)
                                    : "\\x" + hex_digest(static_cast<unsigned char>(c)).substr(14);
            diags.push_back({Severity::Error, "unexpected character '" + shown + "'", {line, col}});
        }
        emit(k, 1);
    }
    out.push_back({Tok::End, "", {line, col}});
    return out;
}

} // namespace ckab::dsl
