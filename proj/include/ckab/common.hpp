#pragma once

#include <cstdint>
#include <string_view>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckab {

/// Reserved vocabulary used to tag intermediate states. Never accepted in
/// user-written specifications or properties.
inline constexpr const char* kMarkerConcept = "State";
inline constexpr const char* kMarkerConstant = "inter";

struct SourcePos {
    int line = 0;
    int column = 0;

    auto operator<=>(const SourcePos&) const = default;
};

enum class Severity { Error, Warning, Note };

const char* to_string(Severity s);

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
    SourcePos pos;
};

/// Renders `file:line:col: severity: message`.
std::string format_diagnostic(const std::string& file, const Diagnostic& d);

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error)
            return true;
    return false;
}

/// Raised when a specification object references something that does not
/// exist or violates a structural invariant.
class SpecError : public std::runtime_error {
public:
    explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

/// 64-bit FNV-1a, used for content digests.
inline std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex_digest(std::uint64_t h);

} // namespace ckab
