#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gtforge {

using byte_vec = std::vector<std::uint8_t>;
using byte_span = std::span<const std::uint8_t>;

enum class errc {
    unreadable_file,
    unsupported_container,
    unsupported_isa,
    out_of_range,
    malformed_listing,
    non_monotonic_offsets,
    underflow,
    unmatched_symbol,
    overlap_detected,
    format_version_mismatch,
    parse_error,
    statement_not_locatable,
    unresolvable_mismatch,
    non_termination,
    assembler_failed,
    all_prefixes,
    hash_mismatch,
    zero_denominator,
    mismatched_group_sets,
    oracle_insufficient,
    compiler_not_found,
    corrupt_ledger,
    config_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::unreadable_file: return "UnreadableFile";
        case errc::unsupported_container: return "UnsupportedContainer";
        case errc::unsupported_isa: return "UnsupportedISA";
        case errc::out_of_range: return "OutOfRange";
        case errc::malformed_listing: return "MalformedListing";
        case errc::non_monotonic_offsets: return "NonMonotonicOffsets";
        case errc::underflow: return "Underflow";
        case errc::unmatched_symbol: return "UnmatchedSymbol";
        case errc::overlap_detected: return "OverlapDetected";
        case errc::format_version_mismatch: return "FormatVersionMismatch";
        case errc::parse_error: return "ParseError";
        case errc::statement_not_locatable: return "StatementNotLocatable";
        case errc::unresolvable_mismatch: return "UnresolvableMismatch";
        case errc::non_termination: return "NonTermination";
        case errc::assembler_failed: return "AssemblerFailed";
        case errc::all_prefixes: return "AllPrefixes";
        case errc::hash_mismatch: return "HashMismatch";
        case errc::zero_denominator: return "ZeroDenominator";
        case errc::mismatched_group_sets: return "MismatchedGroupSets";
        case errc::oracle_insufficient: return "OracleInsufficient";
        case errc::compiler_not_found: return "CompilerNotFound";
        case errc::corrupt_ledger: return "CorruptLedger";
        case errc::config_error: return "ConfigError";
    }
    return "UnknownError";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

enum class isa_t { x86, x64 };

inline const char* isa_token(isa_t isa) { return isa == isa_t::x86 ? "x86" : "x64"; }

inline std::optional<isa_t> isa_from_token(std::string_view tok) {
    if (tok == "x86") return isa_t::x86;
    if (tok == "x64") return isa_t::x64;
    return std::nullopt;
}

// ---- hex helpers ------------------------------------------------------

inline char hex_digit(unsigned v) { return "0123456789abcdef"[v & 0xf]; }

inline std::string to_hex(byte_span bytes) {
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(hex_digit(b >> 4));
        out.push_back(hex_digit(b));
    }
    return out;
}

inline std::string to_hex(std::uint64_t v) {
    if (v == 0) return "0";
    char buf[17];
    int i = 16;
    buf[16] = '\0';
    while (v) {
        buf[--i] = hex_digit(static_cast<unsigned>(v & 0xf));
        v >>= 4;
    }
    return std::string(buf + i);
}

inline std::optional<unsigned> hex_value(char c) {
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
    return std::nullopt;
}

inline std::optional<std::uint64_t> parse_hex_u64(std::string_view s) {
    if (s.empty() || s.size() > 16) return std::nullopt;
    std::uint64_t v = 0;
    for (char c : s) {
        auto d = hex_value(c);
        if (!d) return std::nullopt;
        v = (v << 4) | *d;
    }
    return v;
}

inline std::optional<byte_vec> parse_hex_bytes(std::string_view s) {
    if (s.size() % 2 != 0) return std::nullopt;
    byte_vec out;
    out.reserve(s.size() / 2);
    for (size_t i = 0; i < s.size(); i += 2) {
        auto hi = hex_value(s[i]);
        auto lo = hex_value(s[i + 1]);
        if (!hi || !lo) return std::nullopt;
        out.push_back(static_cast<std::uint8_t>((*hi << 4) | *lo));
    }
    return out;
}

// ---- small string helpers ---------------------------------------------

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::vector<std::string> split_on(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace gtforge
