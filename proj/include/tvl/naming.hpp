// The object namespace. Pure objects are named by canonical decimal
// numerals; relations by R<i> where i is the shortlex index of the defining
// program among all valid programs with at least one argument. Strings over
// the data alphabet correspond to naturals through a bijective base-95
// encoding (empty string <-> 0).
#ifndef TVL_NAMING_HPP
#define TVL_NAMING_HPP

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>

#include "tvl/errors.hpp"
#include "tvl/grammar.hpp"

namespace tvl::naming {

inline constexpr int kDefaultEnumCap = 64;

// ---------------------------------------------------------------- names

inline bool is_canonical_decimal(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!is_digit(c)) return false;
    return s.size() == 1 || s[0] != '0';
}

struct ObjectName {
    enum class Kind { Numeral, RName, Invalid };
    Kind kind = Kind::Invalid;
    std::string digits; // canonical decimal value (numeral) or index (R-name)

    static ObjectName numeral(std::string canonical_digits) {
        return {Kind::Numeral, std::move(canonical_digits)};
    }
    static ObjectName numeral(const BigInt& v) { return numeral(v.str()); }
    static ObjectName numeral(std::uint64_t v) { return numeral(std::to_string(v)); }
    static ObjectName rname(std::string canonical_digits) {
        return {Kind::RName, std::move(canonical_digits)};
    }
    static ObjectName rname(const BigInt& v) { return rname(v.str()); }
    static ObjectName rname(std::uint64_t v) { return rname(std::to_string(v)); }
    static ObjectName invalid() { return {}; }

    bool is_numeral() const { return kind == Kind::Numeral; }
    bool is_rname() const { return kind == Kind::RName; }
    bool is_invalid() const { return kind == Kind::Invalid; }

    BigInt value() const { return BigInt(digits); }

    std::string text() const {
        switch (kind) {
            case Kind::Numeral: return digits;
            case Kind::RName: return "R" + digits;
            case Kind::Invalid: return "<invalid>";
        }
        return {};
    }

    bool operator==(const ObjectName& o) const { return kind == o.kind && digits == o.digits; }
    bool operator<(const ObjectName& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (digits.size() != o.digits.size()) return digits.size() < o.digits.size();
        return digits < o.digits;
    }
};

// Total classification: canonical decimals are numerals, "R" + canonical
// decimal is a relation name, everything else (leading zeros, empty, stray
// characters) is Invalid. Never fails.
inline ObjectName classify_name(std::string_view text) {
    if (is_canonical_decimal(text)) return ObjectName::numeral(std::string(text));
    if (text.size() >= 2 && text[0] == 'R' && is_canonical_decimal(text.substr(1)))
        return ObjectName::rname(std::string(text.substr(1)));
    return ObjectName::invalid();
}

// ---------------------------------------------------------------- Goedel

inline BigInt godel_encode(std::string_view s) {
    BigInt v = 0;
    for (char c : s) {
        if (!sigma_has(c))
            fail(ErrKind::NonAlphabetSymbol,
                 "string contains a character outside the 95-symbol alphabet");
        v = v * kSigmaSize + (sigma_rank(c) + 1);
    }
    return v;
}

inline std::string godel_decode(BigInt v) {
    std::string out;
    while (v > 0) {
        --v;
        BigInt r = v % kSigmaSize;
        out.push_back(sigma_char(static_cast<int>(r)));
        v /= kSigmaSize;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- programs

namespace detail {

inline GrammarEngine& relation_engine() {
    static GrammarEngine engine(Grammar::language(true));
    return engine;
}
inline GrammarEngine& full_engine() {
    static GrammarEngine engine(Grammar::language(false));
    return engine;
}
inline std::mutex& engine_mutex() {
    static std::mutex m;
    return m;
}

} // namespace detail

// Source text of the i-th valid relation program (arity >= 1) in shortlex
// order. The length cap bounds the search; exceeding it raises ResourceLimit.
inline std::string nth_program(const BigInt& i, int length_cap = kDefaultEnumCap) {
    std::lock_guard<std::mutex> lock(detail::engine_mutex());
    return detail::relation_engine().unrank(i, length_cap);
}

inline std::string nth_program(std::uint64_t i, int length_cap = kDefaultEnumCap) {
    return nth_program(BigInt(i), length_cap);
}

// True when `source` is in the named program family: a grammar-valid program
// over the data alphabet taking at least one argument.
inline bool is_relation_program(std::string_view source) {
    std::lock_guard<std::mutex> lock(detail::engine_mutex());
    return detail::relation_engine().matches(source);
}

// Inverse of nth_program: counts all valid relation programs shortlex-smaller
// than `source`.
inline BigInt rank_program(std::string_view source) {
    {
        std::lock_guard<std::mutex> lock(detail::engine_mutex());
        if (detail::relation_engine().matches(source))
            return detail::relation_engine().rank(source);
    }
    fail(ErrKind::NotARelationProgram,
         "not a valid program with arity >= 1 over the data alphabet");
}

// Grammar-membership for arbitrary (arity 0 included) programs over the data
// alphabet; used by tests to pin the parser and the counting grammar to the
// same language.
inline bool grammar_accepts(std::string_view source) {
    std::lock_guard<std::mutex> lock(detail::engine_mutex());
    return detail::full_engine().matches(source);
}

inline int grammar_derivations(std::string_view source) {
    std::lock_guard<std::mutex> lock(detail::engine_mutex());
    return detail::full_engine().derivations(source);
}

inline BigInt count_relation_programs_of_length(int len) {
    std::lock_guard<std::mutex> lock(detail::engine_mutex());
    return detail::relation_engine().count_len(len);
}

// Canonical object stream used by existential search: 0, R0, 1, R1, 2, ...
inline ObjectName canonical_stream(std::uint64_t k) {
    return (k % 2 == 0) ? ObjectName::numeral(k / 2) : ObjectName::rname((k - 1) / 2);
}

} // namespace tvl::naming

#endif
