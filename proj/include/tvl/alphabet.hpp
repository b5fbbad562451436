// The data alphabet: the 95 printable ASCII characters (code points 32..126),
// ordered by code point. All runtime string values, program sources used for
// naming, and Goedel-encoded strings live over this alphabet. Program source
// text may additionally contain '\n' between tokens; such sources are
// parseable but are outside the named (enumerable) program family.
#ifndef TVL_ALPHABET_HPP
#define TVL_ALPHABET_HPP

#include <string>
#include <string_view>

namespace tvl {

inline constexpr int kSigmaSize = 95;
inline constexpr char kSigmaFirst = ' ';  // 32
inline constexpr char kSigmaLast = '~';   // 126

inline constexpr bool sigma_has(char c) {
    return c >= kSigmaFirst && c <= kSigmaLast;
}

// 0-based position of c in the alphabet order.
inline constexpr int sigma_rank(char c) { return c - kSigmaFirst; }

inline constexpr char sigma_char(int rank) { return static_cast<char>(kSigmaFirst + rank); }

inline bool sigma_only(std::string_view s) {
    for (char c : s)
        if (!sigma_has(c)) return false;
    return true;
}

inline const std::string& sigma_string() {
    static const std::string s = [] {
        std::string r;
        for (int i = 0; i < kSigmaSize; ++i) r.push_back(sigma_char(i));
        return r;
    }();
    return s;
}

inline constexpr bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
inline constexpr bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline constexpr bool is_ident_char(char c) { return is_lower(c) || is_digit(c) || c == '_'; }

} // namespace tvl

#endif
