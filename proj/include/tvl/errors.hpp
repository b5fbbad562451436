// Error kinds shared across the library. Every failure that is part of a
// module contract carries one of these kinds; plumbing failures (I/O etc.)
// use Io/Usage.
#ifndef TVL_ERRORS_HPP
#define TVL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tvl {

enum class ErrKind {
    // lcore
    MissingSignature,
    SyntaxError,
    ArityMismatch,
    NonAlphabetSymbol,
    // naming
    ResourceLimit,
    NotARelationProgram,
    // lstar
    ForbiddenConnective,
    UnboundVariable,
    MissingBinding,
    AliasUnknown,
    // sched / translate
    NotClosed,
    // cli / config
    BadConfig,
    Io,
    Usage,
    Internal,
};

inline const char* err_kind_name(ErrKind k) {
    switch (k) {
        case ErrKind::MissingSignature: return "MissingSignature";
        case ErrKind::SyntaxError: return "SyntaxError";
        case ErrKind::ArityMismatch: return "ArityMismatch";
        case ErrKind::NonAlphabetSymbol: return "NonAlphabetSymbol";
        case ErrKind::ResourceLimit: return "ResourceLimit";
        case ErrKind::NotARelationProgram: return "NotARelationProgram";
        case ErrKind::ForbiddenConnective: return "ForbiddenConnective";
        case ErrKind::UnboundVariable: return "UnboundVariable";
        case ErrKind::MissingBinding: return "MissingBinding";
        case ErrKind::AliasUnknown: return "AliasUnknown";
        case ErrKind::NotClosed: return "NotClosed";
        case ErrKind::BadConfig: return "BadConfig";
        case ErrKind::Io: return "Io";
        case ErrKind::Usage: return "Usage";
        case ErrKind::Internal: return "Internal";
    }
    return "?";
}

class Error : public std::runtime_error {
  public:
    Error(ErrKind kind, std::string msg, std::size_t pos = npos)
        : std::runtime_error(std::string(err_kind_name(kind)) + ": " + msg +
                             (pos == npos ? "" : " (at offset " + std::to_string(pos) + ")")),
          kind_(kind), pos_(pos) {}

    ErrKind kind() const { return kind_; }
    bool has_pos() const { return pos_ != npos; }
    std::size_t pos() const { return pos_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  private:
    ErrKind kind_;
    std::size_t pos_;
};

[[noreturn]] inline void fail(ErrKind k, std::string msg, std::size_t pos = Error::npos) {
    throw Error(k, std::move(msg), pos);
}

} // namespace tvl

#endif
