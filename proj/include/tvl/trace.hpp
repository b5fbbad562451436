// Execution traces and their bit-exact serialization.
//
// A trace is a sequence of frames, one per machine state, certifying one
// halting execution. Serialized form: frames joined by '|'; each frame is
//
//     pc-path ':' var '=' quoted-value (';' var '=' quoted-value)*
//
// with bindings restricted to non-empty values in ascending identifier order,
// pc-path a '.'-separated sequence of decimal statement indices (if/else
// children share one index space: else-block statements continue after the
// then-block's), and the final frame suffixed '#HALT'. Quoting uses the same
// escapes as language string literals ('\"' and '\\').
#ifndef TVL_TRACE_HPP
#define TVL_TRACE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tvl/lang.hpp"
#include "tvl/vm.hpp"

namespace tvl::lcore {

struct Frame {
    std::string path;
    std::vector<std::pair<std::string, std::string>> bindings;
    bool halted = false;

    bool operator==(const Frame& o) const {
        return path == o.path && bindings == o.bindings && halted == o.halted;
    }
};

struct Trace {
    Program program;
    std::vector<std::string> inputs;
    std::vector<Frame> frames;
};

// ---------------------------------------------------------------- emission

// Runs the program, recording every state. Returns the trace when the run
// halts within `fuel`, otherwise the exhausted verdict.
inline std::variant<Trace, Verdict> emit_trace(const Program& p,
                                               const std::vector<std::string>& inputs,
                                               std::uint64_t fuel) {
    Machine m(p, inputs);
    Trace t;
    t.program = p;
    t.inputs = inputs;
    t.frames.push_back({m.path(), m.snapshot_store(), m.halted()});
    while (!m.halted() && m.steps() < fuel) {
        m.step();
        t.frames.push_back({m.path(), m.snapshot_store(), m.halted()});
    }
    if (!m.halted()) return Verdict::out_of_fuel(fuel);
    return t;
}

// ---------------------------------------------------------------- serialize

inline std::string serialize_frame(const Frame& f) {
    std::string out = f.path;
    out.push_back(':');
    bool first = true;
    for (const auto& [name, value] : f.bindings) {
        if (!first) out.push_back(';');
        first = false;
        out += name;
        out.push_back('=');
        detail::quote_into(out, value);
    }
    if (f.halted) out += "#HALT";
    return out;
}

inline std::string serialize_trace(const Trace& t) {
    std::string out;
    for (std::size_t i = 0; i < t.frames.size(); ++i) {
        if (i) out.push_back('|');
        out += serialize_frame(t.frames[i]);
    }
    return out;
}

// ---------------------------------------------------------------- parse

// Strict parse of the canonical serialization. Returns nullopt on any
// deviation: bad path syntax, unsorted/duplicate/empty bindings, bad quoting,
// '#HALT' anywhere but the frame end.
inline std::optional<std::vector<Frame>> parse_trace_text(std::string_view text) {
    std::vector<Frame> frames;
    std::size_t i = 0;
    const std::size_t n = text.size();
    if (n == 0) return std::nullopt;
    while (true) {
        Frame f;
        // pc path: decimal components separated by '.', no leading zeros
        std::size_t start = i;
        while (true) {
            std::size_t d0 = i;
            while (i < n && is_digit(text[i])) ++i;
            if (i == d0) return std::nullopt;
            if (text[d0] == '0' && i - d0 > 1) return std::nullopt;
            if (i < n && text[i] == '.') {
                ++i;
                continue;
            }
            break;
        }
        f.path = std::string(text.substr(start, i - start));
        if (i >= n || text[i] != ':') return std::nullopt;
        ++i;
        // bindings
        bool expect_binding = i < n && is_lower(text[i]);
        while (expect_binding) {
            std::size_t v0 = i;
            while (i < n && is_ident_char(text[i])) ++i;
            if (i == v0) return std::nullopt;
            std::string name(text.substr(v0, i - v0));
            if (is_keyword(name)) return std::nullopt;
            if (!f.bindings.empty() && f.bindings.back().first >= name) return std::nullopt;
            if (i >= n || text[i] != '=') return std::nullopt;
            ++i;
            if (i >= n || text[i] != '"') return std::nullopt;
            ++i;
            std::string value;
            while (true) {
                if (i >= n) return std::nullopt;
                char c = text[i];
                if (c == '"') {
                    ++i;
                    break;
                }
                if (c == '\\') {
                    if (i + 1 >= n) return std::nullopt;
                    char e = text[i + 1];
                    if (e != '"' && e != '\\') return std::nullopt;
                    value.push_back(e);
                    i += 2;
                    continue;
                }
                if (!sigma_has(c)) return std::nullopt;
                value.push_back(c);
                ++i;
            }
            if (value.empty()) return std::nullopt;
            f.bindings.emplace_back(std::move(name), std::move(value));
            if (i < n && text[i] == ';') {
                ++i;
                if (i >= n || !is_lower(text[i])) return std::nullopt;
                continue;
            }
            break;
        }
        // optional #HALT, then '|' or end
        if (i + 4 < n + 1 && text.substr(i, 5) == "#HALT") {
            f.halted = true;
            i += 5;
        }
        frames.push_back(std::move(f));
        if (i == n) break;
        if (text[i] != '|') return std::nullopt;
        ++i;
        if (i == n) return std::nullopt; // trailing delimiter
    }
    return frames;
}

// ---------------------------------------------------------------- checking

enum class TraceReject {
    NotAProgram,      // source does not parse
    NotClosed,        // program takes arguments
    BadWitnessSyntax, // frame text malformed or non-canonical
    WrongInitialFrame,
    PrematureHalt,
    InvalidStep,
    NoHaltingFrame,
};

inline const char* trace_reject_name(TraceReject r) {
    switch (r) {
        case TraceReject::NotAProgram: return "NotAProgram";
        case TraceReject::NotClosed: return "NotClosed";
        case TraceReject::BadWitnessSyntax: return "BadWitnessSyntax";
        case TraceReject::WrongInitialFrame: return "WrongInitialFrame";
        case TraceReject::PrematureHalt: return "PrematureHalt";
        case TraceReject::InvalidStep: return "InvalidStep";
        case TraceReject::NoHaltingFrame: return "NoHaltingFrame";
    }
    return "?";
}

struct TraceCheck {
    bool accepted = false;
    TraceReject reason = TraceReject::InvalidStep; // meaningful when !accepted

    static TraceCheck ok() { return {true, TraceReject::InvalidStep}; }
    static TraceCheck no(TraceReject r) { return {false, r}; }
};

// Single bounded pass: parse the witness, anchor frame 0 at the program's
// initial state, then validate each consecutive pair as exactly one VM step.
// Work is linear in the witness length; no search is performed.
inline TraceCheck check_trace_text(std::string_view program_source, std::string_view witness) {
    Program p;
    try {
        p = parse_program(program_source);
    } catch (const Error&) {
        return TraceCheck::no(TraceReject::NotAProgram);
    }
    if (p.arity != 0) return TraceCheck::no(TraceReject::NotClosed);

    auto frames_opt = parse_trace_text(witness);
    if (!frames_opt) return TraceCheck::no(TraceReject::BadWitnessSyntax);
    const auto& frames = *frames_opt;

    if (!frames.back().halted) return TraceCheck::no(TraceReject::NoHaltingFrame);
    for (std::size_t i = 0; i + 1 < frames.size(); ++i)
        if (frames[i].halted) return TraceCheck::no(TraceReject::PrematureHalt);

    Machine m(p, {});
    Frame initial{m.path(), m.snapshot_store(), m.halted()};
    if (!(frames[0] == initial)) return TraceCheck::no(TraceReject::WrongInitialFrame);

    for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
        if (!m.restore(frames[i].path, frames[i].bindings))
            return TraceCheck::no(TraceReject::InvalidStep);
        m.step();
        Frame stepped{m.path(), m.snapshot_store(), m.halted()};
        if (!(frames[i + 1] == stepped)) return TraceCheck::no(TraceReject::InvalidStep);
    }
    return TraceCheck::ok();
}

} // namespace tvl::lcore

#endif
