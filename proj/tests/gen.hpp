// Deterministic random generators shared by the test suites. Everything is
// seeded explicitly so failures reproduce.
#ifndef TVL_TESTS_GEN_HPP
#define TVL_TESTS_GEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tvl/lang.hpp"

namespace tvltest {

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        // splitmix64
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t range(std::uint64_t n) { return n ? next() % n : 0; }
    bool chance(int pct) { return range(100) < static_cast<std::uint64_t>(pct); }
};

inline std::string gen_var(Rng& rng) {
    static const char* pool[] = {"x", "y", "z", "acc", "tmp0", "a_b", "q9", "heads"};
    return pool[rng.range(8)];
}

inline std::string gen_litval(Rng& rng) {
    static const char chars[] = {'a', 'b', 'R', '0', '7', ' ', '"', '\\', '.', '}'};
    std::string s;
    std::uint64_t len = rng.range(4);
    for (std::uint64_t i = 0; i < len; ++i) s.push_back(chars[rng.range(10)]);
    return s;
}

inline tvl::lcore::Expr gen_expr(Rng& rng, int depth, std::uint64_t arity) {
    using tvl::lcore::Expr;
    int pick = static_cast<int>(rng.range(depth > 0 ? 5 : 3));
    switch (pick) {
        case 0: return Expr::literal(gen_litval(rng));
        case 1:
            if (arity > 0 && rng.chance(40))
                return Expr::variable("arg" + std::to_string(1 + rng.range(arity)));
            return Expr::variable(gen_var(rng));
        case 2: {
            std::vector<Expr> parts;
            std::uint64_t n = 2 + rng.range(2);
            for (std::uint64_t i = 0; i < n; ++i)
                parts.push_back(gen_expr(rng, depth - 1, arity));
            return Expr::concat(std::move(parts));
        }
        case 3: return Expr::head(gen_expr(rng, depth - 1, arity));
        default: return Expr::tail(gen_expr(rng, depth - 1, arity));
    }
}

inline tvl::lcore::Cond gen_cond(Rng& rng, int depth, std::uint64_t arity) {
    tvl::lcore::Cond c;
    c.lhs = gen_expr(rng, depth, arity);
    c.rhs = gen_expr(rng, depth, arity);
    c.neq = rng.chance(35);
    return c;
}

inline std::vector<tvl::lcore::Stmt> gen_stmts(Rng& rng, int depth, std::uint64_t arity,
                                               std::uint64_t max_len);

inline tvl::lcore::Stmt gen_stmt(Rng& rng, int depth, std::uint64_t arity) {
    using tvl::lcore::Stmt;
    using tvl::lcore::StmtKind;
    Stmt s;
    int pick = static_cast<int>(rng.range(depth > 0 ? 10 : 6));
    if (pick < 4) {
        s.kind = StmtKind::Assign;
        s.var = gen_var(rng);
        s.value = gen_expr(rng, depth, arity);
    } else if (pick < 6) {
        s.kind = StmtKind::Halt;
    } else if (pick < 8) {
        s.kind = StmtKind::If;
        s.cond = gen_cond(rng, depth - 1, arity);
        s.body = gen_stmts(rng, depth - 1, arity, 2);
        if (rng.chance(50)) {
            s.has_else = true;
            s.else_body = gen_stmts(rng, depth - 1, arity, 2);
        }
    } else {
        s.kind = StmtKind::While;
        s.cond = gen_cond(rng, depth - 1, arity);
        s.body = gen_stmts(rng, depth - 1, arity, 2);
    }
    return s;
}

inline std::vector<tvl::lcore::Stmt> gen_stmts(Rng& rng, int depth, std::uint64_t arity,
                                               std::uint64_t max_len) {
    std::vector<tvl::lcore::Stmt> out;
    std::uint64_t n = rng.range(max_len + 1);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(gen_stmt(rng, depth, arity));
    return out;
}

inline tvl::lcore::Program gen_program(Rng& rng, int depth = 3, std::uint64_t max_arity = 3) {
    tvl::lcore::Program p;
    p.arity = rng.range(max_arity + 1);
    p.body = gen_stmts(rng, depth, p.arity, 4);
    p.source = tvl::lcore::unparse(p);
    return p;
}

// Re-renders a program inserting random amounts of legal inter-token
// whitespace (spaces only, so the result stays inside the data alphabet).
namespace ws {

inline void pad(Rng& rng, std::string& out, bool required) {
    std::uint64_t n = required ? 1 + rng.range(2) : rng.range(3);
    out.append(n, ' ');
}

inline void render_expr(Rng& rng, std::string& out, const tvl::lcore::Expr& e);

inline void render_primary(Rng& rng, std::string& out, const tvl::lcore::Expr& e) {
    using tvl::lcore::ExprKind;
    switch (e.kind) {
        case ExprKind::Lit: tvl::lcore::detail::quote_into(out, e.lit); break;
        case ExprKind::Var: out += e.var; break;
        case ExprKind::Head:
        case ExprKind::Tail:
            out += (e.kind == ExprKind::Head ? "head(" : "tail(");
            pad(rng, out, false);
            render_expr(rng, out, e.kids[0]);
            pad(rng, out, false);
            out.push_back(')');
            break;
        case ExprKind::Concat: render_expr(rng, out, e); break;
    }
}

inline void render_expr(Rng& rng, std::string& out, const tvl::lcore::Expr& e) {
    using tvl::lcore::ExprKind;
    if (e.kind == ExprKind::Concat) {
        for (std::size_t i = 0; i < e.kids.size(); ++i) {
            if (i) {
                pad(rng, out, false);
                out.push_back('.');
                pad(rng, out, false);
            }
            render_primary(rng, out, e.kids[i]);
        }
    } else {
        render_primary(rng, out, e);
    }
}

inline void render_cond(Rng& rng, std::string& out, const tvl::lcore::Cond& c) {
    render_expr(rng, out, c.lhs);
    pad(rng, out, false);
    out += (c.neq ? "!=" : "==");
    pad(rng, out, false);
    render_expr(rng, out, c.rhs);
}

inline void render_stmts(Rng& rng, std::string& out, const std::vector<tvl::lcore::Stmt>& body);

inline void render_stmt(Rng& rng, std::string& out, const tvl::lcore::Stmt& s) {
    using tvl::lcore::StmtKind;
    switch (s.kind) {
        case StmtKind::Halt:
            out += "halt";
            pad(rng, out, false);
            out.push_back(';');
            break;
        case StmtKind::Assign:
            out += s.var;
            pad(rng, out, false);
            out.push_back('=');
            pad(rng, out, false);
            render_expr(rng, out, s.value);
            pad(rng, out, false);
            out.push_back(';');
            break;
        case StmtKind::If:
        case StmtKind::While: {
            out += (s.kind == StmtKind::If ? "if" : "while");
            bool quote_start = tvl::lcore::detail::expr_starts_with_quote(s.cond.lhs);
            pad(rng, out, !quote_start);
            render_cond(rng, out, s.cond);
            pad(rng, out, false);
            out.push_back('{');
            render_stmts(rng, out, s.body);
            pad(rng, out, false);
            out.push_back('}');
            if (s.kind == StmtKind::If && s.has_else) {
                pad(rng, out, false);
                out += "else";
                pad(rng, out, false);
                out.push_back('{');
                render_stmts(rng, out, s.else_body);
                pad(rng, out, false);
                out.push_back('}');
            }
            break;
        }
    }
}

inline void render_stmts(Rng& rng, std::string& out, const std::vector<tvl::lcore::Stmt>& body) {
    for (const auto& s : body) {
        pad(rng, out, false);
        render_stmt(rng, out, s);
    }
}

} // namespace ws

inline std::string render_salted(Rng& rng, const tvl::lcore::Program& p) {
    std::string out = "args";
    ws::pad(rng, out, true);
    out += std::to_string(p.arity);
    ws::pad(rng, out, false);
    out.push_back(';');
    ws::render_stmts(rng, out, p.body);
    return out;
}

} // namespace tvltest

#endif
