// The concrete programming language: a minimal structured imperative language
// over strings. Statements: assignment, if/else, while, halt. Expressions:
// string literal, variable, head(e), tail(e), concatenation with '.'.
// Conditions: == and != on strings. Every program starts with an `args n;`
// signature. Grammar is unambiguous; whitespace (space, newline) is permitted
// between tokens only.
#ifndef TVL_LANG_HPP
#define TVL_LANG_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tvl/alphabet.hpp"
#include "tvl/errors.hpp"

namespace tvl::lcore {

// ---------------------------------------------------------------- AST

enum class ExprKind { Lit, Var, Head, Tail, Concat };

struct Expr {
    ExprKind kind = ExprKind::Lit;
    std::string lit;             // Lit: decoded value
    std::string var;             // Var: identifier
    std::vector<Expr> kids;      // Head/Tail: 1 child; Concat: 2+ children

    static Expr literal(std::string v) {
        Expr e;
        e.kind = ExprKind::Lit;
        e.lit = std::move(v);
        return e;
    }
    static Expr variable(std::string name) {
        Expr e;
        e.kind = ExprKind::Var;
        e.var = std::move(name);
        return e;
    }
    static Expr head(Expr inner) {
        Expr e;
        e.kind = ExprKind::Head;
        e.kids.push_back(std::move(inner));
        return e;
    }
    static Expr tail(Expr inner) {
        Expr e;
        e.kind = ExprKind::Tail;
        e.kids.push_back(std::move(inner));
        return e;
    }
    // Concatenation is kept flat: nested concat nodes are spliced in, so every
    // expression has one canonical tree (matching what the parser builds).
    static Expr concat(std::vector<Expr> parts) {
        std::vector<Expr> flat;
        for (auto& p : parts) {
            if (p.kind == ExprKind::Concat)
                for (auto& k : p.kids) flat.push_back(std::move(k));
            else
                flat.push_back(std::move(p));
        }
        if (flat.size() == 1) return std::move(flat[0]);
        Expr e;
        e.kind = ExprKind::Concat;
        e.kids = std::move(flat);
        return e;
    }

    bool operator==(const Expr& o) const {
        return kind == o.kind && lit == o.lit && var == o.var && kids == o.kids;
    }
};

struct Cond {
    Expr lhs;
    Expr rhs;
    bool neq = false; // false: ==, true: !=

    bool operator==(const Cond& o) const { return neq == o.neq && lhs == o.lhs && rhs == o.rhs; }
};

enum class StmtKind { Assign, If, While, Halt };

struct Stmt {
    StmtKind kind = StmtKind::Halt;
    std::string var;              // Assign
    Expr value;                   // Assign
    Cond cond;                    // If/While
    std::vector<Stmt> body;       // If: then-block; While: loop body
    std::vector<Stmt> else_body;  // If only
    bool has_else = false;

    bool operator==(const Stmt& o) const {
        return kind == o.kind && var == o.var && value == o.value && cond == o.cond &&
               body == o.body && else_body == o.else_body && has_else == o.has_else;
    }
};

struct Program {
    std::string source;    // exact source text this program was parsed from
    std::uint64_t arity = 0;
    std::vector<Stmt> body;

    bool same_shape(const Program& o) const { return arity == o.arity && body == o.body; }
};

// ---------------------------------------------------------------- reserved names

inline bool is_keyword(std::string_view w) {
    return w == "args" || w == "if" || w == "else" || w == "while" || w == "halt" ||
           w == "head" || w == "tail";
}

// arg1, arg2, ... (any digit string after "arg") may be read but never assigned.
inline bool is_arg_name(std::string_view w) {
    if (w.size() < 4 || w.substr(0, 3) != "arg") return false;
    for (char c : w.substr(3))
        if (!is_digit(c)) return false;
    return true;
}

inline constexpr std::uint64_t kMaxParseArity = 1000000; // practical bound for execution

// ---------------------------------------------------------------- lexer

namespace detail {

enum class TokKind { Word, Nat, Lit, Punct, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;  // Word/Nat: spelling; Punct: the operator; Lit: decoded value
    std::size_t pos = 0;
    std::size_t end = 0;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) { tokenize(); }

    const std::vector<Token>& tokens() const { return toks_; }
    bool has_trailing_ws() const { return trailing_ws_; }

  private:
    void tokenize() {
        std::size_t i = 0;
        const std::size_t n = src_.size();
        trailing_ws_ = n > 0 && (src_[n - 1] == ' ' || src_[n - 1] == '\n');
        while (true) {
            while (i < n && (src_[i] == ' ' || src_[i] == '\n')) ++i;
            if (i >= n) break;
            char c = src_[i];
            Token t;
            t.pos = i;
            if (is_lower(c)) {
                std::size_t j = i;
                while (j < n && is_ident_char(src_[j])) ++j;
                t.kind = TokKind::Word;
                t.text = std::string(src_.substr(i, j - i));
                i = j;
            } else if (is_digit(c)) {
                std::size_t j = i;
                while (j < n && is_digit(src_[j])) ++j;
                t.kind = TokKind::Nat;
                t.text = std::string(src_.substr(i, j - i));
                i = j;
            } else if (c == '"') {
                t.kind = TokKind::Lit;
                std::size_t j = i + 1;
                std::string val;
                while (true) {
                    if (j >= n) fail(ErrKind::SyntaxError, "unterminated string literal", t.pos);
                    char d = src_[j];
                    if (d == '"') {
                        ++j;
                        break;
                    }
                    if (d == '\\') {
                        if (j + 1 >= n) fail(ErrKind::SyntaxError, "dangling escape", j);
                        char e = src_[j + 1];
                        if (e != '"' && e != '\\')
                            fail(ErrKind::SyntaxError, "bad escape sequence", j);
                        val.push_back(e);
                        j += 2;
                        continue;
                    }
                    if (!sigma_has(d))
                        fail(ErrKind::SyntaxError, "non-alphabet character in string literal", j);
                    val.push_back(d);
                    ++j;
                }
                t.text = std::move(val);
                i = j;
            } else if (c == '=') {
                if (i + 1 < n && src_[i + 1] == '=') {
                    t.kind = TokKind::Punct;
                    t.text = "==";
                    i += 2;
                } else {
                    t.kind = TokKind::Punct;
                    t.text = "=";
                    i += 1;
                }
            } else if (c == '!') {
                if (i + 1 < n && src_[i + 1] == '=') {
                    t.kind = TokKind::Punct;
                    t.text = "!=";
                    i += 2;
                } else {
                    fail(ErrKind::SyntaxError, "expected '=' after '!'", i);
                }
            } else if (c == ';' || c == '{' || c == '}' || c == '(' || c == ')' || c == '.') {
                t.kind = TokKind::Punct;
                t.text = std::string(1, c);
                i += 1;
            } else {
                fail(ErrKind::SyntaxError, std::string("unexpected character '") + c + "'", i);
            }
            t.end = i;
            toks_.push_back(std::move(t));
        }
        Token end;
        end.kind = TokKind::End;
        end.pos = n;
        end.end = n;
        toks_.push_back(std::move(end));
    }

    std::string_view src_;
    std::vector<Token> toks_;
    bool trailing_ws_ = false;
};

} // namespace detail

// ---------------------------------------------------------------- parser

namespace detail {

class Parser {
  public:
    explicit Parser(std::string_view src) : src_(src), lex_(src) {}

    Program parse() {
        const auto& toks = lex_.tokens();
        if (toks.empty() || toks[0].kind != TokKind::Word || toks[0].text != "args")
            fail(ErrKind::MissingSignature, "program must begin with an 'args n;' signature");
        if (toks[0].pos != 0)
            fail(ErrKind::SyntaxError, "whitespace before signature", 0);
        next(); // args
        const Token& nt = peek();
        if (nt.kind != TokKind::Nat)
            fail(ErrKind::SyntaxError, "expected argument count after 'args'", nt.pos);
        if (nt.text.size() > 1 && nt.text[0] == '0')
            fail(ErrKind::SyntaxError, "argument count must be a canonical decimal", nt.pos);
        if (nt.text.size() > 7)
            fail(ErrKind::SyntaxError, "argument count too large to execute", nt.pos);
        std::uint64_t arity = 0;
        for (char c : nt.text) arity = arity * 10 + static_cast<std::uint64_t>(c - '0');
        if (arity > kMaxParseArity)
            fail(ErrKind::SyntaxError, "argument count too large to execute", nt.pos);
        next();
        expect_punct(";");

        Program p;
        p.source = std::string(src_);
        p.arity = arity;
        while (peek().kind != TokKind::End) p.body.push_back(parse_stmt());
        if (lex_.has_trailing_ws())
            fail(ErrKind::SyntaxError, "trailing whitespace after program", src_.size() - 1);
        return p;
    }

  private:
    const Token& peek(int k = 0) const { return lex_.tokens()[idx_ + k]; }
    const Token& next() { return lex_.tokens()[idx_++]; }

    void expect_punct(std::string_view s) {
        const Token& t = peek();
        if (t.kind != TokKind::Punct || t.text != s)
            fail(ErrKind::SyntaxError, "expected '" + std::string(s) + "'", t.pos);
        next();
    }

    Stmt parse_stmt() {
        const Token& t = peek();
        if (t.kind != TokKind::Word)
            fail(ErrKind::SyntaxError, "expected a statement", t.pos);
        if (t.text == "halt") {
            next();
            expect_punct(";");
            Stmt s;
            s.kind = StmtKind::Halt;
            return s;
        }
        if (t.text == "if" || t.text == "while") {
            bool is_if = (t.text == "if");
            next();
            Stmt s;
            s.kind = is_if ? StmtKind::If : StmtKind::While;
            s.cond = parse_cond();
            s.body = parse_block();
            if (is_if && peek().kind == TokKind::Word && peek().text == "else") {
                next();
                s.has_else = true;
                s.else_body = parse_block();
            }
            return s;
        }
        if (is_keyword(t.text))
            fail(ErrKind::SyntaxError, "reserved word '" + t.text + "' cannot start a statement",
                 t.pos);
        if (is_arg_name(t.text))
            fail(ErrKind::SyntaxError, "'" + t.text + "' is an input argument and cannot be assigned",
                 t.pos);
        Stmt s;
        s.kind = StmtKind::Assign;
        s.var = t.text;
        next();
        expect_punct("=");
        s.value = parse_expr();
        expect_punct(";");
        return s;
    }

    std::vector<Stmt> parse_block() {
        expect_punct("{");
        std::vector<Stmt> body;
        while (!(peek().kind == TokKind::Punct && peek().text == "}")) {
            if (peek().kind == TokKind::End)
                fail(ErrKind::SyntaxError, "unterminated block", peek().pos);
            body.push_back(parse_stmt());
        }
        next(); // }
        return body;
    }

    Cond parse_cond() {
        Cond c;
        c.lhs = parse_expr();
        const Token& t = peek();
        if (t.kind == TokKind::Punct && (t.text == "==" || t.text == "!=")) {
            c.neq = (t.text == "!=");
            next();
        } else {
            fail(ErrKind::SyntaxError, "expected '==' or '!=' in condition", t.pos);
        }
        c.rhs = parse_expr();
        return c;
    }

    Expr parse_expr() {
        std::vector<Expr> parts;
        parts.push_back(parse_primary());
        while (peek().kind == TokKind::Punct && peek().text == ".") {
            next();
            parts.push_back(parse_primary());
        }
        return Expr::concat(std::move(parts));
    }

    Expr parse_primary() {
        const Token& t = peek();
        if (t.kind == TokKind::Lit) {
            next();
            return Expr::literal(t.text);
        }
        if (t.kind == TokKind::Word) {
            if (t.text == "head" || t.text == "tail") {
                bool is_head = (t.text == "head");
                const Token& par = peek(1);
                if (par.kind != TokKind::Punct || par.text != "(" || par.pos != t.end)
                    fail(ErrKind::SyntaxError,
                         "'" + t.text + "' must be followed directly by '('", t.pos);
                next();
                next();
                Expr inner = parse_expr();
                expect_punct(")");
                return is_head ? Expr::head(std::move(inner)) : Expr::tail(std::move(inner));
            }
            if (is_keyword(t.text))
                fail(ErrKind::SyntaxError, "reserved word '" + t.text + "' in expression", t.pos);
            next();
            return Expr::variable(t.text);
        }
        fail(ErrKind::SyntaxError, "expected an expression", t.pos);
    }

    std::string_view src_;
    Lexer lex_;
    std::size_t idx_ = 0;
};

} // namespace detail

inline Program parse_program(std::string_view source) {
    for (std::size_t i = 0; i < source.size(); ++i) {
        char c = source[i];
        if (!sigma_has(c) && c != '\n')
            fail(ErrKind::SyntaxError, "character outside the source alphabet", i);
    }
    return detail::Parser(source).parse();
}

// ---------------------------------------------------------------- unparse

// Canonical compact rendering: single spaces only where the grammar requires a
// separator (after "args", and between if/while and a condition that starts
// with a word). parse(unparse(p)) reproduces p's arity and body exactly.
namespace detail {

inline void quote_into(std::string& out, std::string_view v) {
    out.push_back('"');
    for (char c : v) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
}

inline void unparse_expr(std::string& out, const Expr& e) {
    switch (e.kind) {
        case ExprKind::Lit: quote_into(out, e.lit); break;
        case ExprKind::Var: out += e.var; break;
        case ExprKind::Head:
        case ExprKind::Tail:
            out += (e.kind == ExprKind::Head ? "head(" : "tail(");
            unparse_expr(out, e.kids[0]);
            out.push_back(')');
            break;
        case ExprKind::Concat:
            for (std::size_t i = 0; i < e.kids.size(); ++i) {
                if (i) out.push_back('.');
                unparse_expr(out, e.kids[i]);
            }
            break;
    }
}

inline bool expr_starts_with_quote(const Expr& e) {
    if (e.kind == ExprKind::Concat) return expr_starts_with_quote(e.kids[0]);
    return e.kind == ExprKind::Lit;
}

inline void unparse_cond(std::string& out, const Cond& c) {
    unparse_expr(out, c.lhs);
    out += (c.neq ? "!=" : "==");
    unparse_expr(out, c.rhs);
}

inline void unparse_stmts(std::string& out, const std::vector<Stmt>& body);

inline void unparse_stmt(std::string& out, const Stmt& s) {
    switch (s.kind) {
        case StmtKind::Halt: out += "halt;"; break;
        case StmtKind::Assign:
            out += s.var;
            out.push_back('=');
            unparse_expr(out, s.value);
            out.push_back(';');
            break;
        case StmtKind::If:
        case StmtKind::While:
            out += (s.kind == StmtKind::If ? "if" : "while");
            if (!expr_starts_with_quote(s.cond.lhs)) out.push_back(' ');
            unparse_cond(out, s.cond);
            out.push_back('{');
            unparse_stmts(out, s.body);
            out.push_back('}');
            if (s.kind == StmtKind::If && s.has_else) {
                out += "else{";
                unparse_stmts(out, s.else_body);
                out.push_back('}');
            }
            break;
    }
}

inline void unparse_stmts(std::string& out, const std::vector<Stmt>& body) {
    for (const auto& s : body) unparse_stmt(out, s);
}

} // namespace detail

inline std::string unparse(const Program& p) {
    std::string out = "args " + std::to_string(p.arity) + ";";
    detail::unparse_stmts(out, p.body);
    return out;
}

// Rebuild a Program whose source is its own canonical rendering.
inline Program reparse_canonical(const Program& p) { return parse_program(unparse(p)); }

} // namespace tvl::lcore

#endif
