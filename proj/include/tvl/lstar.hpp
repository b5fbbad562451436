// The restricted logic surface: conjunction, disjunction, existential
// quantification and bounded universal quantification over object names,
// with equality/non-equality atoms, arithmetic comparisons, and relation
// application. Negation, implication, biconditional and unbounded universal
// quantification are unrepresentable: the parser rejects their tokens and the
// syntax tree has no node for them.
//
// Concrete syntax (ASCII keywords; the mathematical symbols are accepted as
// synonyms):
//
//     exists x : x + 5 = 7
//     forall x <= 3 : NUMBER(x) or x = R0
//     ADD(2, 3, y) and y = 5
//
// '#' starts a line comment. Aliases are upper-case names resolved through a
// relation alias table; R<i> denotes the i-th relation directly.
#ifndef TVL_LSTAR_HPP
#define TVL_LSTAR_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tvl/errors.hpp"
#include "tvl/naming.hpp"

namespace tvl::lstar {

using naming::ObjectName;

// ---------------------------------------------------------------- AST

struct Term {
    enum class K { Name, Var, Alias };
    K k = K::Name;
    ObjectName name; // Name
    std::string id;  // Var / Alias

    static Term make_name(ObjectName n) { return {K::Name, std::move(n), {}}; }
    static Term var(std::string v) { return {K::Var, {}, std::move(v)}; }
    static Term alias(std::string a) { return {K::Alias, {}, std::move(a)}; }

    bool operator==(const Term& o) const { return k == o.k && name == o.name && id == o.id; }
};

struct AExpr {
    enum class K { Term, Add, Mul };
    K k = K::Term;
    Term term;
    std::vector<AExpr> kids; // Add/Mul: 2+

    static AExpr of(Term t) { return {K::Term, std::move(t), {}}; }
    static AExpr add(std::vector<AExpr> kids) { return {K::Add, {}, std::move(kids)}; }
    static AExpr mul(std::vector<AExpr> kids) { return {K::Mul, {}, std::move(kids)}; }

    bool operator==(const AExpr& o) const { return k == o.k && term == o.term && kids == o.kids; }
};

enum class ACmp { Eq, Ne, Lt, Le, Gt, Ge };

struct Statement {
    enum class K { Eq, Neq, Rel, Arith, And, Or, Exists, BoundedAll };
    K k = K::Eq;
    Term t1, t2;            // Eq / Neq
    Term head;              // Rel
    std::vector<Term> args; // Rel
    ACmp cmp = ACmp::Eq;    // Arith
    AExpr a1, a2;           // Arith
    std::vector<Statement> kids; // And/Or: 2; Exists/BoundedAll: 1 (the body)
    std::string var;             // Exists / BoundedAll
    Term bound;                  // BoundedAll

    static Statement eq(Term a, Term b, bool neq) {
        Statement s;
        s.k = neq ? K::Neq : K::Eq;
        s.t1 = std::move(a);
        s.t2 = std::move(b);
        return s;
    }
    static Statement rel(Term head, std::vector<Term> args) {
        Statement s;
        s.k = K::Rel;
        s.head = std::move(head);
        s.args = std::move(args);
        return s;
    }
    static Statement arith(ACmp cmp, AExpr a, AExpr b) {
        Statement s;
        s.k = K::Arith;
        s.cmp = cmp;
        s.a1 = std::move(a);
        s.a2 = std::move(b);
        return s;
    }
    static Statement conj(Statement a, Statement b) {
        Statement s;
        s.k = K::And;
        s.kids.push_back(std::move(a));
        s.kids.push_back(std::move(b));
        return s;
    }
    static Statement disj(Statement a, Statement b) {
        Statement s;
        s.k = K::Or;
        s.kids.push_back(std::move(a));
        s.kids.push_back(std::move(b));
        return s;
    }
    static Statement exists(std::string var, Statement body) {
        Statement s;
        s.k = K::Exists;
        s.var = std::move(var);
        s.kids.push_back(std::move(body));
        return s;
    }
    static Statement bounded_all(std::string var, Term bound, Statement body) {
        Statement s;
        s.k = K::BoundedAll;
        s.var = std::move(var);
        s.bound = std::move(bound);
        s.kids.push_back(std::move(body));
        return s;
    }
};

// ---------------------------------------------------------------- free vars

namespace detail {

inline void collect_free(const Statement& s, std::set<std::string>& bound,
                         std::set<std::string>& free) {
    auto term = [&](const Term& t) {
        if (t.k == Term::K::Var && !bound.count(t.id)) free.insert(t.id);
    };
    auto aexpr = [&](auto&& self, const AExpr& a) -> void {
        if (a.k == AExpr::K::Term)
            term(a.term);
        else
            for (const auto& k : a.kids) self(self, k);
    };
    switch (s.k) {
        case Statement::K::Eq:
        case Statement::K::Neq:
            term(s.t1);
            term(s.t2);
            break;
        case Statement::K::Rel:
            term(s.head);
            for (const auto& a : s.args) term(a);
            break;
        case Statement::K::Arith:
            aexpr(aexpr, s.a1);
            aexpr(aexpr, s.a2);
            break;
        case Statement::K::And:
        case Statement::K::Or:
            collect_free(s.kids[0], bound, free);
            collect_free(s.kids[1], bound, free);
            break;
        case Statement::K::Exists:
        case Statement::K::BoundedAll:
            if (s.k == Statement::K::BoundedAll) term(s.bound);
            bound.insert(s.var);
            collect_free(s.kids[0], bound, free);
            bound.erase(s.var);
            break;
    }
}

} // namespace detail

inline std::set<std::string> free_vars(const Statement& s) {
    std::set<std::string> bound, free;
    detail::collect_free(s, bound, free);
    return free;
}

// ---------------------------------------------------------------- lexer

namespace detail {

enum class TK {
    KwExists,
    KwForall,
    KwAnd,
    KwOr,
    Var,
    Alias,
    RName,
    Num,
    LParen,
    RParen,
    Comma,
    Colon,
    Plus,
    Star,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    End
};

struct LTok {
    TK k = TK::End;
    std::string text;
    std::size_t pos = 0;
};

inline std::vector<LTok> lex_lstar(std::string_view src) {
    std::vector<LTok> out;
    std::size_t i = 0;
    const std::size_t n = src.size();
    auto forbidden = [&](const std::string& tok, std::size_t at) {
        fail(ErrKind::ForbiddenConnective,
             "'" + tok + "' is not part of the language (no negation, implication, "
                         "biconditional, or unbounded universal quantification)",
             at);
    };
    auto starts = [&](std::string_view what) {
        return src.substr(i, what.size()) == what;
    };
    while (i < n) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < n && src[i] != '\n') ++i;
            continue;
        }
        LTok t;
        t.pos = i;
        if (c >= 'a' && c <= 'z') {
            std::size_t j = i;
            while (j < n && (is_ident_char(src[j]))) ++j;
            std::string w(src.substr(i, j - i));
            i = j;
            if (w == "exists") t.k = TK::KwExists;
            else if (w == "forall") t.k = TK::KwForall;
            else if (w == "and") t.k = TK::KwAnd;
            else if (w == "or") t.k = TK::KwOr;
            else if (w == "not") forbidden("not", t.pos);
            else {
                t.k = TK::Var;
                t.text = std::move(w);
            }
        } else if (c >= 'A' && c <= 'Z') {
            std::size_t j = i;
            while (j < n && ((src[j] >= 'A' && src[j] <= 'Z') || is_digit(src[j]) || src[j] == '_'))
                ++j;
            std::string w(src.substr(i, j - i));
            i = j;
            if (w.size() >= 2 && w[0] == 'R' && w.find_first_not_of("0123456789", 1) == std::string::npos) {
                if (!naming::is_canonical_decimal(w.substr(1)))
                    fail(ErrKind::SyntaxError, "non-canonical relation name '" + w + "'", t.pos);
                t.k = TK::RName;
                t.text = w.substr(1);
            } else {
                t.k = TK::Alias;
                t.text = std::move(w);
            }
        } else if (is_digit(c)) {
            std::size_t j = i;
            while (j < n && is_digit(src[j])) ++j;
            std::string w(src.substr(i, j - i));
            i = j;
            if (!naming::is_canonical_decimal(w))
                fail(ErrKind::SyntaxError, "non-canonical numeral '" + w + "'", t.pos);
            t.k = TK::Num;
            t.text = std::move(w);
        } else if (c == '(') {
            t.k = TK::LParen;
            ++i;
        } else if (c == ')') {
            t.k = TK::RParen;
            ++i;
        } else if (c == ',') {
            t.k = TK::Comma;
            ++i;
        } else if (c == ':') {
            t.k = TK::Colon;
            ++i;
        } else if (c == '+') {
            t.k = TK::Plus;
            ++i;
        } else if (c == '*') {
            t.k = TK::Star;
            ++i;
        } else if (c == '=') {
            t.k = TK::Eq;
            ++i;
        } else if (c == '!') {
            if (i + 1 < n && src[i + 1] == '=') {
                t.k = TK::Ne;
                i += 2;
            } else {
                forbidden("!", i);
            }
        } else if (c == '<') {
            if (starts("<->")) forbidden("<->", i);
            if (i + 1 < n && src[i + 1] == '=') {
                t.k = TK::Le;
                i += 2;
            } else {
                t.k = TK::Lt;
                ++i;
            }
        } else if (c == '>') {
            if (i + 1 < n && src[i + 1] == '=') {
                t.k = TK::Ge;
                i += 2;
            } else {
                t.k = TK::Gt;
                ++i;
            }
        } else if (c == '-') {
            if (i + 1 < n && src[i + 1] == '>') forbidden("->", i);
            fail(ErrKind::SyntaxError, "unexpected '-'", i);
        } else if (starts("\xC2\xAC")) {
            forbidden("\xC2\xAC", i); // logical not sign
        } else if (starts("\xE2\x86\x92")) {
            forbidden("\xE2\x86\x92", i); // rightwards arrow
        } else if (starts("\xE2\x86\x94")) {
            forbidden("\xE2\x86\x94", i); // left right arrow
        } else if (starts("\xE2\x88\x83")) {
            t.k = TK::KwExists;
            i += 3;
        } else if (starts("\xE2\x88\x80")) {
            t.k = TK::KwForall;
            i += 3;
        } else if (starts("\xE2\x88\xA7")) {
            t.k = TK::KwAnd;
            i += 3;
        } else if (starts("\xE2\x88\xA8")) {
            t.k = TK::KwOr;
            i += 3;
        } else if (starts("\xE2\x89\xA4")) {
            t.k = TK::Le;
            i += 3;
        } else if (starts("\xE2\x89\xA5")) {
            t.k = TK::Ge;
            i += 3;
        } else if (starts("\xE2\x89\xA0")) {
            t.k = TK::Ne;
            i += 3;
        } else if (starts("\xC2\xB7")) {
            t.k = TK::Star;
            i += 2;
        } else {
            fail(ErrKind::SyntaxError, "unexpected character", i);
        }
        out.push_back(std::move(t));
    }
    out.push_back(LTok{});
    out.back().pos = n;
    return out;
}

// ---------------------------------------------------------------- parser

class LParser {
  public:
    explicit LParser(std::string_view src) : toks_(lex_lstar(src)) {}

    Statement parse() {
        Statement s = parse_or();
        if (peek().k != TK::End) fail(ErrKind::SyntaxError, "trailing input", peek().pos);
        return s;
    }

  private:
    const LTok& peek(int k = 0) const { return toks_[idx_ + k]; }
    const LTok& next() { return toks_[idx_++]; }

    void expect(TK k, const char* what) {
        if (peek().k != k) fail(ErrKind::SyntaxError, std::string("expected ") + what, peek().pos);
        next();
    }

    Statement parse_or() {
        Statement s = parse_and();
        while (peek().k == TK::KwOr) {
            next();
            s = Statement::disj(std::move(s), parse_and());
        }
        return s;
    }

    Statement parse_and() {
        Statement s = parse_unit();
        while (peek().k == TK::KwAnd) {
            next();
            s = Statement::conj(std::move(s), parse_unit());
        }
        return s;
    }

    Statement parse_unit() {
        const LTok& t = peek();
        if (t.k == TK::KwExists) {
            next();
            std::string var = expect_var();
            bind(var, t.pos);
            expect(TK::Colon, "':'");
            Statement body = parse_or();
            unbind(var);
            return Statement::exists(var, std::move(body));
        }
        if (t.k == TK::KwForall) {
            next();
            std::string var = expect_var();
            if (peek().k != TK::Le)
                fail(ErrKind::ForbiddenConnective,
                     "universal quantification must be bounded: forall " + var + " <= b : ...",
                     t.pos);
            next();
            Term bound = parse_term("a bound");
            bind(var, t.pos);
            expect(TK::Colon, "':'");
            Statement body = parse_or();
            unbind(var);
            return Statement::bounded_all(var, bound, std::move(body));
        }
        if (t.k == TK::LParen) {
            next();
            Statement s = parse_or();
            expect(TK::RParen, "')'");
            return s;
        }
        return parse_atom();
    }

    std::string expect_var() {
        if (peek().k != TK::Var)
            fail(ErrKind::SyntaxError, "expected a variable name", peek().pos);
        return next().text;
    }

    void bind(const std::string& v, std::size_t pos) {
        if (bound_.count(v))
            fail(ErrKind::SyntaxError, "variable '" + v + "' is already bound in this scope", pos);
        bound_.insert(v);
    }
    void unbind(const std::string& v) { bound_.erase(v); }

    bool term_starts() const {
        TK k = peek().k;
        return k == TK::Var || k == TK::Alias || k == TK::RName || k == TK::Num;
    }

    Term parse_term(const char* what) {
        const LTok& t = peek();
        switch (t.k) {
            case TK::Num: next(); return Term::make_name(ObjectName::numeral(t.text));
            case TK::RName: next(); return Term::make_name(ObjectName::rname(t.text));
            case TK::Var: next(); return Term::var(t.text);
            case TK::Alias: next(); return Term::alias(t.text);
            default:
                fail(ErrKind::SyntaxError, std::string("expected ") + what, t.pos);
        }
    }

    Statement parse_atom() {
        if (!term_starts())
            fail(ErrKind::SyntaxError, "expected a statement", peek().pos);

        // relation application: term '(' ... ')'
        if (peek(1).k == TK::LParen) {
            Term head = parse_term("a relation");
            next(); // (
            std::vector<Term> args;
            args.push_back(parse_rel_arg());
            while (peek().k == TK::Comma) {
                next();
                args.push_back(parse_rel_arg());
            }
            expect(TK::RParen, "')'");
            return Statement::rel(std::move(head), std::move(args));
        }

        AExpr lhs = parse_aexpr();
        ACmp cmp;
        switch (peek().k) {
            case TK::Eq: cmp = ACmp::Eq; break;
            case TK::Ne: cmp = ACmp::Ne; break;
            case TK::Lt: cmp = ACmp::Lt; break;
            case TK::Le: cmp = ACmp::Le; break;
            case TK::Gt: cmp = ACmp::Gt; break;
            case TK::Ge: cmp = ACmp::Ge; break;
            default:
                fail(ErrKind::SyntaxError, "expected a comparison operator", peek().pos);
        }
        next();
        AExpr rhs = parse_aexpr();

        // equality between two bare terms is name equality, not arithmetic
        if ((cmp == ACmp::Eq || cmp == ACmp::Ne) && lhs.k == AExpr::K::Term &&
            rhs.k == AExpr::K::Term && lhs.term.k != Term::K::Alias &&
            rhs.term.k != Term::K::Alias)
            return Statement::eq(lhs.term, rhs.term, cmp == ACmp::Ne);
        check_no_alias(lhs);
        check_no_alias(rhs);
        return Statement::arith(cmp, std::move(lhs), std::move(rhs));
    }

    Term parse_rel_arg() {
        Term t = parse_term("a relation argument");
        if (t.k == Term::K::Alias)
            fail(ErrKind::SyntaxError,
                 "alias '" + t.id + "' may only be applied, not passed as an argument "
                                    "(its relation index is not computed)",
                 peek().pos);
        return t;
    }

    void check_no_alias(const AExpr& a) {
        if (a.k == AExpr::K::Term) {
            if (a.term.k == Term::K::Alias)
                fail(ErrKind::SyntaxError,
                     "alias '" + a.term.id + "' cannot appear in arithmetic", peek().pos);
        } else {
            for (const auto& k : a.kids) check_no_alias(k);
        }
    }

    AExpr parse_aexpr() {
        std::vector<AExpr> sum;
        sum.push_back(parse_aprod());
        while (peek().k == TK::Plus) {
            next();
            sum.push_back(parse_aprod());
        }
        return sum.size() == 1 ? std::move(sum[0]) : AExpr::add(std::move(sum));
    }

    AExpr parse_aprod() {
        std::vector<AExpr> prod;
        prod.push_back(AExpr::of(parse_term("an arithmetic operand")));
        while (peek().k == TK::Star) {
            next();
            prod.push_back(AExpr::of(parse_term("an arithmetic operand")));
        }
        return prod.size() == 1 ? std::move(prod[0]) : AExpr::mul(std::move(prod));
    }

    std::vector<LTok> toks_;
    std::size_t idx_ = 0;
    std::set<std::string> bound_;
};

} // namespace detail

// Parse a statement. When `require_closed` is set, any free variable is an
// UnboundVariable error (used for files evaluated without an environment).
inline Statement parse_lstar(std::string_view text, bool require_closed = false) {
    Statement s = detail::LParser(text).parse();
    if (require_closed) {
        auto free = free_vars(s);
        if (!free.empty())
            fail(ErrKind::UnboundVariable,
                 "statement has free variable '" + *free.begin() + "'");
    }
    return s;
}

// ---------------------------------------------------------------- unparse

namespace detail {

inline void unparse_term(std::string& out, const Term& t) {
    switch (t.k) {
        case Term::K::Name: out += t.name.text(); break;
        case Term::K::Var: out += t.id; break;
        case Term::K::Alias: out += t.id; break;
    }
}

inline void unparse_aexpr(std::string& out, const AExpr& a, bool parent_mul) {
    switch (a.k) {
        case AExpr::K::Term: unparse_term(out, a.term); break;
        case AExpr::K::Add:
            for (std::size_t i = 0; i < a.kids.size(); ++i) {
                if (i) out += " + ";
                unparse_aexpr(out, a.kids[i], false);
            }
            break;
        case AExpr::K::Mul:
            for (std::size_t i = 0; i < a.kids.size(); ++i) {
                if (i) out += " * ";
                unparse_aexpr(out, a.kids[i], true);
            }
            break;
    }
    (void)parent_mul;
}

inline const char* cmp_text(ACmp c) {
    switch (c) {
        case ACmp::Eq: return " = ";
        case ACmp::Ne: return " != ";
        case ACmp::Lt: return " < ";
        case ACmp::Le: return " <= ";
        case ACmp::Gt: return " > ";
        case ACmp::Ge: return " >= ";
    }
    return "?";
}

inline void unparse_stmt(std::string& out, const Statement& s, int parent_prec) {
    // precedence: or=1, and=2, atoms/quantifiers=3 (quantifier bodies reach right)
    switch (s.k) {
        case Statement::K::Eq:
        case Statement::K::Neq:
            unparse_term(out, s.t1);
            out += (s.k == Statement::K::Neq ? " != " : " = ");
            unparse_term(out, s.t2);
            break;
        case Statement::K::Rel:
            unparse_term(out, s.head);
            out.push_back('(');
            for (std::size_t i = 0; i < s.args.size(); ++i) {
                if (i) out += ", ";
                unparse_term(out, s.args[i]);
            }
            out.push_back(')');
            break;
        case Statement::K::Arith:
            unparse_aexpr(out, s.a1, false);
            out += cmp_text(s.cmp);
            unparse_aexpr(out, s.a2, false);
            break;
        case Statement::K::And:
        case Statement::K::Or: {
            int prec = s.k == Statement::K::And ? 2 : 1;
            bool paren = prec < parent_prec;
            if (paren) out.push_back('(');
            unparse_stmt(out, s.kids[0], prec + 1);
            out += (s.k == Statement::K::And ? " and " : " or ");
            unparse_stmt(out, s.kids[1], prec);
            if (paren) out.push_back(')');
            break;
        }
        case Statement::K::Exists:
        case Statement::K::BoundedAll: {
            bool paren = parent_prec > 1;
            if (paren) out.push_back('(');
            if (s.k == Statement::K::Exists) {
                out += "exists " + s.var + " : ";
            } else {
                out += "forall " + s.var + " <= ";
                unparse_term(out, s.bound);
                out += " : ";
            }
            unparse_stmt(out, s.kids[0], 1);
            if (paren) out.push_back(')');
            break;
        }
    }
}

} // namespace detail

inline std::string unparse_lstar(const Statement& s) {
    std::string out;
    detail::unparse_stmt(out, s, 1);
    return out;
}

} // namespace tvl::lstar

#endif
