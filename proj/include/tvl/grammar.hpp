// Character-level grammar of the language, plus an exact counting engine over
// it. The engine ranks and unranks valid program sources in shortlex order by
// counting derivations with big integers. The grammar here must accept
// exactly the sources parse_program accepts (restricted to the data alphabet,
// i.e. spaces as the only whitespace); the test suite checks that equivalence
// on generated and adversarial inputs, and that every accepted string has
// exactly one derivation.
#ifndef TVL_GRAMMAR_HPP
#define TVL_GRAMMAR_HPP

#include <bitset>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tvl/alphabet.hpp"
#include "tvl/errors.hpp"

namespace tvl::naming {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------- grammar

enum class GOp { Lit, Class, Seq, Alt };

struct GNode {
    GOp op = GOp::Lit;
    std::string lit;               // Lit
    std::bitset<kSigmaSize> cls;   // Class, indexed by sigma rank
    std::vector<int> kids;         // Seq / Alt
    std::string name;              // for diagnostics
};

class Grammar {
  public:
    const std::vector<GNode>& nodes() const { return nodes_; }
    int start() const { return start_; }

    int lit(std::string s) {
        GNode n;
        n.op = GOp::Lit;
        n.lit = std::move(s);
        return add(std::move(n));
    }
    int eps() { return eps_; }
    int cls(std::bitset<kSigmaSize> bits) {
        GNode n;
        n.op = GOp::Class;
        n.cls = bits;
        return add(std::move(n));
    }
    int chars(std::string_view set) {
        std::bitset<kSigmaSize> b;
        for (char c : set) b.set(sigma_rank(c));
        return cls(b);
    }
    int range(char lo, char hi) {
        std::bitset<kSigmaSize> b;
        for (char c = lo; c <= hi; ++c) b.set(sigma_rank(c));
        return cls(b);
    }
    int seq(std::vector<int> kids) {
        GNode n;
        n.op = GOp::Seq;
        n.kids = std::move(kids);
        return add(std::move(n));
    }
    int alt(std::vector<int> kids) {
        GNode n;
        n.op = GOp::Alt;
        n.kids = std::move(kids);
        return add(std::move(n));
    }
    // Reserve a node to be defined later (for recursive rules).
    int fwd() { return add(GNode{}); }
    void define_alt(int id, std::vector<int> kids) {
        nodes_[id].op = GOp::Alt;
        nodes_[id].kids = std::move(kids);
    }
    void define_seq(int id, std::vector<int> kids) {
        nodes_[id].op = GOp::Seq;
        nodes_[id].kids = std::move(kids);
    }
    void set_name(int id, std::string n) { nodes_[id].name = std::move(n); }
    void set_start(int id) { start_ = id; }

    // The language grammar. `relations_only` restricts the signature count to
    // >= 1, which is the named-program family; otherwise any count including 0.
    static const Grammar& language(bool relations_only);

  private:
    int add(GNode n) {
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size()) - 1;
    }

    std::vector<GNode> nodes_;
    int start_ = -1;
    int eps_ = -1;

    friend Grammar build_language_grammar(bool);
};

// Identifier automaton: [a-z][a-z0-9_]* minus the exact reserved words, and,
// when `exclude_args` is set, minus the arg<digits> family as well. Built as
// a keyword-trie difference so alternatives stay first-character disjoint.
inline int build_ident_node(Grammar& g, bool exclude_args) {
    static const char* kKeywords[] = {"args", "if", "else", "while", "halt", "head", "tail"};

    std::bitset<kSigmaSize> idchar;
    for (char c = 'a'; c <= 'z'; ++c) idchar.set(sigma_rank(c));
    for (char c = '0'; c <= '9'; ++c) idchar.set(sigma_rank(c));
    idchar.set(sigma_rank('_'));

    // ANYTAIL := eps | idchar ANYTAIL
    int anytail = g.fwd();
    g.define_alt(anytail, {g.eps(), g.seq({g.cls(idchar), anytail})});
    g.set_name(anytail, "idtail");

    // ARGDIG := digits* with at least the one digit already consumed; cannot
    // end here (prefix is argN), may continue with digits or escape to free.
    int argdig = -1;
    if (exclude_args) {
        std::bitset<kSigmaSize> nondigit_id = idchar;
        for (char c = '0'; c <= '9'; ++c) nondigit_id.reset(sigma_rank(c));
        argdig = g.fwd();
        std::bitset<kSigmaSize> digit;
        for (char c = '0'; c <= '9'; ++c) digit.set(sigma_rank(c));
        g.define_alt(argdig, {g.seq({g.cls(digit), argdig}), g.seq({g.cls(nondigit_id), anytail})});
        g.set_name(argdig, "argdigits");
    }

    struct Trie {
        std::map<char, int> kids;
        bool final_kw = false;
    };
    std::vector<Trie> trie(1);
    for (const char* kw : kKeywords) {
        int at = 0;
        for (const char* p = kw; *p; ++p) {
            auto it = trie[at].kids.find(*p);
            if (it == trie[at].kids.end()) {
                trie.push_back({});
                it = trie[at].kids.emplace(*p, static_cast<int>(trie.size()) - 1).first;
            }
            at = it->second;
        }
        trie[at].final_kw = true;
    }

    // build a node per trie state, with `prefix` tracked for the arg rule
    std::map<int, int> built;
    auto rec = [&](auto&& self, int state, const std::string& prefix) -> int {
        auto it = built.find(state);
        if (it != built.end()) return it->second;
        int id = g.fwd();
        built[state] = id;
        std::vector<int> alts;
        bool root = prefix.empty();
        if (!root && !trie[state].final_kw) alts.push_back(g.eps());
        std::bitset<kSigmaSize> free_set;
        if (root) {
            for (char c = 'a'; c <= 'z'; ++c) free_set.set(sigma_rank(c));
        } else {
            free_set = idchar;
        }
        for (auto& [c, child] : trie[state].kids) {
            free_set.reset(sigma_rank(c));
            alts.push_back(g.seq({g.lit(std::string(1, c)), self(self, child, prefix + c)}));
        }
        if (exclude_args && prefix == "arg") {
            for (char c = '0'; c <= '9'; ++c) {
                if (free_set.test(sigma_rank(c))) {
                    free_set.reset(sigma_rank(c));
                }
            }
            std::bitset<kSigmaSize> digit;
            for (char c = '0'; c <= '9'; ++c) digit.set(sigma_rank(c));
            alts.push_back(g.seq({g.cls(digit), argdig}));
        }
        if (free_set.any()) alts.push_back(g.seq({g.cls(free_set), anytail}));
        g.define_alt(id, std::move(alts));
        g.set_name(id, (exclude_args ? "lhs@" : "ident@") + (prefix.empty() ? "^" : prefix));
        return id;
    };
    return rec(rec, 0, "");
}

inline Grammar build_language_grammar(bool relations_only) {
    Grammar g;
    g.eps_ = g.lit("");
    g.set_name(g.eps_, "eps");

    int sp = g.chars(" ");
    int ows = g.fwd();
    g.define_alt(ows, {g.eps(), g.seq({sp, ows})});
    g.set_name(ows, "ows");
    int ws1 = g.seq({sp, ows});
    g.set_name(ws1, "ws1");

    int digit = g.range('0', '9');
    int digits = g.fwd();
    g.define_alt(digits, {g.eps(), g.seq({digit, digits})});
    int posnat = g.seq({g.range('1', '9'), digits});
    g.set_name(posnat, "posnat");
    int signat = relations_only ? posnat : g.alt({g.lit("0"), posnat});

    int ident = build_ident_node(g, false);
    int lhs = build_ident_node(g, true);

    std::bitset<kSigmaSize> plain;
    plain.set();
    plain.reset(sigma_rank('"'));
    plain.reset(sigma_rank('\\'));
    int slitem = g.alt({g.cls(plain), g.seq({g.lit("\\"), g.chars("\"\\")})});
    int slchars = g.fwd();
    g.define_alt(slchars, {g.eps(), g.seq({slitem, slchars})});
    int strlit = g.seq({g.lit("\""), slchars, g.lit("\"")});
    g.set_name(strlit, "strlit");

    int expr = g.fwd();
    int prim_w = g.alt({ident, g.seq({g.lit("head("), ows, expr, ows, g.lit(")")}),
                        g.seq({g.lit("tail("), ows, expr, ows, g.lit(")")})});
    g.set_name(prim_w, "primary_w");
    int prim = g.alt({prim_w, strlit});
    int cat = g.fwd();
    g.define_alt(cat, {g.eps(), g.seq({ows, g.lit("."), ows, prim, cat})});
    g.set_name(cat, "cat");
    g.define_seq(expr, {prim, cat});
    g.set_name(expr, "expr");
    int expr_w = g.seq({prim_w, cat});
    int expr_q = g.seq({strlit, cat});

    int cmpop = g.alt({g.lit("=="), g.lit("!=")});
    int cond_w = g.seq({expr_w, ows, cmpop, ows, expr});
    int cond_q = g.seq({expr_q, ows, cmpop, ows, expr});
    int condgap = g.alt({g.seq({ws1, cond_w}), g.seq({ows, cond_q})});
    g.set_name(condgap, "condgap");

    int stmts = g.fwd();
    int block = g.seq({g.lit("{"), stmts, ows, g.lit("}")});
    int assign = g.seq({lhs, ows, g.lit("="), ows, expr, ows, g.lit(";")});
    g.set_name(assign, "assign");
    int haltst = g.seq({g.lit("halt"), ows, g.lit(";")});
    int elsepart = g.alt({g.eps(), g.seq({ows, g.lit("else"), ows, block})});
    int ifst = g.seq({g.lit("if"), condgap, ows, block, elsepart});
    g.set_name(ifst, "if");
    int whilest = g.seq({g.lit("while"), condgap, ows, block});
    g.set_name(whilest, "while");
    int stmt = g.alt({assign, ifst, whilest, haltst});
    g.set_name(stmt, "stmt");
    g.define_alt(stmts, {g.eps(), g.seq({ows, stmt, stmts})});
    g.set_name(stmts, "stmts");

    int sig = g.seq({g.lit("args"), ws1, signat, ows, g.lit(";")});
    g.set_name(sig, "sig");
    int program = g.seq({sig, stmts});
    g.set_name(program, "program");
    g.set_start(program);
    return g;
}

inline const Grammar& Grammar::language(bool relations_only) {
    static const Grammar rel = build_language_grammar(true);
    static const Grammar full = build_language_grammar(false);
    return relations_only ? rel : full;
}

// ---------------------------------------------------------------- engine

// Exact derivation counting over hash-consed symbol stacks. A "stack" is the
// sequence of grammar symbols still to be derived, leftmost first; advancing
// by one character maps a stack to the (possibly several) stacks reachable by
// consuming that character. All counts are counts of derivations, so any
// ambiguity shows up as a total above one and is rejected loudly.
class GrammarEngine {
  public:
    explicit GrammarEngine(const Grammar& g) : g_(g) {
        start_ = push_node(kEmpty, g_.start());
    }

    // number of valid strings of exactly this length
    const BigInt& count_len(int len) {
        auto it = count_len_cache_.find(len);
        if (it != count_len_cache_.end()) return it->second;
        return count_len_cache_.emplace(len, count_stack(start_, len)).first->second;
    }

    // number of valid strings shorter than this length
    const BigInt& count_below_len(int len) {
        auto it = below_cache_.find(len);
        if (it != below_cache_.end()) return it->second;
        BigInt total = 0;
        for (int m = 0; m < len; ++m) total += count_len(m);
        return below_cache_.emplace(len, std::move(total)).first->second;
    }

    // 0 or 1 for an unambiguous grammar; throws Internal if a string has
    // several derivations (that would falsify every count this engine makes).
    int derivations(std::string_view s) {
        std::vector<int> live{start_};
        for (char c : s) {
            if (!sigma_has(c)) return 0;
            live = advance(live, c);
            if (live.empty()) return 0;
        }
        BigInt total = 0;
        for (int l : live) total += eps_count(l);
        if (total > 1)
            fail(ErrKind::Internal, "grammar ambiguity detected on: " + std::string(s));
        return static_cast<int>(total);
    }

    bool matches(std::string_view s) { return derivations(s) == 1; }

    // shortlex index of a valid string (precondition: matches(s))
    BigInt rank(std::string_view s) {
        const int n = static_cast<int>(s.size());
        BigInt within = 0;
        std::vector<int> live{start_};
        for (int p = 0; p < n; ++p) {
            char c = s[p];
            std::bitset<kSigmaSize> firsts;
            for (int l : live) firsts |= first_set(l);
            for (int r = 0; r < sigma_rank(c); ++r) {
                if (!firsts.test(r)) continue;
                char ch = sigma_char(r);
                for (int l : live)
                    for (int l2 : step_char(l, ch)) within += count_stack(l2, n - p - 1);
            }
            live = advance(live, c);
            if (live.empty()) fail(ErrKind::Internal, "rank of non-member string");
        }
        return count_below_len(n) + within;
    }

    // the i-th valid string in shortlex order; max_len bounds the search
    std::string unrank(const BigInt& index, int max_len) {
        BigInt rem = index;
        int m = 0;
        while (true) {
            if (m > max_len)
                fail(ErrKind::ResourceLimit,
                     "enumeration index exceeds the configured length cap (" +
                         std::to_string(max_len) + ")");
            const BigInt& c = count_len(m);
            if (rem < c) break;
            rem -= c;
            ++m;
        }
        std::string out;
        std::vector<int> live{start_};
        for (int p = 0; p < m; ++p) {
            std::bitset<kSigmaSize> firsts;
            for (int l : live) firsts |= first_set(l);
            bool chosen = false;
            for (int r = 0; r < kSigmaSize && !chosen; ++r) {
                if (!firsts.test(r)) continue;
                char ch = sigma_char(r);
                BigInt tot = 0;
                for (int l : live)
                    for (int l2 : step_char(l, ch)) tot += count_stack(l2, m - p - 1);
                if (rem < tot) {
                    out.push_back(ch);
                    live = advance(live, ch);
                    chosen = true;
                } else {
                    rem -= tot;
                }
            }
            if (!chosen) fail(ErrKind::Internal, "unrank ran out of candidates");
        }
        return out;
    }

  private:
    static constexpr int kEmpty = -1;

    struct Sym {
        int node;
        int off; // consumed prefix of a Lit
    };
    struct Cell {
        Sym sym;
        int tail;
    };

    int make_cell(Sym s, int tail) {
        const GNode& n = g_.nodes()[s.node];
        if (n.op == GOp::Lit && s.off >= static_cast<int>(n.lit.size())) return tail;
        std::uint64_t key = (static_cast<std::uint64_t>(s.node) << 40) |
                            (static_cast<std::uint64_t>(s.off) << 32) |
                            (static_cast<std::uint64_t>(tail) & 0xffffffffULL);
        auto it = cell_ids_.find(key);
        if (it != cell_ids_.end()) return it->second;
        cells_.push_back({s, tail});
        int id = static_cast<int>(cells_.size()) - 1;
        cell_ids_.emplace(key, id);
        return id;
    }

    int push_node(int tail, int node) { return make_cell({node, 0}, tail); }

    int push_kids(const std::vector<int>& kids, int tail) {
        int l = tail;
        for (std::size_t i = kids.size(); i-- > 0;) l = push_node(l, kids[i]);
        return l;
    }

    BigInt count_stack(int l, int len) {
        if (len < 0) return 0;
        if (l == kEmpty) return len == 0 ? 1 : 0;
        std::uint64_t key = (static_cast<std::uint64_t>(l) << 16) | static_cast<unsigned>(len);
        auto it = count_cache_.find(key);
        if (it != count_cache_.end()) return it->second;
        Cell c = cells_[l];
        const GNode& n = g_.nodes()[c.sym.node];
        BigInt r = 0;
        switch (n.op) {
            case GOp::Lit: {
                int k = static_cast<int>(n.lit.size()) - c.sym.off;
                if (len >= k) r = count_stack(c.tail, len - k);
                break;
            }
            case GOp::Class:
                if (len >= 1) r = BigInt(n.cls.count()) * count_stack(c.tail, len - 1);
                break;
            case GOp::Seq: r = count_stack(push_kids(n.kids, c.tail), len); break;
            case GOp::Alt:
                for (int k : n.kids) r += count_stack(push_node(c.tail, k), len);
                break;
        }
        count_cache_.emplace(key, r);
        return r;
    }

    BigInt eps_count(int l) {
        if (l == kEmpty) return 1;
        Cell c = cells_[l];
        const GNode& n = g_.nodes()[c.sym.node];
        switch (n.op) {
            case GOp::Lit:
                return (static_cast<int>(n.lit.size()) == c.sym.off) ? eps_count(c.tail)
                                                                     : BigInt(0);
            case GOp::Class: return 0;
            case GOp::Seq: return eps_count(push_kids(n.kids, c.tail));
            case GOp::Alt: {
                BigInt r = 0;
                for (int k : n.kids) r += eps_count(push_node(c.tail, k));
                return r;
            }
        }
        return 0;
    }

    const std::vector<int>& step_char(int l, char c) {
        std::uint64_t key = (static_cast<std::uint64_t>(l) << 8) | static_cast<unsigned char>(c);
        auto it = step_cache_.find(key);
        if (it != step_cache_.end()) return it->second;
        std::vector<int> out;
        if (l != kEmpty) {
            Cell cell = cells_[l];
            const GNode& n = g_.nodes()[cell.sym.node];
            switch (n.op) {
                case GOp::Lit:
                    if (n.lit[cell.sym.off] == c)
                        out.push_back(make_cell({cell.sym.node, cell.sym.off + 1}, cell.tail));
                    break;
                case GOp::Class:
                    if (n.cls.test(sigma_rank(c))) out.push_back(cell.tail);
                    break;
                case GOp::Seq: {
                    int l2 = push_kids(n.kids, cell.tail);
                    out = step_char(l2, c);
                    break;
                }
                case GOp::Alt:
                    for (int k : n.kids) {
                        const auto& sub = step_char(push_node(cell.tail, k), c);
                        out.insert(out.end(), sub.begin(), sub.end());
                    }
                    break;
            }
        }
        return step_cache_.emplace(key, std::move(out)).first->second;
    }

    std::vector<int> advance(const std::vector<int>& live, char c) {
        std::vector<int> out;
        for (int l : live) {
            const auto& s = step_char(l, c);
            out.insert(out.end(), s.begin(), s.end());
        }
        return out;
    }

    const std::bitset<kSigmaSize>& first_set(int l) {
        auto it = first_cache_.find(l);
        if (it != first_cache_.end()) return it->second;
        std::bitset<kSigmaSize> out;
        if (l != kEmpty) {
            Cell cell = cells_[l];
            const GNode& n = g_.nodes()[cell.sym.node];
            switch (n.op) {
                case GOp::Lit: out.set(sigma_rank(n.lit[cell.sym.off])); break;
                case GOp::Class: out = n.cls; break;
                case GOp::Seq: out = first_set(push_kids(n.kids, cell.tail)); break;
                case GOp::Alt:
                    for (int k : n.kids) out |= first_set(push_node(cell.tail, k));
                    break;
            }
        }
        return first_cache_.emplace(l, out).first->second;
    }

    const Grammar& g_;
    int start_;
    std::vector<Cell> cells_;
    std::unordered_map<std::uint64_t, int> cell_ids_;
    std::unordered_map<std::uint64_t, BigInt> count_cache_;
    std::unordered_map<std::uint64_t, std::vector<int>> step_cache_;
    std::unordered_map<int, std::bitset<kSigmaSize>> first_cache_;
    std::map<int, BigInt> count_len_cache_;
    std::map<int, BigInt> below_cache_;
};

} // namespace tvl::naming

#endif
