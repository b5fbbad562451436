// Reference evaluator for the logic. Verdicts are a knowledge state: True
// and False are sound; Unknown means the fuel budget ran out before the
// question was settled. False never comes from a failed halting search (that
// would decide the halting problem) — it only arises from decided atoms, the
// arity-mismatch and type defaults, and their propagation through the
// connectives.
//
// Existential quantification dovetails instances over the canonical object
// stream 0, R0, 1, R1, ...: round r admits candidate r and re-evaluates every
// live candidate i from scratch with a step allowance of quantum*(r-i+1).
// Re-evaluation is deterministic, so this discovers each verifying instance
// in exactly the round a resumable quantum-stepped pool would, and the
// schedule (hence the witness) matches sched::dovetail_exists at quantum 1.
// A witness-hint pass runs first for relation bodies that check execution
// certificates: the referenced program is itself executed, and if it halts,
// the number of its own trace is proposed as a candidate before the stream
// search begins. Hints never assert truth — every proposal is verified by
// evaluating the instance — so soundness is unaffected; they only move a
// workable witness to the front of an otherwise astronomically long stream.
#ifndef TVL_EVAL_HPP
#define TVL_EVAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tvl/errors.hpp"
#include "tvl/lstar.hpp"
#include "tvl/sched.hpp"
#include "tvl/trace.hpp"
#include "tvl/vm.hpp"

namespace tvl::lstar {

using naming::BigInt;

// ---------------------------------------------------------------- aliases

struct AliasEntry {
    std::string alias;
    std::string source;
    lcore::Program program;
};

class AliasTable {
  public:
    void add(std::string alias, std::string source) {
        lcore::Program p = lcore::parse_program(source);
        if (p.arity < 1)
            fail(ErrKind::BadConfig, "alias '" + alias + "' must name a relation (arity >= 1)");
        AliasEntry e{alias, std::move(source), std::move(p)};
        entries_[e.alias] = std::move(e);
    }

    const AliasEntry* find(const std::string& alias) const {
        auto it = entries_.find(alias);
        return it == entries_.end() ? nullptr : &it->second;
    }

    const std::map<std::string, AliasEntry>& entries() const { return entries_; }

  private:
    std::map<std::string, AliasEntry> entries_;
};

// ---------------------------------------------------------------- results

enum class Truth { True, False, Unknown };

inline const char* truth_name(Truth t) {
    switch (t) {
        case Truth::True: return "True";
        case Truth::False: return "False";
        case Truth::Unknown: return "Unknown";
    }
    return "?";
}

struct EvalConfig {
    std::uint64_t fuel = 1000000;
    std::uint64_t quantum = 1;
    std::uint64_t admission = 1;
    int enum_cap = naming::kDefaultEnumCap;
    bool use_witness_hints = true;
    std::uint64_t hint_fuel = 200000; // cap on one hinted certificate run
};

struct EvalResult {
    Truth verdict = Truth::Unknown;
    std::uint64_t fuel_spent = 0;
    std::optional<naming::ObjectName> witness; // top-level existential only
};

using Env = std::map<std::string, naming::ObjectName>;

// ---------------------------------------------------------------- evaluator

namespace detail {

class FuelMeter {
  public:
    explicit FuelMeter(std::uint64_t budget) : budget_(budget) {}
    std::uint64_t remaining() const { return budget_ - used_; }
    bool exhausted() const { return used_ >= budget_; }
    std::uint64_t used() const { return used_; }
    void charge(std::uint64_t n) { used_ += n <= remaining() ? n : remaining(); }

  private:
    std::uint64_t budget_;
    std::uint64_t used_ = 0;
};

class RefEvaluator {
  public:
    RefEvaluator(const AliasTable& aliases, const EvalConfig& cfg)
        : aliases_(aliases), cfg_(cfg), meter_(cfg.fuel) {}

    EvalResult evaluate(const Statement& s, const Env& env) {
        for (const auto& fv : free_vars(s))
            if (!env.count(fv))
                fail(ErrKind::MissingBinding, "no binding for free variable '" + fv + "'");
        Env scratch = env;
        Truth v = eval(s, scratch, cfg_.fuel, /*at_root=*/true);
        return {v, meter_.used(), witness_};
    }

  private:
    // ---- name/program plumbing

    naming::ObjectName term_object(const Term& t, const Env& env) {
        switch (t.k) {
            case Term::K::Name: return t.name;
            case Term::K::Var: {
                auto it = env.find(t.id);
                if (it == env.end())
                    fail(ErrKind::MissingBinding, "no binding for variable '" + t.id + "'");
                return it->second;
            }
            case Term::K::Alias:
                fail(ErrKind::Internal, "alias used as an object");
        }
        return {};
    }

    const lcore::Program& rname_program(const BigInt& index) {
        auto it = rname_cache_.find(index);
        if (it != rname_cache_.end()) return it->second;
        std::string src = naming::nth_program(index, cfg_.enum_cap);
        return rname_cache_.emplace(index, lcore::parse_program(src)).first->second;
    }

    // Runs a program under the shared meter, also bounded by `limit` steps.
    // Returns True on halt, Unknown otherwise.
    Truth run_relation(const lcore::Program& p, const std::vector<std::string>& inputs,
                       std::uint64_t limit) {
        lcore::Machine m(p, inputs);
        std::uint64_t allowed = std::min<std::uint64_t>(limit, meter_.remaining());
        std::uint64_t done = 0;
        while (!m.halted() && done < allowed) {
            m.step();
            ++done;
        }
        meter_.charge(done);
        return m.halted() ? Truth::True : Truth::Unknown;
    }

    // ---- statement evaluation

    Truth eval(const Statement& s, Env& env, std::uint64_t limit, bool at_root = false) {
        switch (s.k) {
            case Statement::K::Eq:
            case Statement::K::Neq: {
                bool same = term_object(s.t1, env).text() == term_object(s.t2, env).text();
                bool holds = (s.k == Statement::K::Eq) ? same : !same;
                return holds ? Truth::True : Truth::False;
            }
            case Statement::K::Arith: return eval_arith(s, env);
            case Statement::K::Rel: return eval_rel(s, env, limit);
            case Statement::K::And: {
                std::uint64_t before = meter_.used();
                Truth a = eval(s.kids[0], env, limit);
                if (a == Truth::False) return Truth::False;
                std::uint64_t spent = meter_.used() - before;
                Truth b = eval(s.kids[1], env, limit > spent ? limit - spent : 0);
                if (b == Truth::False) return Truth::False;
                if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
                return Truth::True;
            }
            case Statement::K::Or: {
                std::uint64_t before = meter_.used();
                Truth a = eval(s.kids[0], env, limit);
                if (a == Truth::True) return Truth::True;
                std::uint64_t spent = meter_.used() - before;
                Truth b = eval(s.kids[1], env, limit > spent ? limit - spent : 0);
                if (b == Truth::True) return Truth::True;
                if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
                return Truth::False;
            }
            case Statement::K::BoundedAll: return eval_bounded_all(s, env, limit);
            case Statement::K::Exists: return eval_exists(s, env, limit, at_root);
        }
        return Truth::Unknown;
    }

    // Arithmetic: any term denoting a relation makes the comparison false
    // (the type default); otherwise exact integer arithmetic.
    Truth eval_arith(const Statement& s, Env& env) {
        bool relation_seen = false;
        auto value = [&](auto&& self, const AExpr& a) -> BigInt {
            switch (a.k) {
                case AExpr::K::Term: {
                    naming::ObjectName n = term_object(a.term, env);
                    if (!n.is_numeral()) {
                        relation_seen = true;
                        return 0;
                    }
                    return n.value();
                }
                case AExpr::K::Add: {
                    BigInt r = 0;
                    for (const auto& k : a.kids) r += self(self, k);
                    return r;
                }
                case AExpr::K::Mul: {
                    BigInt r = 1;
                    for (const auto& k : a.kids) r *= self(self, k);
                    return r;
                }
            }
            return 0;
        };
        BigInt lhs = value(value, s.a1);
        BigInt rhs = value(value, s.a2);
        if (relation_seen) return Truth::False;
        bool holds = false;
        switch (s.cmp) {
            case ACmp::Eq: holds = lhs == rhs; break;
            case ACmp::Ne: holds = lhs != rhs; break;
            case ACmp::Lt: holds = lhs < rhs; break;
            case ACmp::Le: holds = lhs <= rhs; break;
            case ACmp::Gt: holds = lhs > rhs; break;
            case ACmp::Ge: holds = lhs >= rhs; break;
        }
        return holds ? Truth::True : Truth::False;
    }

    Truth eval_rel(const Statement& s, Env& env, std::uint64_t limit) {
        const lcore::Program* prog = nullptr;
        if (s.head.k == Term::K::Alias) {
            const AliasEntry* e = aliases_.find(s.head.id);
            if (!e) fail(ErrKind::AliasUnknown, "unknown relation alias '" + s.head.id + "'");
            prog = &e->program;
        } else {
            naming::ObjectName n = term_object(s.head, env);
            if (n.is_numeral()) return Truth::False; // numbers hold for nothing
            prog = &rname_program(n.value());
        }
        if (s.args.size() != prog->arity) return Truth::False; // arity-mismatch default
        std::vector<std::string> inputs;
        inputs.reserve(s.args.size());
        for (const auto& a : s.args) inputs.push_back(term_object(a, env).text());
        return run_relation(*prog, inputs, limit);
    }

    // Conjunction over the 2(b+1) objects 0..b and R0..Rb, numerals first.
    // One fuel unit of bookkeeping per instance keeps huge bounds from
    // spinning free of the budget.
    Truth eval_bounded_all(const Statement& s, Env& env, std::uint64_t limit) {
        std::uint64_t start = meter_.used();
        auto local_rem = [&] {
            std::uint64_t spent = meter_.used() - start;
            return limit > spent ? limit - spent : 0;
        };
        naming::ObjectName bound = term_object(s.bound, env);
        if (!bound.is_numeral()) return Truth::False; // non-number bound default
        BigInt b = bound.value();
        bool saw_unknown = false;
        for (int phase = 0; phase < 2; ++phase) {
            for (BigInt v = 0; v <= b; ++v) {
                if (meter_.exhausted() || local_rem() == 0) return Truth::Unknown;
                meter_.charge(1);
                env[s.var] = phase == 0 ? naming::ObjectName::numeral(v)
                                        : naming::ObjectName::rname(v);
                Truth t = eval(s.kids[0], env, local_rem());
                env.erase(s.var);
                if (t == Truth::False) return Truth::False;
                if (t == Truth::Unknown) saw_unknown = true;
            }
        }
        return saw_unknown ? Truth::Unknown : Truth::True;
    }

    Truth eval_exists(const Statement& s, Env& env, std::uint64_t limit, bool at_root) {
        std::uint64_t start = meter_.used();
        auto local_rem = [&] {
            std::uint64_t spent = meter_.used() - start;
            return limit > spent ? limit - spent : 0;
        };

        if (cfg_.use_witness_hints) {
            auto hinted = exec_seq_hint(s, env);
            if (hinted) {
                meter_.charge(1);
                env[s.var] = *hinted;
                Truth t = eval(s.kids[0], env, local_rem());
                env.erase(s.var);
                if (t == Truth::True) {
                    if (at_root) witness_ = *hinted;
                    return Truth::True;
                }
            }
        }

        std::vector<bool> dead;
        for (std::uint64_t r = 0;; ++r) {
            if (meter_.exhausted() || local_rem() == 0) return Truth::Unknown;
            meter_.charge(1); // admission
            dead.push_back(false);
            for (std::uint64_t i = 0; i <= r; ++i) {
                if (dead[i]) continue;
                if (meter_.exhausted() || local_rem() == 0) return Truth::Unknown;
                meter_.charge(1);
                std::uint64_t allowance = cfg_.quantum * (r - i + 1);
                naming::ObjectName cand = naming::canonical_stream(i);
                env[s.var] = cand;
                Truth t = eval(s.kids[0], env, std::min<std::uint64_t>(allowance, local_rem()));
                env.erase(s.var);
                if (t == Truth::True) {
                    if (at_root) witness_ = cand;
                    return Truth::True;
                }
                if (t == Truth::False) dead[i] = true;
            }
        }
    }

    // Hint for bodies of the shape REL(g, x) where REL resolves to a 2-ary
    // certificate checker alias named EXEC_SEQ and g is a numeral. Decodes g,
    // runs the decoded program under a bounded budget, and if it halts
    // proposes the number of its trace as the candidate witness.
    std::optional<naming::ObjectName> exec_seq_hint(const Statement& s, const Env& env) {
        const Statement& body = s.kids[0];
        if (body.k != Statement::K::Rel) return std::nullopt;
        if (body.head.k != Term::K::Alias || body.head.id != "EXEC_SEQ") return std::nullopt;
        if (!aliases_.find("EXEC_SEQ")) return std::nullopt;
        if (body.args.size() != 2) return std::nullopt;
        if (body.args[1].k != Term::K::Var || body.args[1].id != s.var) return std::nullopt;
        naming::ObjectName g;
        if (body.args[0].k == Term::K::Var) {
            auto it = env.find(body.args[0].id);
            if (it == env.end()) return std::nullopt;
            g = it->second;
        } else if (body.args[0].k == Term::K::Name) {
            g = body.args[0].name;
        } else {
            return std::nullopt;
        }
        if (!g.is_numeral()) return std::nullopt;

        lcore::Program p;
        try {
            p = lcore::parse_program(naming::godel_decode(g.value()));
        } catch (const Error&) {
            return std::nullopt;
        }
        if (p.arity != 0) return std::nullopt;

        std::uint64_t cap = std::min<std::uint64_t>(cfg_.hint_fuel, meter_.remaining());
        auto traced = lcore::emit_trace(p, {}, cap);
        if (std::holds_alternative<lcore::Verdict>(traced)) {
            meter_.charge(cap);
            return std::nullopt;
        }
        const auto& tr = std::get<lcore::Trace>(traced);
        meter_.charge(tr.frames.size() - 1);
        return naming::ObjectName::numeral(
            naming::godel_encode(lcore::serialize_trace(tr)));
    }

    const AliasTable& aliases_;
    EvalConfig cfg_;
    FuelMeter meter_;
    std::optional<naming::ObjectName> witness_;
    std::map<BigInt, lcore::Program> rname_cache_;
};

} // namespace detail

// Evaluate a statement under an environment binding its free variables.
inline EvalResult eval_ref(const Statement& s, const Env& env, const AliasTable& aliases,
                           const EvalConfig& cfg = {}) {
    detail::RefEvaluator ev(aliases, cfg);
    return ev.evaluate(s, env);
}

inline EvalResult eval_ref(const Statement& s, const AliasTable& aliases,
                           const EvalConfig& cfg = {}) {
    return eval_ref(s, Env{}, aliases, cfg);
}

} // namespace tvl::lstar

#endif
