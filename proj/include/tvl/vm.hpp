// Deterministic fuel-metered virtual machine. One step per executed
// statement; condition evaluation is part of the enclosing statement's step.
// A program that runs off the end of its statement list halts implicitly.
#ifndef TVL_VM_HPP
#define TVL_VM_HPP

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tvl/errors.hpp"
#include "tvl/lang.hpp"
#include "tvl/strval.hpp"

namespace tvl::lcore {

struct Verdict {
    enum class Kind { Halted, OutOfFuel };
    Kind kind = Kind::OutOfFuel;
    std::uint64_t value = 0; // Halted: steps taken; OutOfFuel: the budget

    static Verdict halted(std::uint64_t steps) { return {Kind::Halted, steps}; }
    static Verdict out_of_fuel(std::uint64_t budget) { return {Kind::OutOfFuel, budget}; }
    bool is_halted() const { return kind == Kind::Halted; }
    std::uint64_t steps() const { return value; }

    bool operator==(const Verdict& o) const { return kind == o.kind && value == o.value; }
};

namespace detail {

struct CExpr {
    ExprKind kind = ExprKind::Lit;
    Str lit;
    int var = -1;
    std::vector<CExpr> kids;
};

struct CCond {
    CExpr lhs, rhs;
    bool neq = false;
};

struct Instr {
    StmtKind kind = StmtKind::Halt;
    int var = -1;
    CExpr value;
    CCond cond;
    int a = -1; // Assign: next; If: then target; While: body target
    int b = -1; // If: else target; While: exit target
    std::string path;
};

} // namespace detail

class Machine {
  public:
    Machine(const Program& p, const std::vector<std::string>& inputs) {
        if (inputs.size() != p.arity)
            fail(ErrKind::ArityMismatch, "program expects " + std::to_string(p.arity) +
                                             " inputs, got " + std::to_string(inputs.size()));
        for (const auto& in : inputs)
            if (!sigma_only(in))
                fail(ErrKind::NonAlphabetSymbol, "input contains a character outside the alphabet");
        compile(p);
        store_.assign(var_names_.size(), Str{});
        for (std::size_t i = 0; i < inputs.size(); ++i)
            store_[arg_ids_[i]] = Str(inputs[i]);
        ip_ = entry_;
        if (ip_ < 0) halted_ = true;
    }

    bool halted() const { return halted_; }
    std::uint64_t steps() const { return steps_; }

    void step() {
        assert(!halted_);
        const detail::Instr& in = code_[ip_];
        switch (in.kind) {
            case StmtKind::Assign:
                store_[in.var] = eval(in.value);
                jump(in.a);
                break;
            case StmtKind::If:
            case StmtKind::While:
                jump(eval_cond(in.cond) ? in.a : in.b);
                break;
            case StmtKind::Halt:
                halted_ = true;
                break;
        }
        ++steps_;
    }

    // Run until halt or the step count reaches `fuel`.
    Verdict run(std::uint64_t fuel) {
        while (!halted_ && steps_ < fuel) step();
        return halted_ ? Verdict::halted(steps_) : Verdict::out_of_fuel(fuel);
    }

    const std::string& path() const { return ip_ < 0 ? end_path_ : code_[ip_].path; }

    // Non-empty bindings in ascending identifier order (the canonical store view).
    std::vector<std::pair<std::string, std::string>> snapshot_store() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (int id : sorted_ids_) {
            if (!store_[id].empty())
                out.emplace_back(var_names_[id], store_[id].str());
        }
        return out;
    }

    std::string value_of(std::string_view name) const {
        auto it = var_ids_.find(std::string(name));
        if (it == var_ids_.end()) return {};
        return store_[it->second].str();
    }

    bool knows_path(const std::string& path) const {
        return path == end_path_ || path_index_.count(path) > 0;
    }

    // Reset the machine to a mid-execution state described by (path, bindings).
    // Returns false when the state is not one this program could be in: unknown
    // path, unknown variable, empty-valued binding, or the end-of-program path
    // (which is a halted state and cannot step).
    bool restore(const std::string& path,
                 const std::vector<std::pair<std::string, std::string>>& bindings) {
        auto it = path_index_.find(path);
        if (it == path_index_.end()) return false;
        for (auto& v : store_) v = Str{};
        for (const auto& [name, value] : bindings) {
            auto vit = var_ids_.find(name);
            if (vit == var_ids_.end()) return false;
            if (value.empty() || !sigma_only(value)) return false;
            store_[vit->second] = Str(value);
        }
        ip_ = it->second;
        halted_ = false;
        steps_ = 0;
        return true;
    }

  private:
    void jump(int t) {
        ip_ = t;
        if (t < 0) halted_ = true;
    }

    Str eval(const detail::CExpr& e) const {
        switch (e.kind) {
            case ExprKind::Lit: return e.lit;
            case ExprKind::Var: return store_[e.var];
            case ExprKind::Head: return eval(e.kids[0]).head();
            case ExprKind::Tail: return eval(e.kids[0]).tail();
            case ExprKind::Concat: {
                std::string s;
                for (const auto& k : e.kids) s.append(eval(k).view());
                return Str(std::move(s));
            }
        }
        return {};
    }

    bool eval_cond(const detail::CCond& c) const {
        bool eq = eval(c.lhs) == eval(c.rhs);
        return c.neq ? !eq : eq;
    }

    int intern(const std::string& name) {
        auto [it, fresh] = var_ids_.try_emplace(name, static_cast<int>(var_names_.size()));
        if (fresh) var_names_.push_back(name);
        return it->second;
    }

    detail::CExpr compile_expr(const Expr& e) {
        detail::CExpr c;
        c.kind = e.kind;
        switch (e.kind) {
            case ExprKind::Lit: c.lit = Str(e.lit); break;
            case ExprKind::Var: c.var = intern(e.var); break;
            default:
                for (const auto& k : e.kids) c.kids.push_back(compile_expr(k));
                break;
        }
        return c;
    }

    // Lowers a statement list; returns the index of its first instruction, or
    // `cont` when the list is empty. Statement k in the list has pc path
    // `prefix + (path_base + k)`.
    int lower_stmts(const std::vector<Stmt>& body, const std::string& prefix,
                    std::size_t path_base, int cont) {
        int next = cont;
        for (std::size_t k = body.size(); k-- > 0;) {
            std::string path = prefix + std::to_string(path_base + k);
            next = lower_stmt(body[k], path, next);
        }
        return next;
    }

    int lower_stmt(const Stmt& s, const std::string& path, int next) {
        int idx = static_cast<int>(code_.size());
        code_.emplace_back();
        switch (s.kind) {
            case StmtKind::Assign: {
                detail::Instr& in = code_[idx];
                in.kind = StmtKind::Assign;
                in.var = intern(s.var);
                in.value = compile_expr(s.value);
                in.a = next;
                break;
            }
            case StmtKind::Halt:
                code_[idx].kind = StmtKind::Halt;
                break;
            case StmtKind::While: {
                detail::CCond cond{compile_expr(s.cond.lhs), compile_expr(s.cond.rhs), s.cond.neq};
                int body_first = lower_stmts(s.body, path + ".", 0, idx);
                detail::Instr& in = code_[idx];
                in.kind = StmtKind::While;
                in.cond = std::move(cond);
                in.a = body_first;
                in.b = next;
                break;
            }
            case StmtKind::If: {
                detail::CCond cond{compile_expr(s.cond.lhs), compile_expr(s.cond.rhs), s.cond.neq};
                int then_first = lower_stmts(s.body, path + ".", 0, next);
                int else_first =
                    s.has_else ? lower_stmts(s.else_body, path + ".", s.body.size(), next) : next;
                detail::Instr& in = code_[idx];
                in.kind = StmtKind::If;
                in.cond = std::move(cond);
                in.a = then_first;
                in.b = else_first;
                break;
            }
        }
        code_[idx].path = path;
        return idx;
    }

    void compile(const Program& p) {
        for (std::size_t i = 0; i < p.arity; ++i)
            arg_ids_.push_back(intern("arg" + std::to_string(i + 1)));
        entry_ = lower_stmts(p.body, "", 0, -1);
        end_path_ = std::to_string(p.body.size());
        for (std::size_t i = 0; i < code_.size(); ++i)
            path_index_[code_[i].path] = static_cast<int>(i);
        sorted_ids_.resize(var_names_.size());
        for (std::size_t i = 0; i < sorted_ids_.size(); ++i) sorted_ids_[i] = static_cast<int>(i);
        std::sort(sorted_ids_.begin(), sorted_ids_.end(),
                  [&](int a, int b) { return var_names_[a] < var_names_[b]; });
    }

    std::vector<detail::Instr> code_;
    std::map<std::string, int> var_ids_;
    std::vector<std::string> var_names_;
    std::vector<int> sorted_ids_;
    std::vector<int> arg_ids_;
    std::map<std::string, int> path_index_;
    std::string end_path_;
    std::vector<Str> store_;
    int ip_ = -1;
    int entry_ = -1;
    bool halted_ = false;
    std::uint64_t steps_ = 0;
};

inline Verdict run(const Program& p, const std::vector<std::string>& inputs, std::uint64_t fuel) {
    Machine m(p, inputs);
    return m.run(fuel);
}

} // namespace tvl::lcore

#endif
