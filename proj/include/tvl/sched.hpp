// Deterministic dovetailing: budgeted execution of one machine, round-robin
// racing of several, and the growing-pool search over the canonical object
// stream. Fuel accounts for every machine step plus one unit of bookkeeping
// per admitted candidate; identical inputs and budgets always produce
// identical winners, witnesses, and step counts.
#ifndef TVL_SCHED_HPP
#define TVL_SCHED_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tvl/errors.hpp"
#include "tvl/naming.hpp"
#include "tvl/vm.hpp"

namespace tvl::sched {

using lcore::Machine;
using lcore::Program;
using lcore::Verdict;
using naming::ObjectName;

// Truth of a closed statement is the halting of its program.
inline Verdict eval_closed(const Program& p, std::uint64_t fuel) {
    if (p.arity != 0)
        fail(ErrKind::NotClosed, "closed evaluation requires an argument-free program");
    return lcore::run(p, {}, fuel);
}

struct RaceResult {
    Verdict verdict;
    std::size_t winner = static_cast<std::size_t>(-1); // valid when halted
    std::uint64_t fuel_spent = 0;
};

// Steps all machines round-robin, `quantum` steps each per round, against one
// shared budget. The first machine to halt wins; stepping is serialized, so
// ties cannot occur.
inline RaceResult race(const std::vector<std::pair<Program, std::vector<std::string>>>& entries,
                       std::uint64_t fuel, std::uint64_t quantum = 1) {
    if (entries.empty()) fail(ErrKind::BadConfig, "race requires at least one machine");
    if (quantum < 1) fail(ErrKind::BadConfig, "quantum must be >= 1");
    std::vector<Machine> ms;
    ms.reserve(entries.size());
    for (const auto& [p, inputs] : entries) ms.emplace_back(p, inputs);

    // a machine with an empty body is already halted at zero steps
    for (std::size_t i = 0; i < ms.size(); ++i)
        if (ms[i].halted()) return {Verdict::halted(0), i, 0};

    std::uint64_t spent = 0;
    while (spent < fuel) {
        for (std::size_t i = 0; i < ms.size(); ++i) {
            for (std::uint64_t q = 0; q < quantum; ++q) {
                if (spent >= fuel) return {Verdict::out_of_fuel(fuel), {}, spent};
                ms[i].step();
                ++spent;
                if (ms[i].halted()) return {Verdict::halted(ms[i].steps()), i, spent};
            }
        }
    }
    return {Verdict::out_of_fuel(fuel), {}, spent};
}

struct DovetailResult {
    Verdict verdict;
    ObjectName witness; // valid when halted
    std::uint64_t candidates_admitted = 0;
    std::uint64_t fuel_spent = 0;
};

using Instantiate =
    std::function<std::pair<Program, std::vector<std::string>>(const ObjectName&)>;

// Growing-pool search over the canonical object stream 0, R0, 1, R1, ...
// Each round admits `admission` new candidates (1 fuel of bookkeeping each),
// then steps every admitted machine `quantum` steps in admission order. The
// first machine to halt determines the witness.
inline DovetailResult dovetail_exists(const Instantiate& instantiate, std::uint64_t fuel,
                                      std::uint64_t quantum = 1, std::uint64_t admission = 1) {
    if (quantum < 1 || admission < 1)
        fail(ErrKind::BadConfig, "quantum and admission rate must be >= 1");
    struct Task {
        ObjectName name;
        Machine machine;
    };
    std::vector<Task> pool;
    std::uint64_t spent = 0;
    std::uint64_t next_k = 0;

    while (true) {
        for (std::uint64_t a = 0; a < admission; ++a) {
            if (spent >= fuel)
                return {Verdict::out_of_fuel(fuel), {}, next_k, spent};
            ++spent; // admission bookkeeping
            ObjectName name = naming::canonical_stream(next_k++);
            auto [p, inputs] = instantiate(name);
            pool.push_back(Task{name, Machine(p, inputs)});
            if (pool.back().machine.halted())
                return {Verdict::halted(0), name, next_k, spent};
        }
        for (auto& task : pool) {
            if (task.machine.halted()) continue; // cannot happen; halting returns
            for (std::uint64_t q = 0; q < quantum; ++q) {
                if (spent >= fuel)
                    return {Verdict::out_of_fuel(fuel), {}, next_k, spent};
                task.machine.step();
                ++spent;
                if (task.machine.halted())
                    return {Verdict::halted(task.machine.steps()), task.name, next_k, spent};
            }
        }
    }
}

} // namespace tvl::sched

#endif
