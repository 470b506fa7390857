#pragma once

// Lowering of an AIGER circuit to a Boolean transition system <V, T, I, P>,
// plus concrete simulation and Tseitin encoding into the SAT core.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mabic3/aiger.hpp"
#include "mabic3/sat.hpp"

namespace mabic3 {

/// A conjunction of literals over latch indices (sat::Lit with var = latch
/// index), kept sorted by variable. Its negation is a clause.
using Cube = std::vector<sat::Lit>;

/// A full assignment to latches (or inputs).
using Assignment = std::vector<bool>;

inline sat::Lit state_lit(std::size_t latch, bool value) {
    return sat::Lit(static_cast<sat::Var>(latch), !value);
}

inline void normalize(Cube& c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
}

/// True when every literal of `a` occurs in `b` (both sorted).
inline bool subset_of(const Cube& a, const Cube& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// True when the full assignment `s` lies inside cube `c`.
inline bool contains_state(const Cube& c, const Assignment& s) {
    for (sat::Lit l : c) {
        if (s[static_cast<std::size_t>(l.var())] == l.sign()) return false;
    }
    return true;
}

inline Cube cube_of(const Assignment& s) {
    Cube c;
    c.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) c.push_back(state_lit(i, s[i]));
    return c;
}

enum class VarRole : std::uint8_t { Constant, Input, Latch, And };

struct TransitionSystem {
    struct LatchInfo {
        aiger::Literal current;
        aiger::Literal next;
        std::optional<bool> init;  // nullopt for X reset
    };

    std::uint32_t max_var = 0;
    std::vector<aiger::Literal> inputs;
    std::vector<LatchInfo> latches;
    std::vector<aiger::AndGate> ands;  // sorted by lhs
    aiger::Literal bad;
    std::vector<aiger::Literal> constraints;
    std::size_t property_index = 0;

    std::vector<VarRole> role;        // per AIGER variable
    std::vector<std::uint32_t> slot;  // index within inputs/latches/ands

    std::size_t num_latches() const { return latches.size(); }
    std::size_t num_inputs() const { return inputs.size(); }

    /// True when cube `c` shares at least one state with I.
    bool intersects_init(const Cube& c) const {
        for (sat::Lit l : c) {
            const auto& init = latches[static_cast<std::size_t>(l.var())].init;
            if (init && *init == l.sign()) return false;
        }
        return true;
    }

    bool is_initial(const Assignment& s) const {
        for (std::size_t i = 0; i < latches.size(); ++i) {
            if (latches[i].init && *latches[i].init != s[i]) return false;
        }
        return true;
    }

    /// Literals of I as a cube (X-reset latches are unconstrained).
    Cube init_cube() const {
        Cube c;
        for (std::size_t i = 0; i < latches.size(); ++i) {
            if (latches[i].init) c.push_back(state_lit(i, *latches[i].init));
        }
        return c;
    }
};

/// Lowers the circuit, selecting bad property `property_index` (or the
/// output of that index when the B section is empty).
inline TransitionSystem to_transition_system(const aiger::AigerModel& m, std::size_t property_index = 0) {
    TransitionSystem ts;
    ts.max_var = m.max_var_index;
    ts.inputs = m.inputs;
    ts.constraints = m.constraints;
    ts.ands = m.ands;
    std::sort(ts.ands.begin(), ts.ands.end(),
              [](const aiger::AndGate& a, const aiger::AndGate& b) { return a.lhs < b.lhs; });

    const auto& props = m.bad_props.empty() ? m.outputs : m.bad_props;
    if (property_index >= props.size()) {
        throw std::out_of_range("property index " + std::to_string(property_index) + " out of range (" +
                                std::to_string(props.size()) + " available)");
    }
    ts.bad = props[property_index];
    ts.property_index = property_index;

    ts.role.assign(m.max_var_index + 1, VarRole::Constant);
    ts.slot.assign(m.max_var_index + 1, 0);
    for (std::size_t i = 0; i < m.inputs.size(); ++i) {
        ts.role[m.inputs[i].var()] = VarRole::Input;
        ts.slot[m.inputs[i].var()] = static_cast<std::uint32_t>(i);
    }
    for (std::size_t i = 0; i < m.latches.size(); ++i) {
        const auto& l = m.latches[i];
        std::optional<bool> init;
        if (l.reset == aiger::Reset::Zero) init = false;
        if (l.reset == aiger::Reset::One) init = true;
        ts.latches.push_back({l.current, l.next, init});
        ts.role[l.current.var()] = VarRole::Latch;
        ts.slot[l.current.var()] = static_cast<std::uint32_t>(i);
    }
    for (std::size_t i = 0; i < ts.ands.size(); ++i) {
        ts.role[ts.ands[i].lhs.var()] = VarRole::And;
        ts.slot[ts.ands[i].lhs.var()] = static_cast<std::uint32_t>(i);
    }
    return ts;
}

/// Concrete evaluation of one step.
class Simulator {
public:
    explicit Simulator(const TransitionSystem& ts) : ts_(ts), values_(ts.max_var + 1, 0) {}

    void evaluate(const Assignment& state, const Assignment& inputs) {
        values_[0] = 0;
        for (std::size_t i = 0; i < ts_.inputs.size(); ++i) values_[ts_.inputs[i].var()] = inputs[i];
        for (std::size_t i = 0; i < ts_.latches.size(); ++i) {
            values_[ts_.latches[i].current.var()] = state[i];
        }
        for (const auto& g : ts_.ands) values_[g.lhs.var()] = value(g.rhs0) && value(g.rhs1);
    }

    bool value(aiger::Literal l) const { return (values_[l.var()] != 0) != l.negated(); }

    bool bad() const { return value(ts_.bad); }

    bool constraints_hold() const {
        return std::all_of(ts_.constraints.begin(), ts_.constraints.end(),
                           [this](aiger::Literal c) { return value(c); });
    }

    Assignment next_state() const {
        Assignment n(ts_.latches.size());
        for (std::size_t i = 0; i < n.size(); ++i) n[i] = value(ts_.latches[i].next);
        return n;
    }

private:
    const TransitionSystem& ts_;
    std::vector<std::uint8_t> values_;
};

/// Solver literals of one Tseitin encoding of the system: the current-state
/// copy with full logic, next-state literals that alias the latch next
/// functions, and a second copy of the constraint cone over the next state.
struct Encoding {
    sat::Var constant = sat::kNoVar;  // forced false
    std::vector<sat::Lit> latch;      // V
    std::vector<sat::Lit> next;       // V'
    std::vector<sat::Lit> input;
    std::vector<sat::Lit> input_next;
    sat::Lit bad;
    std::vector<sat::Lit> constraint;
    std::vector<sat::Lit> constraint_next;

    sat::Lit cur(sat::Lit state) const { return latch[static_cast<std::size_t>(state.var())] ^ state.sign(); }
    sat::Lit primed(sat::Lit state) const { return next[static_cast<std::size_t>(state.var())] ^ state.sign(); }
    sat::Lit init_lit(const TransitionSystem& ts, std::size_t i) const {
        return latch[i] ^ !*ts.latches[i].init;
    }
};

/// Adds T (and both constraint copies as definitions, not assertions) to `solver`.
inline Encoding encode(const TransitionSystem& ts, sat::Solver& solver) {
    Encoding e;
    e.constant = solver.new_var();
    solver.add_clause({sat::neg(e.constant)});

    const std::size_t nvars = ts.max_var + 1;
    std::vector<sat::Lit> map0(nvars, sat::kUndefLit);
    map0[0] = sat::pos(e.constant);
    auto lit0 = [&](aiger::Literal l) { return map0[l.var()] ^ l.negated(); };

    for (auto in : ts.inputs) {
        map0[in.var()] = sat::pos(solver.new_var());
        e.input.push_back(map0[in.var()]);
    }
    for (const auto& l : ts.latches) {
        map0[l.current.var()] = sat::pos(solver.new_var());
        e.latch.push_back(map0[l.current.var()]);
    }
    for (const auto& g : ts.ands) {
        sat::Lit o = sat::pos(solver.new_var());
        map0[g.lhs.var()] = o;
        sat::Lit a = lit0(g.rhs0), b = lit0(g.rhs1);
        solver.add_clause({~o, a});
        solver.add_clause({~o, b});
        solver.add_clause({o, ~a, ~b});
    }
    for (const auto& l : ts.latches) e.next.push_back(lit0(l.next));
    e.bad = lit0(ts.bad);
    for (auto c : ts.constraints) e.constraint.push_back(lit0(c));

    if (!ts.constraints.empty()) {
        // Cone of influence of the constraints, re-encoded over V'.
        std::vector<std::uint8_t> in_cone(nvars, 0);
        std::vector<std::uint32_t> stack;
        for (auto c : ts.constraints) stack.push_back(c.var());
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            if (in_cone[v]) continue;
            in_cone[v] = 1;
            if (ts.role[v] == VarRole::And) {
                const auto& g = ts.ands[ts.slot[v]];
                stack.push_back(g.rhs0.var());
                stack.push_back(g.rhs1.var());
            }
        }
        std::vector<sat::Lit> map1(nvars, sat::kUndefLit);
        map1[0] = sat::pos(e.constant);
        auto lit1 = [&](aiger::Literal l) { return map1[l.var()] ^ l.negated(); };
        for (auto in : ts.inputs) {
            map1[in.var()] = sat::pos(solver.new_var());
            e.input_next.push_back(map1[in.var()]);
        }
        for (std::size_t i = 0; i < ts.latches.size(); ++i) map1[ts.latches[i].current.var()] = e.next[i];
        for (const auto& g : ts.ands) {
            if (!in_cone[g.lhs.var()]) continue;
            sat::Lit o = sat::pos(solver.new_var());
            map1[g.lhs.var()] = o;
            sat::Lit a = lit1(g.rhs0), b = lit1(g.rhs1);
            solver.add_clause({~o, a});
            solver.add_clause({~o, b});
            solver.add_clause({o, ~a, ~b});
        }
        for (auto c : ts.constraints) e.constraint_next.push_back(lit1(c));
    }
    return e;
}

}  // namespace mabic3
