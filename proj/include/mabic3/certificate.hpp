#pragma once

// Independent checking of verdicts, plus witness and certificate I/O.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mabic3/engine.hpp"
#include "mabic3/sat.hpp"
#include "mabic3/transition_system.hpp"

namespace mabic3 {

struct CertifyResult {
    bool ok = false;
    std::string failure;  // violated condition when !ok
    explicit operator bool() const { return ok; }
};

/// Checks a Safe invariant with fresh solvers: I => INV, INV & T => INV',
/// INV => P (under the environment constraints).
inline CertifyResult certify_invariant(const std::vector<Cube>& inv, const TransitionSystem& ts) {
    // Initiation: no cube may contain an initial state.
    {
        sat::Solver s;
        Encoding e = encode(ts, s);
        for (std::size_t i = 0; i < ts.latches.size(); ++i) {
            if (ts.latches[i].init) s.add_clause({e.init_lit(ts, i)});
        }
        for (std::size_t c = 0; c < inv.size(); ++c) {
            std::vector<sat::Lit> a;
            for (sat::Lit l : inv[c]) a.push_back(e.cur(l));
            if (s.solve(a) != sat::Result::Unsat) return {false, "initiation fails for clause " + std::to_string(c)};
        }
    }

    sat::Solver s;
    Encoding e = encode(ts, s);
    for (sat::Lit c : e.constraint) s.add_clause({c});
    for (const Cube& q : inv) {
        std::vector<sat::Lit> cl;
        for (sat::Lit l : q) cl.push_back(~e.cur(l));
        s.add_clause(cl);
    }
    // Safety.
    if (s.solve({e.bad}) != sat::Result::Unsat) return {false, "invariant does not imply the property"};
    // Consecution.
    for (sat::Lit c : e.constraint_next) s.add_clause({c});
    for (std::size_t c = 0; c < inv.size(); ++c) {
        std::vector<sat::Lit> a;
        for (sat::Lit l : inv[c]) a.push_back(e.primed(l));
        if (s.solve(a) != sat::Result::Unsat) return {false, "consecution fails for clause " + std::to_string(c)};
    }
    return {true, {}};
}

/// Replays a trace by concrete simulation from an initial state to a bad state.
inline CertifyResult replay_trace(const std::vector<TraceStep>& trace, const TransitionSystem& ts) {
    if (trace.empty()) return {false, "empty trace"};
    if (!ts.is_initial(trace.front().state)) return {false, "trace does not start in an initial state"};
    Simulator sim(ts);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const TraceStep& st = trace[i];
        if (st.state.size() != ts.latches.size() || st.inputs.size() != ts.inputs.size()) {
            return {false, "step " + std::to_string(i) + " has wrong width"};
        }
        sim.evaluate(st.state, st.inputs);
        if (!sim.constraints_hold()) return {false, "constraint violated at step " + std::to_string(i)};
        if (i + 1 < trace.size()) {
            if (sim.next_state() != trace[i + 1].state) {
                return {false, "state mismatch after step " + std::to_string(i)};
            }
        } else if (!sim.bad()) {
            return {false, "final state is not bad"};
        }
    }
    return {true, {}};
}

inline CertifyResult certify(const Verdict& v, const TransitionSystem& ts) {
    switch (v.status) {
        case Status::Safe: return certify_invariant(v.invariant, ts);
        case Status::Unsafe: return replay_trace(v.trace, ts);
        default: return {false, "verdict is inconclusive"};
    }
}

// --- witness (AIGER counterexample format) -----------------------------

inline std::string bits(const Assignment& a) {
    std::string s;
    for (bool b : a) s.push_back(b ? '1' : '0');
    return s;
}

inline void write_witness(std::ostream& os, const Verdict& v, std::size_t property) {
    if (v.status == Status::Safe) {
        os << "0\nb" << property << "\n.\n";
        return;
    }
    if (v.status != Status::Unsafe) {
        os << "2\nb" << property << "\n.\n";
        return;
    }
    os << "1\nb" << property << '\n' << bits(v.trace.front().state) << '\n';
    for (const TraceStep& st : v.trace) os << bits(st.inputs) << '\n';
    os << ".\n";
}

/// Reads an AIGER witness and rebuilds the full trace by simulation.
/// Returns false on malformed input.
inline bool read_witness(std::istream& in, const TransitionSystem& ts, std::vector<TraceStep>& trace) {
    auto parse_bits = [](const std::string& s, std::size_t width, Assignment& out) {
        if (s.size() != width) return false;
        out.assign(width, false);
        for (std::size_t i = 0; i < width; ++i) {
            if (s[i] != '0' && s[i] != '1' && s[i] != 'x') return false;
            out[i] = s[i] == '1';
        }
        return true;
    };
    std::string line;
    if (!std::getline(in, line) || line != "1") return false;
    if (!std::getline(in, line) || line.empty() || line[0] != 'b') return false;
    Assignment state;
    if (!std::getline(in, line) || !parse_bits(line, ts.latches.size(), state)) return false;
    trace.clear();
    Simulator sim(ts);
    while (std::getline(in, line) && line != ".") {
        Assignment inputs;
        if (!parse_bits(line, ts.inputs.size(), inputs)) return false;
        trace.push_back({state, inputs});
        sim.evaluate(state, inputs);
        state = sim.next_state();
    }
    return line == "." && !trace.empty();
}

// --- invariant certificate -------------------------------------------------

/// One clause per line in DIMACS style over latch indices (latch i is i+1).
inline void write_certificate(std::ostream& os, const std::vector<Cube>& inv, std::size_t num_latches) {
    os << "c inductive invariant\n";
    os << "p cnf " << num_latches << ' ' << inv.size() << '\n';
    for (const Cube& q : inv) {
        for (sat::Lit l : q) os << (~l).dimacs() << ' ';
        os << "0\n";
    }
}

inline bool read_certificate(std::istream& in, std::vector<Cube>& inv) {
    inv.clear();
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c' || line[0] == 'p') continue;
        std::istringstream ls(line);
        Cube q;
        long x;
        bool closed = false;
        while (ls >> x) {
            if (x == 0) {
                closed = true;
                break;
            }
            const auto var = static_cast<sat::Var>((x > 0 ? x : -x) - 1);
            q.push_back(~sat::Lit(var, x < 0));
        }
        if (!closed) return false;
        normalize(q);
        inv.push_back(std::move(q));
    }
    return true;
}

}  // namespace mabic3
