#pragma once

// Small AIG construction helper for tests. Inputs and latches must be
// declared before any gate.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mabic3/aiger.hpp"

namespace testaig {

using mabic3::aiger::Literal;

class Builder {
public:
    Literal input() {
        if (!m_.ands.empty()) throw std::logic_error("input after gates");
        Literal l = fresh();
        m_.inputs.push_back(l);
        return l;
    }

    Literal latch(mabic3::aiger::Reset r = mabic3::aiger::Reset::Zero) {
        if (!m_.ands.empty()) throw std::logic_error("latch after gates");
        Literal l = fresh();
        m_.latches.push_back({l, Literal(0), r});
        return l;
    }

    void next(Literal latch, Literal n) {
        for (auto& l : m_.latches) {
            if (l.current == latch) l.next = n;
        }
    }

    Literal and_(Literal a, Literal b) {
        if (a == Literal(0) || b == Literal(0) || a == ~b) return Literal(0);
        if (a == Literal(1)) return b;
        if (b == Literal(1) || a == b) return a;
        if (a < b) std::swap(a, b);
        auto it = strash_.find({a.raw(), b.raw()});
        if (it != strash_.end()) return it->second;
        Literal l = fresh();
        m_.ands.push_back({l, a, b});
        strash_[{a.raw(), b.raw()}] = l;
        return l;
    }
    Literal or_(Literal a, Literal b) { return ~and_(~a, ~b); }
    Literal xor_(Literal a, Literal b) { return or_(and_(a, ~b), and_(~a, b)); }

    /// Conjunction of `bits` matching the low bits of `value`.
    Literal equals(const std::vector<Literal>& bits, std::uint64_t value) {
        Literal r(1);
        for (std::size_t i = 0; i < bits.size(); ++i) r = and_(r, ((value >> i) & 1) ? bits[i] : ~bits[i]);
        return r;
    }

    void bad(Literal l) { m_.bad_props.push_back(l); }
    void constraint(Literal l) { m_.constraints.push_back(l); }

    const mabic3::aiger::AigerModel& model() const { return m_; }

    std::string aag() const {
        std::string s = "aag " + std::to_string(m_.max_var_index) + " " + std::to_string(m_.inputs.size()) + " " +
                        std::to_string(m_.latches.size()) + " 0 " + std::to_string(m_.ands.size()) + " " +
                        std::to_string(m_.bad_props.size()) + " " + std::to_string(m_.constraints.size()) + "\n";
        for (auto i : m_.inputs) s += std::to_string(i.raw()) + "\n";
        for (const auto& l : m_.latches) {
            s += std::to_string(l.current.raw()) + " " + std::to_string(l.next.raw());
            if (l.reset == mabic3::aiger::Reset::One) s += " 1";
            if (l.reset == mabic3::aiger::Reset::Undefined) s += " " + std::to_string(l.current.raw());
            s += "\n";
        }
        for (auto b : m_.bad_props) s += std::to_string(b.raw()) + "\n";
        for (auto c : m_.constraints) s += std::to_string(c.raw()) + "\n";
        for (const auto& g : m_.ands)
            s += std::to_string(g.lhs.raw()) + " " + std::to_string(g.rhs0.raw()) + " " + std::to_string(g.rhs1.raw()) + "\n";
        return s;
    }

    void write(const std::filesystem::path& p) const {
        std::ofstream(p) << aag();
    }

private:
    Literal fresh() { return Literal::make(++m_.max_var_index); }

    mabic3::aiger::AigerModel m_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, Literal> strash_;
};

/// n-bit binary counter that increments each step; returns its bits.
inline std::vector<Literal> counter(Builder& b, std::size_t n) {
    std::vector<Literal> bits;
    for (std::size_t i = 0; i < n; ++i) bits.push_back(b.latch());
    Literal carry(1);
    for (std::size_t i = 0; i < n; ++i) {
        b.next(bits[i], b.xor_(bits[i], carry));
        carry = b.and_(carry, bits[i]);
    }
    return bits;
}

}  // namespace testaig
