#pragma once

// AIGER 1.9 reader (ASCII "aag" and binary "aig").

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mabic3::aiger {

/// An AIGER literal: 2 * variable + polarity bit. Variable 0 is the constant.
class Literal {
public:
    constexpr Literal() = default;
    constexpr explicit Literal(std::uint32_t raw) : raw_(raw) {}
    static constexpr Literal make(std::uint32_t var, bool negated = false) {
        return Literal(2 * var + (negated ? 1u : 0u));
    }
    static constexpr Literal constant(bool value) { return Literal(value ? 1u : 0u); }

    constexpr std::uint32_t raw() const { return raw_; }
    constexpr std::uint32_t var() const { return raw_ >> 1; }
    constexpr bool negated() const { return (raw_ & 1u) != 0; }
    constexpr bool is_constant() const { return var() == 0; }
    constexpr Literal operator~() const { return Literal(raw_ ^ 1u); }
    constexpr Literal regular() const { return Literal(raw_ & ~1u); }

    friend constexpr bool operator==(Literal, Literal) = default;
    friend constexpr auto operator<=>(Literal, Literal) = default;

private:
    std::uint32_t raw_ = 0;
};

enum class Reset : std::uint8_t { Zero, One, Undefined };

struct Latch {
    Literal current;
    Literal next;
    Reset reset = Reset::Zero;
    friend bool operator==(const Latch&, const Latch&) = default;
};

struct AndGate {
    Literal lhs;
    Literal rhs0;
    Literal rhs1;
    friend bool operator==(const AndGate&, const AndGate&) = default;
};

struct AigerModel {
    std::uint32_t max_var_index = 0;
    std::vector<Literal> inputs;
    std::vector<Latch> latches;
    std::vector<Literal> outputs;
    std::vector<Literal> bad_props;
    std::vector<Literal> constraints;
    std::vector<AndGate> ands;
    // Opaque metadata; not part of structural equality.
    std::vector<std::string> symbols;
    std::vector<std::string> comments;

    bool structurally_equal(const AigerModel& o) const {
        return max_var_index == o.max_var_index && inputs == o.inputs && latches == o.latches &&
               outputs == o.outputs && bad_props == o.bad_props &&
               constraints == o.constraints && ands == o.ands;
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t offset)
        : std::runtime_error("aiger: " + what + " (line " + std::to_string(line) + ", byte " +
                             std::to_string(offset) + ")"),
          line_(line),
          offset_(offset) {}
    std::size_t line() const { return line_; }
    std::size_t offset() const { return offset_; }

private:
    std::size_t line_;
    std::size_t offset_;
};

enum class Format { Auto, Ascii, Binary };

namespace detail {

class Reader {
public:
    explicit Reader(std::string_view data) : data_(data) {}

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, pos_); }

    bool at_end() const { return pos_ >= data_.size(); }
    std::size_t pos() const { return pos_; }

    int peek(std::size_t ahead = 0) const {
        return pos_ + ahead >= data_.size() ? -1 : static_cast<unsigned char>(data_[pos_ + ahead]);
    }

    int get() {
        if (at_end()) return -1;
        char c = data_[pos_++];
        if (c == '\n') ++line_;
        return static_cast<unsigned char>(c);
    }

    void expect_char(char c, const char* what) {
        if (get() != static_cast<unsigned char>(c)) {
            fail(std::string("expected ") + what);
        }
    }

    void expect_space() { expect_char(' ', "space"); }
    void expect_newline() { expect_char('\n', "newline"); }

    std::uint64_t number() {
        if (!std::isdigit(peek())) fail("expected unsigned integer");
        std::uint64_t v = 0;
        while (std::isdigit(peek())) {
            v = v * 10 + static_cast<std::uint64_t>(get() - '0');
            if (v > std::numeric_limits<std::uint32_t>::max()) fail("integer too large");
        }
        return v;
    }

    std::string rest_of_line() {
        std::string s;
        while (!at_end() && peek() != '\n') s.push_back(static_cast<char>(get()));
        if (!at_end()) get();
        return s;
    }

    // 7-bit little-endian varint of the binary AND section.
    std::uint32_t delta() {
        std::uint64_t x = 0;
        unsigned shift = 0;
        while (true) {
            int c = get();
            if (c < 0) fail("truncated binary AND section");
            x |= static_cast<std::uint64_t>(c & 0x7f) << shift;
            if (!(c & 0x80)) break;
            shift += 7;
            if (shift > 35) fail("binary delta overflow");
        }
        if (x > std::numeric_limits<std::uint32_t>::max()) fail("binary delta overflow");
        return static_cast<std::uint32_t>(x);
    }

private:
    std::string_view data_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

inline void check_literal(Reader& r, std::uint64_t lit, std::uint32_t max_var) {
    if (lit > 2ull * max_var + 1) r.fail("literal " + std::to_string(lit) + " out of range");
}

}  // namespace detail

/// Parses an AIGER 1.9 file. Throws ParseError with line/byte position.
inline AigerModel parse(std::string_view bytes, Format hint = Format::Auto) {
    detail::Reader r(bytes);
    AigerModel m;

    std::string magic;
    while (!r.at_end() && std::isalpha(r.peek())) magic.push_back(static_cast<char>(r.get()));
    bool binary;
    if (magic == "aag") {
        binary = false;
    } else if (magic == "aig") {
        binary = true;
    } else {
        r.fail("bad magic word '" + magic + "'");
    }
    if (hint == Format::Ascii && binary) r.fail("expected ASCII format");
    if (hint == Format::Binary && !binary) r.fail("expected binary format");

    std::uint64_t header[9] = {0, 0, 0, 0, 0, 0, 0, 0, 0};
    int fields = 0;
    while (r.peek() == ' ') {
        if (fields == 9) r.fail("too many header fields");
        r.get();
        header[fields++] = r.number();
    }
    if (fields < 5) r.fail("header needs at least M I L O A");
    r.expect_newline();

    const auto M = static_cast<std::uint32_t>(header[0]);
    const std::uint64_t I = header[1], L = header[2], O = header[3], A = header[4];
    const std::uint64_t B = header[5], C = header[6], J = header[7], F = header[8];
    if (J != 0 || F != 0) r.fail("justice/fairness sections are not supported");
    if (I + L + A > M) r.fail("M is smaller than I + L + A");
    m.max_var_index = M;

    std::vector<std::uint8_t> defined(static_cast<std::size_t>(M) + 1, 0);
    auto define = [&](std::uint64_t lit, const char* what) {
        if (lit & 1u) r.fail(std::string(what) + " literal must be even");
        if (lit < 2) r.fail(std::string(what) + " literal must not be constant");
        detail::check_literal(r, lit, M);
        auto v = static_cast<std::size_t>(lit >> 1);
        if (defined[v]) r.fail("variable " + std::to_string(v) + " defined twice");
        defined[v] = 1;
    };

    for (std::uint64_t i = 0; i < I; ++i) {
        std::uint64_t lit;
        if (binary) {
            lit = 2 * (i + 1);
        } else {
            lit = r.number();
            r.expect_newline();
        }
        define(lit, "input");
        m.inputs.push_back(Literal(static_cast<std::uint32_t>(lit)));
    }

    for (std::uint64_t i = 0; i < L; ++i) {
        Latch latch;
        std::uint64_t cur;
        if (binary) {
            cur = 2 * (I + i + 1);
        } else {
            cur = r.number();
            r.expect_space();
        }
        define(cur, "latch");
        std::uint64_t next = r.number();
        detail::check_literal(r, next, M);
        latch.current = Literal(static_cast<std::uint32_t>(cur));
        latch.next = Literal(static_cast<std::uint32_t>(next));
        if (r.peek() == ' ') {
            r.get();
            std::uint64_t reset = r.number();
            if (reset == 0) {
                latch.reset = Reset::Zero;
            } else if (reset == 1) {
                latch.reset = Reset::One;
            } else if (reset == cur) {
                latch.reset = Reset::Undefined;
            } else {
                r.fail("invalid latch reset value");
            }
        }
        r.expect_newline();
        m.latches.push_back(latch);
    }

    auto literal_list = [&](std::uint64_t n, std::vector<Literal>& out) {
        for (std::uint64_t i = 0; i < n; ++i) {
            std::uint64_t lit = r.number();
            detail::check_literal(r, lit, M);
            r.expect_newline();
            out.push_back(Literal(static_cast<std::uint32_t>(lit)));
        }
    };
    literal_list(O, m.outputs);
    literal_list(B, m.bad_props);
    literal_list(C, m.constraints);

    for (std::uint64_t i = 0; i < A; ++i) {
        AndGate g;
        if (binary) {
            const std::uint64_t lhs = 2 * (I + L + i + 1);
            const std::uint32_t d0 = r.delta();
            if (d0 == 0 || d0 > lhs) r.fail("invalid AND delta");
            const std::uint64_t rhs0 = lhs - d0;
            const std::uint32_t d1 = r.delta();
            if (d1 > rhs0) r.fail("invalid AND delta");
            define(lhs, "AND");
            g = {Literal(static_cast<std::uint32_t>(lhs)), Literal(static_cast<std::uint32_t>(rhs0)),
                 Literal(static_cast<std::uint32_t>(rhs0 - d1))};
        } else {
            std::uint64_t lhs = r.number();
            r.expect_space();
            std::uint64_t rhs0 = r.number();
            r.expect_space();
            std::uint64_t rhs1 = r.number();
            r.expect_newline();
            define(lhs, "AND");
            detail::check_literal(r, rhs0, M);
            detail::check_literal(r, rhs1, M);
            if (rhs0 >= lhs || rhs1 >= lhs) r.fail("AND operands must be smaller than lhs");
            if (rhs0 < rhs1) std::swap(rhs0, rhs1);
            g = {Literal(static_cast<std::uint32_t>(lhs)), Literal(static_cast<std::uint32_t>(rhs0)),
                 Literal(static_cast<std::uint32_t>(rhs1))};
        }
        m.ands.push_back(g);
    }

    // Symbol table then optional comment section.
    while (!r.at_end()) {
        if (r.peek() == 'c' && (r.peek(1) == '\n' || r.peek(1) == -1)) {
            r.get();
            r.get();
            while (!r.at_end()) m.comments.push_back(r.rest_of_line());
            break;
        }
        int kind = r.peek();
        if (kind != 'i' && kind != 'l' && kind != 'o' && kind != 'b' && kind != 'c' &&
            kind != 'j' && kind != 'f') {
            if (kind == '\n') {
                r.get();
                continue;
            }
            r.fail("unexpected trailing data");
        }
        m.symbols.push_back(r.rest_of_line());
    }

    // Every referenced variable must be defined (or be the constant).
    auto check_defined = [&](Literal l) {
        if (l.var() != 0 && !defined[l.var()]) {
            r.fail("literal " + std::to_string(l.raw()) + " refers to undefined variable");
        }
    };
    for (const auto& l : m.latches) check_defined(l.next);
    for (auto l : m.outputs) check_defined(l);
    for (auto l : m.bad_props) check_defined(l);
    for (auto l : m.constraints) check_defined(l);
    for (const auto& g : m.ands) {
        check_defined(g.rhs0);
        check_defined(g.rhs1);
    }
    return m;
}

inline AigerModel parse_file(const std::string& path, Format hint = Format::Auto) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse(data, hint);
}

}  // namespace mabic3::aiger
