#pragma once

// Incremental CDCL SAT solver with assumptions.
//
// Two-watched-literal propagation, first-UIP learning with recursive
// minimization, VSIDS, phase saving, Luby restarts and activity-based learnt
// clause reduction. Solving under assumptions reports the subset of failed
// assumptions on UNSAT. Variables whose literal was released are recycled
// during root-level simplification.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <ostream>
#include <random>
#include <span>
#include <vector>

namespace mabic3::sat {

using Var = std::int32_t;
inline constexpr Var kNoVar = -1;

class Lit {
public:
    constexpr Lit() = default;
    constexpr Lit(Var v, bool negated) : x_(static_cast<std::uint32_t>(2 * v + (negated ? 1 : 0))) {}
    static constexpr Lit from_index(std::uint32_t x) {
        Lit l;
        l.x_ = x;
        return l;
    }
    constexpr Var var() const { return static_cast<Var>(x_ >> 1); }
    /// True for the negative literal.
    constexpr bool sign() const { return (x_ & 1u) != 0; }
    constexpr std::uint32_t index() const { return x_; }
    constexpr Lit operator~() const { return from_index(x_ ^ 1u); }
    constexpr Lit operator^(bool b) const { return from_index(x_ ^ (b ? 1u : 0u)); }
    /// DIMACS-style signed integer, 1-based.
    constexpr int dimacs() const { return sign() ? -(var() + 1) : (var() + 1); }

    friend constexpr bool operator==(Lit, Lit) = default;
    friend constexpr auto operator<=>(Lit, Lit) = default;

private:
    std::uint32_t x_ = std::numeric_limits<std::uint32_t>::max();
};

inline constexpr Lit kUndefLit{};

inline constexpr Lit pos(Var v) { return Lit(v, false); }
inline constexpr Lit neg(Var v) { return Lit(v, true); }

enum class Value : std::uint8_t { True = 0, False = 1, Undef = 2 };

inline constexpr Value operator^(Value v, bool flip) {
    if (v == Value::Undef) return v;
    return static_cast<Value>(static_cast<std::uint8_t>(v) ^ (flip ? 1u : 0u));
}

enum class Result { Sat, Unsat, Unknown };

struct Stats {
    std::uint64_t solves = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
    std::uint64_t restarts = 0;
};

class Solver {
    using CRef = std::uint32_t;
    static constexpr CRef kNoRef = std::numeric_limits<CRef>::max();

    // Clause layout in the arena: [header][activity][lits...].
    // header = size << 3 | relocated << 2 | deleted << 1 | learnt.
    struct Watcher {
        CRef cref;
        Lit blocker;
    };

public:
    explicit Solver(std::uint64_t seed = 0, double random_decision_freq = 0.0)
        : rng_(seed), random_freq_(random_decision_freq) {}

    Solver(const Solver&) = delete;
    Solver& operator=(const Solver&) = delete;

    Var new_var() {
        Var v;
        if (!free_vars_.empty()) {
            v = free_vars_.back();
            free_vars_.pop_back();
            assigns_[v] = Value::Undef;
            reason_[v] = kNoRef;
            level_[v] = 0;
            activity_[v] = 0.0;
            polarity_[v] = 1;
            seen_[v] = 0;
            decision_[v] = 1;
        } else {
            v = static_cast<Var>(assigns_.size());
            assigns_.push_back(Value::Undef);
            reason_.push_back(kNoRef);
            level_.push_back(0);
            activity_.push_back(0.0);
            polarity_.push_back(1);
            seen_.push_back(0);
            decision_.push_back(1);
            heap_index_.push_back(-1);
            watches_.emplace_back();
            watches_.emplace_back();
        }
        heap_insert(v);
        return v;
    }

    int num_vars() const { return static_cast<int>(assigns_.size()); }
    std::size_t num_clauses() const { return clauses_.size(); }
    std::size_t num_learnts() const { return learnts_.size(); }
    bool okay() const { return ok_; }
    const Stats& stats() const { return stats_; }

    void set_conflict_budget(std::int64_t budget) { conflict_budget_ = budget; }

    /// Adds a permanent clause. Must be called at decision level 0 (between solves).
    /// Returns false once the database is unsatisfiable.
    bool add_clause(std::span<const Lit> lits) {
        assert(decision_level() == 0);
        if (!ok_) return false;
        if (recording_) recorded_.emplace_back(lits.begin(), lits.end());
        tmp_.assign(lits.begin(), lits.end());
        std::sort(tmp_.begin(), tmp_.end());
        std::size_t j = 0;
        Lit prev = kUndefLit;
        for (Lit l : tmp_) {
            assert(l.var() >= 0 && l.var() < num_vars());
            if (value(l) == Value::True || l == ~prev) return true;
            if (value(l) != Value::False && l != prev) tmp_[j++] = prev = l;
        }
        tmp_.resize(j);
        if (tmp_.empty()) return ok_ = false;
        if (tmp_.size() == 1) {
            unchecked_enqueue(tmp_[0], kNoRef);
            ok_ = (propagate() == kNoRef);
            return ok_;
        }
        CRef cr = alloc(tmp_, false);
        clauses_.push_back(cr);
        attach(cr);
        return true;
    }

    bool add_clause(std::initializer_list<Lit> lits) {
        return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
    }

    /// Permanently asserts `l` and recycles its variable once every clause
    /// mentioning it is satisfied. The variable must only occur with polarity ~l.
    void release_var(Lit l) {
        if (add_clause({l}) && !recording_) released_.push_back(l.var());
    }

    Result solve(std::span<const Lit> assumptions = {}) {
        ++stats_.solves;
        model_.clear();
        conflict_.clear();
        if (!ok_) return Result::Unsat;
        assumptions_.assign(assumptions.begin(), assumptions.end());
        if (recording_ && dump_sink_) write_dimacs(*dump_sink_, assumptions);

        simplify();
        if (!ok_) return Result::Unsat;

        max_learnts_ = std::max<double>(static_cast<double>(clauses_.size()) / 3.0, 2000.0);
        std::int64_t conflicts_at_start = static_cast<std::int64_t>(stats_.conflicts);
        Value status = Value::Undef;
        for (int curr_restarts = 0; status == Value::Undef; ++curr_restarts) {
            double rest_base = luby(2, curr_restarts);
            status = search(static_cast<int>(rest_base * 100), conflicts_at_start);
            if (status == Value::Undef && budget_exhausted(conflicts_at_start)) break;
            if (status == Value::Undef) ++stats_.restarts;
        }

        Result res;
        if (status == Value::True) {
            model_.assign(assigns_.begin(), assigns_.end());
            res = Result::Sat;
        } else if (status == Value::False) {
            if (conflict_.empty()) ok_ = false;
            res = Result::Unsat;
        } else {
            res = Result::Unknown;
        }
        cancel_until(0);
        return res;
    }

    Result solve(std::initializer_list<Lit> assumptions) {
        return solve(std::span<const Lit>(assumptions.begin(), assumptions.size()));
    }

    /// Value of `v` in the last satisfying assignment.
    bool model_value(Var v) const {
        assert(static_cast<std::size_t>(v) < model_.size());
        return model_[static_cast<std::size_t>(v)] == Value::True;
    }
    bool model_value(Lit l) const { return model_value(l.var()) != l.sign(); }
    bool has_model() const { return !model_.empty(); }

    /// True when assumption `a` belongs to the failed subset of the last UNSAT.
    bool failed(Lit a) const {
        return std::find(conflict_.begin(), conflict_.end(), ~a) != conflict_.end();
    }

    /// Failed assumptions of the last UNSAT answer, in assumption order.
    std::vector<Lit> failed_assumptions() const {
        std::vector<Lit> out;
        for (Lit a : assumptions_) {
            if (failed(a) && std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
        }
        return out;
    }

    // --- DIMACS dumping of queries (for external cross-checking) ----------

    /// Keeps a copy of every permanent clause so queries can be dumped.
    void set_recording(bool on) { recording_ = on; }
    void set_dump_sink(std::ostream* sink) { dump_sink_ = sink; }

    void write_dimacs(std::ostream& os, std::span<const Lit> assumptions) const {
        os << "p cnf " << num_vars() << " " << recorded_.size() + assumptions.size() << "\n";
        for (const auto& c : recorded_) {
            for (Lit l : c) os << l.dimacs() << " ";
            os << "0\n";
        }
        for (Lit a : assumptions) os << a.dimacs() << " 0\n";
    }

private:
    // --- arena -----------------------------------------------------------

    std::uint32_t& header(CRef c) { return arena_[c]; }
    std::uint32_t header(CRef c) const { return arena_[c]; }
    std::uint32_t csize(CRef c) const { return arena_[c] >> 3; }
    bool learnt(CRef c) const { return (arena_[c] & 1u) != 0; }
    bool deleted(CRef c) const { return (arena_[c] & 2u) != 0; }
    Lit* lits(CRef c) { return reinterpret_cast<Lit*>(&arena_[c + 2]); }
    const Lit* lits(CRef c) const { return reinterpret_cast<const Lit*>(&arena_[c + 2]); }
    float& cact(CRef c) { return *reinterpret_cast<float*>(&arena_[c + 1]); }

    CRef alloc(const std::vector<Lit>& ls, bool is_learnt) {
        static_assert(sizeof(Lit) == sizeof(std::uint32_t));
        CRef cr = static_cast<CRef>(arena_.size());
        arena_.push_back(static_cast<std::uint32_t>(ls.size()) << 3 | (is_learnt ? 1u : 0u));
        float zero = 0.0f;
        std::uint32_t bits;
        std::memcpy(&bits, &zero, sizeof bits);
        arena_.push_back(bits);
        for (Lit l : ls) arena_.push_back(l.index());
        return cr;
    }

    void free_clause(CRef c) {
        header(c) |= 2u;
        wasted_ += csize(c) + 2;
    }

    // --- assignment ------------------------------------------------------

    Value value(Var v) const { return assigns_[static_cast<std::size_t>(v)]; }
    Value value(Lit l) const { return assigns_[static_cast<std::size_t>(l.var())] ^ l.sign(); }
    int decision_level() const { return static_cast<int>(trail_lim_.size()); }
    int level(Var v) const { return level_[static_cast<std::size_t>(v)]; }
    CRef reason(Var v) const { return reason_[static_cast<std::size_t>(v)]; }

    void unchecked_enqueue(Lit p, CRef from) {
        assert(value(p) == Value::Undef);
        const auto v = static_cast<std::size_t>(p.var());
        assigns_[v] = p.sign() ? Value::False : Value::True;
        reason_[v] = from;
        level_[v] = decision_level();
        trail_.push_back(p);
    }

    void attach(CRef cr) {
        const Lit* c = lits(cr);
        watches_[(~c[0]).index()].push_back({cr, c[1]});
        watches_[(~c[1]).index()].push_back({cr, c[0]});
    }

    bool locked(CRef cr) const {
        const Lit* c = lits(cr);
        Var v = c[0].var();
        return value(c[0]) == Value::True && reason(v) == cr;
    }

    void cancel_until(int lvl) {
        if (decision_level() <= lvl) return;
        for (std::size_t c = trail_.size(); c-- > static_cast<std::size_t>(trail_lim_[lvl]);) {
            Var x = trail_[c].var();
            assigns_[x] = Value::Undef;
            polarity_[x] = trail_[c].sign() ? 1 : 0;
            heap_insert(x);
        }
        qhead_ = static_cast<std::size_t>(trail_lim_[lvl]);
        trail_.resize(static_cast<std::size_t>(trail_lim_[lvl]));
        trail_lim_.resize(static_cast<std::size_t>(lvl));
    }

    CRef propagate() {
        CRef confl = kNoRef;
        while (qhead_ < trail_.size()) {
            Lit p = trail_[qhead_++];
            auto& ws = watches_[p.index()];
            ++stats_.propagations;
            std::size_t i = 0, j = 0;
            const std::size_t n = ws.size();
            while (i < n) {
                Lit blocker = ws[i].blocker;
                if (value(blocker) == Value::True) {
                    ws[j++] = ws[i++];
                    continue;
                }
                CRef cr = ws[i].cref;
                Lit* c = lits(cr);
                Lit false_lit = ~p;
                if (c[0] == false_lit) std::swap(c[0], c[1]);
                ++i;
                Lit first = c[0];
                Watcher w{cr, first};
                if (first != blocker && value(first) == Value::True) {
                    ws[j++] = w;
                    continue;
                }
                const std::uint32_t sz = csize(cr);
                bool found = false;
                for (std::uint32_t k = 2; k < sz; ++k) {
                    if (value(c[k]) != Value::False) {
                        c[1] = c[k];
                        c[k] = false_lit;
                        watches_[(~c[1]).index()].push_back(w);
                        found = true;
                        break;
                    }
                }
                if (found) continue;
                ws[j++] = w;
                if (value(first) == Value::False) {
                    confl = cr;
                    qhead_ = trail_.size();
                    while (i < n) ws[j++] = ws[i++];
                } else {
                    unchecked_enqueue(first, cr);
                }
            }
            ws.resize(j);
            if (confl != kNoRef) break;
        }
        return confl;
    }

    // --- conflict analysis -----------------------------------------------

    std::uint32_t abstract_level(Var v) const { return 1u << (level(v) & 31); }

    void analyze(CRef confl, std::vector<Lit>& out_learnt, int& out_btlevel) {
        int path_c = 0;
        Lit p = kUndefLit;
        out_learnt.clear();
        out_learnt.push_back(kUndefLit);
        std::size_t index = trail_.size();
        do {
            assert(confl != kNoRef);
            if (learnt(confl)) bump_clause(confl);
            const Lit* c = lits(confl);
            for (std::uint32_t j = (p == kUndefLit) ? 0 : 1; j < csize(confl); ++j) {
                Lit q = c[j];
                Var qv = q.var();
                if (!seen_[qv] && level(qv) > 0) {
                    bump_var(qv);
                    seen_[qv] = 1;
                    if (level(qv) >= decision_level()) {
                        ++path_c;
                    } else {
                        out_learnt.push_back(q);
                    }
                }
            }
            while (!seen_[trail_[--index].var()]) {
            }
            p = trail_[index];
            confl = reason(p.var());
            seen_[p.var()] = 0;
            --path_c;
        } while (path_c > 0);
        out_learnt[0] = ~p;

        // Recursive minimization.
        analyze_toclear_.assign(out_learnt.begin(), out_learnt.end());
        std::uint32_t abs_level = 0;
        for (std::size_t i = 1; i < out_learnt.size(); ++i) abs_level |= abstract_level(out_learnt[i].var());
        std::size_t i, j;
        for (i = j = 1; i < out_learnt.size(); ++i) {
            if (reason(out_learnt[i].var()) == kNoRef || !lit_redundant(out_learnt[i], abs_level)) {
                out_learnt[j++] = out_learnt[i];
            }
        }
        out_learnt.resize(j);

        if (out_learnt.size() == 1) {
            out_btlevel = 0;
        } else {
            std::size_t max_i = 1;
            for (std::size_t k = 2; k < out_learnt.size(); ++k) {
                if (level(out_learnt[k].var()) > level(out_learnt[max_i].var())) max_i = k;
            }
            std::swap(out_learnt[1], out_learnt[max_i]);
            out_btlevel = level(out_learnt[1].var());
        }
        for (Lit l : analyze_toclear_) seen_[l.var()] = 0;
    }

    bool lit_redundant(Lit p, std::uint32_t abs_levels) {
        analyze_stack_.clear();
        analyze_stack_.push_back(p);
        const std::size_t top = analyze_toclear_.size();
        while (!analyze_stack_.empty()) {
            CRef cr = reason(analyze_stack_.back().var());
            analyze_stack_.pop_back();
            const Lit* c = lits(cr);
            for (std::uint32_t i = 1; i < csize(cr); ++i) {
                Lit q = c[i];
                Var qv = q.var();
                if (!seen_[qv] && level(qv) > 0) {
                    if (reason(qv) != kNoRef && (abstract_level(qv) & abs_levels) != 0) {
                        seen_[qv] = 1;
                        analyze_stack_.push_back(q);
                        analyze_toclear_.push_back(q);
                    } else {
                        for (std::size_t k = top; k < analyze_toclear_.size(); ++k) {
                            seen_[analyze_toclear_[k].var()] = 0;
                        }
                        analyze_toclear_.resize(top);
                        return false;
                    }
                }
            }
        }
        return true;
    }

    // Computes the set of assumptions responsible for forcing ~p.
    void analyze_final(Lit p) {
        conflict_.clear();
        conflict_.push_back(p);
        if (decision_level() == 0) return;
        seen_[p.var()] = 1;
        for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[0]);) {
            Var x = trail_[i].var();
            if (!seen_[x]) continue;
            if (reason(x) == kNoRef) {
                assert(level(x) > 0);
                conflict_.push_back(~trail_[i]);
            } else {
                const Lit* c = lits(reason(x));
                for (std::uint32_t j = 1; j < csize(reason(x)); ++j) {
                    if (level(c[j].var()) > 0) seen_[c[j].var()] = 1;
                }
            }
            seen_[x] = 0;
        }
        seen_[p.var()] = 0;
    }

    // --- search ----------------------------------------------------------

    bool budget_exhausted(std::int64_t start) const {
        return conflict_budget_ >= 0 &&
               static_cast<std::int64_t>(stats_.conflicts) - start >= conflict_budget_;
    }

    Value search(int nof_conflicts, std::int64_t conflicts_at_start) {
        int conflict_c = 0;
        std::vector<Lit>& learnt_clause = learnt_tmp_;
        int backtrack_level = 0;
        while (true) {
            CRef confl = propagate();
            if (confl != kNoRef) {
                ++stats_.conflicts;
                ++conflict_c;
                if (decision_level() == 0) return Value::False;
                analyze(confl, learnt_clause, backtrack_level);
                cancel_until(backtrack_level);
                if (learnt_clause.size() == 1) {
                    unchecked_enqueue(learnt_clause[0], kNoRef);
                } else {
                    CRef cr = alloc(learnt_clause, true);
                    learnts_.push_back(cr);
                    attach(cr);
                    bump_clause(cr);
                    unchecked_enqueue(learnt_clause[0], cr);
                }
                var_inc_ *= (1.0 / 0.95);
                cla_inc_ *= (1.0 / 0.999);
            } else {
                if ((nof_conflicts >= 0 && conflict_c >= nof_conflicts) ||
                    budget_exhausted(conflicts_at_start)) {
                    cancel_until(0);
                    return Value::Undef;
                }
                if (static_cast<double>(learnts_.size()) -
                        static_cast<double>(trail_.size()) >= max_learnts_) {
                    reduce_db();
                    max_learnts_ *= 1.1;
                }
                Lit next = kUndefLit;
                while (decision_level() < static_cast<int>(assumptions_.size())) {
                    Lit p = assumptions_[static_cast<std::size_t>(decision_level())];
                    if (value(p) == Value::True) {
                        trail_lim_.push_back(static_cast<int>(trail_.size()));
                    } else if (value(p) == Value::False) {
                        analyze_final(~p);
                        return Value::False;
                    } else {
                        next = p;
                        break;
                    }
                }
                if (next == kUndefLit) {
                    ++stats_.decisions;
                    next = pick_branch_lit();
                    if (next == kUndefLit) return Value::True;
                }
                trail_lim_.push_back(static_cast<int>(trail_.size()));
                unchecked_enqueue(next, kNoRef);
            }
        }
    }

    Lit pick_branch_lit() {
        Var next = kNoVar;
        if (random_freq_ > 0.0 && !heap_.empty()) {
            std::uniform_real_distribution<double> coin(0.0, 1.0);
            if (coin(rng_) < random_freq_) {
                std::uniform_int_distribution<std::size_t> pick(0, heap_.size() - 1);
                next = heap_[pick(rng_)];
                if (value(next) != Value::Undef || !decision_[next]) next = kNoVar;
            }
        }
        while (next == kNoVar || value(next) != Value::Undef || !decision_[next]) {
            if (heap_.empty()) return kUndefLit;
            next = heap_remove_min();
        }
        return Lit(next, polarity_[next] != 0);
    }

    void reduce_db() {
        std::sort(learnts_.begin(), learnts_.end(), [this](CRef a, CRef b) {
            return csize(a) > 2 && (csize(b) == 2 || cact(a) < cact(b));
        });
        const double extra_lim = cla_inc_ / static_cast<double>(std::max<std::size_t>(learnts_.size(), 1));
        std::size_t i, j;
        for (i = j = 0; i < learnts_.size(); ++i) {
            CRef c = learnts_[i];
            if (csize(c) > 2 && !locked(c) && (i < learnts_.size() / 2 || cact(c) < extra_lim)) {
                free_clause(c);
            } else {
                learnts_[j++] = c;
            }
        }
        learnts_.resize(j);
        clean_watches();
        if (wasted_ * 5 > arena_.size()) garbage_collect();
    }

    void clean_watches() {
        for (auto& ws : watches_) {
            ws.erase(std::remove_if(ws.begin(), ws.end(), [this](const Watcher& w) { return deleted(w.cref); }),
                     ws.end());
        }
    }

    bool satisfied(CRef cr) const {
        const Lit* c = lits(cr);
        for (std::uint32_t i = 0; i < csize(cr); ++i) {
            if (value(c[i]) == Value::True) return true;
        }
        return false;
    }

    void remove_satisfied(std::vector<CRef>& cs) {
        std::size_t j = 0;
        for (CRef c : cs) {
            if (satisfied(c)) {
                free_clause(c);
            } else {
                cs[j++] = c;
            }
        }
        cs.resize(j);
    }

    // Root-level cleanup; recycles released variables.
    void simplify() {
        assert(decision_level() == 0);
        if (propagate() != kNoRef) {
            ok_ = false;
            return;
        }
        const bool new_units = trail_.size() != simp_assigns_;
        const bool many_released = released_.size() >= 512;
        if (!many_released && (!new_units || static_cast<double>(stats_.propagations) < simp_props_)) {
            return;
        }
        remove_satisfied(learnts_);
        remove_satisfied(clauses_);
        clean_watches();
        // Released variables leave the trail and become reusable.
        if (!released_.empty()) {
            for (Var v : released_) seen_[v] = 1;
            std::size_t j = 0;
            for (Lit l : trail_) {
                if (!seen_[l.var()]) trail_[j++] = l;
            }
            trail_.resize(j);
            qhead_ = trail_.size();
            for (Var v : released_) {
                seen_[v] = 0;
                assigns_[v] = Value::Undef;
                heap_erase(v);
                free_vars_.push_back(v);
            }
            released_.clear();
        }
        for (Lit l : trail_) reason_[l.var()] = kNoRef;
        if (wasted_ * 5 > arena_.size()) garbage_collect();
        simp_assigns_ = trail_.size();
        simp_props_ = static_cast<double>(stats_.propagations) + 20000.0;
    }

    void garbage_collect() {
        std::vector<std::uint32_t> fresh;
        fresh.reserve(arena_.size() - wasted_);
        auto move_all = [&](std::vector<CRef>& cs) {
            for (CRef& c : cs) {
                CRef nc = static_cast<CRef>(fresh.size());
                const std::uint32_t len = csize(c) + 2;
                fresh.insert(fresh.end(), arena_.begin() + c, arena_.begin() + c + len);
                // Reasons of locked clauses must follow the move.
                const Lit first = lits(c)[0];
                if (reason(first.var()) == c && value(first) == Value::True) reason_[first.var()] = nc;
                c = nc;
            }
        };
        move_all(clauses_);
        move_all(learnts_);
        arena_.swap(fresh);
        wasted_ = 0;
        for (auto& ws : watches_) ws.clear();
        for (CRef c : clauses_) attach(c);
        for (CRef c : learnts_) attach(c);
    }

    // --- activities ------------------------------------------------------

    void bump_var(Var v) {
        if ((activity_[v] += var_inc_) > 1e100) {
            for (auto& a : activity_) a *= 1e-100;
            var_inc_ *= 1e-100;
        }
        if (heap_index_[v] >= 0) heap_up(static_cast<std::size_t>(heap_index_[v]));
    }

    void bump_clause(CRef c) {
        if ((cact(c) += static_cast<float>(cla_inc_)) > 1e20f) {
            for (CRef l : learnts_) cact(l) *= 1e-20f;
            cla_inc_ *= 1e-20;
        }
    }

    static double luby(double y, int x) {
        int size = 1, seq = 0;
        while (size < x + 1) {
            ++seq;
            size = 2 * size + 1;
        }
        while (size - 1 != x) {
            size = (size - 1) >> 1;
            --seq;
            x = x % size;
        }
        return std::pow(y, seq);
    }

    // --- binary max-heap on activity --------------------------------------

    bool heap_less(Var a, Var b) const {
        return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
    }

    void heap_up(std::size_t i) {
        Var v = heap_[i];
        while (i > 0) {
            std::size_t parent = (i - 1) >> 1;
            if (!heap_less(v, heap_[parent])) break;
            heap_[i] = heap_[parent];
            heap_index_[heap_[i]] = static_cast<int>(i);
            i = parent;
        }
        heap_[i] = v;
        heap_index_[v] = static_cast<int>(i);
    }

    void heap_down(std::size_t i) {
        Var v = heap_[i];
        const std::size_t n = heap_.size();
        while (2 * i + 1 < n) {
            std::size_t child = 2 * i + 1;
            if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
            if (!heap_less(heap_[child], v)) break;
            heap_[i] = heap_[child];
            heap_index_[heap_[i]] = static_cast<int>(i);
            i = child;
        }
        heap_[i] = v;
        heap_index_[v] = static_cast<int>(i);
    }

    void heap_insert(Var v) {
        if (heap_index_[v] >= 0) return;
        heap_.push_back(v);
        heap_index_[v] = static_cast<int>(heap_.size() - 1);
        heap_up(heap_.size() - 1);
    }

    Var heap_remove_min() {
        Var top = heap_.front();
        Var last = heap_.back();
        heap_.pop_back();
        heap_index_[top] = -1;
        if (!heap_.empty()) {
            heap_[0] = last;
            heap_index_[last] = 0;
            heap_down(0);
        }
        return top;
    }

    void heap_erase(Var v) {
        int idx = heap_index_[v];
        if (idx < 0) return;
        Var last = heap_.back();
        heap_.pop_back();
        heap_index_[v] = -1;
        if (static_cast<std::size_t>(idx) < heap_.size()) {
            heap_[static_cast<std::size_t>(idx)] = last;
            heap_index_[last] = idx;
            heap_up(static_cast<std::size_t>(idx));
            heap_down(static_cast<std::size_t>(heap_index_[last]));
        }
    }

    // --- state -----------------------------------------------------------

    std::vector<std::uint32_t> arena_;
    std::size_t wasted_ = 0;
    std::vector<CRef> clauses_;
    std::vector<CRef> learnts_;
    std::vector<std::vector<Watcher>> watches_;

    std::vector<Value> assigns_;
    std::vector<CRef> reason_;
    std::vector<int> level_;
    std::vector<double> activity_;
    std::vector<std::uint8_t> polarity_;
    std::vector<std::uint8_t> seen_;
    std::vector<std::uint8_t> decision_;
    std::vector<Var> heap_;
    std::vector<int> heap_index_;

    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    std::size_t qhead_ = 0;

    std::vector<Lit> assumptions_;
    std::vector<Lit> conflict_;
    std::vector<Value> model_;

    std::vector<Var> released_;
    std::vector<Var> free_vars_;

    std::vector<Lit> tmp_;
    std::vector<Lit> learnt_tmp_;
    std::vector<Lit> analyze_stack_;
    std::vector<Lit> analyze_toclear_;

    bool recording_ = false;
    std::ostream* dump_sink_ = nullptr;
    std::vector<std::vector<Lit>> recorded_;

    double var_inc_ = 1.0;
    double cla_inc_ = 1.0;
    double max_learnts_ = 0.0;
    std::size_t simp_assigns_ = 0;
    double simp_props_ = 0.0;
    std::int64_t conflict_budget_ = -1;
    bool ok_ = true;

    std::mt19937_64 rng_;
    double random_freq_;
    Stats stats_;
};

}  // namespace mabic3::sat
