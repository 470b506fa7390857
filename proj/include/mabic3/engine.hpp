#pragma once

// IC3/PDR over a TransitionSystem with a pluggable generalization policy.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mabic3/bandit.hpp"
#include "mabic3/generalizer.hpp"
#include "mabic3/sat.hpp"
#include "mabic3/transition_system.hpp"

namespace mabic3 {

enum class Mode { Standard, CtgDown, Dynamic, Mab };

inline const char* to_string(Mode m) {
    switch (m) {
        case Mode::Standard: return "standard";
        case Mode::CtgDown: return "ctgdown";
        case Mode::Dynamic: return "dynamic";
        case Mode::Mab: return "mab";
    }
    return "?";
}

inline std::optional<Mode> parse_mode(std::string_view s) {
    if (s == "standard") return Mode::Standard;
    if (s == "ctgdown") return Mode::CtgDown;
    if (s == "dynamic") return Mode::Dynamic;
    if (s == "mab") return Mode::Mab;
    return std::nullopt;
}

struct EngineConfig {
    Mode mode = Mode::Mab;
    std::uint64_t seed = 0;
    double timeout_s = 3600.0;
    double alpha = 1.0;
    bandit::RewardConfig reward;
    std::int64_t conflict_budget = -1;  // per query; -1 = none
    std::size_t max_frames = 0;         // 0 = unlimited
    std::optional<std::size_t> forced_arm;  // mab mode: bypass selection
    std::ostream* log = nullptr;        // JSONL, one record per generalization
    std::string dump_cnf_dir;           // one DIMACS file per SAT query
};

enum class Status { Safe, Unsafe, Timeout, Budget };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Safe: return "safe";
        case Status::Unsafe: return "unsafe";
        case Status::Timeout: return "timeout";
        case Status::Budget: return "budget";
    }
    return "?";
}

struct TraceStep {
    Assignment state;
    Assignment inputs;
};

struct RunStats {
    std::uint64_t gen_calls = 0;
    std::uint64_t clauses_learned = 0;
    std::uint64_t sat_calls = 0;
    std::uint64_t obligations = 0;
    std::uint64_t propagated = 0;
    GeneralizerStats gen;
    std::array<std::uint64_t, kNumArms> arm_pulls{};
};

struct Verdict {
    Status status = Status::Budget;
    std::vector<Cube> invariant;   // Safe: clauses, each stored as its negated cube
    std::vector<TraceStep> trace;  // Unsafe: initial state first, bad state last
    std::size_t level = 0;         // frontier at exit
    RunStats stats;
};

namespace detail {
struct Timeout {};
struct OutOfBudget {};
}  // namespace detail

/// Frame sequence F_0..F_{k+1} on one incremental solver. F_0 is I; each
/// other clause lives at its highest level under an activation literal.
class Frames {
public:
    Frames(const TransitionSystem& ts, const EngineConfig& cfg)
        : ts_(ts), cfg_(cfg), solver_(cfg.seed) {
        if (!cfg_.dump_cnf_dir.empty()) {
            solver_.set_recording(true);
            std::filesystem::create_directories(cfg_.dump_cnf_dir);
        }
        solver_.set_conflict_budget(cfg_.conflict_budget);
        enc_ = encode(ts_, solver_);
        for (sat::Lit c : enc_.constraint) solver_.add_clause({c});
        if (!enc_.constraint_next.empty()) {
            cnext_act_ = solver_.new_var();
            for (sat::Lit c : enc_.constraint_next) solver_.add_clause({sat::neg(cnext_act_), c});
        }
        levels_.emplace_back();  // F_0 placeholder
        acts_.push_back(sat::kNoVar);
        deadline_ = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(cfg_.timeout_s));
    }

    const TransitionSystem& system() const { return ts_; }
    std::size_t frontier() const { return frontier_; }
    void set_frontier(std::size_t k) {
        frontier_ = k;
        while (levels_.size() < k + 2) add_level();
    }
    std::size_t num_levels() const { return levels_.size(); }
    const std::vector<Cube>& level(std::size_t i) const { return levels_[i]; }

    /// Number of clauses in F_i (stored at level i or above).
    std::size_t frame_size(std::size_t i) const {
        std::size_t n = 0;
        for (std::size_t j = std::max<std::size_t>(i, 1); j < levels_.size(); ++j) n += levels_[j].size();
        return n;
    }

    /// F_{i-1} & ~q & T & q' unsatisfiable?
    bool rel_inductive(const Cube& q, std::size_t i, Cube* core, Assignment* pred) {
        assumps_.clear();
        frame_assumptions(i - 1);
        if (cnext_act_ != sat::kNoVar) assumps_.push_back(sat::pos(cnext_act_));
        const sat::Var a = solver_.new_var();
        tmp_.clear();
        tmp_.push_back(sat::neg(a));
        for (sat::Lit l : q) tmp_.push_back(~enc_.cur(l));
        solver_.add_clause(tmp_);
        assumps_.push_back(sat::pos(a));
        for (sat::Lit l : q) assumps_.push_back(enc_.primed(l));

        const bool unsat = query() == sat::Result::Unsat;
        if (unsat && core) {
            Cube c;
            for (sat::Lit l : q) {
                if (solver_.failed(enc_.primed(l))) c.push_back(l);
            }
            if (ts_.intersects_init(c)) {
                for (sat::Lit l : q) {
                    const auto& init = ts_.latches[static_cast<std::size_t>(l.var())].init;
                    if (init && *init == l.sign()) {
                        c.push_back(l);
                        normalize(c);
                        break;
                    }
                }
            }
            *core = std::move(c);
        }
        if (!unsat) {
            if (pred) *pred = model_state();
            last_inputs_ = model_inputs();
        }
        solver_.release_var(sat::neg(a));
        return unsat;
    }

    /// Looks for a state of F_i violating the property.
    bool bad_state(std::size_t i, Assignment* state, Assignment* inputs) {
        assumps_.clear();
        frame_assumptions(i);
        assumps_.push_back(enc_.bad);
        if (query() == sat::Result::Unsat) return false;
        *state = model_state();
        *inputs = model_inputs();
        return true;
    }

    void add_blocked(const Cube& q, std::size_t lvl) {
        for (std::size_t j = 1; j <= lvl && j < levels_.size(); ++j) {
            auto& lv = levels_[j];
            lv.erase(std::remove_if(lv.begin(), lv.end(), [&](const Cube& c) { return subset_of(q, c); }), lv.end());
        }
        levels_[lvl].push_back(q);
        tmp_.clear();
        tmp_.push_back(sat::neg(acts_[lvl]));
        for (sat::Lit l : q) tmp_.push_back(~enc_.cur(l));
        solver_.add_clause(tmp_);
        ++clauses_learned_;
    }

    /// Moves a clause one level up without subsumption bookkeeping.
    void promote(std::size_t lvl, std::size_t index) {
        Cube q = levels_[lvl][index];
        levels_[lvl].erase(levels_[lvl].begin() + static_cast<std::ptrdiff_t>(index));
        levels_[lvl + 1].push_back(q);
        tmp_.clear();
        tmp_.push_back(sat::neg(acts_[lvl + 1]));
        for (sat::Lit l : q) tmp_.push_back(~enc_.cur(l));
        solver_.add_clause(tmp_);
    }

    /// True when a stored clause of F_lvl excludes state s.
    bool blocked_at(const Assignment& s, std::size_t lvl) const {
        for (std::size_t j = std::max<std::size_t>(lvl, 1); j < levels_.size(); ++j) {
            for (const Cube& c : levels_[j]) {
                if (contains_state(c, s)) return true;
            }
        }
        return false;
    }

    const Assignment& last_inputs() const { return last_inputs_; }
    std::uint64_t sat_calls() const { return sat_calls_; }
    std::uint64_t clauses_learned() const { return clauses_learned_; }

    void check_deadline() const {
        if (std::chrono::steady_clock::now() > deadline_) throw detail::Timeout{};
    }

private:
    void add_level() {
        levels_.emplace_back();
        acts_.push_back(solver_.new_var());
    }

    void frame_assumptions(std::size_t i) {
        if (i == 0) {
            for (std::size_t l = 0; l < ts_.latches.size(); ++l) {
                if (ts_.latches[l].init) assumps_.push_back(enc_.init_lit(ts_, l));
            }
            return;
        }
        for (std::size_t j = i; j < acts_.size(); ++j) assumps_.push_back(sat::pos(acts_[j]));
    }

    sat::Result query() {
        check_deadline();
        ++sat_calls_;
        if (!cfg_.dump_cnf_dir.empty()) {
            std::ofstream out(std::filesystem::path(cfg_.dump_cnf_dir) /
                              ("query_" + std::to_string(sat_calls_) + ".cnf"));
            solver_.write_dimacs(out, assumps_);
        }
        const sat::Result r = solver_.solve(assumps_);
        if (r == sat::Result::Unknown) throw detail::OutOfBudget{};
        return r;
    }

    Assignment model_state() const {
        Assignment s(ts_.latches.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = solver_.model_value(enc_.latch[i]);
        return s;
    }

    Assignment model_inputs() const {
        Assignment s(ts_.inputs.size());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = solver_.model_value(enc_.input[i]);
        return s;
    }

    const TransitionSystem& ts_;
    const EngineConfig& cfg_;
    sat::Solver solver_;
    Encoding enc_;
    sat::Var cnext_act_ = sat::kNoVar;
    std::vector<std::vector<Cube>> levels_;
    std::vector<sat::Var> acts_;
    std::size_t frontier_ = 0;
    std::vector<sat::Lit> assumps_;
    std::vector<sat::Lit> tmp_;
    Assignment last_inputs_;
    std::uint64_t sat_calls_ = 0;
    std::uint64_t clauses_learned_ = 0;
    std::chrono::steady_clock::time_point deadline_;
};

/// Advances clause q (blocked at level k) while it stays relatively inductive;
/// returns the highest level reached.
inline std::size_t push_clause(Frames& frames, const Cube& q, std::size_t k) {
    std::size_t j = k;
    while (j < frames.frontier() && frames.rel_inductive(q, j + 1, nullptr, nullptr)) ++j;
    return j;
}

class Ic3 {
public:
    Ic3(const TransitionSystem& ts, EngineConfig cfg)
        : ts_(ts), cfg_(std::move(cfg)), frames_(ts_, cfg_), gen_(frames_), bandit_(cfg_.alpha) {}

    Verdict check() {
        Verdict v;
        try {
            v = run();
        } catch (const detail::Timeout&) {
            v.status = Status::Timeout;
        } catch (const detail::OutOfBudget&) {
            v.status = Status::Budget;
        }
        if (v.status == Status::Timeout || v.status == Status::Budget) v.level = frames_.frontier();
        v.stats = stats();
        return v;
    }

    RunStats stats() const {
        RunStats s = stats_;
        s.sat_calls = frames_.sat_calls();
        s.clauses_learned = frames_.clauses_learned();
        s.gen = gen_.stats();
        return s;
    }

    const Frames& frames() const { return frames_; }

private:
    struct Obligation {
        Assignment state;
        Assignment inputs;
        std::size_t level;
        std::size_t depth;
        std::uint64_t seq;
        std::ptrdiff_t next;  // successor towards the bad state, -1 at the CTI
    };

    struct Later {
        const std::vector<Obligation>* nodes;
        bool operator()(std::size_t a, std::size_t b) const {
            const Obligation& x = (*nodes)[a];
            const Obligation& y = (*nodes)[b];
            if (x.level != y.level) return x.level > y.level;
            if (x.depth != y.depth) return x.depth > y.depth;
            return x.seq > y.seq;
        }
    };

    Verdict run() {
        Verdict v;
        Assignment state, inputs;
        frames_.set_frontier(0);
        if (frames_.bad_state(0, &state, &inputs)) {
            v.status = Status::Unsafe;
            v.trace.push_back({state, inputs});
            return v;
        }
        for (std::size_t k = 1;; ++k) {
            if (cfg_.max_frames != 0 && k > cfg_.max_frames) throw detail::OutOfBudget{};
            frames_.set_frontier(k);
            while (frames_.bad_state(k, &state, &inputs)) {
                if (auto cex = block(std::move(state), std::move(inputs), k)) {
                    v.status = Status::Unsafe;
                    v.trace = std::move(*cex);
                    v.level = k;
                    return v;
                }
            }
            if (auto inv = propagate(k)) {
                v.status = Status::Safe;
                v.invariant = std::move(*inv);
                v.level = k;
                return v;
            }
        }
    }

    std::size_t push(Obligation o) {
        o.seq = seq_++;
        nodes_.push_back(std::move(o));
        queue_.push(nodes_.size() - 1);
        ++stats_.obligations;
        return nodes_.size() - 1;
    }

    std::vector<TraceStep> trace_from(std::size_t n) const {
        std::vector<TraceStep> t;
        for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(n); i >= 0;) {
            const Obligation& o = nodes_[static_cast<std::size_t>(i)];
            t.push_back({o.state, o.inputs});
            i = o.next;
        }
        return t;
    }

    // Returns a counterexample when the CTI cannot be blocked.
    std::optional<std::vector<TraceStep>> block(Assignment cti, Assignment inputs, std::size_t k) {
        nodes_.clear();
        queue_ = Queue(Later{&nodes_});
        push({std::move(cti), std::move(inputs), k, 1, 0, -1});
        while (!queue_.empty()) {
            frames_.check_deadline();
            const std::size_t n = queue_.top();
            queue_.pop();
            const Obligation ob = nodes_[n];
            if (ob.level == 0 || ts_.is_initial(ob.state)) return trace_from(n);

            if (frames_.blocked_at(ob.state, ob.level)) {
                if (ob.level < k) push({ob.state, ob.inputs, ob.level + 1, ob.depth + 1, 0, ob.next});
                continue;
            }
            Cube core;
            Assignment pred;
            if (frames_.rel_inductive(cube_of(ob.state), ob.level, &core, &pred)) {
                generalize_and_learn(ob, core, k);
                if (ob.level < k) push({ob.state, ob.inputs, ob.level + 1, ob.depth + 1, 0, ob.next});
            } else {
                queue_.push(n);
                push({std::move(pred), frames_.last_inputs(), ob.level - 1, ob.depth + 1, 0,
                      static_cast<std::ptrdiff_t>(n)});
            }
        }
        return std::nullopt;
    }

    void generalize_and_learn(const Obligation& ob, const Cube& core, std::size_t k) {
        ++stats_.gen_calls;
        const double activity = activity_.bump(core);
        bandit::ObligationSnapshot snap;
        snap.depth = ob.depth;
        snap.cube_size = core.size();
        snap.queue_len = queue_.size();
        snap.obligation_frame = ob.level;
        snap.frontier = k;
        snap.frame_clauses = frames_.frame_size(ob.level);
        const bandit::ContextVector x = extractor_.extract(snap);

        std::optional<std::size_t> arm;
        GenParams params;
        switch (cfg_.mode) {
            case Mode::Standard: params = {0, 0, 0}; break;
            case Mode::CtgDown: params = {1, 3, 0}; break;
            case Mode::Dynamic: params = balanced_mapping(activity); break;
            case Mode::Mab:
                arm = cfg_.forced_arm ? *cfg_.forced_arm : bandit_.select(x);
                params = params_for(mab_arms()[*arm], activity);
                ++stats_.arm_pulls[*arm];
                break;
        }

        Cube g = gen_.generalize(core, ob.level, params);
        const std::size_t pushed = push_clause(frames_, g, ob.level);
        frames_.add_blocked(g, pushed);

        bandit::GenOutcome out{core.size(), g.size(), ob.level, pushed, k};
        const bandit::Reward r = bandit::compute_reward(out, cfg_.reward);
        if (arm) bandit_.update(*arm, x, r.total);

        if (cfg_.log) {
            nlohmann::ordered_json rec;
            rec["t"] = stats_.gen_calls - 1;
            rec["context"] = x;
            rec["arm"] = arm ? nlohmann::ordered_json(*arm) : nlohmann::ordered_json(nullptr);
            rec["params"] = {{"ctgMax", params.ctg_max},
                             {"ctgDepth", params.ctg_depth},
                             {"exctgBudget", params.exctg_budget}};
            rec["orig_size"] = out.orig_size;
            rec["gen_size"] = out.gen_size;
            rec["obligation_frame"] = out.obligation_frame;
            rec["pushed_frame"] = out.pushed_frame;
            rec["frontier"] = out.frontier;
            rec["R_s"] = r.size;
            rec["R_p"] = r.push;
            rec["R_b"] = r.bonus;
            rec["events"] = bandit::event_tags(r.events);
            rec["reward"] = r.total;
            *cfg_.log << rec.dump() << '\n';
        }
    }

    // Pushes clauses forward; returns the invariant when two frames coincide.
    std::optional<std::vector<Cube>> propagate(std::size_t k) {
        frames_.set_frontier(k);
        for (std::size_t i = 1; i <= k; ++i) {
            std::vector<Cube> snapshot = frames_.level(i);
            for (const Cube& c : snapshot) {
                const auto& lv = frames_.level(i);
                auto it = std::find(lv.begin(), lv.end(), c);
                if (it == lv.end()) continue;
                if (frames_.rel_inductive(c, i + 1, nullptr, nullptr)) {
                    frames_.promote(i, static_cast<std::size_t>(it - lv.begin()));
                    ++stats_.propagated;
                }
            }
            if (frames_.level(i).empty()) {
                std::vector<Cube> inv;
                for (std::size_t j = i + 1; j < frames_.num_levels(); ++j) {
                    inv.insert(inv.end(), frames_.level(j).begin(), frames_.level(j).end());
                }
                return inv;
            }
        }
        return std::nullopt;
    }

    using Queue = std::priority_queue<std::size_t, std::vector<std::size_t>, Later>;

    const TransitionSystem& ts_;
    EngineConfig cfg_;
    Frames frames_;
    Generalizer<Frames> gen_;
    ActivityTable activity_;
    bandit::ContextExtractor extractor_;
    bandit::LinUcb<bandit::kContextDim, kNumArms> bandit_;
    std::vector<Obligation> nodes_;
    Queue queue_{Later{&nodes_}};
    std::uint64_t seq_ = 0;
    RunStats stats_;
};

/// Runs IC3 on `ts` with the given configuration.
inline Verdict check(const TransitionSystem& ts, const EngineConfig& cfg = {}) {
    Ic3 engine(ts, cfg);
    return engine.check();
}

}  // namespace mabic3
