#pragma once

// Inductive generalization: literal dropping with counterexample-to-
// generalization (CTG) handling, parameterized by a strategy arm.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mabic3/transition_system.hpp"

namespace mabic3 {

struct GenParams {
    std::uint32_t ctg_max = 0;       // CTG attempts before joining
    std::uint32_t ctg_depth = 0;     // CTG recursion depth
    std::uint32_t exctg_budget = 0;  // blocks of CTG predecessors per call

    bool basic() const { return ctg_max == 0 && ctg_depth == 0 && exctg_budget == 0; }
    friend bool operator==(const GenParams&, const GenParams&) = default;
};

// --- activity-driven mappings ---------------------------------------------

inline std::uint32_t round_half_away(double x) { return static_cast<std::uint32_t>(std::round(x)); }

inline std::uint32_t floor_u(double x) { return static_cast<std::uint32_t>(std::floor(x)); }

inline GenParams balanced_mapping(double a) {
    if (a < 10.0) return {0, 0, 0};
    if (a < 40.0) return {floor_u((a - 10.0) / 10.0) + 2, 1, 1};
    return {5, 1, round_half_away(std::pow(a - 40.0, 0.3) * 2.0 + 5.0)};
}

inline GenParams aggressive_mapping(double a) {
    if (a < 5.0) return {1, 1, 1};
    if (a < 25.0) return {floor_u((a - 5.0) / 8.0) + 3, 1, 2};
    return {6, 1, round_half_away(std::pow(a - 25.0, 0.3) * 2.5 + 6.0)};
}

inline GenParams conservative_mapping(double a) {
    if (a < 15.0) return {0, 0, 0};
    if (a < 50.0) return {std::min<std::uint32_t>(floor_u((a - 15.0) / 12.0) + 1, 3), 0, 1};
    return {3, 1, std::min<std::uint32_t>(round_half_away(std::pow(a - 50.0, 0.3) * 1.5 + 4.0), 6)};
}

enum class Mapping : std::uint8_t { Conservative, Balanced, Aggressive };

struct Arm {
    std::size_t id = 0;
    std::string_view name;
    bool dynamic = false;
    GenParams params;          // static arms
    Mapping mapping = Mapping::Balanced;  // dynamic arms
};

inline constexpr std::size_t kNumArms = 7;

inline const std::array<Arm, kNumArms>& mab_arms() {
    static const std::array<Arm, kNumArms> arms = {{
        {0, "basic", false, {0, 0, 0}, Mapping::Balanced},
        {1, "conservative", false, {1, 3, 1}, Mapping::Balanced},
        {2, "balanced", false, {2, 5, 1}, Mapping::Balanced},
        {3, "aggressive", false, {8, 4, 1}, Mapping::Balanced},
        {4, "conservative-dyn", true, {}, Mapping::Conservative},
        {5, "balanced-dyn", true, {}, Mapping::Balanced},
        {6, "aggressive-dyn", true, {}, Mapping::Aggressive},
    }};
    return arms;
}

inline GenParams params_for(const Arm& arm, double activity) {
    if (!arm.dynamic) return arm.params;
    switch (arm.mapping) {
        case Mapping::Conservative: return conservative_mapping(activity);
        case Mapping::Balanced: return balanced_mapping(activity);
        case Mapping::Aggressive: return aggressive_mapping(activity);
    }
    return {};
}

// --- activity ------------------------------------------------------------

/// Decayed re-generalization counter keyed by the latch set of a cube.
class ActivityTable {
public:
    explicit ActivityTable(std::uint64_t decay_period = 256, double decay_factor = 0.5)
        : period_(decay_period), factor_(decay_factor) {}

    static std::vector<sat::Var> signature(const Cube& c) {
        std::vector<sat::Var> sig;
        sig.reserve(c.size());
        for (sat::Lit l : c) sig.push_back(l.var());
        std::sort(sig.begin(), sig.end());
        sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
        return sig;
    }

    double bump(const Cube& c) {
        double& s = scores_[signature(c)];
        s += 1.0;
        if (++bumps_ % period_ == 0) {
            for (auto& [_, v] : scores_) v *= factor_;
        }
        return s;
    }

    double score(const Cube& c) const {
        auto it = scores_.find(signature(c));
        return it == scores_.end() ? 0.0 : it->second;
    }

    std::uint64_t bumps() const { return bumps_; }

private:
    struct Hash {
        std::size_t operator()(const std::vector<sat::Var>& v) const {
            std::size_t h = 1469598103934665603ull;
            for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
            return h;
        }
    };
    std::unordered_map<std::vector<sat::Var>, double, Hash> scores_;
    std::uint64_t bumps_ = 0;
    std::uint64_t period_;
    double factor_;
};

// --- generalization -------------------------------------------------------

/// What the generalizer needs from the surrounding IC3 run.
///
/// rel_inductive(q, i, core, pred) decides F_{i-1} & ~q & T => ~q'. When it
/// holds and `core` is given, *core receives a sub-cube of q (disjoint from I)
/// for which it still holds; otherwise *pred receives the predecessor state.
template <class C>
concept GeneralizationContext = requires(C& c, const Cube& q, std::size_t lvl, Cube* core, Assignment* pred) {
    { c.rel_inductive(q, lvl, core, pred) } -> std::same_as<bool>;
    c.add_blocked(q, lvl);
    { c.frontier() } -> std::convertible_to<std::size_t>;
    { c.system() } -> std::same_as<const TransitionSystem&>;
};

struct GeneralizerStats {
    std::uint64_t calls = 0;
    std::uint64_t drop_attempts = 0;
    std::uint64_t drops = 0;
    std::uint64_t ctgs = 0;          // CTGs encountered
    std::uint64_t ctg_blocks = 0;    // CTGs blocked
    std::uint64_t exctg_blocks = 0;  // CTG predecessors blocked
    std::uint64_t joins = 0;
    std::uint64_t max_exctg_per_call = 0;
};

template <GeneralizationContext Ctx>
class Generalizer {
public:
    explicit Generalizer(Ctx& ctx) : ctx_(ctx) {}

    /// Shrinks `s` (whose negation is inductive relative to F_{level-1}).
    /// Literals are tried in ascending variable order. Basic parameters make
    /// one pass; all others repeat passes until no literal drops.
    Cube generalize(Cube s, std::size_t level, const GenParams& params) {
        ++stats_.calls;
        budget_ = params.exctg_budget;
        last_exctg_blocks_ = 0;
        normalize(s);
        mic(s, level, 0, params);
        return s;
    }

    /// Single down with CTG handling; exposed for tests.
    bool ctg_down(Cube& q, std::size_t level, std::size_t rec_depth, const GenParams& p) {
        std::uint32_t ctgs = 0;
        const TransitionSystem& ts = ctx_.system();
        while (true) {
            if (q.empty() || ts.intersects_init(q)) return false;
            Cube core;
            Assignment ctg;
            if (ctx_.rel_inductive(q, level, &core, &ctg)) {
                if (core.size() < q.size()) q = std::move(core);
                return true;
            }
            ++stats_.ctgs;
            if (rec_depth < p.ctg_depth && ctgs < p.ctg_max && level >= 2 && !ts.is_initial(ctg) &&
                try_block_ctg(ctg, level - 1, rec_depth, p)) {
                ++ctgs;
                continue;
            }
            // Join: keep the literals of q that agree with the CTG.
            ctgs = 0;
            ++stats_.joins;
            Cube joined;
            for (sat::Lit l : q) {
                if (ctg[static_cast<std::size_t>(l.var())] != l.sign()) joined.push_back(l);
            }
            q = std::move(joined);
        }
    }

    const GeneralizerStats& stats() const { return stats_; }
    std::uint64_t exctg_blocks_last_call() const { return last_exctg_blocks_; }

private:
    void mic(Cube& cube, std::size_t level, std::size_t rec_depth, const GenParams& p) {
        const bool fixpoint = !p.basic();
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < cube.size();) {
                Cube cand;
                cand.reserve(cube.size() - 1);
                for (std::size_t j = 0; j < cube.size(); ++j) {
                    if (j != i) cand.push_back(cube[j]);
                }
                ++stats_.drop_attempts;
                if (ctg_down(cand, level, rec_depth, p)) {
                    ++stats_.drops;
                    cube = std::move(cand);
                    changed = true;
                } else {
                    ++i;
                }
            }
            if (!fixpoint) break;
        }
    }

    // Tries to block CTG `t` at `level`; on success installs the generalized
    // clause as far forward as it holds.
    bool try_block_ctg(const Assignment& t, std::size_t level, std::size_t rec_depth, const GenParams& p) {
        const TransitionSystem& ts = ctx_.system();
        Cube tc = cube_of(t);
        Cube core;
        Assignment pred;
        bool blocked = ctx_.rel_inductive(tc, level, &core, &pred);
        // Recursive blocking of the CTG's own predecessors, bounded per call.
        while (!blocked && budget_ > 0 && level >= 2 && !ts.is_initial(pred)) {
            Cube pc = cube_of(pred);
            Cube pcore;
            Assignment pp;
            if (!ctx_.rel_inductive(pc, level - 1, &pcore, &pp)) break;
            --budget_;
            ++stats_.exctg_blocks;
            ++last_exctg_blocks_;
            stats_.max_exctg_per_call = std::max(stats_.max_exctg_per_call, last_exctg_blocks_);
            install(pcore, level - 1, rec_depth, p);
            blocked = ctx_.rel_inductive(tc, level, &core, &pred);
        }
        if (!blocked) return false;
        ++stats_.ctg_blocks;
        install(core, level, rec_depth, p);
        return true;
    }

    void install(Cube& core, std::size_t level, std::size_t rec_depth, const GenParams& p) {
        std::size_t j = level;
        while (j < ctx_.frontier() && ctx_.rel_inductive(core, j + 1, nullptr, nullptr)) ++j;
        mic(core, j, rec_depth + 1, p);
        ctx_.add_blocked(core, j);
    }

    Ctx& ctx_;
    GeneralizerStats stats_;
    std::uint32_t budget_ = 0;
    std::uint64_t last_exctg_blocks_ = 0;
};

}  // namespace mabic3
