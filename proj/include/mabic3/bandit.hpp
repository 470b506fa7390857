#pragma once

// Proof-aware contextual bandit: context features, LinUCB arm selection with
// online ridge updates, and the generalization reward.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mabic3::bandit {

inline constexpr std::size_t kContextDim = 7;
using ContextVector = std::array<double, kContextDim>;

/// Context index names, in vector order.
enum Feature : std::size_t { kDepth, kCubeSize, kQueue, kFrame, kSaturation, kQueueGrowth, kBias };

/// Raw proof-state quantities observed right before a generalization.
struct ObligationSnapshot {
    std::size_t depth = 1;             // Block call-stack depth
    std::size_t cube_size = 0;         // literals in the cube to generalize
    std::size_t queue_len = 0;         // pending obligations besides this one
    std::size_t obligation_frame = 1;  // frame of the obligation
    std::size_t frontier = 1;
    std::size_t frame_clauses = 0;     // clauses in the obligation's frame
};

struct RunningStats {
    std::uint64_t calls = 0;
    double avg_cube_size = 0.0;
    std::size_t max_queue_len = 0;
    double max_abs_growth = 0.0;
    std::size_t prev_queue_len = 0;
};

/// Turns snapshots into normalized context vectors. Statistics are engine-wide.
class ContextExtractor {
public:
    ContextVector extract(const ObligationSnapshot& s) {
        ContextVector x{};
        const double rel_frames = static_cast<double>(s.frontier) - static_cast<double>(s.obligation_frame) + 1.0;
        x[kDepth] = rel_frames > 0.0 ? static_cast<double>(s.depth) / rel_frames : 0.0;

        x[kCubeSize] = (stats_.calls == 0 || stats_.avg_cube_size <= 0.0)
                           ? 1.0
                           : static_cast<double>(s.cube_size) / stats_.avg_cube_size;

        stats_.max_queue_len = std::max(stats_.max_queue_len, s.queue_len);
        x[kQueue] = stats_.max_queue_len == 0
                        ? 0.0
                        : static_cast<double>(s.queue_len) / static_cast<double>(stats_.max_queue_len);

        x[kFrame] = s.frontier == 0 ? 0.0 : static_cast<double>(s.obligation_frame) / static_cast<double>(s.frontier);
        x[kSaturation] = static_cast<double>(s.frame_clauses) / 100.0;

        const double growth = stats_.calls == 0 ? 0.0
                                                : static_cast<double>(s.queue_len) -
                                                      static_cast<double>(stats_.prev_queue_len);
        stats_.max_abs_growth = std::max(stats_.max_abs_growth, std::abs(growth));
        x[kQueueGrowth] = stats_.max_abs_growth == 0.0
                              ? 0.0
                              : std::clamp(growth / stats_.max_abs_growth, -1.0, 1.0);
        x[kBias] = 1.0;

        // Running average is updated after use.
        stats_.avg_cube_size += (static_cast<double>(s.cube_size) - stats_.avg_cube_size) /
                                static_cast<double>(stats_.calls + 1);
        stats_.prev_queue_len = s.queue_len;
        ++stats_.calls;
        return x;
    }

    const RunningStats& stats() const { return stats_; }

private:
    RunningStats stats_;
};

/// Per-arm LinUCB with ridge regularization A = I + sum x x^T.
/// The Cholesky factor of A is refreshed on every update.
template <std::size_t Dim, std::size_t Arms>
class LinUcb {
public:
    using Vector = std::array<double, Dim>;
    using Matrix = std::array<std::array<double, Dim>, Dim>;

    struct ArmState {
        Matrix a{};
        Matrix chol{};  // lower-triangular L with A = L L^T
        Vector b{};
        Vector theta{};
        std::uint64_t pulls = 0;
    };

    explicit LinUcb(double alpha = 1.0) : alpha_(alpha) {
        for (auto& arm : arms_) {
            for (std::size_t i = 0; i < Dim; ++i) {
                arm.a[i][i] = 1.0;
                arm.chol[i][i] = 1.0;
            }
        }
    }

    double alpha() const { return alpha_; }
    const ArmState& arm(std::size_t i) const { return arms_[i]; }
    static constexpr std::size_t num_arms() { return Arms; }

    /// theta_a . x + alpha * sqrt(x^T A_a^{-1} x)
    double score(std::size_t a, const Vector& x) const {
        const ArmState& s = arms_[a];
        double mean = 0.0;
        for (std::size_t i = 0; i < Dim; ++i) mean += s.theta[i] * x[i];
        // ||L^{-1} x||^2 = x^T A^{-1} x
        Vector y = forward(s.chol, x);
        double var = 0.0;
        for (double v : y) var += v * v;
        return mean + alpha_ * std::sqrt(std::max(var, 0.0));
    }

    /// Arm with the highest upper confidence bound; ties go to the lowest index.
    std::size_t select(const Vector& x) const {
        std::size_t best = 0;
        double best_score = score(0, x);
        for (std::size_t a = 1; a < Arms; ++a) {
            double s = score(a, x);
            if (s > best_score) {
                best = a;
                best_score = s;
            }
        }
        return best;
    }

    void update(std::size_t a, const Vector& x, double reward) {
        ArmState& s = arms_[a];
        for (std::size_t i = 0; i < Dim; ++i) {
            for (std::size_t j = 0; j < Dim; ++j) s.a[i][j] += x[i] * x[j];
            s.b[i] += reward * x[i];
        }
        s.chol = cholesky(s.a);
        s.theta = backward(s.chol, forward(s.chol, s.b));
        ++s.pulls;
    }

private:
    static Matrix cholesky(const Matrix& a) {
        Matrix l{};
        for (std::size_t j = 0; j < Dim; ++j) {
            double d = a[j][j];
            for (std::size_t k = 0; k < j; ++k) d -= l[j][k] * l[j][k];
            l[j][j] = std::sqrt(d);
            for (std::size_t i = j + 1; i < Dim; ++i) {
                double v = a[i][j];
                for (std::size_t k = 0; k < j; ++k) v -= l[i][k] * l[j][k];
                l[i][j] = v / l[j][j];
            }
        }
        return l;
    }

    // Solves L y = v.
    static Vector forward(const Matrix& l, const Vector& v) {
        Vector y{};
        for (std::size_t i = 0; i < Dim; ++i) {
            double s = v[i];
            for (std::size_t k = 0; k < i; ++k) s -= l[i][k] * y[k];
            y[i] = s / l[i][i];
        }
        return y;
    }

    // Solves L^T z = y.
    static Vector backward(const Matrix& l, const Vector& y) {
        Vector z{};
        for (std::size_t i = Dim; i-- > 0;) {
            double s = y[i];
            for (std::size_t k = i + 1; k < Dim; ++k) s -= l[k][i] * z[k];
            z[i] = s / l[i][i];
        }
        return z;
    }

    std::array<ArmState, Arms> arms_{};
    double alpha_;
};

// ---------------------------------------------------------------------------
// Reward

struct RewardConfig {
    double w_size = 0.65;
    double w_push = 0.35;
    double beta = 1.5;           // penalty factor when the clause grows
    double push_penalty = 0.1;   // R_p when the clause does not move
    double gamma_high = 0.4;
    double gamma_medium = 0.2;
    double gamma_low = 0.1;
    double high_push_ratio = 0.7;
};

/// Result of one generalization + intermediate push.
struct GenOutcome {
    std::size_t orig_size = 0;
    std::size_t gen_size = 0;
    std::size_t obligation_frame = 0;
    std::size_t pushed_frame = 0;
    std::size_t frontier = 0;
};

enum Event : unsigned {
    kFrontierPush = 1u << 0,  // +H
    kSizeOne = 1u << 1,       // +M
    kHighPush = 1u << 2,      // +L
    kIdeal = 1u << 3,         // +M
    kOverGeneralized = 1u << 4,  // -M
};

inline std::vector<std::string> event_tags(unsigned events) {
    std::vector<std::string> tags;
    if (events & kFrontierPush) tags.emplace_back("E_front");
    if (events & kSizeOne) tags.emplace_back("E_size1");
    if (events & kHighPush) tags.emplace_back("E_high");
    if (events & kIdeal) tags.emplace_back("E_ideal");
    if (events & kOverGeneralized) tags.emplace_back("E_over");
    return tags;
}

struct Reward {
    double size = 0.0;   // R_s
    double push = 0.0;   // R_p
    double bonus = 0.0;  // R_b
    double total = 0.0;  // r_t
    unsigned events = 0;
};

inline Reward compute_reward(const GenOutcome& o, const RewardConfig& cfg = {}) {
    Reward r;
    if (o.orig_size > 0) {
        const double orig = static_cast<double>(o.orig_size);
        const double gen = static_cast<double>(o.gen_size);
        r.size = (orig - gen) / orig;
        if (o.gen_size > o.orig_size) r.size *= cfg.beta;
    }

    // A clause generalized at the frontier cannot move further; it counts as
    // a full push when it holds there.
    bool pushed = false;
    if (o.obligation_frame >= o.frontier) {
        pushed = o.pushed_frame >= o.frontier;
        r.push = pushed ? 1.0 : cfg.push_penalty;
    } else if (o.pushed_frame > o.obligation_frame) {
        pushed = true;
        r.push = static_cast<double>(o.pushed_frame - o.obligation_frame) /
                 static_cast<double>(o.frontier - o.obligation_frame);
    } else {
        r.push = cfg.push_penalty;
    }

    if (o.pushed_frame == o.frontier) {
        r.events |= kFrontierPush;
        r.bonus += cfg.gamma_high;
    }
    if (o.gen_size == 1) {
        r.events |= kSizeOne;
        r.bonus += cfg.gamma_medium;
    }
    if (pushed && static_cast<double>(o.pushed_frame) > cfg.high_push_ratio * static_cast<double>(o.frontier)) {
        r.events |= kHighPush;
        r.bonus += cfg.gamma_low;
    }
    if (r.size > 0.5 && r.push > 0.3) {
        r.events |= kIdeal;
        r.bonus += cfg.gamma_medium;
    }
    if (r.size > 0.7 && r.push <= cfg.push_penalty) {
        r.events |= kOverGeneralized;
        r.bonus -= cfg.gamma_medium;
    }
    r.total = cfg.w_size * r.size + cfg.w_push * r.push + r.bonus;
    return r;
}

}  // namespace mabic3::bandit
