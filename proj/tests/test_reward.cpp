#include <gtest/gtest.h>

#include "mabic3/bandit.hpp"
#include "reward_cases.hpp"

using namespace mabic3::bandit;
using reward_cases::Case;
using reward_cases::kCases;

TEST(Reward, HandComputedCases) {
    for (const Case& c : kCases) {
        const Reward r = compute_reward(c.o);
        EXPECT_NEAR(r.size, c.rs, 1e-12) << c.name;
        EXPECT_NEAR(r.push, c.rp, 1e-12) << c.name;
        EXPECT_NEAR(r.bonus, c.rb, 1e-12) << c.name;
        EXPECT_EQ(r.events, c.events) << c.name;
        EXPECT_NEAR(r.total, c.total, 1e-12) << c.name;
    }
}

TEST(Reward, EveryEventIsCovered) {
    unsigned seen = 0;
    for (const Case& c : kCases) seen |= c.events;
    EXPECT_EQ(seen, kFrontierPush | kSizeOne | kHighPush | kIdeal | kOverGeneralized);
}

TEST(Reward, EventTags) {
    EXPECT_EQ(event_tags(kFrontierPush | kOverGeneralized), (std::vector<std::string>{"E_front", "E_over"}));
    EXPECT_TRUE(event_tags(0).empty());
}

TEST(Reward, BoundsOverOutcomeGrid) {
    for (std::size_t orig = 1; orig <= 12; ++orig)
        for (std::size_t gen = 1; gen <= orig; ++gen)
            for (std::size_t k = 1; k <= 8; ++k)
                for (std::size_t ob = 1; ob <= k; ++ob)
                    for (std::size_t p = ob; p <= k; ++p) {
                        const Reward r = compute_reward({orig, gen, ob, p, k});
                        EXPECT_LE(r.size, 1.0);
                        EXPECT_GE(r.size, 0.0);
                        EXPECT_TRUE(r.push == 0.1 || (r.push > 0.0 && r.push <= 1.0));
                        EXPECT_LE(std::abs(r.bonus), 0.9 + 1e-12);
                        EXPECT_TRUE(std::isfinite(r.total));
                    }
}

TEST(Reward, CustomConstants) {
    RewardConfig cfg;
    cfg.w_size = 1.0;
    cfg.w_push = 0.0;
    cfg.beta = 2.0;
    const Reward r = compute_reward({2, 3, 1, 1, 2}, cfg);
    EXPECT_NEAR(r.size, -1.0, 1e-12);
    EXPECT_NEAR(r.total, -1.0, 1e-12);
}
