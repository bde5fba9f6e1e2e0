#include <gtest/gtest.h>

#include <cmath>

#include "esmc/heuristics.hpp"

using namespace esmc;

namespace {

HeuristicState state(HeuristicKind kind, std::uint64_t w, double value = 1.0) {
    HeuristicParams p;
    p.kind = kind;
    HeuristicState s = make_heuristic(p);
    s.w = w;
    s.value = value;
    return s;
}

} // namespace

TEST(Gmz, Examples) {
    EXPECT_EQ(gmz_update(state(HeuristicKind::gmz, 1), true).w, 2u);
    EXPECT_EQ(gmz_update(state(HeuristicKind::gmz, 5), false).w, 3u);
    EXPECT_EQ(gmz_update(state(HeuristicKind::gmz, 10000), true).w, 10000u);
    EXPECT_EQ(gmz_update(state(HeuristicKind::gmz, 1), false).w, 1u);
    EXPECT_EQ(gmz_update(state(HeuristicKind::gmz, 2), false).w, 1u);
}

TEST(Vl, Examples) {
    const HeuristicState up = vl_update(state(HeuristicKind::vl, 10, 10.0), true);
    EXPECT_DOUBLE_EQ(up.value, 11.0);
    EXPECT_EQ(up.w, 11u);

    const double q_minus = 0.1 / (std::exp(1.0) - 1.0);
    EXPECT_NEAR(q_minus, 0.05820, 1e-5);
    const HeuristicState down = vl_update(state(HeuristicKind::vl, 10, 10.0), false);
    EXPECT_NEAR(down.value, 9.41802, 1e-5);
    EXPECT_EQ(down.w, 10u);

    const HeuristicState capped = vl_update(state(HeuristicKind::vl, 10000, 9999.5), true);
    EXPECT_EQ(capped.w, 10000u);
    EXPECT_DOUBLE_EQ(capped.value, 10000.0);
}

TEST(Vl, ExplicitQMinusAndFloor) {
    HeuristicParams p;
    p.kind = HeuristicKind::vl;
    p.q_minus = 0.5;
    HeuristicState s = make_heuristic(p);
    s = vl_update(s, false);
    EXPECT_EQ(s.w, 1u);
    EXPECT_DOUBLE_EQ(s.value, 1.0);
}

TEST(Sb, Examples) {
    EXPECT_NEAR(std::log(0.1) / std::log(0.99), 229.105, 1e-3);
    EXPECT_EQ(sb_budget(0.1, 0.99, 10000), 230u);
    EXPECT_EQ(sb_budget(0.5, 0.5, 10000), 1u);
    EXPECT_EQ(sb_budget(0.1, 1.0, 10000), 10000u);
    EXPECT_EQ(sb_budget(0.1, 0.999999999, 10000), 10000u);
}

TEST(Sb, RunningMean) {
    HeuristicParams p;
    p.alpha = 0.1;
    HeuristicState s = sb_seed(make_heuristic(p), 0.9);
    EXPECT_DOUBLE_EQ(s.rho_bar(), 0.9);
    EXPECT_EQ(s.w, sb_budget(0.1, 0.9, 10000));
    s = sb_update(s, 0.8);
    EXPECT_DOUBLE_EQ(s.rho_bar(), 0.85);
    EXPECT_EQ(s.samples, 2u);
    EXPECT_THROW(sb_update(s, 0.0), std::invalid_argument);
    EXPECT_THROW(sb_update(s, 1.5), std::invalid_argument);
}

TEST(Heuristic, Dispatch) {
    HeuristicState g = state(HeuristicKind::gmz, 4);
    EXPECT_EQ(update(g, false, std::nullopt).w, 2u);
    HeuristicState f = make_heuristic({HeuristicKind::fixed, 0.1, std::nullopt, 0.1, 10000, 7});
    EXPECT_EQ(f.w, 7u);
    EXPECT_EQ(update(f, false, std::nullopt).w, 7u);
    HeuristicState s = sb_seed(make_heuristic({}), 0.9);
    EXPECT_THROW(update(s, true, std::nullopt), std::invalid_argument);
}

TEST(Heuristic, Validation) {
    HeuristicParams p;
    p.kind = HeuristicKind::sb;
    p.alpha = 1.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p.kind = HeuristicKind::vl;
    p.q_plus = 0.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p.q_plus = 0.1;
    p.q_minus = 1.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.cap = 0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    EXPECT_THROW(parse_heuristic("greedy"), std::invalid_argument);
    EXPECT_EQ(parse_heuristic("vl"), HeuristicKind::vl);
}

TEST(Heuristic, BudgetStaysInRange) {
    for (HeuristicKind kind : {HeuristicKind::gmz, HeuristicKind::vl}) {
        HeuristicParams p;
        p.kind = kind;
        p.cap = 50;
        HeuristicState s = make_heuristic(p);
        for (int i = 0; i < 500; ++i) {
            s = update(s, (i / 37) % 2 == 0, std::nullopt);
            EXPECT_GE(s.w, 1u);
            EXPECT_LE(s.w, 50u);
        }
    }
}
