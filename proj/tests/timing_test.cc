#include "ionpnr/timing.h"

#include "gtest/gtest.h"
#include "ionpnr/errors.h"

using namespace ionpnr;

TEST(Timing, default_budget) {
    const ProtocolBudget b;
    EXPECT_NEAR(b.total(), 326e-6, 1e-15);
    EXPECT_NEAR(repetition_rate(b), 3067.48, 0.01);
}

TEST(Timing, three_stage_budget_without_storage) {
    ProtocolBudget b;
    b.t_storage = 0.0;
    EXPECT_NEAR(repetition_rate(b), 1.0 / 325e-6, 1e-9);
}

TEST(Timing, improved_setup) {
    const ProtocolBudget b{10e-6, 0.0, 30e-6, 10e-6};
    EXPECT_NEAR(repetition_rate(b), 20e3, 1e-6);
}

TEST(Timing, scaling_all_stages_halves_the_rate) {
    const ProtocolBudget b;
    const ProtocolBudget doubled{2 * b.t_init, 2 * b.t_storage, 2 * b.t_collect, 2 * b.t_recool};
    EXPECT_NEAR(repetition_rate(doubled), 0.5 * repetition_rate(b), 1e-9);
}

TEST(Timing, rate_strictly_decreases_in_each_stage) {
    const ProtocolBudget b;
    const double base = repetition_rate(b);
    for (double ProtocolBudget::*stage :
         {&ProtocolBudget::t_init, &ProtocolBudget::t_storage, &ProtocolBudget::t_collect, &ProtocolBudget::t_recool}) {
        ProtocolBudget longer = b;
        longer.*stage += 1e-6;
        EXPECT_LT(repetition_rate(longer), base);
    }
}

TEST(Timing, invalid_budgets) {
    EXPECT_THROW(repetition_rate(ProtocolBudget{0, 0, 0, 0}), InvalidParameter);
    EXPECT_THROW(repetition_rate(ProtocolBudget{-1e-6, 0, 10e-6, 0}), InvalidParameter);
}

TEST(Timing, stage_listing_order) {
    const auto s = stages(ProtocolBudget{});
    ASSERT_EQ(s.size(), 4u);
    EXPECT_EQ(s[0].name, "init");
    EXPECT_EQ(s[2].name, "collect");
    EXPECT_EQ(s[2].duration, 200e-6);
}
