#include <gtest/gtest.h>

#include <random>

#include "asub/oracle.hpp"
#include "support.hpp"

using namespace asub;
using namespace asub::test;

TEST(Oracle, RunningSystemIsSafe) {
    const FifoResult r = bounded_fifo_safe(load("m_r.fsm"), load("m_s.fsm"), 4, 10000);
    EXPECT_EQ(r.kind, FifoResult::Kind::NoViolation);
    EXPECT_GT(r.explored, 1u);
}

TEST(Oracle, OrphanMessage) {
    const Machine a = mk("a", "p0", {{"p0", "!a", "p1"}});
    const Machine b = mk("b", "z", {});
    const FifoResult r = bounded_fifo_safe(a, b, 2, 100);
    EXPECT_EQ(r.kind, FifoResult::Kind::Orphan);
    EXPECT_EQ(r.trace, (std::vector<std::string>{"A!a"}));
}

TEST(Oracle, InitialDeadlock) {
    const Machine a = mk("a", "p0", {{"p0", "?a", "p1"}});
    const Machine b = mk("b", "q0", {{"q0", "?b", "q1"}});
    const FifoResult r = bounded_fifo_safe(a, b, 2, 100);
    EXPECT_EQ(r.kind, FifoResult::Kind::Deadlock);
    EXPECT_TRUE(r.trace.empty());
}

TEST(Oracle, BoundAloneIsNotADeadlock) {
    // A only sends, B only receives: the queue bound stops A, not the system.
    const Machine a = mk("a", "p", {{"p", "!x", "p"}});
    const Machine b = mk("b", "q", {{"q", "?x", "q"}});
    EXPECT_EQ(bounded_fifo_safe(a, b, 1, 1000).kind, FifoResult::Kind::NoViolation);
}

TEST(Oracle, SimulationFailureSearch) {
    const SimFailResult neg = bounded_sim_fail(load("neg_m1.fsm"), load("neg_m2.fsm"), 10);
    EXPECT_TRUE(neg.failure_found);
    EXPECT_TRUE(neg.path.empty());
    EXPECT_EQ(neg.reason, FailureReason::SendLoopWithAccumulation);

    const SimFailResult run = bounded_sim_fail(load("m_r.fsm"), load("m_c.fsm"), 50);
    EXPECT_FALSE(run.failure_found);
    EXPECT_FALSE(run.budget_exhausted);

    const Machine f = mk("f", "z", {});
    EXPECT_FALSE(bounded_sim_fail(f, f, 5).failure_found);
}

TEST(Oracle, FailurePathReplays) {
    // server against itself fails once the client side would need ?nd
    const Machine ms = load("m_s.fsm"), mc = load("m_c.fsm");
    const SimFailResult r = bounded_sim_fail(ms, mc, 10);
    ASSERT_TRUE(r.failure_found);
    TreeStore s;
    Simulator sim(ms, mc, s);
    SimLabel l = sim.initial_label();
    for (const Action& a : r.path) {
        StepResult st = sim.step(l);
        auto it = std::find_if(st.successors.begin(), st.successors.end(), [&](const auto& x) { return x.first == a; });
        ASSERT_NE(it, st.successors.end());
        l = it->second;
    }
    EXPECT_EQ(sim.step(l).failure, r.reason);
}

TEST(OracleProperty, GeneratorsYieldValidMachines) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        const Machine m = random_machine(rng, 4, 3);
        EXPECT_GE(m.state_count(), 1u);
        EXPECT_LE(m.state_count(), 4u);
        EXPECT_LE(m.alphabet().size(), 3u);
        const Machine x = mutate(rng, m, 3);
        EXPECT_EQ(x.state_count(), m.state_count());
        // both survive a round trip through validation
        EXPECT_NO_THROW(Machine::validate(x.describe()));
    }
}
