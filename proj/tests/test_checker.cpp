#include <gtest/gtest.h>

#include <random>

#include "asub/checker.hpp"
#include "asub/oracle.hpp"
#include "support.hpp"

using namespace asub;
using namespace asub::test;

TEST(Checker, RunningExampleIsTrue) {
    const auto ms = load_machines(corpus("running_pair.fsm"));
    ASSERT_EQ(ms.size(), 2u);
    const Verdict v = check(ms[0], ms[1]);
    EXPECT_EQ(v.value, VerdictValue::True);
    ASSERT_EQ(v.runs.size(), 1u);
    EXPECT_EQ(v.decided_by, 0u);
    EXPECT_FALSE(v.runs[0].dual);
    EXPECT_EQ(v.runs[0].witness.size(), 1u);
    EXPECT_TRUE(v.runs[0].witness[0].ok);
}

TEST(Checker, NegativeExampleIsFalseBothWays) {
    const Machine m1 = load("neg_m1.fsm"), m2 = load("neg_m2.fsm");
    EXPECT_EQ(check(m1, m2).value, VerdictValue::False);
    EXPECT_EQ(check(m2, m1).value, VerdictValue::False);
    for (bool d : {false, true}) {
        const DirectionReport r = d ? check_direction(dual(m2), dual(m1), {}, true) : check_direction(m1, m2);
        EXPECT_EQ(r.value, VerdictValue::False);
        EXPECT_EQ(r.tree.failure_node, 0u);
    }
}

TEST(Checker, ExampleWithoutWitnessIsUnknownBothWays) {
    const Machine m1 = load("ex315_m1.fsm"), m2 = load("ex315_m2.fsm");
    const Verdict v = check(m1, m2);
    EXPECT_EQ(v.value, VerdictValue::Unknown);
    ASSERT_EQ(v.runs.size(), 2u);
    EXPECT_FALSE(v.decided_by.has_value());
    for (const auto& r : v.runs) {
        EXPECT_EQ(r.value, VerdictValue::Unknown);
        EXPECT_EQ(r.cause, UnknownCause::NotWitness);
    }
    EXPECT_EQ(v.runs[0].witness.at(0).failure, WitnessFailure::NoReceiveOnAncPath);
    EXPECT_NE(v.evidence().find("NoReceiveOnAncPath"), std::string::npos);
}

TEST(Checker, DirectionModes) {
    const Machine m1 = load("ex315_m1.fsm"), m2 = load("ex315_m2.fsm");
    CheckOptions o;
    o.mode = DirectionMode::Direct;
    Verdict v = check(m1, m2, o);
    ASSERT_EQ(v.runs.size(), 1u);
    EXPECT_FALSE(v.runs[0].dual);
    o.mode = DirectionMode::Dual;
    v = check(m1, m2, o);
    ASSERT_EQ(v.runs.size(), 1u);
    EXPECT_TRUE(v.runs[0].dual);
    // a false from the dual run answers the original query
    o.mode = DirectionMode::Dual;
    EXPECT_EQ(check(load("neg_m1.fsm"), load("neg_m2.fsm"), o).value, VerdictValue::False);
}

TEST(Checker, LimitMakesUnknown) {
    const auto ms = load_machines(corpus("running_pair.fsm"));
    CheckOptions o;
    o.build.max_nodes = 4;
    const Verdict v = check(ms[0], ms[1], o);
    EXPECT_EQ(v.value, VerdictValue::Unknown);
    for (const auto& r : v.runs) EXPECT_EQ(r.cause, UnknownCause::LimitHit);
}

TEST(CheckerProperty, EveryMachineIsItsOwnSubtype) {
    std::mt19937_64 rng(41);
    for (int iter = 0; iter < 300; ++iter) {
        const Machine m = random_machine(rng, 6, 3);
        const Verdict v = check(m, m);
        EXPECT_EQ(v.value, VerdictValue::True) << serialize(m) << v.evidence();
    }
}

TEST(CheckerProperty, DualCoherenceAndOracleAgreement) {
    std::mt19937_64 rng(43);
    int decided = 0;
    for (int iter = 0; iter < 200; ++iter) {
        const Machine a = random_machine(rng, 4, 2, "a");
        const Machine b = iter % 3 ? mutate(rng, a, 2) : random_machine(rng, 4, 2, "b");
        const DirectionReport direct = check_direction(a, b);
        const DirectionReport dualr = check_direction(dual(b), dual(a), {}, true);
        if (direct.value == VerdictValue::True) {
            EXPECT_NE(dualr.value, VerdictValue::False) << serialize(a) << serialize(b);
        }
        if (dualr.value == VerdictValue::True) {
            EXPECT_NE(direct.value, VerdictValue::False) << serialize(a) << serialize(b);
        }
        const Verdict v = check(a, b);
        if (v.value == VerdictValue::True) {
            ++decided;
            EXPECT_EQ(bounded_fifo_safe(a, dual(b), 3, 20000).kind, FifoResult::Kind::NoViolation)
                << serialize(a) << serialize(b);
            EXPECT_FALSE(bounded_sim_fail(a, b, 20).failure_found);
        } else if (v.value == VerdictValue::False) {
            ++decided;
        }
    }
    EXPECT_GT(decided, 100);
}

TEST(Checker, EvidenceIsDeterministic) {
    const Machine m1 = load("ex315_m1.fsm"), m2 = load("ex315_m2.fsm");
    EXPECT_EQ(check(m1, m2).evidence(), check(m1, m2).evidence());
}
