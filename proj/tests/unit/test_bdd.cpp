#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "checks.hpp"
#include "tsat/bdd.hpp"
#include "tsat/engine.hpp"
#include "tsat/parser.hpp"

namespace tsat {
namespace {

std::string failures(const testing::CheckReport& r) {
    std::string out;
    for (std::size_t i = 0; i < r.failures.size() && i < 10; ++i) out += r.failures[i] + "\n";
    return out;
}

TEST(Bdd, Constants) {
    BddManager m(VariableContext({"p", "q"}));
    const BddRef p = m.var("p");
    EXPECT_EQ(m.land(p, m.lnot(p)), BddManager::bdd_false());
    EXPECT_EQ(m.lor(p, m.lnot(p)), BddManager::bdd_true());
    EXPECT_EQ(m.var("p"), p);
    EXPECT_EQ(m.apply(BddOp::Iff, p, p), BddManager::bdd_true());
    EXPECT_TRUE(BddManager::is_terminal(BddManager::bdd_true()));
    EXPECT_FALSE(BddManager::is_terminal(p));
}

TEST(Bdd, DeMorganAndAlgebra) {
    BddManager m(VariableContext({"p", "q", "r"}));
    const BddRef p = m.var("p"), q = m.var("q"), r = m.var("r'");
    EXPECT_EQ(m.lnot(m.land(p, q)), m.lor(m.lnot(p), m.lnot(q)));
    EXPECT_EQ(m.land(p, m.land(q, r)), m.land(m.land(r, p), q));
    EXPECT_EQ(m.apply(BddOp::Implies, p, q), m.lor(m.lnot(p), q));
    EXPECT_EQ(m.ite(p, q, r), m.lor(m.land(p, q), m.land(m.lnot(p), r)));
}

TEST(Bdd, Exists) {
    BddManager m(VariableContext({"p", "q"}));
    const BddRef p = m.var("p"), q = m.var("q");
    EXPECT_EQ(m.exists({"p"}, p), BddManager::bdd_true());
    EXPECT_EQ(m.exists({"p"}, m.land(p, q)), q);
    EXPECT_EQ(m.exists({"p'"}, m.land(m.var("p'"), q)), q);
    EXPECT_EQ(m.exists_primed(m.land(m.var("q'"), p)), p);
    EXPECT_THROW((void)m.exists({"z"}, p), UnknownVariable);
}

TEST(Bdd, Swap) {
    BddManager m(VariableContext({"p", "q"}));
    EXPECT_EQ(m.swap_primed(m.var("p'")), m.var("p"));
    EXPECT_EQ(m.swap_primed(m.land(m.var("p"), m.var("q'"))), m.land(m.var("p'"), m.var("q")));
    const BddRef f = m.lor(m.var("p"), m.apply(BddOp::Xor, m.var("q"), m.var("p'")));
    EXPECT_EQ(m.swap_primed(m.swap_primed(f)), f);
}

TEST(Bdd, UnknownVariables) {
    BddManager m(VariableContext({"p"}));
    EXPECT_THROW((void)m.var("q"), UnknownVariable);
    EXPECT_THROW((void)m.var("q'"), UnknownVariable);
    EXPECT_THROW((void)m.var("p''"), UnknownVariable);
}

TEST(Bdd, CubeEvalSupportAndDump) {
    const VariableContext ctx({"p", "q"});
    BddManager m(ctx);
    const VAtom a(std::vector<bool>{true, false});
    const BddRef c = m.cube(a);
    EXPECT_EQ(c, m.land(m.var("p"), m.lnot(m.var("q"))));
    EXPECT_EQ(m.cube(a, true), m.land(m.var("p'"), m.lnot(m.var("q'"))));
    EXPECT_TRUE(m.eval(c, a));
    EXPECT_FALSE(m.eval(c, VAtom(std::vector<bool>{true, true})));
    EXPECT_EQ(m.support(m.land(m.var("q'"), m.var("p"))), (std::vector<std::string>{"p", "q'"}));
    EXPECT_EQ(m.size(c), 2U);
    EXPECT_EQ(m.size(BddManager::bdd_true()), 0U);
    std::ostringstream out;
    m.dump(out, m.var("p"));
    EXPECT_EQ(out.str(), std::to_string(m.var("p").id) + " p 0 1\n");
    EXPECT_EQ(m.level_name(1), "p'");
}

TEST(Bdd, NodeLimit) {
    std::vector<std::string> names;
    for (int i = 0; i < 8; ++i) names.push_back("v" + std::to_string(i));
    BddManager m(VariableContext(names), 12);
    EXPECT_THROW(
        {
            BddRef f = BddManager::bdd_false();
            for (std::size_t i = 0; i < 8; ++i) f = m.apply(BddOp::Xor, f, m.var(i, i % 2 == 1));
        },
        NodeLimitExceeded);
}

TEST(Bdd, ExhaustiveTruthTables) {
    testing::CheckReport r = testing::check_bdd_truth_tables();
    EXPECT_TRUE(r.ok()) << failures(r);
    EXPECT_GT(r.cases, 600000U);
}

TEST(Bdd, PickAtom) {
    testing::CheckReport r = testing::check_pick_atom();
    EXPECT_TRUE(r.ok()) << failures(r);
}

TEST(Bdd, CanonicityOnFiveLevels) {
    BddManager m(VariableContext({"a", "b", "c"}));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        const std::uint32_t tt = static_cast<std::uint32_t>(rng());
        // Sum of minterms in two different orders.
        BddRef up = BddManager::bdd_false();
        BddRef down = BddManager::bdd_false();
        auto minterm = [&](unsigned x) {
            BddRef c = BddManager::bdd_true();
            for (std::size_t l = 0; l < 5; ++l) {
                BddRef v = m.var(l / 2, l % 2 == 1);
                c = m.land(c, (x >> l) & 1U ? v : m.lnot(v));
            }
            return c;
        };
        for (unsigned x = 0; x < 32; ++x)
            if ((tt >> x) & 1U) up = m.lor(up, minterm(x));
        for (unsigned x = 32; x-- > 0;)
            if ((tt >> x) & 1U) down = m.lor(minterm(x), down);
        EXPECT_EQ(up, down);
        for (unsigned x = 0; x < 32; ++x) {
            const VAtom cur(std::vector<bool>{(x & 1U) != 0, (x & 4U) != 0, (x & 16U) != 0});
            const VAtom pri(std::vector<bool>{(x & 2U) != 0, (x & 8U) != 0, false});
            EXPECT_EQ(m.eval(up, cur, &pri), ((tt >> x) & 1U) != 0);
        }
    }
}

TEST(Bdd, RunningExampleRelationIsDeterministic) {
    auto build = [] {
        Pipeline p = prepare(parse("[]<>p & []<>~p"), DecisionMode::Finite);
        BddManager m(p.configs[0].ctx);
        SymbolicConfig s = build_symbolic(m, p.configs[0]);
        std::ostringstream out;
        m.dump(out, s.gamma2);
        return std::make_pair(m.node_count(), out.str());
    };
    auto first = build();
    EXPECT_EQ(first, build());
    EXPECT_GT(first.first, 2U);
}

}  // namespace
}  // namespace tsat
