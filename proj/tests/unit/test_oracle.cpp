#include <gtest/gtest.h>

#include "generators.hpp"
#include "tsat/oracle.hpp"
#include "tsat/parser.hpp"

namespace tsat {
namespace {

// Direct recursive reading of the semantics, independent of the table-based
// evaluator.  For lassos, witnesses are searched up to a horizon after which
// all values repeat with the period.
class NaiveEval {
public:
    NaiveEval(const VariableContext& ctx, std::vector<VAtom> states, std::optional<std::size_t> loop, int past_depth)
        : ctx_(ctx), states_(std::move(states)), loop_(loop) {
        if (loop_) {
            period_ = states_.size() - *loop_;
            settle_ = *loop_ + period_ * static_cast<std::size_t>(past_depth);
        }
    }

    bool at(const Formula& f, std::size_t k) const {
        switch (f.op()) {
            case Op::Var:
                return state(k)[*ctx_.index_of(f.name())];
            case Op::True:
                return true;
            case Op::Not:
                return !at(f.lhs(), k);
            case Op::Or:
                return at(f.lhs(), k) || at(f.rhs(), k);
            case Op::Next:
                return exists(k + 1) && at(f.lhs(), k + 1);
            case Op::Diamond:
                for (std::size_t j = k; j <= horizon(k); ++j)
                    if (at(f.lhs(), j)) return true;
                return false;
            case Op::Until:
                for (std::size_t j = k; j <= horizon(k); ++j) {
                    if (at(f.rhs(), j)) return true;
                    if (!at(f.lhs(), j)) return false;
                }
                return false;
            case Op::Prev:
                return k > 0 && at(f.lhs(), k - 1);
            case Op::Once:
                for (std::size_t j = 0; j <= k; ++j)
                    if (at(f.lhs(), j)) return true;
                return false;
            default:
                return at(expand_once(f), k);
        }
    }

private:
    bool exists(std::size_t k) const { return loop_ || k < states_.size(); }
    std::size_t horizon(std::size_t k) const {
        if (!loop_) return states_.size() - 1;
        return std::max(k, settle_) + period_;
    }
    const VAtom& state(std::size_t k) const {
        if (k < states_.size()) return states_[k];
        return states_[*loop_ + (k - *loop_) % period_];
    }

    const VariableContext& ctx_;
    std::vector<VAtom> states_;
    std::optional<std::size_t> loop_;
    std::size_t period_ = 0;
    std::size_t settle_ = 0;
};

VAtom atom(std::initializer_list<int> bits) {
    std::vector<bool> b;
    for (int x : bits) b.push_back(x != 0);
    return VAtom(b);
}

FiniteInterval interval(std::initializer_list<std::initializer_list<int>> states) {
    FiniteInterval s;
    for (auto st : states) s.states.push_back(atom(st));
    return s;
}

const VariableContext kPQ({"p", "q"});

TEST(Oracle, FiniteBasics) {
    FiniteInterval s = interval({{1, 0}, {0, 1}, {1, 1}});
    EXPECT_TRUE(eval_finite(parse("p & next q"), s, kPQ));
    EXPECT_FALSE(eval_finite(parse("next next next p"), s, kPQ));
    EXPECT_TRUE(eval_finite(parse("wnext false"), s, kPQ, 2));
    EXPECT_TRUE(eval_finite(parse("<>(p & q)"), s, kPQ));
    EXPECT_TRUE(eval_finite(parse("p U q"), s, kPQ));
    EXPECT_FALSE(eval_finite(parse("[]p"), s, kPQ));
    EXPECT_TRUE(eval_finite(parse("finite & fin (p & q) & sfin q"), s, kPQ));
    EXPECT_TRUE(eval_finite(parse("empty"), s, kPQ, 2));
    EXPECT_TRUE(eval_finite(parse("skip"), s, kPQ, 1));
    EXPECT_TRUE(eval_finite(parse("bm (p | q)"), s, kPQ));
    EXPECT_FALSE(eval_finite(parse("dm (p & q)"), s, kPQ));
    EXPECT_TRUE(eval_finite(parse("prev p & ~p"), s, kPQ, 1));
    EXPECT_TRUE(eval_finite(parse("first"), s, kPQ, 0));
    EXPECT_FALSE(eval_finite(parse("first"), s, kPQ, 1));
    EXPECT_TRUE(eval_finite(parse("once (p & ~q) & sofar (p | q)"), s, kPQ, 2));
    EXPECT_TRUE(eval_finite(parse("wprev false"), s, kPQ, 0));
    EXPECT_THROW((void)eval_finite(parse("z"), s, kPQ), std::invalid_argument);
}

TEST(Oracle, LassoBasics) {
    LassoInterval alt{{}, {atom({1, 0}), atom({0, 0})}};
    EXPECT_TRUE(eval_lasso(parse("[]<>p & []<>~p"), alt, kPQ));
    EXPECT_FALSE(eval_lasso(parse("<>[]p"), alt, kPQ));
    EXPECT_TRUE(eval_lasso(parse("inf & [] more"), alt, kPQ));
    EXPECT_FALSE(eval_lasso(parse("finite"), alt, kPQ));
    EXPECT_TRUE(eval_lasso(parse("[](p -> next ~p)"), alt, kPQ));
    EXPECT_FALSE(eval_lasso(parse("~p U q"), alt, kPQ, 1));
    EXPECT_TRUE(eval_lasso(parse("prev p"), alt, kPQ, 3));
    EXPECT_FALSE(eval_lasso(parse("prev p"), alt, kPQ, 4));
    LassoInterval stem{{atom({0, 1})}, {atom({1, 0})}};
    EXPECT_TRUE(eval_lasso(parse("q & next []p"), stem, kPQ));
    EXPECT_TRUE(eval_lasso(parse("[] once q"), stem, kPQ));
    EXPECT_TRUE(eval_lasso(parse("<>[] prev p"), stem, kPQ));
    EXPECT_TRUE(eval_lasso(parse("p U (p & prev prev q)"), stem, kPQ, 1));
}

TEST(Oracle, TableEvaluatorAgreesWithNaiveReadingOnFiniteIntervals) {
    testing::FormulaGen gen(3, {"p", "q"});
    for (int i = 0; i < 300; ++i) {
        Formula f = expand_derived(i % 3 ? gen.future(4) : gen.with_past(4));
        CompiledFormula c(f, kPQ);
        for_each_interval(kPQ, 3, [&](const FiniteInterval& s) {
            NaiveEval naive(kPQ, s.states, std::nullopt, 0);
            auto values = c.eval_all(s);
            for (std::size_t k = 0; k < s.states.size(); ++k)
                EXPECT_EQ(values[k] != 0, naive.at(f, k)) << print(f);
            return !::testing::Test::HasFailure();
        });
        if (::testing::Test::HasFailure()) return;
    }
}

TEST(Oracle, TableEvaluatorAgreesWithNaiveReadingOnLassos) {
    testing::FormulaGen gen(5, {"p", "q"});
    for (int i = 0; i < 200; ++i) {
        Formula f = expand_derived(i % 3 ? gen.future(4) : gen.with_past(4));
        CompiledFormula c(f, kPQ);
        for_each_lasso(kPQ, 2, 2, [&](const LassoInterval& l) {
            std::vector<VAtom> states = l.prefix;
            states.insert(states.end(), l.period.begin(), l.period.end());
            NaiveEval naive(kPQ, states, l.prefix.size(), past_depth(f));
            for (std::size_t k = 0; k < states.size() + 2 * l.period.size(); ++k)
                EXPECT_EQ(c.eval_lasso(l, k), naive.at(f, k)) << print(f) << " at " << k;
            return !::testing::Test::HasFailure();
        });
        if (::testing::Test::HasFailure()) return;
    }
}

TEST(Oracle, EnumerationOrderPrefersTrue) {
    const VariableContext p({"p"});
    std::vector<FiniteInterval> seen;
    for_each_interval(p, 1, [&](const FiniteInterval& s) {
        seen.push_back(s);
        return true;
    });
    ASSERT_EQ(seen.size(), 6U);
    EXPECT_EQ(seen[0], interval({{1}}));
    EXPECT_EQ(seen[1], interval({{0}}));
    EXPECT_EQ(seen[2], interval({{1}, {1}}));
    EXPECT_EQ(seen[3], interval({{1}, {0}}));
    EXPECT_EQ(seen[5], interval({{0}, {0}}));
}

TEST(Oracle, EnumerateSat) {
    const VariableContext p({"p"});
    SearchBounds lasso;
    lasso.mode = SearchBounds::Mode::Lasso;
    lasso.max_prefix = 1;
    lasso.max_period = 2;
    SearchResult r = enumerate_sat(parse("[]<>p & []<>~p"), p, lasso);
    ASSERT_TRUE(std::holds_alternative<LassoInterval>(r));
    const auto& l = std::get<LassoInterval>(r);
    EXPECT_TRUE(l.prefix.empty());
    ASSERT_EQ(l.period.size(), 2U);
    EXPECT_EQ(l.period[0], atom({1}));
    EXPECT_EQ(l.period[1], atom({0}));

    SearchBounds fin;
    fin.max_length = 4;
    EXPECT_FALSE(found(enumerate_sat(parse("[]<>p & []<>~p"), p, fin)));
    r = enumerate_sat(parse("~p & next p"), p, fin);
    ASSERT_TRUE(std::holds_alternative<FiniteInterval>(r));
    EXPECT_EQ(std::get<FiniteInterval>(r), interval({{0}, {1}}));

    // Floating satisfaction looks past the first state.
    SearchBounds floating = fin;
    floating.floating = true;
    EXPECT_FALSE(found(enumerate_sat(parse("prev p"), p, fin)));
    EXPECT_TRUE(found(enumerate_sat(parse("prev p"), p, floating)));
}

TEST(Oracle, EnumerationGuards) {
    const VariableContext six({"a", "b", "c", "d", "e", "f"});
    EXPECT_THROW((void)enumerate_sat(parse("a"), six, {}), BoundsTooLarge);
    SearchBounds big;
    big.max_length = 20;
    EXPECT_THROW((void)enumerate_sat(parse("p"), kPQ, big), BoundsTooLarge);
    SearchBounds no_period;
    no_period.mode = SearchBounds::Mode::Lasso;
    no_period.max_period = 0;
    EXPECT_THROW((void)enumerate_sat(parse("p"), kPQ, no_period), std::invalid_argument);
}

TEST(Pitl, ChopAndTests) {
    using K = PitlFormula;
    const VariableContext p({"p"});
    FiniteInterval s = interval({{1}, {1}, {0}});
    K ptl_p = K::ptl(parse("p"));
    K ptl_np = K::ptl(parse("~p"));
    K fin_np = K::ptl(parse("fin ~p"));
    EXPECT_TRUE(eval_pitl(K::chop(ptl_p, fin_np), s, p));
    EXPECT_TRUE(eval_pitl(K::chop(K::ptl(parse("[]p")), K::ptl(parse("p & skip"))), s, p));
    EXPECT_FALSE(eval_pitl(K::chop(K::ptl(parse("[]p")), K::ptl(parse("~p"))), s, p));
    EXPECT_TRUE(eval_pitl(K::chop(K::ptl(parse("true")), K::empty_test(parse("~p"))), s, p));
    EXPECT_FALSE(eval_pitl(K::empty_test(parse("p")), s, p));
    EXPECT_TRUE(eval_pitl(K::empty_test(parse("p")), interval({{1}}), p));
    EXPECT_TRUE(eval_pitl(K::unit_test(parse("p & next ~p")), interval({{1}, {0}}), p));
    EXPECT_FALSE(eval_pitl(K::unit_test(parse("true")), s, p));
    EXPECT_TRUE(eval_pitl(K::negate(ptl_np), s, p));
    EXPECT_TRUE(eval_pitl(K::disj(ptl_np, ptl_p), s, p));
    EXPECT_FALSE(eval_pitl(K::conj(ptl_np, ptl_p), s, p));
}

TEST(Pitl, ChopStar) {
    using K = PitlFormula;
    const VariableContext p({"p"});
    K unit_p = K::unit_test(parse("p"));
    EXPECT_TRUE(eval_pitl(K::chop_star(unit_p), interval({{0}}), p));
    EXPECT_TRUE(eval_pitl(K::chop_star(unit_p), interval({{1}, {1}, {0}}), p));
    EXPECT_FALSE(eval_pitl(K::chop_star(unit_p), interval({{1}, {0}, {0}}), p));
    // Pieces of length two.
    K two = K::ptl(parse("next skip"));
    EXPECT_TRUE(eval_pitl(K::chop_star(two), interval({{0}, {0}, {0}, {0}, {0}}), p));
    EXPECT_FALSE(eval_pitl(K::chop_star(two), interval({{0}, {0}, {0}, {0}}), p));
}

}  // namespace
}  // namespace tsat
