#pragma once

// Reference semantics by direct evaluation on explicit intervals.  Everything
// here is brute force and independent of the symbolic engine; the test suites
// use it as ground truth.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <variant>
#include <vector>

#include "tsat/formula.hpp"
#include "tsat/interval.hpp"

namespace tsat {

class BoundsTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A formula expanded to primitives and laid out for repeated evaluation over
// many intervals.  Variables are resolved against the context at compile
// time; an unknown variable throws std::invalid_argument.
class CompiledFormula {
public:
    CompiledFormula(const Formula& f, const VariableContext& ctx);

    // Truth value at every position 0..length of sigma.
    [[nodiscard]] std::vector<std::uint8_t> eval_all(const FiniteInterval& sigma) const;
    [[nodiscard]] bool eval_finite(const FiniteInterval& sigma, std::size_t k = 0) const;
    // Any position k of the infinite word; positions are reduced by
    // periodicity internally.
    [[nodiscard]] bool eval_lasso(const LassoInterval& lasso, std::size_t k = 0) const;
    // True at some position (floating satisfaction).
    [[nodiscard]] bool holds_somewhere(const FiniteInterval& sigma) const;
    [[nodiscard]] bool holds_somewhere(const LassoInterval& lasso) const;

    [[nodiscard]] int past_depth() const noexcept { return past_depth_; }

private:
    struct Instr {
        Op op;
        int a = -1;
        int b = -1;
        std::size_t var = 0;
    };

    int compile(const Formula& f, const VariableContext& ctx, std::unordered_map<Formula, int>& seen);
    std::vector<std::uint8_t> evaluate(std::size_t n, std::optional<std::size_t> loop_start,
                                       const std::function<const VAtom&(std::size_t)>& state) const;
    LassoInterval unroll(const LassoInterval& lasso) const;

    std::vector<Instr> code_;
    std::size_t width_ = 0;
    int past_depth_ = 0;
};

// Convenience wrappers compiling on every call.
[[nodiscard]] bool eval_finite(const Formula& f, const FiniteInterval& sigma, const VariableContext& ctx,
                               std::size_t k = 0);
[[nodiscard]] bool eval_lasso(const Formula& f, const LassoInterval& lasso, const VariableContext& ctx,
                              std::size_t k = 0);

// Propositional interval formulas for finite intervals: PTL leaves combined
// with chop, chop-star and the unit/empty tests.
class PitlFormula {
public:
    enum class Kind : std::uint8_t { Ptl, Not, And, Or, Chop, ChopStar, UnitTest, EmptyTest };

    static PitlFormula ptl(Formula f);
    static PitlFormula negate(PitlFormula a);
    static PitlFormula conj(PitlFormula a, PitlFormula b);
    static PitlFormula disj(PitlFormula a, PitlFormula b);
    static PitlFormula chop(PitlFormula a, PitlFormula b);
    static PitlFormula chop_star(PitlFormula a);
    // $T: a two-state interval satisfying T.
    static PitlFormula unit_test(Formula t);
    // w?: a one-state interval satisfying w.
    static PitlFormula empty_test(Formula w);

    [[nodiscard]] Kind kind() const noexcept;
    [[nodiscard]] const Formula& leaf() const;
    [[nodiscard]] const PitlFormula& lhs() const;
    [[nodiscard]] const PitlFormula& rhs() const;

private:
    struct Node;
    explicit PitlFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

[[nodiscard]] bool eval_pitl(const PitlFormula& f, const FiniteInterval& sigma, const VariableContext& ctx);

// Calls fn for every interval over ctx with length 0..max_length, in
// enumeration order (length ascending, then lexicographic with true before
// false).  Stops early when fn returns false.
void for_each_interval(const VariableContext& ctx, std::size_t max_length,
                       const std::function<bool(const FiniteInterval&)>& fn);

// Lassos ordered by total state count, then prefix length, then
// lexicographically (true before false).
void for_each_lasso(const VariableContext& ctx, std::size_t max_prefix, std::size_t max_period,
                    const std::function<bool(const LassoInterval&)>& fn);

struct SearchBounds {
    enum class Mode : std::uint8_t { Finite, Lasso };
    Mode mode = Mode::Finite;
    std::size_t max_length = 4;  // finite mode
    std::size_t max_prefix = 1;  // lasso mode
    std::size_t max_period = 2;  // lasso mode
    // Satisfaction at some position rather than at position 0.
    bool floating = false;
    // Upper bound on the number of candidate intervals.
    std::uint64_t cap = std::uint64_t{1} << 24;
};

struct NoneFound {};

using SearchResult = std::variant<NoneFound, FiniteInterval, LassoInterval>;

inline constexpr std::size_t kMaxEnumerationVars = 5;

// First satisfying interval within the bounds.  NoneFound is conclusive only
// relative to the bounds.  Throws BoundsTooLarge when |ctx| exceeds
// kMaxEnumerationVars or the candidate count exceeds the cap.
[[nodiscard]] SearchResult enumerate_sat(const Formula& f, const VariableContext& ctx, const SearchBounds& bounds);

[[nodiscard]] inline bool found(const SearchResult& r) noexcept { return !std::holds_alternative<NoneFound>(r); }

}  // namespace tsat
