#pragma once

// Transition configurations: [] T together with an initial, terminal or
// liveness condition.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tsat/formula.hpp"
#include "tsat/interval.hpp"
#include "tsat/invariants.hpp"

namespace tsat {

struct FiniteTime {
    Formula init;
};

struct InfiniteTime {
    Formula init;
    ConditionalLivenessFormula liveness;
};

struct Final {
    Formula w;
};

struct Periodic {
    VAtom alpha;
    ConditionalLivenessFormula liveness;
};

struct TransitionConfiguration {
    Formula t;
    std::variant<FiniteTime, InfiniteTime, Final, Periodic> kind;
    VariableContext ctx;

    [[nodiscard]] bool is_finite_time() const noexcept { return std::holds_alternative<FiniteTime>(kind); }
    [[nodiscard]] bool is_infinite_time() const noexcept { return std::holds_alternative<InfiniteTime>(kind); }
    [[nodiscard]] std::string_view kind_name() const noexcept;
    [[nodiscard]] const ConditionalLivenessFormula* liveness() const noexcept;
};

enum class DecisionMode : std::uint8_t { Finite, Infinite, Both };

[[nodiscard]] std::string_view to_string(DecisionMode mode) noexcept;

// FiniteTime and/or InfiniteTime configurations (finite first) for an
// ordered invariant.  ctx is the extended variable set.
[[nodiscard]] std::vector<TransitionConfiguration> build_configs(const Invariant& ordered, const Formula& init,
                                                                 const VariableContext& ctx, DecisionMode mode);

struct EnabledLiveness {
    std::vector<std::size_t> indices;
    std::vector<Formula> thetas;
};

// The implications whose guard holds at alpha.
[[nodiscard]] EnabledLiveness enabled(const ConditionalLivenessFormula& liveness, const VAtom& alpha,
                                      const VariableContext& ctx);

// Evaluates a past-free state formula at a total assignment.
[[nodiscard]] bool eval_state(const Formula& w, const VAtom& alpha, const VariableContext& ctx);

struct Bounds {
    std::uint64_t finite_max_length = 0;
    // Prefix length is strictly below this value.
    std::uint64_t infinite_prefix_limit = 0;
    std::uint64_t infinite_period_max = 0;
};

[[nodiscard]] Bounds bounds(const TransitionConfiguration& tc);

// The configuration as a single PTL formula:
//   finite-time    [] T & init & finite
//   infinite-time  [] T & init & [] sdiamond L
//   final          [] T & w & empty
//   periodic       [] T & alpha & L & [] sdiamond (alpha & L)
[[nodiscard]] Formula to_formula(const TransitionConfiguration& tc);

// A finite-time formula satisfiable iff the infinite-time configuration is:
//   bm T & init & <>(L & finite & more & /\_v (v <-> fin v))
// with every implication of L read with dm.  Only used for inspection and
// cross-checks; the engine decides infinite time directly.
[[nodiscard]] Formula infinite_route_formula(const TransitionConfiguration& tc);

}  // namespace tsat
