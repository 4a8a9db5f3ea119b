#pragma once

// Symbolic decision procedure for transition configurations and the full
// formula pipeline built on top of it.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tsat/bdd.hpp"
#include "tsat/formula.hpp"
#include "tsat/interval.hpp"
#include "tsat/invariants.hpp"
#include "tsat/past.hpp"
#include "tsat/transconf.hpp"

namespace tsat {

struct EngineOptions {
    // Image computations allowed per reachability search; defaults to
    // 2^|V|, which always suffices for convergence.
    std::optional<std::uint64_t> max_iters;
    // 0 = unlimited.
    std::size_t node_limit = 0;
};

struct EngineStats {
    std::uint64_t iterations = 0;
    std::size_t peak_nodes = 0;
    std::uint64_t candidates_tried = 0;

    void merge(const EngineStats& other);
};

struct SatFinite {
    FiniteInterval model;
};
struct SatInfinite {
    LassoInterval model;
};
struct Unsat {};
struct Inconclusive {
    std::string reason;
};

struct Verdict {
    std::variant<SatFinite, SatInfinite, Unsat, Inconclusive> result;
    EngineStats stats;

    [[nodiscard]] bool is_sat() const noexcept { return result.index() < 2; }
    [[nodiscard]] bool is_unsat() const noexcept { return std::holds_alternative<Unsat>(result); }
    [[nodiscard]] bool is_inconclusive() const noexcept { return std::holds_alternative<Inconclusive>(result); }
    [[nodiscard]] std::string_view name() const noexcept;
};

struct SymbolicConfig {
    BddRef gamma1;  // initial states
    BddRef gamma2;  // step relation over V and V'
    BddRef gamma3;  // states that may end a finite interval
};

struct ReachTrace {
    std::vector<BddRef> deltas;
    BddRef reach_union;
};

// T with Next-scoped variables primed.  Throws NotNL1.
[[nodiscard]] BddRef flatten(BddManager& m, const Formula& t);
// T with every next-formula replaced by false.  Throws NotNL1.
[[nodiscard]] BddRef gamma3(BddManager& m, const Formula& t);
// Past-free state formula over the current variables.
[[nodiscard]] BddRef compile_state(BddManager& m, const Formula& w);

// gamma1 is init (finite/infinite time), w (final) or alpha (periodic).
[[nodiscard]] SymbolicConfig build_symbolic(BddManager& m, const TransitionConfiguration& tc);

[[nodiscard]] std::uint64_t default_iteration_cap(const VariableContext& ctx) noexcept;

[[nodiscard]] Verdict decide_finite(BddManager& m, const TransitionConfiguration& tc, const EngineOptions& options = {},
                                    ReachTrace* trace = nullptr);
[[nodiscard]] Verdict decide_finite(const TransitionConfiguration& tc, const EngineOptions& options = {});

// Backward pass from a state of deltas[n] satisfying gamma3.
[[nodiscard]] FiniteInterval extract_finite_model(BddManager& m, const SymbolicConfig& cfg, const ReachTrace& trace,
                                                  std::size_t n);

[[nodiscard]] Verdict decide_infinite(BddManager& m, const TransitionConfiguration& tc,
                                      const EngineOptions& options = {});
[[nodiscard]] Verdict decide_infinite(const TransitionConfiguration& tc, const EngineOptions& options = {});

// Dispatches on the configuration kind (finite-time or infinite-time).
[[nodiscard]] Verdict decide_config(const TransitionConfiguration& tc, const EngineOptions& options = {});

struct DecideOptions {
    DecisionMode mode = DecisionMode::Both;
    bool h_literal = false;
    EngineOptions engine;
};

// Every intermediate product of the pipeline, kept for dumps and checks.
struct Pipeline {
    Formula source;
    VariableContext user_ctx;
    PastReduction past;
    Translation translation;
    Invariant ordered;
    VariableContext ctx;
    std::vector<TransitionConfiguration> configs;
};

[[nodiscard]] Pipeline prepare(const Formula& x, DecisionMode mode, bool h_literal = false);

struct Decision {
    Verdict verdict;
    Pipeline pipeline;
    // Configuration that produced the verdict (last one tried).
    std::size_t config_index = 0;
};

[[nodiscard]] Decision decide(const Formula& x, const DecideOptions& options = {});
// Parses first; throws SyntaxError.
[[nodiscard]] Decision decide(std::string_view text, const DecideOptions& options = {});

}  // namespace tsat
