#include "tsat/engine.hpp"

#include <algorithm>

#include "tsat/parser.hpp"

namespace tsat {

void EngineStats::merge(const EngineStats& other) {
    iterations += other.iterations;
    peak_nodes = std::max(peak_nodes, other.peak_nodes);
    candidates_tried += other.candidates_tried;
}

std::string_view Verdict::name() const noexcept {
    switch (result.index()) {
        case 0:
            return "SAT (finite)";
        case 1:
            return "SAT (infinite)";
        case 2:
            return "UNSAT";
        default:
            return "INCONCLUSIVE";
    }
}

namespace {

enum class NextMode : std::uint8_t { Prime, Drop, Forbid };

BddRef compile(BddManager& m, const Formula& f, NextMode mode, bool primed) {
    switch (f.op()) {
        case Op::Var: {
            auto idx = m.context().index_of(f.name());
            if (!idx) throw UnknownVariable("unknown variable '" + f.name() + "'");
            return m.var(*idx, primed);
        }
        case Op::True:
            return BddManager::bdd_true();
        case Op::Not:
            return m.lnot(compile(m, f.lhs(), mode, primed));
        case Op::Or: {
            BddRef a = compile(m, f.lhs(), mode, primed);
            if (a == BddManager::bdd_true()) return a;
            return m.lor(a, compile(m, f.rhs(), mode, primed));
        }
        case Op::Next:
            if (mode == NextMode::Forbid) throw NotNL1("next in a state formula");
            if (primed) throw NotNL1("nested next in transition formula");
            if (mode == NextMode::Drop) {
                if (!is_state_formula(f.lhs())) throw NotNL1("nested next in transition formula");
                return BddManager::bdd_false();
            }
            return compile(m, f.lhs(), mode, true);
        default:
            throw NotNL1("temporal operator other than next in transition formula");
    }
}

}  // namespace

BddRef flatten(BddManager& m, const Formula& t) { return compile(m, expand_derived(t), NextMode::Prime, false); }

BddRef gamma3(BddManager& m, const Formula& t) { return compile(m, expand_derived(t), NextMode::Drop, false); }

BddRef compile_state(BddManager& m, const Formula& w) {
    return compile(m, expand_derived(w), NextMode::Forbid, false);
}

SymbolicConfig build_symbolic(BddManager& m, const TransitionConfiguration& tc) {
    SymbolicConfig cfg{};
    cfg.gamma2 = flatten(m, tc.t);
    cfg.gamma3 = gamma3(m, tc.t);
    cfg.gamma1 = std::visit(
        [&](const auto& k) -> BddRef {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, FiniteTime> || std::is_same_v<K, InfiniteTime>)
                return compile_state(m, k.init);
            else if constexpr (std::is_same_v<K, Final>)
                return compile_state(m, k.w);
            else
                return m.cube(k.alpha);
        },
        tc.kind);
    return cfg;
}

std::uint64_t default_iteration_cap(const VariableContext& ctx) noexcept { return ctx.atom_count(); }

namespace {

BddRef image(BddManager& m, const SymbolicConfig& cfg, BddRef s) {
    return m.swap_primed(m.exists_current(m.land(s, cfg.gamma2)));
}

BddRef preimage(BddManager& m, const SymbolicConfig& cfg, BddRef s) {
    return m.exists_primed(m.land(cfg.gamma2, m.swap_primed(s)));
}

// Predecessor of `next` within `layer`, chosen by pick_atom.
VAtom step_back(BddManager& m, const SymbolicConfig& cfg, BddRef layer, const VAtom& next) {
    BddRef pred = m.exists_primed(m.land(m.land(layer, cfg.gamma2), m.cube(next, true)));
    auto atom = m.pick_atom(pred);
    if (!atom) throw std::logic_error("model extraction found an empty predecessor set");
    return *atom;
}

std::uint64_t cap_of(const VariableContext& ctx, const EngineOptions& options) {
    return options.max_iters.value_or(default_iteration_cap(ctx));
}

}  // namespace

FiniteInterval extract_finite_model(BddManager& m, const SymbolicConfig& cfg, const ReachTrace& trace,
                                    std::size_t n) {
    if (n >= trace.deltas.size()) throw std::out_of_range("extraction level beyond trace");
    auto last = m.pick_atom(m.land(trace.deltas[n], cfg.gamma3));
    if (!last) throw std::logic_error("model extraction started from an empty final set");
    std::vector<VAtom> states(n + 1);
    states[n] = *last;
    for (std::size_t k = n; k > 0; --k) states[k - 1] = step_back(m, cfg, trace.deltas[k - 1], states[k]);
    return FiniteInterval{std::move(states)};
}

Verdict decide_finite(BddManager& m, const TransitionConfiguration& tc, const EngineOptions& options,
                      ReachTrace* trace_out) {
    const SymbolicConfig cfg = build_symbolic(m, tc);
    const std::uint64_t cap = cap_of(tc.ctx, options);
    Verdict v{Unsat{}, {}};
    ReachTrace trace{{cfg.gamma1}, cfg.gamma1};
    while (true) {
        const BddRef delta = trace.deltas.back();
        if (m.land(delta, cfg.gamma3) != BddManager::bdd_false()) {
            v.result = SatFinite{extract_finite_model(m, cfg, trace, trace.deltas.size() - 1)};
            break;
        }
        if (v.stats.iterations >= cap) {
            v.result = Inconclusive{"iteration cap of " + std::to_string(cap) + " reached before convergence"};
            break;
        }
        const BddRef next = image(m, cfg, delta);
        ++v.stats.iterations;
        const BddRef grown = m.lor(trace.reach_union, next);
        if (grown == trace.reach_union) break;  // converged without a final state
        trace.deltas.push_back(next);
        trace.reach_union = grown;
    }
    v.stats.peak_nodes = m.node_count();
    if (trace_out) *trace_out = std::move(trace);
    return v;
}

Verdict decide_finite(const TransitionConfiguration& tc, const EngineOptions& options) {
    BddManager m(tc.ctx, options.node_limit);
    return decide_finite(m, tc, options);
}

namespace {

class InfiniteSearch {
public:
    InfiniteSearch(BddManager& m, const TransitionConfiguration& tc, const EngineOptions& options)
        : m_(m), tc_(tc), cfg_(build_symbolic(m, tc)), cap_(cap_of(tc.ctx, options)) {
        if (const auto* l = tc.liveness()) live_ = *l;
        for (const auto& imp : live_.implications) {
            eta_.push_back(compile_state(m_, imp.eta));
            theta_.push_back(compile_state(m_, imp.theta));
        }
    }

    Verdict run() {
        Verdict v{Unsat{}, {}};
        auto reach = forward_closure(cfg_.gamma1, BddManager::bdd_true(), &v.stats.iterations, cap_);
        if (!reach) {
            v.result = Inconclusive{"iteration cap of " + std::to_string(cap_) + " reached before convergence"};
            v.stats.peak_nodes = m_.node_count();
            return v;
        }
        const BddRef core = infinite_core(*reach);
        BddRef rejected = BddManager::bdd_false();
        while (true) {
            auto beta = m_.pick_atom(m_.land(core, m_.lnot(rejected)));
            if (!beta) break;
            ++v.stats.candidates_tried;
            const BddRef b = m_.cube(*beta);
            const BddRef fwd = *forward_closure(image(m_, cfg_, b), BddManager::bdd_true(), nullptr, 0);
            if (m_.land(fwd, b) == BddManager::bdd_false()) {
                rejected = m_.lor(rejected, b);
                continue;
            }
            const BddRef bwd = backward_closure(preimage(m_, cfg_, b));
            const BddRef scc = m_.land(fwd, bwd);
            BddRef good = scc;
            for (std::size_t k = 0; k < live_.size(); ++k)
                if (m_.land(theta_[k], scc) == BddManager::bdd_false()) good = m_.land(good, m_.lnot(eta_[k]));
            if (m_.land(good, b) != BddManager::bdd_false()) {
                v.result = SatInfinite{build_lasso(*beta, scc)};
                break;
            }
            rejected = m_.lor(rejected, m_.land(scc, m_.lnot(good)));
        }
        v.stats.peak_nodes = m_.node_count();
        return v;
    }

private:
    // Everything reachable from `start` in zero or more steps inside
    // `within`.  Returns nullopt when the cap (if nonzero) is hit first.
    std::optional<BddRef> forward_closure(BddRef start, BddRef within, std::uint64_t* counter, std::uint64_t cap) {
        BddRef all = m_.land(start, within);
        BddRef frontier = all;
        std::uint64_t steps = 0;
        while (frontier != BddManager::bdd_false()) {
            if (cap != 0 && steps >= cap) return std::nullopt;
            BddRef next = m_.land(image(m_, cfg_, frontier), within);
            ++steps;
            if (counter) ++*counter;
            frontier = m_.land(next, m_.lnot(all));
            all = m_.lor(all, next);
        }
        return all;
    }

    BddRef backward_closure(BddRef start) {
        BddRef all = start;
        BddRef frontier = all;
        while (frontier != BddManager::bdd_false()) {
            BddRef prev = preimage(m_, cfg_, frontier);
            frontier = m_.land(prev, m_.lnot(all));
            all = m_.lor(all, prev);
        }
        return all;
    }

    // Largest subset of reach whose states all have a successor and a
    // predecessor inside it.
    BddRef infinite_core(BddRef reach) {
        BddRef z = reach;
        while (true) {
            BddRef next = m_.land(m_.land(z, preimage(m_, cfg_, z)), image(m_, cfg_, z));
            if (next == z) return z;
            z = next;
        }
    }

    // Shortest path from some state of `from` to a state of `target`,
    // staying inside `within`, taking at least `min_steps` steps.  Returns
    // the visited states including both ends.
    std::vector<VAtom> shortest_path(BddRef from, BddRef target, BddRef within, std::size_t min_steps) {
        std::vector<BddRef> layers{m_.land(from, within)};
        BddRef seen = layers.back();
        const std::uint64_t guard = default_iteration_cap(tc_.ctx) + min_steps;
        while (true) {
            const BddRef last = layers.back();
            if (layers.size() - 1 >= min_steps && m_.land(last, target) != BddManager::bdd_false()) break;
            BddRef next = m_.land(image(m_, cfg_, last), within);
            // A return leg may revisit its start, so pruning is only safe
            // for legs of unconstrained length.
            if (min_steps == 0) next = m_.land(next, m_.lnot(seen));
            if (next == BddManager::bdd_false() || layers.size() > guard)
                throw std::logic_error("lasso leg has no path to its target");
            seen = m_.lor(seen, next);
            layers.push_back(next);
        }
        std::vector<VAtom> path(layers.size());
        auto end = m_.pick_atom(m_.land(layers.back(), target));
        path.back() = *end;
        for (std::size_t k = layers.size() - 1; k > 0; --k) path[k - 1] = step_back(m_, cfg_, layers[k - 1], path[k]);
        return path;
    }

    LassoInterval build_lasso(const VAtom& beta, BddRef scc) {
        const BddRef b = m_.cube(beta);
        LassoInterval lasso;
        std::vector<VAtom> prefix = shortest_path(cfg_.gamma1, b, BddManager::bdd_true(), 0);
        prefix.pop_back();
        lasso.prefix = std::move(prefix);

        std::vector<VAtom> cycle{beta};
        const EnabledLiveness en = enabled(live_, beta, tc_.ctx);
        for (std::size_t k : en.indices) {
            const bool met = std::any_of(cycle.begin(), cycle.end(), [&](const VAtom& s) {
                return m_.eval(theta_[k], s);
            });
            if (met) continue;
            std::vector<VAtom> leg = shortest_path(m_.cube(cycle.back()), m_.land(theta_[k], scc), scc, 0);
            cycle.insert(cycle.end(), leg.begin() + 1, leg.end());
        }
        std::vector<VAtom> back = shortest_path(m_.cube(cycle.back()), b, scc, 1);
        cycle.insert(cycle.end(), back.begin() + 1, back.end() - 1);
        lasso.period = std::move(cycle);
        return lasso;
    }

    BddManager& m_;
    const TransitionConfiguration& tc_;
    SymbolicConfig cfg_;
    std::uint64_t cap_;
    ConditionalLivenessFormula live_;
    std::vector<BddRef> eta_;
    std::vector<BddRef> theta_;
};

}  // namespace

Verdict decide_infinite(BddManager& m, const TransitionConfiguration& tc, const EngineOptions& options) {
    return InfiniteSearch(m, tc, options).run();
}

Verdict decide_infinite(const TransitionConfiguration& tc, const EngineOptions& options) {
    BddManager m(tc.ctx, options.node_limit);
    return decide_infinite(m, tc, options);
}

Verdict decide_config(const TransitionConfiguration& tc, const EngineOptions& options) {
    if (tc.is_finite_time()) return decide_finite(tc, options);
    if (tc.is_infinite_time()) return decide_infinite(tc, options);
    throw std::invalid_argument("only finite-time and infinite-time configurations can be decided directly");
}

Pipeline prepare(const Formula& x, DecisionMode mode, bool h_literal) {
    Pipeline p;
    p.source = x;
    p.user_ctx = VariableContext(vars(x));
    p.past = past_reduce(x);
    p.translation = translate(p.past.formula, TranslateOptions{h_literal});
    p.ordered = order(p.translation.inv);
    p.ctx = extended_context(p.past.formula, p.ordered);
    p.configs = build_configs(p.ordered, p.translation.init, p.ctx, mode);
    return p;
}

Decision decide(const Formula& x, const DecideOptions& options) {
    Decision d{{Unsat{}, {}}, prepare(x, options.mode, options.h_literal), 0};
    bool inconclusive = false;
    std::string reason;
    for (std::size_t i = 0; i < d.pipeline.configs.size(); ++i) {
        Verdict v = decide_config(d.pipeline.configs[i], options.engine);
        d.verdict.stats.merge(v.stats);
        d.config_index = i;
        if (v.is_sat()) {
            d.verdict.result = std::move(v.result);
            return d;
        }
        if (auto* inc = std::get_if<Inconclusive>(&v.result)) {
            inconclusive = true;
            reason = inc->reason;
        }
    }
    if (inconclusive) d.verdict.result = Inconclusive{reason};
    return d;
}

Decision decide(std::string_view text, const DecideOptions& options) { return decide(parse(text), options); }

}  // namespace tsat
