#include "tsat/transconf.hpp"

#include <limits>

namespace tsat {

std::string_view TransitionConfiguration::kind_name() const noexcept {
    switch (kind.index()) {
        case 0:
            return "finite-time";
        case 1:
            return "infinite-time";
        case 2:
            return "final";
        default:
            return "periodic";
    }
}

const ConditionalLivenessFormula* TransitionConfiguration::liveness() const noexcept {
    if (const auto* i = std::get_if<InfiniteTime>(&kind)) return &i->liveness;
    if (const auto* p = std::get_if<Periodic>(&kind)) return &p->liveness;
    return nullptr;
}

std::string_view to_string(DecisionMode mode) noexcept {
    switch (mode) {
        case DecisionMode::Finite:
            return "finite";
        case DecisionMode::Infinite:
            return "infinite";
        default:
            return "both";
    }
}

std::vector<TransitionConfiguration> build_configs(const Invariant& ordered, const Formula& init,
                                                   const VariableContext& ctx, DecisionMode mode) {
    if (!ordered.is_ordered()) throw std::invalid_argument("build_configs expects an ordered invariant");
    Formula t = transition_formula(ordered);
    std::vector<TransitionConfiguration> out;
    if (mode != DecisionMode::Infinite) out.push_back({t, FiniteTime{init}, ctx});
    if (mode != DecisionMode::Finite) out.push_back({t, InfiniteTime{init, liveness_formula(ordered)}, ctx});
    return out;
}

namespace {

bool eval_expanded(const Formula& w, const VAtom& alpha, const VariableContext& ctx) {
    switch (w.op()) {
        case Op::Var: {
            auto idx = ctx.index_of(w.name());
            if (!idx) throw std::invalid_argument("variable '" + w.name() + "' is not in the context");
            return alpha[*idx];
        }
        case Op::True:
            return true;
        case Op::Not:
            return !eval_expanded(w.lhs(), alpha, ctx);
        case Op::Or:
            return eval_expanded(w.lhs(), alpha, ctx) || eval_expanded(w.rhs(), alpha, ctx);
        default:
            throw std::invalid_argument("not a state formula");
    }
}

}  // namespace

bool eval_state(const Formula& w, const VAtom& alpha, const VariableContext& ctx) {
    return eval_expanded(expand_derived(w), alpha, ctx);
}

EnabledLiveness enabled(const ConditionalLivenessFormula& liveness, const VAtom& alpha, const VariableContext& ctx) {
    EnabledLiveness out;
    for (std::size_t k = 0; k < liveness.implications.size(); ++k) {
        const auto& imp = liveness.implications[k];
        if (eval_state(imp.eta, alpha, ctx)) {
            out.indices.push_back(k);
            out.thetas.push_back(imp.theta);
        }
    }
    return out;
}

Bounds bounds(const TransitionConfiguration& tc) {
    const std::uint64_t atoms = tc.ctx.atom_count();
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    Bounds b;
    b.finite_max_length = atoms == kMax ? kMax : atoms - 1;
    b.infinite_prefix_limit = atoms;
    const ConditionalLivenessFormula* l = tc.liveness();
    const std::uint64_t factor = (l ? l->size() : 0) + 1;
    b.infinite_period_max = atoms > kMax / factor ? kMax : atoms * factor;
    return b;
}

Formula to_formula(const TransitionConfiguration& tc) {
    Formula box_t = fm::box(tc.t);
    return std::visit(
        [&](const auto& k) -> Formula {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, FiniteTime>) {
                return fm::conjoin({box_t, k.init, fm::finite()});
            } else if constexpr (std::is_same_v<K, InfiniteTime>) {
                return fm::conjoin({box_t, k.init, fm::box(fm::sdiamond(k.liveness.to_formula()))});
            } else if constexpr (std::is_same_v<K, Final>) {
                return fm::conjoin({box_t, k.w, fm::empty()});
            } else {
                Formula a = k.alpha.to_formula(tc.ctx);
                Formula l = k.liveness.to_formula();
                return fm::conjoin({box_t, a, l, fm::box(fm::sdiamond(fm::land(a, l)))});
            }
        },
        tc.kind);
}

Formula infinite_route_formula(const TransitionConfiguration& tc) {
    const auto* inf = std::get_if<InfiniteTime>(&tc.kind);
    if (!inf) throw std::invalid_argument("infinite route formula needs an infinite-time configuration");
    std::vector<Formula> loop{inf->liveness.to_formula(), fm::finite(), fm::more()};
    for (const auto& v : tc.ctx.names()) loop.push_back(fm::equiv(fm::var(v), fm::fin(fm::var(v))));
    return fm::conjoin({fm::bm(tc.t), inf->init, fm::diamond(fm::conjoin(loop))});
}

}  // namespace tsat
