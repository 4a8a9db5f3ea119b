#include <unordered_map>

#include "tsat/oracle.hpp"

namespace tsat {

struct PitlFormula::Node {
    Kind kind;
    Formula leaf;
    std::optional<PitlFormula> a;
    std::optional<PitlFormula> b;
};

PitlFormula PitlFormula::ptl(Formula f) {
    return PitlFormula(std::make_shared<const Node>(Node{Kind::Ptl, std::move(f), std::nullopt, std::nullopt}));
}
PitlFormula PitlFormula::negate(PitlFormula a) {
    return PitlFormula(std::make_shared<const Node>(Node{Kind::Not, {}, std::move(a), std::nullopt}));
}
PitlFormula PitlFormula::conj(PitlFormula a, PitlFormula b) {
    return PitlFormula(std::make_shared<const Node>(Node{Kind::And, {}, std::move(a), std::move(b)}));
}
PitlFormula PitlFormula::disj(PitlFormula a, PitlFormula b) {
    return PitlFormula(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(a), std::move(b)}));
}
PitlFormula PitlFormula::chop(PitlFormula a, PitlFormula b) {
    return PitlFormula(std::make_shared<const Node>(Node{Kind::Chop, {}, std::move(a), std::move(b)}));
}
PitlFormula PitlFormula::chop_star(PitlFormula a) {
    return PitlFormula(std::make_shared<const Node>(Node{Kind::ChopStar, {}, std::move(a), std::nullopt}));
}
PitlFormula PitlFormula::unit_test(Formula t) {
    return PitlFormula(std::make_shared<const Node>(Node{Kind::UnitTest, std::move(t), std::nullopt, std::nullopt}));
}
PitlFormula PitlFormula::empty_test(Formula w) {
    return PitlFormula(std::make_shared<const Node>(Node{Kind::EmptyTest, std::move(w), std::nullopt, std::nullopt}));
}

PitlFormula::Kind PitlFormula::kind() const noexcept { return node_->kind; }
const Formula& PitlFormula::leaf() const { return node_->leaf; }
const PitlFormula& PitlFormula::lhs() const { return node_->a.value(); }
const PitlFormula& PitlFormula::rhs() const { return node_->b.value(); }

namespace {

// Truth table over all subintervals [i, j], i <= j, of a fixed interval.
class SubintervalTable {
public:
    explicit SubintervalTable(std::size_t n) : n_(n), bits_(n * n, 0) {}
    [[nodiscard]] bool get(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
    void set(std::size_t i, std::size_t j, bool v) { bits_[i * n_ + j] = v; }

private:
    std::size_t n_;
    std::vector<std::uint8_t> bits_;
};

class PitlEvaluator {
public:
    PitlEvaluator(const FiniteInterval& sigma, const VariableContext& ctx) : sigma_(sigma), ctx_(ctx) {}

    SubintervalTable compute(const PitlFormula& f) {
        const std::size_t n = sigma_.states.size();
        SubintervalTable out(n);
        switch (f.kind()) {
            case PitlFormula::Kind::Ptl: {
                CompiledFormula c(f.leaf(), ctx_);
                for (std::size_t i = 0; i < n; ++i) {
                    FiniteInterval sub;
                    for (std::size_t j = i; j < n; ++j) {
                        sub.states.push_back(sigma_.states[j]);
                        out.set(i, j, c.eval_finite(sub, 0));
                    }
                }
                break;
            }
            case PitlFormula::Kind::UnitTest: {
                CompiledFormula c(f.leaf(), ctx_);
                for (std::size_t i = 0; i + 1 < n; ++i)
                    out.set(i, i + 1, c.eval_finite(FiniteInterval{{sigma_.states[i], sigma_.states[i + 1]}}, 0));
                break;
            }
            case PitlFormula::Kind::EmptyTest: {
                CompiledFormula c(f.leaf(), ctx_);
                for (std::size_t i = 0; i < n; ++i) out.set(i, i, c.eval_finite(FiniteInterval{{sigma_.states[i]}}, 0));
                break;
            }
            case PitlFormula::Kind::Not: {
                SubintervalTable a = compute(f.lhs());
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i; j < n; ++j) out.set(i, j, !a.get(i, j));
                break;
            }
            case PitlFormula::Kind::And:
            case PitlFormula::Kind::Or: {
                SubintervalTable a = compute(f.lhs());
                SubintervalTable b = compute(f.rhs());
                const bool conj = f.kind() == PitlFormula::Kind::And;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i; j < n; ++j)
                        out.set(i, j, conj ? (a.get(i, j) && b.get(i, j)) : (a.get(i, j) || b.get(i, j)));
                break;
            }
            case PitlFormula::Kind::Chop: {
                SubintervalTable a = compute(f.lhs());
                SubintervalTable b = compute(f.rhs());
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i; j < n; ++j) {
                        bool v = false;
                        for (std::size_t m = i; m <= j && !v; ++m) v = a.get(i, m) && b.get(m, j);
                        out.set(i, j, v);
                    }
                break;
            }
            case PitlFormula::Kind::ChopStar: {
                // Zero iterations on a one-state interval; otherwise a chain of
                // nonempty pieces.
                SubintervalTable a = compute(f.lhs());
                for (std::size_t i = 0; i < n; ++i) {
                    out.set(i, i, true);
                    for (std::size_t j = i + 1; j < n; ++j) {
                        bool v = false;
                        for (std::size_t m = i; m < j && !v; ++m) v = out.get(i, m) && a.get(m, j);
                        out.set(i, j, v);
                    }
                }
                break;
            }
        }
        return out;
    }

private:
    const FiniteInterval& sigma_;
    const VariableContext& ctx_;
};

}  // namespace

bool eval_pitl(const PitlFormula& f, const FiniteInterval& sigma, const VariableContext& ctx) {
    if (sigma.states.empty()) throw std::invalid_argument("interval must have at least one state");
    PitlEvaluator ev(sigma, ctx);
    return ev.compute(f).get(0, sigma.states.size() - 1);
}

}  // namespace tsat
