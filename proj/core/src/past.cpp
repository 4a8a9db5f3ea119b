#include "tsat/past.hpp"

#include <unordered_map>
#include <unordered_set>

namespace tsat {

namespace {

class PastEliminator {
public:
    explicit PastEliminator(const Formula& x) {
        for (const auto& v : vars(x)) taken_.insert(v);
    }

    Formula rewrite(const Formula& f) {
        if (!has_past(f)) return f;
        switch (f.op()) {
            case Op::WPrev:
            case Op::SoFar:
            case Op::First:
                return rewrite(expand_once(f));
            case Op::Prev:
            case Op::Once: {
                Formula y = rewrite(f.lhs());
                Formula key = Formula::unary(f.op(), y);
                if (auto it = aux_.find(key); it != aux_.end()) return fm::var(it->second);
                std::string name = fresh();
                aux_.emplace(key, name);
                Formula u = fm::var(name);
                if (f.op() == Op::Prev) {
                    constraints.push_back(fm::lnot(u));
                    constraints.push_back(fm::box(fm::implies(fm::more(), fm::equiv(y, fm::next(u)))));
                } else {
                    constraints.push_back(fm::equiv(u, y));
                    constraints.push_back(
                        fm::box(fm::implies(fm::more(), fm::equiv(fm::next(u), fm::lor(u, fm::next(y))))));
                }
                return u;
            }
            default:
                break;
        }
        switch (arity(f.op())) {
            case 1:
                return Formula::unary(f.op(), rewrite(f.lhs()));
            case 2: {
                Formula a = rewrite(f.lhs());
                Formula b = rewrite(f.rhs());
                return Formula::binary(f.op(), a, b);
            }
            default:
                return f;
        }
    }

    std::vector<Formula> constraints;
    std::vector<std::string> names;

private:
    std::string fresh() {
        std::string name;
        do name = "_u" + std::to_string(++counter_);
        while (taken_.contains(name));
        names.push_back(name);
        return name;
    }

    std::unordered_set<std::string> taken_;
    std::unordered_map<Formula, std::string> aux_;
    std::size_t counter_ = 0;
};

bool is_boolean(Op op) {
    return op == Op::Not || op == Op::Or || op == Op::And || op == Op::Implies || op == Op::Equiv;
}

Formula split(const Formula& z, bool step) {
    if (!has_past(z)) {
        if (!is_state_formula(z)) throw std::invalid_argument("prev-step split expects a state formula under prev");
        return step ? fm::next(z) : z;
    }
    if (z.op() == Op::Prev) {
        const Formula& y = z.lhs();
        if (has_past(y) || !is_state_formula(y))
            throw std::invalid_argument("prev-step split expects a past-free state formula under prev");
        return step ? y : fm::ff();
    }
    if (!is_boolean(z.op())) throw std::invalid_argument("prev-step split expects a Boolean combination");
    if (arity(z.op()) == 1) return Formula::unary(z.op(), split(z.lhs(), step));
    return Formula::binary(z.op(), split(z.lhs(), step), split(z.rhs(), step));
}

}  // namespace

PastReduction past_reduce(const Formula& x) {
    if (!has_past(x)) return {x, {}};
    PastEliminator e(x);
    Formula core = e.rewrite(x);
    std::vector<Formula> parts{fm::diamond(core)};
    parts.insert(parts.end(), e.constraints.begin(), e.constraints.end());
    return {fm::conjoin(parts), e.names};
}

PrevStepSplit split_prev_step(const Formula& z) { return {split(z, true), split(z, false)}; }

}  // namespace tsat
