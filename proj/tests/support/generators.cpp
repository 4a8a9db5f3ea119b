#include "generators.hpp"

#include <fstream>

#include "tsat/transconf.hpp"

namespace tsat::testing {

int FormulaGen::pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

Formula FormulaGen::leaf() {
    int k = pick(static_cast<int>(vars_.size()) * 3 + 2);
    if (k < static_cast<int>(vars_.size()) * 3) return fm::var(vars_[static_cast<std::size_t>(k) % vars_.size()]);
    return k % 2 ? fm::tt() : fm::ff();
}

Formula FormulaGen::state_over(int depth, const std::vector<std::string>& names) {
    if (depth <= 0 || pick(4) == 0) {
        if (pick(8) == 0) return pick(2) ? fm::tt() : fm::ff();
        return fm::var(names[static_cast<std::size_t>(pick(static_cast<int>(names.size())))]);
    }
    switch (pick(5)) {
        case 0:
            return fm::lnot(state_over(depth - 1, names));
        case 1: {
            Formula a = state_over(depth - 1, names);
            return fm::lor(a, state_over(depth - 1, names));
        }
        case 2: {
            Formula a = state_over(depth - 1, names);
            return fm::land(a, state_over(depth - 1, names));
        }
        case 3: {
            Formula a = state_over(depth - 1, names);
            return fm::implies(a, state_over(depth - 1, names));
        }
        default: {
            Formula a = state_over(depth - 1, names);
            return fm::equiv(a, state_over(depth - 1, names));
        }
    }
}

Formula FormulaGen::state(int depth) { return state_over(depth, vars_); }

Formula FormulaGen::nl1_over(int depth, const std::vector<std::string>& names) {
    if (depth <= 0 || pick(4) == 0) {
        Formula s = state_over(1, names);
        return pick(2) ? fm::next(s) : s;
    }
    switch (pick(6)) {
        case 0:
            return fm::lnot(nl1_over(depth - 1, names));
        case 1: {
            Formula a = nl1_over(depth - 1, names);
            return fm::lor(a, nl1_over(depth - 1, names));
        }
        case 2: {
            Formula a = nl1_over(depth - 1, names);
            return fm::land(a, nl1_over(depth - 1, names));
        }
        case 3: {
            Formula a = nl1_over(depth - 1, names);
            return fm::equiv(a, nl1_over(depth - 1, names));
        }
        case 4:
            return fm::next(state_over(depth - 1, names));
        default:
            return pick(2) ? fm::more() : fm::empty();
    }
}

Formula FormulaGen::nl1(int depth) { return nl1_over(depth, vars_); }

Formula FormulaGen::any(int depth, bool past) {
    if (depth <= 0 || pick(5) == 0) {
        switch (pick(12)) {
            case 0:
                return fm::more();
            case 1:
                return fm::empty();
            case 2:
                return past ? fm::first() : fm::skip();
            case 3:
                return pick(2) ? fm::finite() : fm::inf();
            default:
                return leaf();
        }
    }
    const int unary_ops = past ? 16 : 11;
    const int k = pick(unary_ops + 5);
    if (k < unary_ops) {
        Formula a = any(depth - 1, past);
        switch (k) {
            case 0:
            case 1:
                return fm::lnot(a);
            case 2:
                return fm::next(a);
            case 3:
                return fm::diamond(a);
            case 4:
                return fm::box(a);
            case 5:
                return fm::wnext(a);
            case 6:
                return fm::sdiamond(a);
            case 7:
                return pick(2) ? fm::sfin(a) : fm::fin(a);
            case 8:
                return fm::dm(a);
            case 9:
                return fm::bm(a);
            case 10:
                return fm::empty_test(a);
            case 11:
            case 12:
                return fm::prev(a);
            case 13:
                return fm::wprev(a);
            case 14:
                return fm::once(a);
            default:
                return fm::sofar(a);
        }
    }
    Formula a = any(depth - 1, past);
    Formula b = any(depth - 1, past);
    switch (k - unary_ops) {
        case 0:
            return fm::lor(a, b);
        case 1:
            return fm::land(a, b);
        case 2:
            return fm::implies(a, b);
        case 3:
            return fm::equiv(a, b);
        default:
            return fm::until(a, b);
    }
}

Formula FormulaGen::future(int depth) { return any(depth, false); }

Formula FormulaGen::with_past(int depth) { return any(depth, true); }

Invariant FormulaGen::ordered_invariant(std::size_t deps) {
    std::vector<std::string> pool = vars_;
    for (std::size_t i = 1; i <= deps; ++i) pool.push_back(dependent_name(i));
    Invariant inv;
    for (std::size_t i = 1; i <= deps; ++i) {
        Dependency d{dependent_name(i), Nl1Dep{fm::tt()}};
        switch (pick(3)) {
            case 0:
                d.body = DiamondDep{state_over(2, pool)};
                break;
            case 1: {
                Formula a = state_over(1, pool);
                d.body = UntilDep{a, state_over(1, pool)};
                break;
            }
            default:
                d.body = Nl1Dep{nl1_over(2, pool)};
                break;
        }
        inv.deps.push_back(std::move(d));
    }
    return order(inv);
}

std::pair<FiniteInterval, VariableContext> extend_with_dependencies(const FiniteInterval& sigma,
                                                                    const VariableContext& user,
                                                                    const Formula& source, const Invariant& inv) {
    VariableContext ext = extended_context(source, inv);
    const std::size_t n = sigma.states.size();
    // Grow a working context one dependency at a time.
    VariableContext work = user;
    std::vector<VAtom> states = sigma.states;
    for (const auto& dep : inv.deps) {
        CompiledFormula rhs(dep.rhs(), work);
        std::vector<std::uint8_t> values = rhs.eval_all(FiniteInterval{states});
        work.add(dep.var);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<bool> bits = states[i].bits();
            bits.push_back(values[i] != 0);
            states[i] = VAtom(std::move(bits));
        }
    }
    return {project(FiniteInterval{states}, work, ext), ext};
}

bool model_satisfies(const TransitionConfiguration& tc, const Verdict& v) {
    const Formula f = to_formula(tc);
    if (const auto* fin = std::get_if<SatFinite>(&v.result)) return eval_finite(f, fin->model, tc.ctx);
    if (const auto* inf = std::get_if<SatInfinite>(&v.result)) return eval_lasso(f, inf->model, tc.ctx);
    return false;
}

bool model_satisfies_source(const Decision& d) {
    const auto& p = d.pipeline;
    CompiledFormula c(p.source, p.user_ctx);
    const bool floating = has_past(p.source);
    if (const auto* fin = std::get_if<SatFinite>(&d.verdict.result)) {
        FiniteInterval m = project(fin->model, p.ctx, p.user_ctx);
        return floating ? c.holds_somewhere(m) : c.eval_finite(m);
    }
    if (const auto* inf = std::get_if<SatInfinite>(&d.verdict.result)) {
        LassoInterval m = project(inf->model, p.ctx, p.user_ctx);
        return floating ? c.holds_somewhere(m) : c.eval_lasso(m);
    }
    return false;
}

std::vector<std::string> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        out.push_back(line.substr(first));
    }
    return out;
}

}  // namespace tsat::testing
