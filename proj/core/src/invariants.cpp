#include "tsat/invariants.hpp"

#include <algorithm>
#include <unordered_map>

#include "tsat/parser.hpp"

namespace tsat {

Formula Dependency::rhs() const {
    return std::visit(
        [](const auto& b) -> Formula {
            using B = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<B, DiamondDep>)
                return fm::diamond(b.w);
            else if constexpr (std::is_same_v<B, UntilDep>)
                return fm::until(b.w, b.w2);
            else
                return b.t;
        },
        body);
}

Formula Dependency::to_formula() const { return fm::equiv(fm::var(var), rhs()); }

bool Invariant::is_ordered() const noexcept {
    bool seen_nl1 = false;
    for (const auto& d : deps) {
        if (!d.is_eventuality())
            seen_nl1 = true;
        else if (seen_nl1)
            return false;
    }
    return true;
}

Formula Invariant::to_formula() const {
    std::vector<Formula> parts;
    parts.reserve(deps.size());
    for (const auto& d : deps) parts.push_back(d.to_formula());
    return fm::conjoin(parts);
}

std::vector<std::string> Invariant::dependent_vars() const {
    std::vector<std::string> out;
    out.reserve(deps.size());
    for (const auto& d : deps) out.push_back(d.var);
    return out;
}

Formula ConditionalLivenessFormula::to_formula() const {
    std::vector<Formula> parts;
    parts.reserve(implications.size());
    for (const auto& imp : implications) parts.push_back(fm::implies(imp.eta, fm::dm(imp.theta)));
    return fm::conjoin(parts);
}

namespace {

void reject_reserved(const Formula& x) {
    for (const auto& v : vars(x))
        if (is_reserved_name(v)) throw ReservedVariable(v);
    if (has_past(x)) throw TranslationError("past-time operators must be eliminated before translation");
}

bool is_nl1(const Formula& f) {
    FormulaClass c = classify(f);
    return c == FormulaClass::State || c == FormulaClass::NL1;
}

// The H table, applied to a formula already expanded to primitives.
class LiteralTranslator {
public:
    Formula run(const Formula& y) {
        if (is_nl1(y)) return emit(Nl1Dep{y});
        switch (y.op()) {
            case Op::Not:
                return emit(Nl1Dep{fm::lnot(run(y.lhs()))});
            case Op::Or: {
                Formula a = run(y.lhs());
                Formula b = run(y.rhs());
                return emit(Nl1Dep{fm::lor(a, b)});
            }
            case Op::Diamond:
                return emit(DiamondDep{run(y.lhs())});
            case Op::Next:
                return emit(Nl1Dep{fm::next(run(y.lhs()))});
            case Op::Until: {
                Formula a = run(y.lhs());
                Formula b = run(y.rhs());
                return emit(UntilDep{a, b});
            }
            default:
                throw TranslationError("unexpected operator in expanded formula");
        }
    }

    Invariant inv;

private:
    template <class Body>
    Formula emit(Body body) {
        std::string name = dependent_name(inv.deps.size() + 1);
        inv.deps.push_back({name, std::move(body)});
        return fm::var(name);
    }
};

// Builds an NL1 abstraction of the input, naming only temporal subformulas
// that cannot stay inline.  Identical dependency bodies share one variable.
class SharingTranslator {
public:
    Formula abs(const Formula& y) {
        switch (y.op()) {
            case Op::Var:
            case Op::True:
            case Op::False:
                return y;
            case Op::Not:
                return fm::lnot(abs(y.lhs()));
            case Op::Or:
            case Op::And:
            case Op::Implies:
            case Op::Equiv:
            {
                Formula a = abs(y.lhs());
                Formula b = abs(y.rhs());
                return Formula::binary(y.op(), a, b);
            }
            case Op::Next: {
                Formula a = abs(y.lhs());
                return fm::next(is_state_formula(a) ? a : name_nl1(a));
            }
            case Op::Diamond: {
                Formula w = stateify(abs(y.lhs()));
                return name(fm::diamond(w), DiamondDep{w});
            }
            case Op::Box: {
                Formula w = stateify(fm::lnot(abs(y.lhs())));
                return fm::lnot(name(fm::diamond(w), DiamondDep{w}));
            }
            case Op::Until: {
                Formula a = stateify(abs(y.lhs()));
                Formula b = stateify(abs(y.rhs()));
                return name(fm::until(a, b), UntilDep{a, b});
            }
            case Op::Prev:
            case Op::Once:
            case Op::WPrev:
            case Op::SoFar:
            case Op::First:
                throw TranslationError("past-time operators must be eliminated before translation");
            default:
                return abs(expand_once(y));
        }
    }

    Formula stateify(const Formula& a) { return is_state_formula(a) ? a : name_nl1(a); }

    Invariant inv;

private:
    Formula name_nl1(const Formula& a) { return name(a, Nl1Dep{a}); }

    template <class Body>
    Formula name(const Formula& rhs, Body body) {
        if (auto it = named_.find(rhs); it != named_.end()) return fm::var(it->second);
        std::string v = dependent_name(inv.deps.size() + 1);
        inv.deps.push_back({v, std::move(body)});
        named_.emplace(rhs, v);
        return fm::var(v);
    }

    std::unordered_map<Formula, std::string> named_;
};

}  // namespace

Translation translate(const Formula& x, const TranslateOptions& options) {
    reject_reserved(x);
    if (options.literal) {
        LiteralTranslator t;
        Formula top = t.run(expand_derived(x));
        return {std::move(t.inv), top};
    }
    SharingTranslator t;
    Formula top = t.stateify(t.abs(x));
    return {std::move(t.inv), top};
}

Formula shift(const Formula& f, std::size_t k) {
    if (k == 0) return f;
    std::unordered_map<std::string, std::string> mapping;
    for (const auto& v : vars(f))
        if (auto idx = dependent_index(v)) mapping.emplace(v, dependent_name(*idx + k));
    return rename(f, mapping);
}

Invariant shift(const Invariant& inv, std::size_t k) {
    if (k == 0) return inv;
    Invariant out;
    out.deps.reserve(inv.deps.size());
    for (const auto& d : inv.deps) {
        auto idx = dependent_index(d.var);
        if (!idx) throw std::invalid_argument("dependent variable '" + d.var + "' is not of the form r<n>");
        Dependency nd{dependent_name(*idx + k), d.body};
        std::visit(
            [k](auto& b) {
                using B = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<B, DiamondDep>) {
                    b.w = shift(b.w, k);
                } else if constexpr (std::is_same_v<B, UntilDep>) {
                    b.w = shift(b.w, k);
                    b.w2 = shift(b.w2, k);
                } else {
                    b.t = shift(b.t, k);
                }
            },
            nd.body);
        out.deps.push_back(std::move(nd));
    }
    return out;
}

Invariant order(const Invariant& inv) {
    Invariant out = inv;
    std::stable_partition(out.deps.begin(), out.deps.end(), [](const Dependency& d) { return d.is_eventuality(); });
    return out;
}

std::vector<Formula> transition_conjuncts(const Invariant& inv) {
    std::vector<Formula> out;
    out.reserve(inv.deps.size());
    for (const auto& d : inv.deps) {
        Formula r = fm::var(d.var);
        Formula body = std::visit(
            [&](const auto& b) -> Formula {
                using B = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<B, DiamondDep>)
                    return fm::lor(b.w, fm::next(r));
                else if constexpr (std::is_same_v<B, UntilDep>)
                    return fm::lor(b.w2, fm::land(b.w, fm::next(r)));
                else
                    return b.t;
            },
            d.body);
        out.push_back(fm::equiv(r, body));
    }
    return out;
}

Formula transition_formula(const Invariant& inv) { return fm::conjoin(transition_conjuncts(inv)); }

ConditionalLivenessFormula liveness_formula(const Invariant& inv) {
    ConditionalLivenessFormula out;
    for (const auto& d : inv.deps) {
        if (const auto* dd = std::get_if<DiamondDep>(&d.body))
            out.implications.push_back({fm::var(d.var), dd->w});
        else if (const auto* ud = std::get_if<UntilDep>(&d.body))
            out.implications.push_back({fm::var(d.var), ud->w2});
    }
    return out;
}

VariableContext extended_context(const Formula& source, const Invariant& inv) {
    VariableContext ctx;
    for (const auto& v : vars(source)) ctx.add(v);
    std::vector<std::string> deps = inv.dependent_vars();
    std::stable_sort(deps.begin(), deps.end(), [](const std::string& a, const std::string& b) {
        return dependent_index(a).value_or(0) < dependent_index(b).value_or(0);
    });
    for (const auto& v : deps)
        if (!ctx.contains(v)) ctx.add(v);
    return ctx;
}

std::string to_string(const Dependency& dep) { return print(dep.to_formula()); }

std::string to_string(const LivenessImplication& imp) { return print(fm::implies(imp.eta, fm::dm(imp.theta))); }

}  // namespace tsat
