#include "tsat/oracle.hpp"

#include <algorithm>
#include <limits>

namespace tsat {

CompiledFormula::CompiledFormula(const Formula& f, const VariableContext& ctx) : width_(ctx.size()) {
    Formula expanded = expand_derived(f);
    past_depth_ = tsat::past_depth(expanded);
    std::unordered_map<Formula, int> seen;
    compile(expanded, ctx, seen);
}

int CompiledFormula::compile(const Formula& f, const VariableContext& ctx,
                             std::unordered_map<Formula, int>& seen) {
    if (auto it = seen.find(f); it != seen.end()) return it->second;
    Instr ins{f.op()};
    switch (f.op()) {
        case Op::Var: {
            auto idx = ctx.index_of(f.name());
            if (!idx) throw std::invalid_argument("variable '" + f.name() + "' is not in the context");
            ins.var = *idx;
            break;
        }
        case Op::True:
            break;
        case Op::Not:
        case Op::Next:
        case Op::Diamond:
        case Op::Prev:
        case Op::Once:
            ins.a = compile(f.lhs(), ctx, seen);
            break;
        case Op::Or:
        case Op::Until:
            ins.a = compile(f.lhs(), ctx, seen);
            ins.b = compile(f.rhs(), ctx, seen);
            break;
        default:
            throw std::logic_error("derived operator survived expansion");
    }
    code_.push_back(ins);
    int idx = static_cast<int>(code_.size()) - 1;
    seen.emplace(f, idx);
    return idx;
}

// Values of every instruction at positions 0..n-1, flattened instruction-major.
// With a loop start P the successor of n-1 is P; otherwise position n-1 is
// the final state.
std::vector<std::uint8_t> CompiledFormula::evaluate(std::size_t n, std::optional<std::size_t> loop_start,
                                                    const std::function<const VAtom&(std::size_t)>& state) const {
    std::vector<std::uint8_t> val(code_.size() * n, 0);
    auto row = [&](int idx) { return val.data() + static_cast<std::size_t>(idx) * n; };
    const bool looped = loop_start.has_value();
    const std::size_t p = looped ? *loop_start : n;

    for (std::size_t ci = 0; ci < code_.size(); ++ci) {
        const Instr& ins = code_[ci];
        std::uint8_t* out = row(static_cast<int>(ci));
        switch (ins.op) {
            case Op::Var:
                for (std::size_t i = 0; i < n; ++i) out[i] = state(i)[ins.var];
                break;
            case Op::True:
                std::fill(out, out + n, 1);
                break;
            case Op::Not: {
                const std::uint8_t* a = row(ins.a);
                for (std::size_t i = 0; i < n; ++i) out[i] = !a[i];
                break;
            }
            case Op::Or: {
                const std::uint8_t* a = row(ins.a);
                const std::uint8_t* b = row(ins.b);
                for (std::size_t i = 0; i < n; ++i) out[i] = a[i] || b[i];
                break;
            }
            case Op::Next: {
                const std::uint8_t* a = row(ins.a);
                for (std::size_t i = 0; i + 1 < n; ++i) out[i] = a[i + 1];
                out[n - 1] = looped ? a[p] : 0;
                break;
            }
            case Op::Diamond: {
                const std::uint8_t* a = row(ins.a);
                std::uint8_t carry = 0;
                if (looped) {
                    carry = std::any_of(a + p, a + n, [](std::uint8_t x) { return x != 0; });
                    std::fill(out + p, out + n, carry);
                }
                for (std::size_t i = p; i-- > 0;) {
                    carry = a[i] || carry;
                    out[i] = carry;
                }
                break;
            }
            case Op::Until: {
                const std::uint8_t* a = row(ins.a);
                const std::uint8_t* b = row(ins.b);
                if (looped) {
                    // Least fixpoint on the loop: two backward passes from a
                    // false seed at the wrap-around.
                    for (int pass = 0; pass < 2; ++pass)
                        for (std::size_t i = n; i-- > p;) {
                            std::uint8_t succ = (i + 1 < n) ? out[i + 1] : out[p];
                            out[i] = b[i] || (a[i] && succ);
                        }
                    for (std::size_t i = p; i-- > 0;) out[i] = b[i] || (a[i] && out[i + 1]);
                } else {
                    out[n - 1] = b[n - 1];
                    for (std::size_t i = n - 1; i-- > 0;) out[i] = b[i] || (a[i] && out[i + 1]);
                }
                break;
            }
            case Op::Prev: {
                const std::uint8_t* a = row(ins.a);
                out[0] = 0;
                for (std::size_t i = 1; i < n; ++i) out[i] = a[i - 1];
                break;
            }
            case Op::Once: {
                const std::uint8_t* a = row(ins.a);
                std::uint8_t acc = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    acc = acc || a[i];
                    out[i] = acc;
                }
                break;
            }
            default:
                break;
        }
    }
    return val;
}

std::vector<std::uint8_t> CompiledFormula::eval_all(const FiniteInterval& sigma) const {
    if (sigma.states.empty()) throw std::invalid_argument("interval must have at least one state");
    for (const auto& s : sigma.states)
        if (s.width() != width_) throw std::invalid_argument("state width does not match the context");
    const std::size_t n = sigma.states.size();
    auto val = evaluate(n, std::nullopt, [&](std::size_t i) -> const VAtom& { return sigma.states[i]; });
    const std::size_t top = code_.size() - 1;
    return {val.begin() + static_cast<std::ptrdiff_t>(top * n), val.end()};
}

bool CompiledFormula::eval_finite(const FiniteInterval& sigma, std::size_t k) const {
    if (k > sigma.length()) throw std::out_of_range("position beyond interval length");
    return eval_all(sigma)[k] != 0;
}

bool CompiledFormula::holds_somewhere(const FiniteInterval& sigma) const {
    auto v = eval_all(sigma);
    return std::any_of(v.begin(), v.end(), [](std::uint8_t x) { return x != 0; });
}

// Unrolls the period once per level of past nesting so that past-time values
// are periodic from the (new) loop start.
LassoInterval CompiledFormula::unroll(const LassoInterval& lasso) const {
    if (lasso.period.empty()) throw std::invalid_argument("lasso period must be nonempty");
    LassoInterval out = lasso;
    for (int i = 0; i < past_depth_; ++i) out.prefix.insert(out.prefix.end(), lasso.period.begin(), lasso.period.end());
    for (const auto& s : out.prefix)
        if (s.width() != width_) throw std::invalid_argument("state width does not match the context");
    for (const auto& s : out.period)
        if (s.width() != width_) throw std::invalid_argument("state width does not match the context");
    return out;
}

bool CompiledFormula::eval_lasso(const LassoInterval& lasso, std::size_t k) const {
    LassoInterval u = unroll(lasso);
    const std::size_t p = u.prefix.size();
    const std::size_t n = p + u.period.size();
    if (k >= n) k = p + (k - p) % u.period.size();
    auto val = evaluate(n, p, [&](std::size_t i) -> const VAtom& { return u.at(i); });
    return val[(code_.size() - 1) * n + k] != 0;
}

bool CompiledFormula::holds_somewhere(const LassoInterval& lasso) const {
    LassoInterval u = unroll(lasso);
    const std::size_t p = u.prefix.size();
    const std::size_t n = p + u.period.size();
    auto val = evaluate(n, p, [&](std::size_t i) -> const VAtom& { return u.at(i); });
    const auto* top = val.data() + (code_.size() - 1) * n;
    return std::any_of(top, top + n, [](std::uint8_t x) { return x != 0; });
}

bool eval_finite(const Formula& f, const FiniteInterval& sigma, const VariableContext& ctx, std::size_t k) {
    return CompiledFormula(f, ctx).eval_finite(sigma, k);
}

bool eval_lasso(const Formula& f, const LassoInterval& lasso, const VariableContext& ctx, std::size_t k) {
    return CompiledFormula(f, ctx).eval_lasso(lasso, k);
}

namespace {

// Fills `states` (count * width bits) from a code where the first state's
// first variable is the most significant bit.
void decode(std::uint64_t code, std::size_t width, std::vector<VAtom>& states) {
    const std::size_t bits = states.size() * width;
    for (std::size_t s = 0; s < states.size(); ++s)
        for (std::size_t v = 0; v < width; ++v) {
            std::size_t pos = bits - 1 - (s * width + v);
            states[s].set(v, (code >> pos) & 1U);
        }
}

// Iterates all codes of `bits` bits from all-true down to all-false, i.e.
// lexicographic order with true before false.
bool for_each_code(std::size_t bits, const std::function<bool(std::uint64_t)>& fn) {
    if (bits >= 63) throw BoundsTooLarge("interval enumeration exceeds 62 bits");
    const std::uint64_t count = std::uint64_t{1} << bits;
    for (std::uint64_t i = 0; i < count; ++i)
        if (!fn(count - 1 - i)) return false;
    return true;
}

}  // namespace

void for_each_interval(const VariableContext& ctx, std::size_t max_length,
                       const std::function<bool(const FiniteInterval&)>& fn) {
    const std::size_t w = ctx.size();
    for (std::size_t len = 0; len <= max_length; ++len) {
        FiniteInterval sigma;
        sigma.states.assign(len + 1, VAtom(w));
        bool go_on = for_each_code((len + 1) * w, [&](std::uint64_t code) {
            decode(code, w, sigma.states);
            return fn(sigma);
        });
        if (!go_on) return;
    }
}

void for_each_lasso(const VariableContext& ctx, std::size_t max_prefix, std::size_t max_period,
                    const std::function<bool(const LassoInterval&)>& fn) {
    const std::size_t w = ctx.size();
    for (std::size_t total = 1; total <= max_prefix + max_period; ++total) {
        for (std::size_t pre = 0; pre <= std::min(max_prefix, total - 1); ++pre) {
            const std::size_t per = total - pre;
            if (per > max_period) continue;
            std::vector<VAtom> states(total, VAtom(w));
            bool go_on = for_each_code(total * w, [&](std::uint64_t code) {
                decode(code, w, states);
                LassoInterval lasso{{states.begin(), states.begin() + static_cast<std::ptrdiff_t>(pre)},
                                    {states.begin() + static_cast<std::ptrdiff_t>(pre), states.end()}};
                return fn(lasso);
            });
            if (!go_on) return;
        }
    }
}

namespace {

std::uint64_t candidate_count(std::size_t width, std::size_t max_states_from, std::size_t max_states_to) {
    std::uint64_t total = 0;
    for (std::size_t s = max_states_from; s <= max_states_to; ++s) {
        std::size_t bits = s * width;
        if (bits >= 62) return std::numeric_limits<std::uint64_t>::max();
        std::uint64_t c = std::uint64_t{1} << bits;
        if (total > std::numeric_limits<std::uint64_t>::max() - c) return std::numeric_limits<std::uint64_t>::max();
        total += c;
    }
    return total;
}

}  // namespace

SearchResult enumerate_sat(const Formula& f, const VariableContext& ctx, const SearchBounds& bounds) {
    if (ctx.size() > kMaxEnumerationVars)
        throw BoundsTooLarge("exhaustive search supports at most " + std::to_string(kMaxEnumerationVars) +
                             " variables, got " + std::to_string(ctx.size()));
    CompiledFormula compiled(f, ctx);
    SearchResult result = NoneFound{};

    if (bounds.mode == SearchBounds::Mode::Finite) {
        if (candidate_count(ctx.size(), 1, bounds.max_length + 1) > bounds.cap)
            throw BoundsTooLarge("finite search space exceeds the configured cap");
        for_each_interval(ctx, bounds.max_length, [&](const FiniteInterval& sigma) {
            bool sat = bounds.floating ? compiled.holds_somewhere(sigma) : compiled.eval_finite(sigma, 0);
            if (sat) {
                result = sigma;
                return false;
            }
            return true;
        });
        return result;
    }

    if (bounds.max_period == 0) throw std::invalid_argument("lasso search needs a positive period bound");
    std::uint64_t count = 0;
    for (std::size_t total = 1; total <= bounds.max_prefix + bounds.max_period; ++total) {
        std::uint64_t shapes = 0;
        for (std::size_t pre = 0; pre <= std::min(bounds.max_prefix, total - 1); ++pre)
            if (total - pre <= bounds.max_period) ++shapes;
        std::uint64_t c = candidate_count(ctx.size(), total, total);
        if (c != 0 && shapes > (std::numeric_limits<std::uint64_t>::max() - count) / c) {
            count = std::numeric_limits<std::uint64_t>::max();
            break;
        }
        count += shapes * c;
    }
    if (count > bounds.cap) throw BoundsTooLarge("lasso search space exceeds the configured cap");
    for_each_lasso(ctx, bounds.max_prefix, bounds.max_period, [&](const LassoInterval& lasso) {
        bool sat = bounds.floating ? compiled.holds_somewhere(lasso) : compiled.eval_lasso(lasso, 0);
        if (sat) {
            result = lasso;
            return false;
        }
        return true;
    });
    return result;
}

}  // namespace tsat
