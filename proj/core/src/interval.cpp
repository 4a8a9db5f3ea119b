#include "tsat/interval.hpp"

#include <sstream>
#include <stdexcept>

namespace tsat {

std::string VAtom::to_string(const VariableContext& ctx) const {
    std::ostringstream out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (i) out << ' ';
        out << ctx.name(i) << '=' << (bits_[i] ? 1 : 0);
    }
    return out.str();
}

Formula VAtom::to_formula(const VariableContext& ctx) const {
    std::vector<Formula> literals;
    literals.reserve(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        Formula v = fm::var(ctx.name(i));
        literals.push_back(bits_[i] ? v : fm::lnot(v));
    }
    return fm::conjoin(literals);
}

const VAtom& LassoInterval::at(std::size_t position) const {
    if (position < prefix.size()) return prefix[position];
    return period.at((position - prefix.size()) % period.size());
}

VAtom project(const VAtom& atom, const VariableContext& from, const VariableContext& to) {
    VAtom out(to.size());
    for (std::size_t i = 0; i < to.size(); ++i) {
        auto idx = from.index_of(to.name(i));
        if (!idx) throw std::invalid_argument("projection target variable '" + to.name(i) + "' not in source");
        out.set(i, atom[*idx]);
    }
    return out;
}

FiniteInterval project(const FiniteInterval& sigma, const VariableContext& from, const VariableContext& to) {
    FiniteInterval out;
    out.states.reserve(sigma.states.size());
    for (const auto& s : sigma.states) out.states.push_back(project(s, from, to));
    return out;
}

LassoInterval project(const LassoInterval& lasso, const VariableContext& from, const VariableContext& to) {
    LassoInterval out;
    for (const auto& s : lasso.prefix) out.prefix.push_back(project(s, from, to));
    for (const auto& s : lasso.period) out.period.push_back(project(s, from, to));
    return out;
}

FiniteInterval fuse(const FiniteInterval& left, const FiniteInterval& right) {
    if (left.states.empty() || right.states.empty()) throw std::invalid_argument("cannot fuse an empty sequence");
    if (!(left.states.back() == right.states.front()))
        throw std::invalid_argument("fusion requires a shared boundary state");
    FiniteInterval out = left;
    out.states.insert(out.states.end(), right.states.begin() + 1, right.states.end());
    return out;
}

}  // namespace tsat
