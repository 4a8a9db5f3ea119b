#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tsat/formula.hpp"

namespace tsat {

// Total assignment over a VariableContext, one bit per variable in context
// order.
class VAtom {
public:
    VAtom() = default;
    explicit VAtom(std::size_t width, bool value = false) : bits_(width, value) {}
    explicit VAtom(std::vector<bool> bits) : bits_(std::move(bits)) {}

    [[nodiscard]] std::size_t width() const noexcept { return bits_.size(); }
    [[nodiscard]] bool operator[](std::size_t i) const { return bits_.at(i); }
    void set(std::size_t i, bool value) { bits_.at(i) = value; }
    [[nodiscard]] const std::vector<bool>& bits() const noexcept { return bits_; }

    // "p=1 q=0"
    [[nodiscard]] std::string to_string(const VariableContext& ctx) const;

    // Conjunction of literals in context order.
    [[nodiscard]] Formula to_formula(const VariableContext& ctx) const;

    friend bool operator==(const VAtom&, const VAtom&) = default;

private:
    std::vector<bool> bits_;
};

// Nonempty finite sequence of states; interval length = states - 1.
struct FiniteInterval {
    std::vector<VAtom> states;

    [[nodiscard]] std::size_t length() const noexcept { return states.empty() ? 0 : states.size() - 1; }
    friend bool operator==(const FiniteInterval&, const FiniteInterval&) = default;
};

// prefix . period^omega with a nonempty period.
struct LassoInterval {
    std::vector<VAtom> prefix;
    std::vector<VAtom> period;

    [[nodiscard]] const VAtom& at(std::size_t position) const;
    friend bool operator==(const LassoInterval&, const LassoInterval&) = default;
};

// Keeps only the variables of `to` (which must all occur in `from`).
[[nodiscard]] VAtom project(const VAtom& atom, const VariableContext& from, const VariableContext& to);
[[nodiscard]] FiniteInterval project(const FiniteInterval& sigma, const VariableContext& from,
                                     const VariableContext& to);
[[nodiscard]] LassoInterval project(const LassoInterval& lasso, const VariableContext& from,
                                    const VariableContext& to);

// Joins two intervals sharing the boundary state, keeping one copy of it.
// Throws std::invalid_argument when the boundary states differ.
[[nodiscard]] FiniteInterval fuse(const FiniteInterval& left, const FiniteInterval& right);

}  // namespace tsat
