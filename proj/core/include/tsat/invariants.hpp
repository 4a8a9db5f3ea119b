#pragma once

// Invariants: conjunctions of dependencies r == phi that name subformulas,
// together with the transition and conditional liveness formulas derived
// from them.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tsat/formula.hpp"

namespace tsat {

class TranslationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ReservedVariable : public TranslationError {
public:
    explicit ReservedVariable(const std::string& name)
        : TranslationError("variable '" + name + "' is reserved for dependent variables"), name_(name) {}
    [[nodiscard]] const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class NotNL1 : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// r == <> w
struct DiamondDep {
    Formula w;
    friend bool operator==(const DiamondDep&, const DiamondDep&) = default;
};

// r == w U w2
struct UntilDep {
    Formula w;
    Formula w2;
    friend bool operator==(const UntilDep&, const UntilDep&) = default;
};

// r == t with t in NL1
struct Nl1Dep {
    Formula t;
    friend bool operator==(const Nl1Dep&, const Nl1Dep&) = default;
};

struct Dependency {
    std::string var;
    std::variant<DiamondDep, UntilDep, Nl1Dep> body;

    [[nodiscard]] bool is_eventuality() const noexcept { return !std::holds_alternative<Nl1Dep>(body); }
    // The right-hand side as a formula: <> w, w U w2 or t.
    [[nodiscard]] Formula rhs() const;
    // var <-> rhs
    [[nodiscard]] Formula to_formula() const;

    friend bool operator==(const Dependency&, const Dependency&) = default;
};

struct Invariant {
    std::vector<Dependency> deps;

    [[nodiscard]] std::size_t size() const noexcept { return deps.size(); }
    [[nodiscard]] const Dependency& operator[](std::size_t i) const { return deps.at(i); }
    [[nodiscard]] bool is_ordered() const noexcept;
    // Conjunction of all dependencies (true when empty).
    [[nodiscard]] Formula to_formula() const;
    [[nodiscard]] std::vector<std::string> dependent_vars() const;

    friend bool operator==(const Invariant&, const Invariant&) = default;
};

// eta -> dm theta
struct LivenessImplication {
    Formula eta;
    Formula theta;
    friend bool operator==(const LivenessImplication&, const LivenessImplication&) = default;
};

struct ConditionalLivenessFormula {
    std::vector<LivenessImplication> implications;

    [[nodiscard]] std::size_t size() const noexcept { return implications.size(); }
    [[nodiscard]] bool empty() const noexcept { return implications.empty(); }
    // Conjunction of eta -> dm theta (true when empty).
    [[nodiscard]] Formula to_formula() const;

    friend bool operator==(const ConditionalLivenessFormula&, const ConditionalLivenessFormula&) = default;
};

struct Translation {
    Invariant inv;
    // State formula over the source and dependent variables.  The literal
    // translation always yields the last dependent variable.
    Formula init;
};

struct TranslateOptions {
    // Follow the H table exactly (no sharing, no absorption of Boolean
    // structure), numbering dependent variables r1..rn.
    bool literal = false;
};

// Throws ReservedVariable for r<digits> inputs and TranslationError when X
// still contains past operators.
[[nodiscard]] Translation translate(const Formula& x, const TranslateOptions& options = {});

// r_j -> r_{j+k} everywhere.
[[nodiscard]] Invariant shift(const Invariant& inv, std::size_t k);
[[nodiscard]] Formula shift(const Formula& f, std::size_t k);

// Stable partition: eventuality dependencies first.
[[nodiscard]] Invariant order(const Invariant& inv);

[[nodiscard]] Formula transition_formula(const Invariant& inv);
[[nodiscard]] std::vector<Formula> transition_conjuncts(const Invariant& inv);
[[nodiscard]] ConditionalLivenessFormula liveness_formula(const Invariant& inv);

// Source variables followed by dependent variables by subscript.
[[nodiscard]] VariableContext extended_context(const Formula& source, const Invariant& inv);

[[nodiscard]] std::string to_string(const Dependency& dep);
[[nodiscard]] std::string to_string(const LivenessImplication& imp);

}  // namespace tsat
