#pragma once

// Abstract syntax for propositional linear-time temporal logic with
// `until` and bounded past time.
//
// Formulas are immutable DAGs of shared nodes.  Nine constructors are
// primitive (Var, True, Not, Or, Next, Diamond, Until, Prev, Once); every
// other operator is kept as an explicit node until expand_derived() rewrites
// it into primitives.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tsat {

enum class Op : std::uint8_t {
    // primitives
    Var,
    True,
    Not,
    Or,
    Next,
    Diamond,
    Until,
    Prev,
    Once,
    // derived
    False,
    And,
    Implies,
    Equiv,
    Box,
    WNext,
    SDiamond,  // strict-future eventually: next <> X
    More,
    Empty,
    Skip,
    Finite,
    Inf,
    Sfin,
    Fin,
    Dm,
    Bm,
    EmptyTest,  // X? == X & empty
    WPrev,
    SoFar,
    First,
};

[[nodiscard]] bool is_primitive(Op op) noexcept;
[[nodiscard]] int arity(Op op) noexcept;
[[nodiscard]] bool is_past(Op op) noexcept;

class Formula;

namespace detail {
struct Node;
}

class Formula {
public:
    // Default-constructed formula is `true`.
    Formula();

    // Constructors for every operator.
    static Formula var(std::string name);
    static Formula top();
    static Formula bottom();
    static Formula unary(Op op, Formula operand);
    static Formula binary(Op op, Formula lhs, Formula rhs);
    static Formula nullary(Op op);

    [[nodiscard]] Op op() const noexcept;
    [[nodiscard]] const std::string& name() const;  // Var only
    [[nodiscard]] const Formula& lhs() const;       // first operand
    [[nodiscard]] const Formula& rhs() const;       // second operand
    [[nodiscard]] std::size_t hash() const noexcept;

    [[nodiscard]] bool is_var() const noexcept { return op() == Op::Var; }
    [[nodiscard]] bool same_node(const Formula& other) const noexcept { return node_ == other.node_; }

    // Structural equality.
    friend bool operator==(const Formula& a, const Formula& b) noexcept;

private:
    explicit Formula(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const detail::Node> node_;
};

// Short constructors used throughout the code base and the tests.
namespace fm {
Formula var(std::string name);
Formula tt();
Formula ff();
Formula lnot(Formula a);
Formula lor(Formula a, Formula b);
Formula land(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula equiv(Formula a, Formula b);
Formula next(Formula a);
Formula wnext(Formula a);
Formula diamond(Formula a);
Formula box(Formula a);
Formula sdiamond(Formula a);
Formula until(Formula a, Formula b);
Formula prev(Formula a);
Formula wprev(Formula a);
Formula once(Formula a);
Formula sofar(Formula a);
Formula first();
Formula more();
Formula empty();
Formula skip();
Formula finite();
Formula inf();
Formula sfin(Formula a);
Formula fin(Formula a);
Formula dm(Formula a);
Formula bm(Formula a);
Formula empty_test(Formula a);

// Left-nested conjunction of all formulas; `true` when empty.
Formula conjoin(const std::vector<Formula>& parts);
// Left-nested disjunction; `false` when empty.
Formula disjoin(const std::vector<Formula>& parts);
}  // namespace fm

enum class FormulaClass : std::uint8_t { State, NL1, PTL, PTLPast };

[[nodiscard]] std::string_view to_string(FormulaClass c) noexcept;

// Rewrites every derived operator into the nine primitives.
[[nodiscard]] Formula expand_derived(const Formula& f);

// Expands only the outermost operator if it is derived.
[[nodiscard]] Formula expand_once(const Formula& f);

// Tightest class: State < NL1 < PTL < PTLPast.  Formulas that are NL with
// next-depth above one are reported as PTL.
[[nodiscard]] FormulaClass classify(const Formula& f);

// Maximum nesting of Next after expansion.
[[nodiscard]] int next_depth(const Formula& f);

// Maximum nesting of past operators after expansion.
[[nodiscard]] int past_depth(const Formula& f);

[[nodiscard]] bool is_state_formula(const Formula& f);
[[nodiscard]] bool has_past(const Formula& f);

// Variables in first-occurrence order (left to right, depth first).
[[nodiscard]] std::vector<std::string> vars(const Formula& f);

// Number of nodes in the tree view of f.
[[nodiscard]] std::size_t formula_size(const Formula& f);

// Simultaneous renaming of variables; names missing from the map are kept.
[[nodiscard]] Formula rename(const Formula& f, const std::unordered_map<std::string, std::string>& mapping);

// Simultaneous substitution of variables by formulas.
[[nodiscard]] Formula substitute(const Formula& f, const std::unordered_map<std::string, Formula>& mapping);

// Names of the form r<digits> are reserved for dependent variables.
[[nodiscard]] bool is_reserved_name(std::string_view name) noexcept;
[[nodiscard]] std::string dependent_name(std::size_t index);
// Index of a reserved name, e.g. "r12" -> 12.
[[nodiscard]] std::optional<std::size_t> dependent_index(std::string_view name) noexcept;

[[nodiscard]] bool is_identifier(std::string_view name) noexcept;

// Ordered variable set V together with its primed twin V'.
class VariableContext {
public:
    VariableContext() = default;
    explicit VariableContext(std::vector<std::string> names);

    // Throws std::invalid_argument on duplicates or invalid names.
    void add(const std::string& name);

    [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
    [[nodiscard]] const std::string& name(std::size_t i) const { return names_.at(i); }
    [[nodiscard]] bool contains(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;

    [[nodiscard]] static std::string primed(std::string_view name);

    // 2^|V|, saturating at UINT64_MAX.
    [[nodiscard]] std::uint64_t atom_count() const noexcept;

    friend bool operator==(const VariableContext&, const VariableContext&) = default;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

[[nodiscard]] std::uint64_t saturating_pow2(std::size_t exponent) noexcept;

}  // namespace tsat

template <>
struct std::hash<tsat::Formula> {
    std::size_t operator()(const tsat::Formula& f) const noexcept { return f.hash(); }
};
