#include "tsat/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace tsat {

namespace detail {

struct Node {
    Op op;
    std::string name;
    Formula a;
    Formula b;
    std::size_t hash;
};

}  // namespace detail

namespace {

std::size_t mix(std::size_t seed, std::size_t v) noexcept {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::shared_ptr<const detail::Node>& true_node() {
    static const auto node = std::make_shared<const detail::Node>(
        detail::Node{Op::True, {}, Formula(), Formula(), mix(0, static_cast<std::size_t>(Op::True))});
    return node;
}

}  // namespace

bool is_primitive(Op op) noexcept {
    switch (op) {
        case Op::Var:
        case Op::True:
        case Op::Not:
        case Op::Or:
        case Op::Next:
        case Op::Diamond:
        case Op::Until:
        case Op::Prev:
        case Op::Once:
            return true;
        default:
            return false;
    }
}

int arity(Op op) noexcept {
    switch (op) {
        case Op::Var:
        case Op::True:
        case Op::False:
        case Op::More:
        case Op::Empty:
        case Op::Skip:
        case Op::Finite:
        case Op::Inf:
        case Op::First:
            return 0;
        case Op::Or:
        case Op::And:
        case Op::Implies:
        case Op::Equiv:
        case Op::Until:
            return 2;
        default:
            return 1;
    }
}

bool is_past(Op op) noexcept {
    switch (op) {
        case Op::Prev:
        case Op::Once:
        case Op::WPrev:
        case Op::SoFar:
        case Op::First:
            return true;
        default:
            return false;
    }
}

// A null node is `true`; leaves keep null children.
Formula::Formula() : node_(nullptr) {}

Formula Formula::var(std::string name) {
    if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
    auto h = mix(std::hash<std::string>{}(name), static_cast<std::size_t>(Op::Var));
    return Formula(std::make_shared<const detail::Node>(detail::Node{Op::Var, std::move(name), {}, {}, h}));
}

Formula Formula::top() { return Formula(true_node()); }

Formula Formula::bottom() { return nullary(Op::False); }

Formula Formula::nullary(Op op) {
    if (op == Op::True) return top();
    if (arity(op) != 0 || op == Op::Var) throw std::invalid_argument("operator is not nullary");
    return Formula(std::make_shared<const detail::Node>(
        detail::Node{op, {}, {}, {}, mix(0x51ed2701, static_cast<std::size_t>(op))}));
}

Formula Formula::unary(Op op, Formula operand) {
    if (arity(op) != 1) throw std::invalid_argument("operator is not unary");
    auto h = mix(mix(0x1234567, static_cast<std::size_t>(op)), operand.hash());
    return Formula(std::make_shared<const detail::Node>(detail::Node{op, {}, std::move(operand), {}, h}));
}

Formula Formula::binary(Op op, Formula lhs, Formula rhs) {
    if (arity(op) != 2) throw std::invalid_argument("operator is not binary");
    auto h = mix(mix(mix(0x7654321, static_cast<std::size_t>(op)), lhs.hash()), rhs.hash());
    return Formula(
        std::make_shared<const detail::Node>(detail::Node{op, {}, std::move(lhs), std::move(rhs), h}));
}

Op Formula::op() const noexcept { return node_ ? node_->op : Op::True; }

const std::string& Formula::name() const {
    if (op() != Op::Var) throw std::logic_error("name() on a non-variable formula");
    return node_->name;
}

const Formula& Formula::lhs() const {
    if (arity(op()) < 1) throw std::logic_error("lhs() on a nullary formula");
    return node_->a;
}

const Formula& Formula::rhs() const {
    if (arity(op()) < 2) throw std::logic_error("rhs() on a formula with fewer than two operands");
    return node_->b;
}

std::size_t Formula::hash() const noexcept { return node_ ? node_->hash : true_node()->hash; }

bool operator==(const Formula& a, const Formula& b) noexcept {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op() || a.hash() != b.hash()) return false;
    switch (arity(a.op())) {
        case 0:
            return a.op() != Op::Var || a.node_->name == b.node_->name;
        case 1:
            return a.node_->a == b.node_->a;
        default:
            return a.node_->a == b.node_->a && a.node_->b == b.node_->b;
    }
}

namespace fm {
Formula var(std::string name) { return Formula::var(std::move(name)); }
Formula tt() { return Formula::top(); }
Formula ff() { return Formula::bottom(); }
Formula lnot(Formula a) { return Formula::unary(Op::Not, std::move(a)); }
Formula lor(Formula a, Formula b) { return Formula::binary(Op::Or, std::move(a), std::move(b)); }
Formula land(Formula a, Formula b) { return Formula::binary(Op::And, std::move(a), std::move(b)); }
Formula implies(Formula a, Formula b) { return Formula::binary(Op::Implies, std::move(a), std::move(b)); }
Formula equiv(Formula a, Formula b) { return Formula::binary(Op::Equiv, std::move(a), std::move(b)); }
Formula next(Formula a) { return Formula::unary(Op::Next, std::move(a)); }
Formula wnext(Formula a) { return Formula::unary(Op::WNext, std::move(a)); }
Formula diamond(Formula a) { return Formula::unary(Op::Diamond, std::move(a)); }
Formula box(Formula a) { return Formula::unary(Op::Box, std::move(a)); }
Formula sdiamond(Formula a) { return Formula::unary(Op::SDiamond, std::move(a)); }
Formula until(Formula a, Formula b) { return Formula::binary(Op::Until, std::move(a), std::move(b)); }
Formula prev(Formula a) { return Formula::unary(Op::Prev, std::move(a)); }
Formula wprev(Formula a) { return Formula::unary(Op::WPrev, std::move(a)); }
Formula once(Formula a) { return Formula::unary(Op::Once, std::move(a)); }
Formula sofar(Formula a) { return Formula::unary(Op::SoFar, std::move(a)); }
Formula first() { return Formula::nullary(Op::First); }
Formula more() { return Formula::nullary(Op::More); }
Formula empty() { return Formula::nullary(Op::Empty); }
Formula skip() { return Formula::nullary(Op::Skip); }
Formula finite() { return Formula::nullary(Op::Finite); }
Formula inf() { return Formula::nullary(Op::Inf); }
Formula sfin(Formula a) { return Formula::unary(Op::Sfin, std::move(a)); }
Formula fin(Formula a) { return Formula::unary(Op::Fin, std::move(a)); }
Formula dm(Formula a) { return Formula::unary(Op::Dm, std::move(a)); }
Formula bm(Formula a) { return Formula::unary(Op::Bm, std::move(a)); }
Formula empty_test(Formula a) { return Formula::unary(Op::EmptyTest, std::move(a)); }

Formula conjoin(const std::vector<Formula>& parts) {
    if (parts.empty()) return tt();
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = land(acc, parts[i]);
    return acc;
}

Formula disjoin(const std::vector<Formula>& parts) {
    if (parts.empty()) return ff();
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = lor(acc, parts[i]);
    return acc;
}
}  // namespace fm

std::string_view to_string(FormulaClass c) noexcept {
    switch (c) {
        case FormulaClass::State:
            return "state";
        case FormulaClass::NL1:
            return "NL1";
        case FormulaClass::PTL:
            return "PTL";
        case FormulaClass::PTLPast:
            return "PTL+past";
    }
    return "?";
}

Formula expand_once(const Formula& f) {
    using namespace fm;
    switch (f.op()) {
        case Op::False:
            return lnot(tt());
        case Op::And:
            return lnot(lor(lnot(f.lhs()), lnot(f.rhs())));
        case Op::Implies:
            return lor(lnot(f.lhs()), f.rhs());
        case Op::Equiv:
            return land(implies(f.lhs(), f.rhs()), implies(f.rhs(), f.lhs()));
        case Op::Box:
            return lnot(diamond(lnot(f.lhs())));
        case Op::WNext:
            return lnot(next(lnot(f.lhs())));
        case Op::SDiamond:
            return next(diamond(f.lhs()));
        case Op::More:
            return next(tt());
        case Op::Empty:
            return lnot(more());
        case Op::Skip:
            return next(empty());
        case Op::Finite:
            return diamond(empty());
        case Op::Inf:
            return lnot(finite());
        case Op::Sfin:
            return diamond(land(empty(), f.lhs()));
        case Op::Fin:
            return box(implies(empty(), f.lhs()));
        case Op::Dm:
            return diamond(land(more(), f.lhs()));
        case Op::Bm:
            return box(implies(more(), f.lhs()));
        case Op::EmptyTest:
            return land(f.lhs(), empty());
        case Op::WPrev:
            return lnot(prev(lnot(f.lhs())));
        case Op::SoFar:
            return lnot(once(lnot(f.lhs())));
        case Op::First:
            return lnot(prev(tt()));
        default:
            return f;
    }
}

Formula expand_derived(const Formula& f) {
    if (!is_primitive(f.op())) return expand_derived(expand_once(f));
    switch (arity(f.op())) {
        case 0:
            return f;
        case 1: {
            Formula a = expand_derived(f.lhs());
            if (a.same_node(f.lhs())) return f;
            return Formula::unary(f.op(), std::move(a));
        }
        default: {
            Formula a = expand_derived(f.lhs());
            Formula b = expand_derived(f.rhs());
            if (a.same_node(f.lhs()) && b.same_node(f.rhs())) return f;
            return Formula::binary(f.op(), std::move(a), std::move(b));
        }
    }
}

namespace {

struct Shape {
    bool temporal_non_next = false;  // Diamond or Until present
    bool past = false;
    int next_depth = 0;
    int past_depth = 0;
};

Shape shape_of(const Formula& f) {
    Shape s;
    switch (f.op()) {
        case Op::Var:
        case Op::True:
            return s;
        case Op::Not:
            return shape_of(f.lhs());
        case Op::Or: {
            Shape a = shape_of(f.lhs());
            Shape b = shape_of(f.rhs());
            s.temporal_non_next = a.temporal_non_next || b.temporal_non_next;
            s.past = a.past || b.past;
            s.next_depth = std::max(a.next_depth, b.next_depth);
            s.past_depth = std::max(a.past_depth, b.past_depth);
            return s;
        }
        case Op::Until: {
            Shape a = shape_of(f.lhs());
            Shape b = shape_of(f.rhs());
            s.temporal_non_next = true;
            s.past = a.past || b.past;
            s.next_depth = std::max(a.next_depth, b.next_depth);
            s.past_depth = std::max(a.past_depth, b.past_depth);
            return s;
        }
        case Op::Next:
            s = shape_of(f.lhs());
            s.next_depth += 1;
            return s;
        case Op::Diamond:
            s = shape_of(f.lhs());
            s.temporal_non_next = true;
            return s;
        case Op::Prev:
        case Op::Once:
            s = shape_of(f.lhs());
            s.past = true;
            s.past_depth += 1;
            return s;
        default:
            return shape_of(expand_once(f));
    }
}

}  // namespace

FormulaClass classify(const Formula& f) {
    Shape s = shape_of(f);
    if (s.past) return FormulaClass::PTLPast;
    if (s.temporal_non_next || s.next_depth > 1) return FormulaClass::PTL;
    if (s.next_depth == 1) return FormulaClass::NL1;
    return FormulaClass::State;
}

int next_depth(const Formula& f) { return shape_of(f).next_depth; }

int past_depth(const Formula& f) { return shape_of(f).past_depth; }

bool is_state_formula(const Formula& f) { return classify(f) == FormulaClass::State; }

bool has_past(const Formula& f) { return shape_of(f).past; }

std::vector<std::string> vars(const Formula& f) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (g.op() == Op::Var) {
            if (seen.insert(g.name()).second) out.push_back(g.name());
            return;
        }
        int n = arity(g.op());
        if (n >= 1) walk(g.lhs());
        if (n >= 2) walk(g.rhs());
    };
    walk(f);
    return out;
}

std::size_t formula_size(const Formula& f) {
    switch (arity(f.op())) {
        case 0:
            return 1;
        case 1:
            return 1 + formula_size(f.lhs());
        default:
            return 1 + formula_size(f.lhs()) + formula_size(f.rhs());
    }
}

Formula rename(const Formula& f, const std::unordered_map<std::string, std::string>& mapping) {
    std::unordered_map<std::string, Formula> sub;
    for (const auto& [from, to] : mapping) sub.emplace(from, Formula::var(to));
    return substitute(f, sub);
}

Formula substitute(const Formula& f, const std::unordered_map<std::string, Formula>& mapping) {
    switch (arity(f.op())) {
        case 0: {
            if (f.op() != Op::Var) return f;
            auto it = mapping.find(f.name());
            return it == mapping.end() ? f : it->second;
        }
        case 1: {
            Formula a = substitute(f.lhs(), mapping);
            if (a.same_node(f.lhs())) return f;
            return Formula::unary(f.op(), std::move(a));
        }
        default: {
            Formula a = substitute(f.lhs(), mapping);
            Formula b = substitute(f.rhs(), mapping);
            if (a.same_node(f.lhs()) && b.same_node(f.rhs())) return f;
            return Formula::binary(f.op(), std::move(a), std::move(b));
        }
    }
}

bool is_reserved_name(std::string_view name) noexcept { return dependent_index(name).has_value(); }

std::string dependent_name(std::size_t index) { return "r" + std::to_string(index); }

std::optional<std::size_t> dependent_index(std::string_view name) noexcept {
    if (name.size() < 2 || name[0] != 'r') return std::nullopt;
    std::size_t value = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        char c = name[i];
        if (c < '0' || c > '9') return std::nullopt;
        if (value > (std::numeric_limits<std::size_t>::max() - 9) / 10) return std::nullopt;
        value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    return value;
}

bool is_identifier(std::string_view name) noexcept {
    if (name.empty()) return false;
    auto head = static_cast<unsigned char>(name[0]);
    if (!(std::isalpha(head) || head == '_')) return false;
    return std::all_of(name.begin() + 1, name.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_';
    });
}

VariableContext::VariableContext(std::vector<std::string> names) {
    for (auto& n : names) add(n);
}

void VariableContext::add(const std::string& name) {
    if (!is_identifier(name)) throw std::invalid_argument("invalid variable name '" + name + "'");
    if (index_.contains(name)) throw std::invalid_argument("duplicate variable '" + name + "'");
    index_.emplace(name, names_.size());
    names_.push_back(name);
}

bool VariableContext::contains(std::string_view name) const { return index_of(name).has_value(); }

std::optional<std::size_t> VariableContext::index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string VariableContext::primed(std::string_view name) { return std::string(name) + "'"; }

std::uint64_t VariableContext::atom_count() const noexcept { return saturating_pow2(names_.size()); }

std::uint64_t saturating_pow2(std::size_t exponent) noexcept {
    if (exponent >= 64) return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t{1} << exponent;
}

}  // namespace tsat
