#pragma once

// Reduced ordered BDDs over a fixed interleaved order p1 < p1' < p2 < p2' ...

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "tsat/formula.hpp"
#include "tsat/interval.hpp"

namespace tsat {

class UnknownVariable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NodeLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BddRef {
    std::uint32_t id = 0;
    friend bool operator==(BddRef, BddRef) = default;
};

enum class BddOp : std::uint8_t { And, Or, Xor, Iff, Implies };

class BddManager {
public:
    // node_limit of 0 means unlimited.
    explicit BddManager(VariableContext ctx, std::size_t node_limit = 0);

    [[nodiscard]] const VariableContext& context() const noexcept { return ctx_; }
    [[nodiscard]] std::size_t level_count() const noexcept { return 2 * ctx_.size(); }

    [[nodiscard]] static BddRef bdd_false() noexcept { return {0}; }
    [[nodiscard]] static BddRef bdd_true() noexcept { return {1}; }
    [[nodiscard]] static bool is_terminal(BddRef a) noexcept { return a.id < 2; }

    // Accepts "p" and "p'"; throws UnknownVariable otherwise.
    [[nodiscard]] BddRef var(std::string_view name);
    [[nodiscard]] BddRef var(std::size_t index, bool primed);

    [[nodiscard]] BddRef apply(BddOp op, BddRef a, BddRef b);
    [[nodiscard]] BddRef land(BddRef a, BddRef b) { return apply(BddOp::And, a, b); }
    [[nodiscard]] BddRef lor(BddRef a, BddRef b) { return apply(BddOp::Or, a, b); }
    [[nodiscard]] BddRef lnot(BddRef a);
    [[nodiscard]] BddRef ite(BddRef f, BddRef g, BddRef h);

    // Existential quantification over the listed variables (names, primed
    // names allowed).
    [[nodiscard]] BddRef exists(const std::vector<std::string>& names, BddRef a);
    [[nodiscard]] BddRef exists_current(BddRef a);
    [[nodiscard]] BddRef exists_primed(BddRef a);

    // Simultaneous substitution v <-> v' for every variable.
    [[nodiscard]] BddRef swap_primed(BddRef a);

    // Conjunction of literals fixing every current (or primed) variable.
    [[nodiscard]] BddRef cube(const VAtom& atom, bool primed = false);

    // Assignment to the current variables: in context order, each variable
    // is set true when that keeps the function satisfiable.
    [[nodiscard]] std::optional<VAtom> pick_atom(BddRef a);

    [[nodiscard]] bool eval(BddRef a, const VAtom& current, const VAtom* primed = nullptr) const;

    [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }
    [[nodiscard]] std::size_t size(BddRef a) const;
    // Names of variables the function depends on, in level order.
    [[nodiscard]] std::vector<std::string> support(BddRef a) const;

    // One line per reachable internal node: "id var low high".
    void dump(std::ostream& out, BddRef a) const;

    void clear_caches();

    // Level of the root node (level_count() for terminals).
    [[nodiscard]] std::uint32_t level(BddRef a) const noexcept { return nodes_[a.id].level; }
    [[nodiscard]] BddRef low(BddRef a) const noexcept { return {nodes_[a.id].low}; }
    [[nodiscard]] BddRef high(BddRef a) const noexcept { return {nodes_[a.id].high}; }
    [[nodiscard]] std::string level_name(std::uint32_t level) const;

private:
    struct Node {
        std::uint32_t level;
        std::uint32_t low;
        std::uint32_t high;
    };

    struct TripleHash {
        std::size_t operator()(const std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>& t) const noexcept {
            std::uint64_t h = std::get<0>(t);
            h = h * 0x9E3779B97F4A7C15ULL ^ std::get<1>(t);
            h = h * 0x9E3779B97F4A7C15ULL ^ std::get<2>(t);
            return static_cast<std::size_t>(h ^ (h >> 29));
        }
    };
    using Triple = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;
    using TripleMap = std::unordered_map<Triple, std::uint32_t, TripleHash>;

    std::uint32_t mk(std::uint32_t level, std::uint32_t low, std::uint32_t high);
    std::uint32_t apply_rec(BddOp op, std::uint32_t a, std::uint32_t b);
    std::uint32_t not_rec(std::uint32_t a);
    std::uint32_t exists_rec(std::uint32_t a, std::uint32_t mask_id, const std::vector<bool>& mask);
    std::uint32_t swap_rec(std::uint32_t a);
    std::uint32_t mask_id(const std::vector<bool>& mask);

    VariableContext ctx_;
    std::size_t node_limit_;
    std::vector<Node> nodes_;
    TripleMap unique_;
    TripleMap apply_cache_;
    TripleMap exists_cache_;
    std::unordered_map<std::uint32_t, std::uint32_t> not_cache_;
    std::unordered_map<std::uint32_t, std::uint32_t> swap_cache_;
    std::vector<std::vector<bool>> masks_;
};

}  // namespace tsat
