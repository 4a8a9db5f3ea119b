#include "tsat/bdd.hpp"

#include <algorithm>
#include <unordered_set>

namespace tsat {

BddManager::BddManager(VariableContext ctx, std::size_t node_limit)
    : ctx_(std::move(ctx)), node_limit_(node_limit) {
    const auto terminal = static_cast<std::uint32_t>(level_count());
    nodes_.push_back({terminal, 0, 0});
    nodes_.push_back({terminal, 1, 1});
}

std::string BddManager::level_name(std::uint32_t level) const {
    if (level >= level_count()) return "terminal";
    const std::string& base = ctx_.name(level / 2);
    return (level % 2) ? VariableContext::primed(base) : base;
}

std::uint32_t BddManager::mk(std::uint32_t level, std::uint32_t low, std::uint32_t high) {
    if (low == high) return low;
    Triple key{level, low, high};
    if (auto it = unique_.find(key); it != unique_.end()) return it->second;
    if (node_limit_ != 0 && nodes_.size() >= node_limit_)
        throw NodeLimitExceeded("BDD node limit of " + std::to_string(node_limit_) + " exceeded");
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({level, low, high});
    unique_.emplace(key, id);
    return id;
}

BddRef BddManager::var(std::size_t index, bool primed) {
    if (index >= ctx_.size()) throw UnknownVariable("variable index out of range");
    return {mk(static_cast<std::uint32_t>(2 * index + (primed ? 1 : 0)), 0, 1)};
}

BddRef BddManager::var(std::string_view name) {
    bool primed = !name.empty() && name.back() == '\'';
    if (primed) name.remove_suffix(1);
    auto idx = ctx_.index_of(name);
    if (!idx) throw UnknownVariable("unknown variable '" + std::string(name) + (primed ? "'" : "") + "'");
    return var(*idx, primed);
}

namespace {

bool terminal_apply(BddOp op, bool a, bool b) {
    switch (op) {
        case BddOp::And:
            return a && b;
        case BddOp::Or:
            return a || b;
        case BddOp::Xor:
            return a != b;
        case BddOp::Iff:
            return a == b;
        default:
            return !a || b;
    }
}

}  // namespace

std::uint32_t BddManager::apply_rec(BddOp op, std::uint32_t a, std::uint32_t b) {
    if (a < 2 && b < 2) return terminal_apply(op, a == 1, b == 1) ? 1 : 0;
    switch (op) {
        case BddOp::And:
            if (a == 0 || b == 0) return 0;
            if (a == 1) return b;
            if (b == 1 || a == b) return a;
            break;
        case BddOp::Or:
            if (a == 1 || b == 1) return 1;
            if (a == 0) return b;
            if (b == 0 || a == b) return a;
            break;
        case BddOp::Xor:
            if (a == b) return 0;
            if (a == 0) return b;
            if (b == 0) return a;
            break;
        case BddOp::Iff:
            if (a == b) return 1;
            if (a == 1) return b;
            if (b == 1) return a;
            break;
        case BddOp::Implies:
            if (a == 0 || b == 1 || a == b) return 1;
            if (a == 1) return b;
            break;
    }
    if (op != BddOp::Implies && a > b) std::swap(a, b);
    Triple key{static_cast<std::uint32_t>(op) << 29 | a, b, 0};
    // Node ids stay far below 2^29 in practice; fall back to no caching
    // beyond that rather than risk key collisions.
    const bool cacheable = a < (1U << 29);
    if (cacheable)
        if (auto it = apply_cache_.find(key); it != apply_cache_.end()) return it->second;
    const Node na = nodes_[a];
    const Node nb = nodes_[b];
    const std::uint32_t top = std::min(na.level, nb.level);
    const std::uint32_t a0 = na.level == top ? na.low : a;
    const std::uint32_t a1 = na.level == top ? na.high : a;
    const std::uint32_t b0 = nb.level == top ? nb.low : b;
    const std::uint32_t b1 = nb.level == top ? nb.high : b;
    const std::uint32_t lo = apply_rec(op, a0, b0);
    const std::uint32_t hi = apply_rec(op, a1, b1);
    const std::uint32_t r = mk(top, lo, hi);
    if (cacheable) apply_cache_.emplace(key, r);
    return r;
}

BddRef BddManager::apply(BddOp op, BddRef a, BddRef b) { return {apply_rec(op, a.id, b.id)}; }

std::uint32_t BddManager::not_rec(std::uint32_t a) {
    if (a < 2) return 1 - a;
    if (auto it = not_cache_.find(a); it != not_cache_.end()) return it->second;
    const Node n = nodes_[a];
    const std::uint32_t lo = not_rec(n.low);
    const std::uint32_t hi = not_rec(n.high);
    const std::uint32_t r = mk(n.level, lo, hi);
    not_cache_.emplace(a, r);
    return r;
}

BddRef BddManager::lnot(BddRef a) { return {not_rec(a.id)}; }

BddRef BddManager::ite(BddRef f, BddRef g, BddRef h) { return lor(land(f, g), land(lnot(f), h)); }

std::uint32_t BddManager::mask_id(const std::vector<bool>& mask) {
    auto it = std::find(masks_.begin(), masks_.end(), mask);
    if (it != masks_.end()) return static_cast<std::uint32_t>(it - masks_.begin());
    masks_.push_back(mask);
    return static_cast<std::uint32_t>(masks_.size() - 1);
}

std::uint32_t BddManager::exists_rec(std::uint32_t a, std::uint32_t mid, const std::vector<bool>& mask) {
    if (a < 2) return a;
    Triple key{a, mid, 0};
    if (auto it = exists_cache_.find(key); it != exists_cache_.end()) return it->second;
    const Node n = nodes_[a];
    const std::uint32_t lo = exists_rec(n.low, mid, mask);
    std::uint32_t r;
    if (mask[n.level] && lo == 1) {
        r = 1;
    } else {
        const std::uint32_t hi = exists_rec(n.high, mid, mask);
        r = mask[n.level] ? apply_rec(BddOp::Or, lo, hi) : mk(n.level, lo, hi);
    }
    exists_cache_.emplace(key, r);
    return r;
}

BddRef BddManager::exists(const std::vector<std::string>& names, BddRef a) {
    std::vector<bool> mask(level_count(), false);
    for (const auto& name : names) {
        BddRef v = var(name);
        mask[nodes_[v.id].level] = true;
    }
    const std::uint32_t mid = mask_id(mask);
    return {exists_rec(a.id, mid, mask)};
}

BddRef BddManager::exists_current(BddRef a) {
    std::vector<bool> mask(level_count(), false);
    for (std::size_t i = 0; i < mask.size(); i += 2) mask[i] = true;
    const std::uint32_t mid = mask_id(mask);
    return {exists_rec(a.id, mid, mask)};
}

BddRef BddManager::exists_primed(BddRef a) {
    std::vector<bool> mask(level_count(), false);
    for (std::size_t i = 1; i < mask.size(); i += 2) mask[i] = true;
    const std::uint32_t mid = mask_id(mask);
    return {exists_rec(a.id, mid, mask)};
}

std::uint32_t BddManager::swap_rec(std::uint32_t a) {
    if (a < 2) return a;
    if (auto it = swap_cache_.find(a); it != swap_cache_.end()) return it->second;
    const Node n = nodes_[a];
    const std::uint32_t lo = swap_rec(n.low);
    const std::uint32_t hi = swap_rec(n.high);
    const std::uint32_t v = mk(n.level ^ 1U, 0, 1);
    const BddRef r = ite({v}, {hi}, {lo});
    swap_cache_.emplace(a, r.id);
    return r.id;
}

BddRef BddManager::swap_primed(BddRef a) { return {swap_rec(a.id)}; }

BddRef BddManager::cube(const VAtom& atom, bool primed) {
    if (atom.width() != ctx_.size()) throw std::invalid_argument("atom width does not match the context");
    // Built bottom-up so each step is a single mk.
    std::uint32_t r = 1;
    for (std::size_t i = ctx_.size(); i-- > 0;) {
        const auto level = static_cast<std::uint32_t>(2 * i + (primed ? 1 : 0));
        r = atom[i] ? mk(level, 0, r) : mk(level, r, 0);
    }
    return {r};
}

std::optional<VAtom> BddManager::pick_atom(BddRef a) {
    if (a == bdd_false()) return std::nullopt;
    VAtom out(ctx_.size());
    BddRef pi = a;
    for (std::size_t j = 0; j < ctx_.size(); ++j) {
        BddRef with = land(pi, var(j, false));
        if (with != bdd_false()) {
            out.set(j, true);
            pi = with;
        } else {
            out.set(j, false);
            pi = land(pi, lnot(var(j, false)));
        }
    }
    return out;
}

bool BddManager::eval(BddRef a, const VAtom& current, const VAtom* primed) const {
    std::uint32_t id = a.id;
    while (id >= 2) {
        const Node& n = nodes_[id];
        const std::size_t idx = n.level / 2;
        bool value;
        if (n.level % 2 == 0) {
            value = current[idx];
        } else {
            if (!primed) throw std::invalid_argument("function depends on primed variables");
            value = (*primed)[idx];
        }
        id = value ? n.high : n.low;
    }
    return id == 1;
}

std::size_t BddManager::size(BddRef a) const {
    std::unordered_set<std::uint32_t> seen;
    std::vector<std::uint32_t> stack{a.id};
    while (!stack.empty()) {
        std::uint32_t id = stack.back();
        stack.pop_back();
        if (id < 2 || !seen.insert(id).second) continue;
        stack.push_back(nodes_[id].low);
        stack.push_back(nodes_[id].high);
    }
    return seen.size();
}

std::vector<std::string> BddManager::support(BddRef a) const {
    std::vector<bool> used(level_count(), false);
    std::unordered_set<std::uint32_t> seen;
    std::vector<std::uint32_t> stack{a.id};
    while (!stack.empty()) {
        std::uint32_t id = stack.back();
        stack.pop_back();
        if (id < 2 || !seen.insert(id).second) continue;
        used[nodes_[id].level] = true;
        stack.push_back(nodes_[id].low);
        stack.push_back(nodes_[id].high);
    }
    std::vector<std::string> out;
    for (std::uint32_t l = 0; l < used.size(); ++l)
        if (used[l]) out.push_back(level_name(l));
    return out;
}

void BddManager::dump(std::ostream& out, BddRef a) const {
    std::unordered_set<std::uint32_t> seen;
    // Post-order so children precede parents.
    auto visit = [&](auto&& self, std::uint32_t id) -> void {
        if (id < 2 || !seen.insert(id).second) return;
        self(self, nodes_[id].low);
        self(self, nodes_[id].high);
        out << id << ' ' << level_name(nodes_[id].level) << ' ' << nodes_[id].low << ' ' << nodes_[id].high << '\n';
    };
    visit(visit, a.id);
}

void BddManager::clear_caches() {
    apply_cache_.clear();
    exists_cache_.clear();
    not_cache_.clear();
    swap_cache_.clear();
}

}  // namespace tsat
