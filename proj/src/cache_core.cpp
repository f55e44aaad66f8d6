#include "cacheleak/cache_core.hpp"

#include <utility>

namespace cacheleak {

std::string_view policy_name(Policy p) {
    switch (p) {
        case Policy::Fifo: return "fifo";
        case Policy::Lru: return "lru";
        case Policy::Plru: return "plru";
    }
    return "?";
}

Policy parse_policy(std::string_view name) {
    if (name == "fifo" || name == "FIFO") return Policy::Fifo;
    if (name == "lru" || name == "LRU") return Policy::Lru;
    if (name == "plru" || name == "PLRU") return Policy::Plru;
    throw ConfigError("unknown policy '" + std::string(name) + "'");
}

bool valid_assoc(Policy policy, int assoc) {
    if (assoc < 1 || assoc > kMaxAssoc) return false;
    if (policy == Policy::Plru && (assoc & (assoc - 1)) != 0) return false;
    return true;
}

void require_valid_assoc(Policy policy, int assoc) {
    if (assoc < 1 || assoc > kMaxAssoc)
        throw ConfigError("associativity " + std::to_string(assoc) + " out of range 1.." +
                          std::to_string(kMaxAssoc));
    if (!valid_assoc(policy, assoc))
        throw ConfigError("PLRU requires a power-of-two associativity, got " +
                          std::to_string(assoc));
}

namespace {

// PLRU hit permutation. The recursion halves the tree: same-parity ages live
// in the same subtree once the root arrow is accounted for.
Age plru_permutation(Age base, Age target) {
    if (target == base) return 0;
    const bool base_even = (base % 2) == 0;
    const bool target_even = (target % 2) == 0;
    if (base_even && !target_even) return target;
    if (!base_even && target_even) return target + 1;
    return 2 * plru_permutation(base / 2, target / 2);
}

}  // namespace

Age permutation(Policy policy, int assoc, Age base, Age target) {
    require_valid_assoc(policy, assoc);
    if (base < 0 || base >= assoc || target < 0 || target >= assoc)
        throw ConfigError("permutation: ages must be cached (< associativity)");
    switch (policy) {
        case Policy::Fifo:
            return target;
        case Policy::Lru:
            if (target == base) return 0;
            return target < base ? target + 1 : target;
        case Policy::Plru:
            return plru_permutation(base, target);
    }
    return target;
}

CacheSetState CacheSetState::from_line(std::span<const Block> line) {
    if (line.empty() || line.size() > kMaxAssoc)
        throw ConfigError("cache state: line length out of range");
    CacheSetState s;
    s.assoc_ = static_cast<std::int8_t>(line.size());
    for (std::size_t i = 0; i < line.size(); ++i) {
        for (std::size_t j = i + 1; j < line.size(); ++j)
            if (line[i] == line[j])
                throw InvariantError("cache state: block occupies two ages");
        s.line_[i] = line[i].id;
    }
    return s;
}

Age CacheSetState::age_of(Block b) const {
    for (int i = 0; i < assoc_; ++i)
        if (line_[static_cast<std::size_t>(i)] == b.id) return i;
    return assoc_;
}

std::size_t CacheSetState::hash() const {
    // FNV-1a over the occupied line entries.
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::size_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::size_t>(assoc_));
    for (int i = 0; i < assoc_; ++i) mix(line_[static_cast<std::size_t>(i)]);
    return h;
}

std::string to_string(const CacheSetState& state, const BlockUniverse& universe) {
    std::string out = "[";
    for (int age = 0; age < state.assoc(); ++age) {
        if (age > 0) out += ',';
        out += universe.name(state.block_at(age));
    }
    out += " | uncached:";
    bool first = true;
    for (int id = 0; id < universe.size(); ++id) {
        Block b{static_cast<std::uint16_t>(id)};
        if (state.age_of(b) < state.assoc()) continue;
        out += first ? " " : ",";
        out += universe.name(b);
        first = false;
    }
    out += ']';
    return out;
}

CacheMachine::CacheMachine(Policy policy, int assoc, BlockUniverse universe)
    : policy_(policy), assoc_(assoc), universe_(std::move(universe)) {
    require_valid_assoc(policy_, assoc_);
}

void CacheMachine::require_known(const CacheSetState& state, Block b) const {
    if (state.assoc() != assoc_)
        throw ConfigError("cache state has associativity " + std::to_string(state.assoc()) +
                          ", machine expects " + std::to_string(assoc_));
    if (!universe_.contains(b))
        throw ConfigError("unknown block id " + std::to_string(b.id));
}

CacheSetState CacheMachine::update(const CacheSetState& state, Block b) const {
    require_known(state, b);
    const Age age = state.age_of(b);
    CacheSetState next = state;
    if (age == assoc_) {
        // Miss: insert at age 0, age the rest; the age A-1 occupant is evicted.
        for (int i = assoc_ - 1; i > 0; --i)
            next.line_[static_cast<std::size_t>(i)] = state.line_[static_cast<std::size_t>(i - 1)];
        next.line_[0] = b.id;
    } else {
        // Hit: permute cached ages around the accessed block's age.
        for (int i = 0; i < assoc_; ++i) {
            const Age to = permutation(policy_, assoc_, age, i);
            next.line_[static_cast<std::size_t>(to)] = state.line_[static_cast<std::size_t>(i)];
        }
    }
    return next;
}

Observation CacheMachine::view(const CacheSetState& state, Block b) const {
    require_known(state, b);
    return state.cached(b) ? Observation::Hit : Observation::Miss;
}

}  // namespace cacheleak
