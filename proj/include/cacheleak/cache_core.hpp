#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "cacheleak/block.hpp"
#include "cacheleak/errors.hpp"

namespace cacheleak {

// One cache set modeled as a Mealy machine: states map blocks to ages,
// inputs are block accesses, outputs are hits and misses. On a miss the
// accessed block is inserted at age 0 and cached blocks age by one (the
// age A-1 block is evicted); on a hit the cached ages are reordered by the
// policy's permutation.

enum class Policy { Fifo, Lru, Plru };

std::string_view policy_name(Policy p);
Policy parse_policy(std::string_view name);

// Ages run 0..A; age A means "not cached" and is the only age multiple
// blocks may share.
using Age = int;

enum class Observation : std::uint8_t { Hit, Miss };

inline char observation_char(Observation o) { return o == Observation::Hit ? 'H' : 'M'; }

// Largest supported associativity. PLRU additionally requires a power of two.
inline constexpr int kMaxAssoc = 8;

bool valid_assoc(Policy policy, int assoc);
void require_valid_assoc(Policy policy, int assoc);

// Hit permutation pi_base(target) of the policy; defined on cached ages only
// (base, target < assoc). Bijective on {0..assoc-1} for fixed base.
Age permutation(Policy policy, int assoc, Age base, Age target);

// State of one cache set: the block at each age 0..A-1. Every cached age is
// occupied (lines the victim has not claimed hold filler blocks), so the
// uncached remainder of the universe is implicit. Value type, cheap to hash
// and compare; ordering is lexicographic on the age sequence.
class CacheSetState {
public:
    CacheSetState() = default;

    // line[i] = block at age i; line.size() is the associativity.
    static CacheSetState from_line(std::span<const Block> line);

    int assoc() const { return assoc_; }
    Block block_at(Age age) const { return Block{line_[static_cast<std::size_t>(age)]}; }

    // Age of b, or assoc() if b is not cached.
    Age age_of(Block b) const;
    bool cached(Block b) const { return age_of(b) < assoc_; }

    friend bool operator==(const CacheSetState& a, const CacheSetState& b) {
        if (a.assoc_ != b.assoc_) return false;
        for (int i = 0; i < a.assoc_; ++i)
            if (a.line_[static_cast<std::size_t>(i)] != b.line_[static_cast<std::size_t>(i)]) return false;
        return true;
    }
    friend bool operator<(const CacheSetState& a, const CacheSetState& b) {
        if (a.assoc_ != b.assoc_) return a.assoc_ < b.assoc_;
        for (int i = 0; i < a.assoc_; ++i) {
            auto x = a.line_[static_cast<std::size_t>(i)];
            auto y = b.line_[static_cast<std::size_t>(i)];
            if (x != y) return x < y;
        }
        return false;
    }

    std::size_t hash() const;

private:
    friend class CacheMachine;

    std::array<std::uint16_t, kMaxAssoc> line_{};
    std::int8_t assoc_ = 0;
};

struct CacheSetStateHash {
    std::size_t operator()(const CacheSetState& s) const { return s.hash(); }
};

// `[b0,b1,... | uncached: a,c]`, youngest first.
std::string to_string(const CacheSetState& state, const BlockUniverse& universe);

// The cache-set Mealy machine for a fixed policy, associativity and block
// universe. Immutable; operations are pure.
class CacheMachine {
public:
    using State = CacheSetState;
    using Input = Block;
    using Output = Observation;

    CacheMachine(Policy policy, int assoc, BlockUniverse universe);

    Policy policy() const { return policy_; }
    int assoc() const { return assoc_; }
    const BlockUniverse& universe() const { return universe_; }

    CacheSetState update(const CacheSetState& state, Block b) const;
    Observation view(const CacheSetState& state, Block b) const;

private:
    void require_known(const CacheSetState& state, Block b) const;

    Policy policy_;
    int assoc_;
    BlockUniverse universe_;
};

}  // namespace cacheleak

template <>
struct std::hash<cacheleak::CacheSetState> {
    std::size_t operator()(const cacheleak::CacheSetState& s) const { return s.hash(); }
};
