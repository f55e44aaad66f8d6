#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cacheleak/errors.hpp"

namespace cacheleak {

// A memory block. Blocks are dense indices into a BlockUniverse; all model
// code treats them as opaque, totally ordered identifiers.
struct Block {
    std::uint16_t id = 0;

    friend constexpr auto operator<=>(Block, Block) = default;
};

// The finite block universe of one experiment: the victim's blocks, the
// filler blocks that occupy cache lines the victim has not claimed, and
// fresh blocks reserved for the prober. The three groups are disjoint.
// Ids are assigned in declaration order: victims, then fillers, then probes.
class BlockUniverse {
public:
    BlockUniverse() = default;

    // Universe with generated names b0..b{nv-1}, x0..x{nf-1}, p0..p{np-1}.
    static BlockUniverse generate(int victim_count, int filler_count, int probe_count);

    // Universe from explicit victim/filler names (used by state-set import);
    // probe names are minted fresh so they cannot collide.
    static BlockUniverse from_names(std::vector<std::string> victim_names,
                                    std::vector<std::string> filler_names,
                                    int probe_count);

    int size() const { return static_cast<int>(names_.size()); }
    int victim_count() const { return victim_count_; }
    int filler_count() const { return filler_count_; }
    int probe_count() const { return size() - victim_count_ - filler_count_; }

    // footprint fp = |B_v|
    int footprint() const { return victim_count_; }

    bool contains(Block b) const { return b.id < names_.size(); }
    bool is_victim(Block b) const { return b.id < static_cast<std::uint16_t>(victim_count_); }
    bool is_filler(Block b) const {
        return !is_victim(b) && b.id < static_cast<std::uint32_t>(victim_count_ + filler_count_);
    }

    std::string_view name(Block b) const;
    std::optional<Block> find(std::string_view name) const;

    std::vector<Block> victim_blocks() const;
    std::vector<Block> filler_blocks() const;
    std::vector<Block> probe_blocks() const;

private:
    std::vector<std::string> names_;
    int victim_count_ = 0;
    int filler_count_ = 0;
};

}  // namespace cacheleak
