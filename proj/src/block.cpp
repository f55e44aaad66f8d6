#include "cacheleak/block.hpp"

#include <algorithm>
#include <limits>

namespace cacheleak {

namespace {

void append_generated(std::vector<std::string>& names, char prefix, int count) {
    for (int i = 0; i < count; ++i) names.push_back(prefix + std::to_string(i));
}

}  // namespace

BlockUniverse BlockUniverse::generate(int victim_count, int filler_count, int probe_count) {
    if (victim_count < 0 || filler_count < 0 || probe_count < 0)
        throw ConfigError("block universe: negative block count");
    BlockUniverse u;
    u.victim_count_ = victim_count;
    u.filler_count_ = filler_count;
    append_generated(u.names_, 'b', victim_count);
    append_generated(u.names_, 'x', filler_count);
    append_generated(u.names_, 'p', probe_count);
    if (u.names_.size() > std::numeric_limits<std::uint16_t>::max())
        throw ConfigError("block universe: too many blocks");
    return u;
}

BlockUniverse BlockUniverse::from_names(std::vector<std::string> victim_names,
                                        std::vector<std::string> filler_names,
                                        int probe_count) {
    BlockUniverse u;
    u.victim_count_ = static_cast<int>(victim_names.size());
    u.filler_count_ = static_cast<int>(filler_names.size());
    u.names_ = std::move(victim_names);
    u.names_.insert(u.names_.end(), filler_names.begin(), filler_names.end());
    for (std::size_t i = 0; i < u.names_.size(); ++i)
        for (std::size_t j = i + 1; j < u.names_.size(); ++j)
            if (u.names_[i] == u.names_[j])
                throw ConfigError("block universe: duplicate block name '" + u.names_[i] + "'");
    // Probe names must not collide with the declared ones.
    int minted = 0;
    for (int suffix = 0; minted < probe_count; ++suffix) {
        std::string candidate = "p" + std::to_string(suffix);
        if (std::find(u.names_.begin(), u.names_.end(), candidate) == u.names_.end()) {
            u.names_.push_back(std::move(candidate));
            ++minted;
        }
    }
    if (u.names_.size() > std::numeric_limits<std::uint16_t>::max())
        throw ConfigError("block universe: too many blocks");
    return u;
}

std::string_view BlockUniverse::name(Block b) const {
    if (!contains(b)) throw ConfigError("unknown block id " + std::to_string(b.id));
    return names_[b.id];
}

std::optional<Block> BlockUniverse::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return Block{static_cast<std::uint16_t>(i)};
    return std::nullopt;
}

std::vector<Block> BlockUniverse::victim_blocks() const {
    std::vector<Block> out;
    for (int i = 0; i < victim_count_; ++i) out.push_back(Block{static_cast<std::uint16_t>(i)});
    return out;
}

std::vector<Block> BlockUniverse::filler_blocks() const {
    std::vector<Block> out;
    for (int i = 0; i < filler_count_; ++i)
        out.push_back(Block{static_cast<std::uint16_t>(victim_count_ + i)});
    return out;
}

std::vector<Block> BlockUniverse::probe_blocks() const {
    std::vector<Block> out;
    for (int i = victim_count_ + filler_count_; i < size(); ++i)
        out.push_back(Block{static_cast<std::uint16_t>(i)});
    return out;
}

}  // namespace cacheleak
