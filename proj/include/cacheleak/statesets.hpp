#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cacheleak/cache_core.hpp"

namespace cacheleak {

// A finite set of cache-set states over one universe and configuration: the
// victim's possible states S_v. States are kept sorted and unique.
struct StateSet {
    Policy policy = Policy::Lru;
    int assoc = 0;
    BlockUniverse universe;
    std::vector<CacheSetState> states;

    std::size_t size() const { return states.size(); }
};

enum class InitialState { Filled, Empty };

std::string_view initial_state_name(InitialState s);

// State where no victim block is cached: fillers occupy ages 0..A-1 in id
// order.
CacheSetState initial_empty(int assoc, const BlockUniverse& universe);

// State where victim blocks occupy the youngest ages in id order; remaining
// lines (if fp < A) hold fillers, remaining victim blocks (if fp > A) are
// uncached.
CacheSetState initial_filled(int assoc, const BlockUniverse& universe);

struct ReachOptions {
    std::size_t max_states = 1'000'000;
};

// Least fixpoint of `update` over all traces from `inputs`* starting at
// `start`: {upd_t(start) | t in inputs*}. Breadth-first; result is canonical
// and independent of iteration order.
StateSet reachable_states(const CacheMachine& machine, const CacheSetState& start,
                          std::span<const Block> inputs, const ReachOptions& options = {});

// Versioned JSON document:
//   {version, policy, assoc, victim_blocks, filler_blocks,
//    states: [[age0_block, ..., age(A-1)_block], ...]}
// Uncached blocks are implicit (universe minus the listed line).
void export_stateset(const StateSet& set, std::ostream& out);
void export_stateset(const StateSet& set, const std::string& path);
StateSet import_stateset(std::istream& in);
StateSet import_stateset(const std::string& path);

}  // namespace cacheleak
