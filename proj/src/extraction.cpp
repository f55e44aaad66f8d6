#include "cacheleak/extraction.hpp"

#include <algorithm>

namespace cacheleak {

std::string_view attacker_kind_name(AttackerKind k) {
    return k == AttackerKind::Shared ? "shared" : "disjoint";
}

AttackerModel attacker_alphabet(AttackerKind kind, const BlockUniverse& universe, int assoc) {
    AttackerModel model{kind, {}};
    if (kind == AttackerKind::Shared) {
        if (universe.probe_count() < assoc)
            throw ConfigError("shared attacker needs " + std::to_string(assoc) +
                              " fresh probe blocks, have " +
                              std::to_string(universe.probe_count()));
        model.alphabet = universe.victim_blocks();
        const auto probes = universe.probe_blocks();
        model.alphabet.insert(model.alphabet.end(), probes.begin(),
                              probes.begin() + assoc);
    } else {
        // The disjoint attacker's own blocks are the fillers; those are the
        // only non-victim blocks whose cache residency carries information.
        if (universe.filler_count() < assoc)
            throw ConfigError("disjoint attacker needs " + std::to_string(assoc) +
                              " filler blocks, have " + std::to_string(universe.filler_count()));
        const auto fillers = universe.filler_blocks();
        model.alphabet.assign(fillers.begin(), fillers.begin() + assoc);
    }
    return model;
}

int deterministic_ages(std::span<const CacheSetState> states) {
    if (states.empty()) throw ConfigError("deterministic_ages: empty state set");
    const int assoc = states.front().assoc();
    for (int age = 0; age < assoc; ++age) {
        const Block expected = states.front().block_at(age);
        for (const CacheSetState& s : states) {
            if (s.assoc() != assoc) throw ConfigError("deterministic_ages: mixed associativity");
            if (s.block_at(age) != expected) return age;
        }
    }
    return assoc;
}

std::optional<BigCount> leakage_bound(Policy policy, int assoc, AttackerKind kind,
                                      int footprint) {
    require_valid_assoc(policy, assoc);
    if (footprint < 0) throw ConfigError("leakage_bound: negative footprint");
    if (kind == AttackerKind::Shared) {
        switch (policy) {
            case Policy::Lru: return BigCount(1) << assoc;                      // 2^A
            case Policy::Fifo: return falling_factorial(assoc + 1, assoc + 1);  // (A+1)!
            case Policy::Plru: return std::nullopt;  // grows with the footprint
        }
    }
    switch (policy) {
        case Policy::Lru:
        case Policy::Fifo:
            return BigCount(assoc + 1);
        case Policy::Plru: {
            // Configurations distinguishable by the disjoint attacker.
            BigCount sum = 0;
            for (int k = 0; k <= std::min(footprint, assoc); ++k) sum += lambda_plru(k, assoc);
            return sum;
        }
    }
    throw ConfigError("leakage_bound: unknown policy");
}

double success_probability_bound(double max_prior, const BigCount& channel_count) {
    if (!(max_prior > 0.0) || max_prior > 1.0)
        throw ConfigError("success_probability_bound: prior must be in (0, 1]");
    if (channel_count < 1)
        throw ConfigError("success_probability_bound: channel count must be positive");
    const double scaled = max_prior * channel_count.convert_to<double>();
    return scaled < 1.0 ? scaled : 1.0;
}

BigCount compose_sets(std::span<const BigCount> per_set_counts) {
    if (per_set_counts.empty()) throw ConfigError("compose_sets: empty sequence");
    BigCount product = 1;
    for (const BigCount& c : per_set_counts) {
        if (c < 1) throw ConfigError("compose_sets: counts must be positive");
        product *= c;
    }
    return product;
}

}  // namespace cacheleak
