#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "cacheleak/absorption.hpp"
#include "cacheleak/statesets.hpp"

using namespace cacheleak;

namespace {

std::size_t oracle_count(Policy policy, int assoc, int fp, InitialState initial) {
    BlockUniverse universe = BlockUniverse::generate(fp, assoc, 0);
    CacheMachine machine(policy, assoc, universe);
    CacheSetState start = initial == InitialState::Filled ? initial_filled(assoc, universe)
                                                          : initial_empty(assoc, universe);
    const auto victims = universe.victim_blocks();
    return reachable_states(machine, start, victims).size();
}

}  // namespace

TEST_CASE("absorb_filled closed forms") {
    CHECK(absorb_filled(Policy::Fifo, 4, 4).count == 1);
    CHECK(absorb_filled(Policy::Fifo, 4, 5).count == 5);
    CHECK(absorb_filled(Policy::Plru, 4, 3).count == 4);
    CHECK(absorb_filled(Policy::Lru, 4, 5).count == 120);
    CHECK(absorb_filled(Policy::Lru, 4, 3).count == 6);    // fp! below assoc
    CHECK(absorb_filled(Policy::Fifo, 4, 7).count == 840); // fp!/(fp-A)!
    CHECK(absorb_filled(Policy::Fifo, 4, 6).count == 360);
}

TEST_CASE("absorb handles footprint zero") {
    for (Policy policy : {Policy::Fifo, Policy::Lru, Policy::Plru}) {
        CHECK(absorb_filled(policy, 4, 0).count == 1);
        CHECK(absorb_empty(policy, 4, 0).count == 1);
        CHECK(absorb_filled(policy, 4, 0).bits == doctest::Approx(0.0));
    }
}

TEST_CASE("lambda recursion values") {
    CHECK(lambda_plru(0, 4) == 1);
    CHECK(lambda_plru(1, 4) == 1);
    CHECK(lambda_plru(2, 4) == 2);
    CHECK(lambda_plru(3, 4) == 4);
    CHECK(lambda_plru(4, 4) == 1);
    CHECK_THROWS_AS(lambda_plru(5, 4), ConfigError);
    CHECK_THROWS_AS(lambda_plru(-1, 4), ConfigError);
    CHECK_THROWS_AS(lambda_plru(2, 6), ConfigError);
    // A=8 spot values against the doubled convolution, evaluated by hand:
    // Lambda(2,8) = 2*Lambda(1,4)^2 = 2
    // Lambda(3,8) = 2*(L(1,4)L(2,4) + L(2,4)L(1,4)) = 8
    CHECK(lambda_plru(2, 8) == 2);
    CHECK(lambda_plru(3, 8) == 8);
}

TEST_CASE("lambda for LRU and FIFO is constantly one") {
    for (Policy policy : {Policy::Fifo, Policy::Lru})
        for (int k = 0; k <= 4; ++k) CHECK(lambda_policy(policy, k, 4) == 1);
    for (int k = 0; k <= 2; ++k) CHECK(lambda_plru(k, 2) == 1);
}

TEST_CASE("lambda counts reachable placeholder configurations (brute force)") {
    // Enumerate reachable PLRU states from an empty cache with fp victims,
    // erase victim identities, and bucket configurations by placeholder
    // count. This is the semantic definition of Lambda.
    const int assoc = 4;
    for (int fp : {1, 2, 3, 4}) {
        BlockUniverse universe = BlockUniverse::generate(fp, assoc, 0);
        CacheMachine machine(Policy::Plru, assoc, universe);
        const auto victims = universe.victim_blocks();
        StateSet set = reachable_states(machine, initial_empty(assoc, universe), victims);

        std::map<int, std::set<std::vector<int>>> configs_by_placeholders;
        for (const CacheSetState& s : set.states) {
            std::vector<int> shape;
            int placeholders = 0;
            for (int age = 0; age < assoc; ++age) {
                Block b = s.block_at(age);
                if (universe.is_victim(b)) {
                    shape.push_back(-1);  // anonymized victim slot
                    ++placeholders;
                } else {
                    shape.push_back(b.id);
                }
            }
            configs_by_placeholders[placeholders].insert(shape);
        }
        for (int k = 0; k <= fp && k <= assoc; ++k) {
            const auto it = configs_by_placeholders.find(k);
            const std::size_t observed = it == configs_by_placeholders.end() ? 0 : it->second.size();
            CHECK(BigCount(observed) == lambda_plru(k, assoc));
        }
    }
}

TEST_CASE("absorb_empty closed forms") {
    CHECK(absorb_empty(Policy::Lru, 4, 2).count == 5);
    CHECK(absorb_empty(Policy::Plru, 4, 3).count == 40);
    CHECK(absorb_empty(Policy::Fifo, 4, 2).count == 5);
}

TEST_CASE("bits are log2 of the count") {
    auto r = absorb_filled(Policy::Lru, 4, 5);
    CHECK(r.bits == doctest::Approx(std::log2(120.0)));
    CHECK(log2_of(BigCount(1) << 200) == doctest::Approx(200.0));
}

TEST_CASE("oracle equivalence: closed forms match reachable-state counts") {
    for (Policy policy : {Policy::Fifo, Policy::Lru, Policy::Plru}) {
        for (int assoc : {2, 4}) {
            for (int fp = 0; fp <= 7; ++fp) {
                for (InitialState initial : {InitialState::Filled, InitialState::Empty}) {
                    CAPTURE(policy_name(policy));
                    CAPTURE(assoc);
                    CAPTURE(fp);
                    CAPTURE(initial_state_name(initial));
                    CHECK(absorb(policy, assoc, fp, initial).count ==
                          oracle_count(policy, assoc, fp, initial));
                }
            }
        }
    }
}

TEST_CASE("policies agree on filled absorption for large footprints") {
    for (int fp = 6; fp <= 9; ++fp) {
        const BigCount expected = falling_factorial(fp, 4);
        CHECK(absorb_filled(Policy::Fifo, 4, fp).count == expected);
        CHECK(absorb_filled(Policy::Lru, 4, fp).count == expected);
        CHECK(absorb_filled(Policy::Plru, 4, fp).count == expected);
    }
}

TEST_CASE("empty-start absorption: LRU equals FIFO, PLRU dominates") {
    for (int assoc : {2, 4, 8}) {
        for (int fp = 0; fp <= 10; ++fp) {
            const BigCount lru = absorb_empty(Policy::Lru, assoc, fp).count;
            CHECK(lru == absorb_empty(Policy::Fifo, assoc, fp).count);
            CHECK(absorb_empty(Policy::Plru, assoc, fp).count >= lru);
        }
    }
}

TEST_CASE("PLRU absorption rejects non-power-of-two associativity") {
    CHECK_THROWS_AS(absorb_filled(Policy::Plru, 6, 2), ConfigError);
    CHECK_THROWS_AS(absorb_empty(Policy::Plru, 6, 2), ConfigError);
}
