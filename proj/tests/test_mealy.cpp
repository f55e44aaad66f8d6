#include <doctest.h>

#include <map>
#include <vector>

#include "cacheleak/cache_core.hpp"
#include "cacheleak/mealy.hpp"
#include "cacheleak/statesets.hpp"
#include "oracles.hpp"

using namespace cacheleak;
using cacheleak::testing::Rng;

namespace {

std::vector<int> ints(std::initializer_list<int> values) { return values; }

}  // namespace

TEST_CASE("run_trace on the toy machine") {
    ToyMachine toy;
    const std::vector<int> inputs = ints({0});
    auto result = run_trace(toy, 3, inputs);
    CHECK(result.final == 2);
    CHECK(result.observations == ints({1}));
}

TEST_CASE("run_trace with no inputs is the identity") {
    ToyMachine toy;
    const std::vector<int> none;
    auto result = run_trace(toy, 5, none);
    CHECK(result.final == 5);
    CHECK(result.observations.empty());
}

TEST_CASE("run_trace on a cache machine") {
    // Universe: a=b0, b=b1, fillers x0..x3; filled [a,b,x0,x1].
    BlockUniverse universe = BlockUniverse::generate(2, 4, 0);
    CacheMachine m(Policy::Lru, 4, universe);
    CacheSetState start = initial_filled(4, universe);
    const std::vector<Block> inputs{Block{1}};
    auto result = run_trace(m, start, inputs);
    CHECK(result.observations == std::vector<Observation>{Observation::Hit});
    CHECK(result.final.age_of(Block{1}) == 0);  // b
    CHECK(result.final.age_of(Block{0}) == 1);  // a
    CHECK(result.final.age_of(Block{2}) == 2);  // x0
    CHECK(result.final.age_of(Block{3}) == 3);  // x1
}

TEST_CASE("run_trace is deterministic") {
    ToyMachine toy;
    Rng rng(3);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<int> inputs;
        for (int i = 0; i < 6; ++i) inputs.push_back(static_cast<int>(rng.below(7)));
        const int start = static_cast<int>(rng.below(7));
        auto a = run_trace(toy, start, inputs);
        auto b = run_trace(toy, start, inputs);
        CHECK(a.final == b.final);
        CHECK(a.observations == b.observations);
    }
}

TEST_CASE("knowledge sets on the toy machine match the worked partition") {
    ToyMachine toy;
    const auto candidates = toy.states();

    Probe<ToyMachine> probe_hit{{0, 2}};
    CHECK(knowledge_set(toy, candidates, probe_hit) == ints({0, 1}));

    Probe<ToyMachine> probe_far{{0, 1}};
    CHECK(knowledge_set(toy, candidates, probe_far) == ints({2, 3, 4, 5, 6}));

    Probe<ToyMachine> empty_probe;
    CHECK(knowledge_set(toy, candidates, empty_probe) == candidates);
}

TEST_CASE("final knowledge sets are the updated images") {
    ToyMachine toy;
    const auto candidates = toy.states();

    Probe<ToyMachine> probe_hit{{0, 2}};
    CHECK(final_knowledge_set(toy, candidates, probe_hit) == ints({0, 1}));

    Probe<ToyMachine> probe_far{{0, 1}};
    CHECK(final_knowledge_set(toy, candidates, probe_far) == ints({1, 2, 3, 4, 5}));

    Probe<ToyMachine> empty_probe;
    CHECK(final_knowledge_set(toy, candidates, empty_probe) == candidates);
}

TEST_CASE("an infeasible probe yields the empty knowledge set") {
    ToyMachine toy;
    const auto candidates = toy.states();
    Probe<ToyMachine> impossible{{0, 2}, {6, 2}};  // no state is near both 0 and 6
    CHECK(knowledge_set(toy, candidates, impossible).empty());
}

TEST_CASE("|FK(p)| never exceeds |K(p)|") {
    ToyMachine toy;
    Rng rng(29);
    const auto candidates = toy.states();
    for (int iter = 0; iter < 200; ++iter) {
        // Random feasible probe: run a random start against random inputs.
        int s = static_cast<int>(rng.below(7));
        Probe<ToyMachine> probe;
        for (int i = 0; i < 5; ++i) {
            const int input = static_cast<int>(rng.below(7));
            probe.emplace_back(input, toy.view(s, input));
            s = toy.update(s, input);
        }
        const auto k = knowledge_set(toy, candidates, probe);
        const auto fk = final_knowledge_set(toy, candidates, probe);
        CHECK(!k.empty());
        CHECK(fk.size() <= k.size());
    }
}

TEST_CASE("refinement law: extensions of a probe partition its knowledge set") {
    ToyMachine toy;
    Rng rng(31);
    const auto candidates = toy.states();
    for (int iter = 0; iter < 100; ++iter) {
        int s = static_cast<int>(rng.below(7));
        Probe<ToyMachine> probe;
        const int len = static_cast<int>(rng.below(4));
        for (int i = 0; i < len; ++i) {
            const int input = static_cast<int>(rng.below(7));
            probe.emplace_back(input, toy.view(s, input));
            s = toy.update(s, input);
        }
        const auto base = knowledge_set(toy, candidates, probe);

        const int next = static_cast<int>(rng.below(7));
        std::vector<int> covered;
        for (int obs : {0, 1, 2}) {
            Probe<ToyMachine> extended = probe;
            extended.emplace_back(next, obs);
            for (int state : knowledge_set(toy, candidates, extended)) covered.push_back(state);
        }
        canonicalize(covered);
        CHECK(covered == base);
    }
}
