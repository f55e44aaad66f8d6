#pragma once

#include <algorithm>
#include <concepts>
#include <span>
#include <utility>
#include <vector>

#include "cacheleak/errors.hpp"

namespace cacheleak {

// A deterministic Mealy machine: on input i in state s it emits view(s, i)
// and moves to update(s, i). Machines are immutable descriptions; states must
// be regular, ordered and hashable so state sets can be kept canonical.
template <typename M>
concept MealyMachine = requires(const M& m, const typename M::State& s,
                                const typename M::Input& in) {
    { m.update(s, in) } -> std::convertible_to<typename M::State>;
    { m.view(s, in) } -> std::convertible_to<typename M::Output>;
};

// Alternating input/observation sequence.
template <MealyMachine M>
using Probe = std::vector<std::pair<typename M::Input, typename M::Output>>;

template <MealyMachine M>
struct TraceResult {
    typename M::State final;
    std::vector<typename M::Output> observations;
};

template <MealyMachine M>
TraceResult<M> run_trace(const M& machine, typename M::State start,
                         std::span<const typename M::Input> inputs) {
    TraceResult<M> result{std::move(start), {}};
    result.observations.reserve(inputs.size());
    for (const auto& in : inputs) {
        result.observations.push_back(machine.view(result.final, in));
        result.final = machine.update(result.final, in);
    }
    return result;
}

// Sort + dedupe; the canonical encoding of a set of states.
template <typename State>
void canonicalize(std::vector<State>& states) {
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
}

// K(p): the candidates coherent with the probe, i.e. those whose run over the
// probe's inputs reproduces its observations.
template <MealyMachine M>
std::vector<typename M::State> knowledge_set(const M& machine,
                                             std::span<const typename M::State> candidates,
                                             const Probe<M>& probe) {
    std::vector<typename M::State> coherent;
    for (const auto& candidate : candidates) {
        typename M::State s = candidate;
        bool ok = true;
        for (const auto& [input, expected] : probe) {
            if (!(machine.view(s, input) == expected)) {
                ok = false;
                break;
            }
            s = machine.update(s, input);
        }
        if (ok) coherent.push_back(candidate);
    }
    canonicalize(coherent);
    return coherent;
}

// FK(p): the image of K(p) under the probe's inputs — where the machine may
// be after the probe. Never larger than K(p).
template <MealyMachine M>
std::vector<typename M::State> final_knowledge_set(const M& machine,
                                                   std::span<const typename M::State> candidates,
                                                   const Probe<M>& probe) {
    std::vector<typename M::State> finals;
    for (const auto& candidate : knowledge_set(machine, candidates, probe)) {
        typename M::State s = candidate;
        for (const auto& [input, unused] : probe) s = machine.update(s, input);
        finals.push_back(std::move(s));
    }
    canonicalize(finals);
    return finals;
}

// Seven-state fixture machine: probing it with input k compares the hidden
// state against the window [k-1, k+1], and updates drift the state toward
// that window. Useful because an adaptive strategy can identify every state.
struct ToyMachine {
    using State = int;
    using Input = int;
    using Output = int;

    static constexpr int kStateCount = 7;

    Output view(State s, Input in) const {
        if (s < in - 1) return 0;
        if (s <= in + 1) return 2;
        return 1;
    }

    State update(State s, Input in) const {
        if (s < in) return s + 1;
        if (s <= in + 1) return s;
        return s - 1;
    }

    std::vector<State> states() const {
        std::vector<State> out(kStateCount);
        for (int i = 0; i < kStateCount; ++i) out[static_cast<std::size_t>(i)] = i;
        return out;
    }

    std::vector<Input> alphabet() const { return states(); }
};

}  // namespace cacheleak
