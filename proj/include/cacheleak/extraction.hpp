#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "cacheleak/absorption.hpp"
#include "cacheleak/mealy.hpp"
#include "cacheleak/statesets.hpp"

namespace cacheleak {

// Adaptive-attacker analysis: how finely can a prober that alternates inputs
// and hit/miss observations partition the victim's possible initial states?
// The search enumerates probing strategies over final knowledge sets,
// pruning redundant probes (cycles of non-refining inputs) and memoizing the
// best achievable knowledge-set count per canonical final knowledge set.

enum class AttackerKind { Shared, Disjoint };

std::string_view attacker_kind_name(AttackerKind k);

struct AttackerModel {
    AttackerKind kind;
    std::vector<Block> alphabet;
};

// Concrete probing alphabet of the attacker class. The shared attacker may
// access the victim's blocks plus A fresh blocks of his own; the disjoint
// attacker is limited to his own blocks, which are exactly the fillers that
// may still occupy lines the victim did not claim.
AttackerModel attacker_alphabet(AttackerKind kind, const BlockUniverse& universe, int assoc);

struct SearchLimits {
    std::uint64_t max_nodes = 10'000'000;
    int max_depth = 0;                         // 0: pick a default from the machine
    std::chrono::milliseconds wall_budget{0};  // zero: unlimited
    bool build_witness = false;
};

// Strategy tree achieving the reported leakage: the input probed at each
// node, children keyed by the observation. Leaves carry no input.
template <MealyMachine M>
struct WitnessNode {
    std::optional<typename M::Input> input;
    std::vector<std::pair<typename M::Output, std::unique_ptr<WitnessNode>>> children;

    int depth() const {
        int best = 0;
        for (const auto& [obs, child] : children) best = std::max(best, 1 + child->depth());
        return best;
    }

    std::size_t leaf_count() const {
        if (children.empty()) return 1;
        std::size_t total = 0;
        for (const auto& [obs, child] : children) total += child->leaf_count();
        return total;
    }
};

template <MealyMachine M>
struct PartitionResult {
    std::int64_t r_max = 1;
    bool exact = true;       // false: a budget was hit and r_max is a lower bound
    int depth = 0;           // deepest probe explored
    std::uint64_t nodes = 0;
    std::unique_ptr<WitnessNode<M>> witness;  // only when requested
};

namespace detail {

template <MealyMachine M>
class PartitionSearch {
public:
    using State = typename M::State;
    using Input = typename M::Input;
    using Output = typename M::Output;
    using StateVec = std::vector<State>;

    PartitionSearch(const M& machine, std::span<const Input> alphabet, const SearchLimits& limits)
        : machine_(machine),
          alphabet_(alphabet.begin(), alphabet.end()),
          limits_(limits),
          deadline_valid_(limits.wall_budget.count() > 0),
          deadline_(std::chrono::steady_clock::now() + limits.wall_budget) {}

    PartitionResult<M> run(StateVec possible) {
        if (possible.empty()) throw ConfigError("max_leakage: empty state set");
        if (alphabet_.empty()) throw ConfigError("max_leakage: empty alphabet");
        canonicalize(possible);
        PartitionResult<M> result;
        bool complete = true;
        result.r_max = best_count(possible, 0, complete);
        result.exact = complete;
        result.depth = max_depth_seen_;
        result.nodes = nodes_;
        if (limits_.build_witness) result.witness = rebuild(possible);
        return result;
    }

private:
    struct VecHash {
        std::size_t operator()(const StateVec& set) const {
            std::size_t h = 0x9e3779b97f4a7c15ull;
            std::hash<State> state_hash;
            for (const State& s : set) h = h * 1099511628211ull ^ state_hash(s);
            return h;
        }
    };

    // Best achievable count from this final knowledge set, together with the
    // action realizing it: a chain of non-refining inputs (single observation
    // each) followed by one refining input. No action: the set is depleted.
    struct MemoEntry {
        std::int64_t value = 1;
        std::vector<Input> chain;
        std::optional<Input> split_input;
    };

    bool out_of_budget() {
        if (nodes_ >= limits_.max_nodes) return true;
        if (deadline_valid_ && (nodes_ & 0x3ff) == 0 &&
            std::chrono::steady_clock::now() >= deadline_)
            return true;
        return false;
    }

    // Split by observation of `input`, then update each part. Buckets come
    // back keyed by observation, each canonical.
    std::map<Output, StateVec> split_and_update(const StateVec& set, const Input& input) const {
        std::map<Output, StateVec> buckets;
        for (const State& s : set) buckets[machine_.view(s, input)].push_back(s);
        for (auto& [obs, part] : buckets) {
            StateVec updated;
            updated.reserve(part.size());
            for (const State& s : part) updated.push_back(machine_.update(s, input));
            canonicalize(updated);
            part = std::move(updated);
        }
        return buckets;
    }

    // Best knowledge-set count achievable from `set`. Probes that do not
    // refine the set walk it deterministically through other sets, so the
    // search enumerates that closure breadth-first (revisiting a set is the
    // redundant-probe cycle and is skipped) and tries every refining input
    // at each closure member; refining inputs yield strictly smaller child
    // sets, which recurse. `complete_out` is cleared when a budget truncated
    // the subtree; only exact values enter the memo.
    std::int64_t best_count(const StateVec& set, int depth_used, bool& complete_out) {
        ++nodes_;
        max_depth_seen_ = std::max(max_depth_seen_, depth_used);
        if (set.size() == 1) return 1;
        if (auto it = memo_.find(set); it != memo_.end()) return it->second.value;

        const auto size = static_cast<std::int64_t>(set.size());
        MemoEntry best;
        bool complete = true;

        std::unordered_map<StateVec, std::vector<Input>, VecHash> visited;
        std::deque<const StateVec*> queue;
        visited.emplace(set, std::vector<Input>{});
        {
            auto it = visited.find(set);
            queue.push_back(&it->first);
        }

        while (!queue.empty() && best.value < size) {
            const StateVec& current = *queue.front();
            queue.pop_front();
            const std::vector<Input> chain = visited.find(current)->second;
            const int depth_here = depth_used + static_cast<int>(chain.size());
            ++nodes_;
            max_depth_seen_ = std::max(max_depth_seen_, depth_here);
            if (depth_here + 1 > limits_.max_depth || out_of_budget()) {
                complete = false;
                break;
            }
            for (const Input& input : alphabet_) {
                auto buckets = split_and_update(current, input);
                if (buckets.size() == 1) {
                    // Non-refining: extend the closure.
                    StateVec& child = buckets.begin()->second;
                    if (visited.find(child) == visited.end()) {
                        std::vector<Input> extended = chain;
                        extended.push_back(input);
                        auto [it, inserted] = visited.emplace(std::move(child), std::move(extended));
                        queue.push_back(&it->first);
                    }
                    continue;
                }
                std::int64_t total = 0;
                for (auto& [obs, child] : buckets)
                    total += best_count(child, depth_here + 1, complete);
                if (total > best.value) {
                    best.value = total;
                    best.chain = chain;
                    best.split_input = input;
                }
                if (best.value == size) break;  // all singletons; cannot improve
                if (nodes_ >= limits_.max_nodes) {
                    complete = false;
                    break;
                }
            }
        }

        // A full partition into singletons is exact no matter what was cut.
        if (best.value == size) complete = true;
        if (complete) memo_.emplace(set, best);
        if (!complete) complete_out = false;
        return best.value;
    }

    // Expand the memoized best actions into a strategy tree: one single-child
    // node per chain input, then the refining split, then the children's
    // trees. Leaf counts reproduce the memoized values by construction.
    std::unique_ptr<WitnessNode<M>> rebuild(const StateVec& set) {
        auto leaf = std::make_unique<WitnessNode<M>>();
        if (set.size() == 1) return leaf;
        auto it = memo_.find(set);
        if (it == memo_.end() || !it->second.split_input) return leaf;
        const MemoEntry& entry = it->second;

        // Nodes for the non-refining preparation chain.
        std::unique_ptr<WitnessNode<M>> head;
        WitnessNode<M>* tail = nullptr;
        StateVec current = set;
        auto append = [&head, &tail](std::unique_ptr<WitnessNode<M>> node, const Output& obs) {
            if (tail == nullptr) {
                head = std::move(node);
                tail = head.get();
            } else {
                tail->children.emplace_back(obs, std::move(node));
                tail = tail->children.back().second.get();
            }
        };
        Output link_obs{};
        for (const Input& input : entry.chain) {
            auto buckets = split_and_update(current, input);
            auto node = std::make_unique<WitnessNode<M>>();
            node->input = input;
            append(std::move(node), link_obs);
            link_obs = buckets.begin()->first;
            current = std::move(buckets.begin()->second);
        }

        auto split_node = std::make_unique<WitnessNode<M>>();
        split_node->input = *entry.split_input;
        auto buckets = split_and_update(current, *entry.split_input);
        for (auto& [obs, child] : buckets)
            split_node->children.emplace_back(obs, rebuild(child));
        append(std::move(split_node), link_obs);
        return head;
    }

    const M& machine_;
    std::vector<Input> alphabet_;
    SearchLimits limits_;
    bool deadline_valid_;
    std::chrono::steady_clock::time_point deadline_;

    std::unordered_map<StateVec, MemoEntry, VecHash> memo_;
    std::uint64_t nodes_ = 0;
    int max_depth_seen_ = 0;
};

}  // namespace detail

// Maximum information leakage r_max: the largest number of knowledge sets
// any adaptive probing strategy over `alphabet` can split `possible` into.
// If a budget is exhausted the result is a valid lower bound with
// exact = false; it is never silently truncated.
template <MealyMachine M>
PartitionResult<M> max_leakage(const M& machine, std::vector<typename M::State> possible,
                               std::span<const typename M::Input> alphabet,
                               SearchLimits limits = {}) {
    if (limits.max_depth <= 0) limits.max_depth = 4 * static_cast<int>(possible.size() + 1);
    detail::PartitionSearch<M> search(machine, alphabet, limits);
    return search.run(std::move(possible));
}

// Assign each start state to the witness leaf its observations select.
// Returns the per-leaf origin knowledge sets (the partition R_att).
template <MealyMachine M>
std::vector<std::vector<typename M::State>> witness_partition(
    const M& machine, const WitnessNode<M>& witness,
    std::span<const typename M::State> possible) {
    std::vector<std::vector<typename M::State>> leaves;
    std::map<const WitnessNode<M>*, std::size_t> leaf_index;
    for (const auto& start : possible) {
        const WitnessNode<M>* node = &witness;
        typename M::State s = start;
        while (node->input) {
            const auto obs = machine.view(s, *node->input);
            s = machine.update(s, *node->input);
            const WitnessNode<M>* next = nullptr;
            for (const auto& [o, child] : node->children)
                if (o == obs) next = child.get();
            if (next == nullptr) break;  // unrealized branch; treat as leaf
            node = next;
        }
        auto [it, inserted] = leaf_index.try_emplace(node, leaves.size());
        if (inserted) leaves.emplace_back();
        leaves[it->second].push_back(start);
    }
    return leaves;
}

// Largest n such that every state in the set has the same block at age i for
// all i < n ("the same n youngest blocks").
int deterministic_ages(std::span<const CacheSetState> states);

// Analytic leakage bounds. nullopt means no finite footprint-independent
// bound exists (shared-memory attacker against PLRU); callers fall back to
// the trivial bound |S_v|.
std::optional<BigCount> leakage_bound(Policy policy, int assoc, AttackerKind kind, int footprint);

// min(1, max_prior * channel_count): success probability of a single guess
// after observing a channel with that many distinguishable outcomes.
double success_probability_bound(double max_prior, const BigCount& channel_count);

// Whole-cache leakage is the product of per-set leakages (bits add).
BigCount compose_sets(std::span<const BigCount> per_set_counts);

}  // namespace cacheleak
