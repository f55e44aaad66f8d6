#pragma once

#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "cacheleak/statesets.hpp"

namespace cacheleak {

// Counts are arbitrary precision: fp!/(fp-A)! outgrows 64 bits quickly.
using BigCount = boost::multiprecision::cpp_int;

struct CountResult {
    BigCount count;
    double bits;  // log2(count)
};

double log2_of(const BigCount& value);
CountResult make_count(BigCount value);

// n!/(n-k)! — ordered arrangements of k items out of n. Zero when k > n.
BigCount falling_factorial(int n, int k);

// Number of reachable placeholder configurations with exactly k victim
// placeholders in a PLRU set of the given associativity: 1 when k <= 1 or
// k = assoc, otherwise twice the convolution over the two subtrees.
BigCount lambda_plru(int k, int assoc);

// Lambda of the policy; identically 1 for LRU and FIFO.
BigCount lambda_policy(Policy policy, int k, int assoc);

// States reachable from a filled cache under all victim traces.
CountResult absorb_filled(Policy policy, int assoc, int footprint);

// States reachable from an empty cache:
// sum over k of Lambda(k, A) * fp!/(fp-k)!.
CountResult absorb_empty(Policy policy, int assoc, int footprint);

CountResult absorb(Policy policy, int assoc, int footprint, InitialState initial);

}  // namespace cacheleak
