#include "cacheleak/absorption.hpp"

#include <algorithm>
#include <cmath>

namespace cacheleak {

double log2_of(const BigCount& value) {
    if (value <= 0) throw ConfigError("log2 of a non-positive count");
    // Counts at desk scale fit a double; split off the msb for the rest.
    if (value <= BigCount(1) << 1000) return std::log2(value.convert_to<double>());
    const unsigned msb = boost::multiprecision::msb(value);
    const BigCount mantissa = value >> (msb - 52);
    return static_cast<double>(msb - 52) + std::log2(mantissa.convert_to<double>());
}

CountResult make_count(BigCount value) {
    double bits = log2_of(value);
    return CountResult{std::move(value), bits};
}

BigCount falling_factorial(int n, int k) {
    if (n < 0 || k < 0) throw ConfigError("falling_factorial: negative argument");
    if (k > n) return 0;
    BigCount result = 1;
    for (int i = 0; i < k; ++i) result *= n - i;
    return result;
}

BigCount lambda_plru(int k, int assoc) {
    require_valid_assoc(Policy::Plru, assoc);
    if (k < 0 || k > assoc)
        throw ConfigError("lambda_plru: k = " + std::to_string(k) + " out of range 0.." +
                          std::to_string(assoc));
    if (k <= 1 || k == assoc) return 1;
    const int half = assoc / 2;
    BigCount sum = 0;
    // At least one placeholder per subtree, at most half the leaves each.
    const int lo = std::max(1, k - half);
    const int hi = std::min(half, k - 1);
    for (int i = lo; i <= hi; ++i) sum += lambda_plru(i, half) * lambda_plru(k - i, half);
    return 2 * sum;
}

BigCount lambda_policy(Policy policy, int k, int assoc) {
    if (policy == Policy::Plru) return lambda_plru(k, assoc);
    require_valid_assoc(policy, assoc);
    if (k < 0 || k > assoc) throw ConfigError("lambda: k out of range");
    return 1;
}

CountResult absorb_filled(Policy policy, int assoc, int footprint) {
    require_valid_assoc(policy, assoc);
    if (footprint < 0) throw ConfigError("absorb_filled: negative footprint");
    if (footprint == 0) return make_count(1);
    switch (policy) {
        case Policy::Lru:
            if (footprint < assoc) return make_count(falling_factorial(footprint, footprint));
            return make_count(falling_factorial(footprint, assoc));
        case Policy::Fifo:
            if (footprint <= assoc) return make_count(1);
            if (footprint == assoc + 1) return make_count(assoc + 1);
            return make_count(falling_factorial(footprint, assoc));
        case Policy::Plru:
            if (footprint <= assoc) return make_count(BigCount(1) << (footprint - 1));
            return make_count(falling_factorial(footprint, assoc));
    }
    throw ConfigError("absorb_filled: unknown policy");
}

CountResult absorb_empty(Policy policy, int assoc, int footprint) {
    require_valid_assoc(policy, assoc);
    if (footprint < 0) throw ConfigError("absorb_empty: negative footprint");
    BigCount total = 0;
    const int limit = std::min(footprint, assoc);
    for (int k = 0; k <= limit; ++k)
        total += lambda_policy(policy, k, assoc) * falling_factorial(footprint, k);
    return make_count(std::move(total));
}

CountResult absorb(Policy policy, int assoc, int footprint, InitialState initial) {
    return initial == InitialState::Filled ? absorb_filled(policy, assoc, footprint)
                                           : absorb_empty(policy, assoc, footprint);
}

}  // namespace cacheleak
