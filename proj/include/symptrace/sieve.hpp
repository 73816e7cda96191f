#pragma once

#include <cstdint>
#include <vector>

#include "symptrace/fp.hpp"

namespace symptrace {

/// All primes <= x (odd-only sieve of Eratosthenes), x <= 10^8.
inline std::vector<std::uint64_t> sieve_primes(std::uint64_t x) {
    if (x > 100'000'000) throw BudgetError("sieve budget: x <= 10^8");
    std::vector<std::uint64_t> out;
    if (x < 2) return out;
    out.push_back(2);
    const std::uint64_t half = (x - 1) / 2;  // index i stands for 2i + 1, i >= 1
    std::vector<bool> composite(half + 1, false);
    for (std::uint64_t i = 1; i <= half; ++i) {
        if (composite[i]) continue;
        const std::uint64_t p = 2 * i + 1;
        out.push_back(p);
        for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p) composite[j] = true;
    }
    return out;
}

inline std::uint64_t prime_pi(std::uint64_t x) { return sieve_primes(x).size(); }

}  // namespace symptrace
