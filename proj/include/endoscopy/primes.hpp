#pragma once

#include <cstdint>
#include <vector>

namespace endoscopy {

/// All primes p <= bound, ascending (sieve of Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint32_t bound);

}  // namespace endoscopy
