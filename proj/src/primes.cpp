#include "endoscopy/primes.hpp"

namespace endoscopy {

std::vector<std::uint32_t> primes_up_to(std::uint32_t bound)
{
    std::vector<std::uint32_t> out;
    if (bound < 2)
        return out;
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    for (std::uint64_t p = 2; p <= bound; ++p) {
        if (composite[p])
            continue;
        out.push_back(static_cast<std::uint32_t>(p));
        for (std::uint64_t q = p * p; q <= bound; q += p)
            composite[q] = true;
    }
    return out;
}

}  // namespace endoscopy
