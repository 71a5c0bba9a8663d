#include "endoscopy/spectrum.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "endoscopy/primes.hpp"

namespace endoscopy {

SpectrumStore::SpectrumStore(SpectrumConfig config, std::vector<SimpleParameter> parameters)
    : config_(std::move(config)), parameters_(std::move(parameters))
{
    if (config_.N < 1)
        throw std::invalid_argument("spectrum rank N must be >= 1");
    std::sort(config_.ramified.begin(), config_.ramified.end());
    config_.ramified.erase(std::unique(config_.ramified.begin(), config_.ramified.end()), config_.ramified.end());

    const auto primes = primes_up_to(config_.prime_bound);
    for (std::uint32_t s : config_.ramified) {
        if (!std::binary_search(primes.begin(), primes.end(), s))
            throw std::invalid_argument("ramified place " + std::to_string(s) + " is not a prime <= prime bound");
    }
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const bool ram = std::binary_search(config_.ramified.begin(), config_.ramified.end(), primes[i]);
        places_.push_back({i, primes[i], ram});
        if (!ram)
            unramified_.push_back(primes[i]);
    }
    for (const auto& p : parameters_) {
        if (p.degree <= 0 || p.degree % 2 != 0)
            throw std::invalid_argument("parameter " + p.label + " has invalid degree " + std::to_string(p.degree));
        if (p.angles.size() != unramified_.size() * static_cast<std::size_t>(p.rank()))
            throw std::invalid_argument("parameter " + p.label + " does not carry one Satake class per unramified place");
    }
}

std::size_t SpectrumStore::slots_up_to(std::uint32_t bound) const
{
    return static_cast<std::size_t>(std::upper_bound(unramified_.begin(), unramified_.end(), bound) -
                                    unramified_.begin());
}

std::optional<std::size_t> SpectrumStore::slot_of(std::uint32_t norm) const
{
    auto it = std::lower_bound(unramified_.begin(), unramified_.end(), norm);
    if (it == unramified_.end() || *it != norm)
        return std::nullopt;
    return static_cast<std::size_t>(it - unramified_.begin());
}

bool SpectrumStore::is_ramified(std::uint32_t norm) const
{
    return std::binary_search(config_.ramified.begin(), config_.ramified.end(), norm);
}

std::span<const double> SpectrumStore::satake_angles(std::size_t param, std::size_t slot) const
{
    const auto& p = parameters_.at(param);
    const auto n = static_cast<std::size_t>(p.rank());
    if (slot >= unramified_.size())
        throw std::out_of_range("Satake slot beyond the generated prime range");
    return std::span<const double>(p.angles).subspan(slot * n, n);
}

SemisimpleClass SpectrumStore::satake(std::size_t param, std::size_t slot) const
{
    auto a = satake_angles(param, slot);
    return SemisimpleClass(std::vector<double>(a.begin(), a.end()));
}

SpectrumStore generate_spectrum(const SpectrumConfig& config)
{
    if (config.prime_bound < 100)
        throw std::invalid_argument("prime bound must be >= 100");
    SpectrumStore skeleton(config, {});
    const std::size_t slots = skeleton.slot_count();
    std::vector<SimpleParameter> params;
    for (const auto& [degree, count] : config.pool_sizes) {
        if (degree <= 0 || degree % 2 != 0)
            throw std::invalid_argument("pool degree " + std::to_string(degree) + " is not positive and even");
        if (count < 0)
            throw std::invalid_argument("pool size must be nonnegative");
        for (int i = 0; i < count; ++i) {
            SimpleParameter p;
            p.label = "d" + std::to_string(degree) + "." + std::to_string(i);
            p.degree = degree;
            p.angles.resize(slots * static_cast<std::size_t>(degree / 2));
            const std::uint64_t stream = (static_cast<std::uint64_t>(degree) << 32) | static_cast<std::uint32_t>(i);
            kernels::fill_haar_angles(degree / 2, config.seed, stream, p.angles);
            // canonical Weyl representative per slot
            const auto n = static_cast<std::size_t>(degree / 2);
            for (std::size_t s = 0; s < slots; ++s)
                std::sort(p.angles.begin() + static_cast<long>(s * n), p.angles.begin() + static_cast<long>((s + 1) * n));
            params.push_back(std::move(p));
        }
    }
    return SpectrumStore(config, std::move(params));
}

Rational CuspidalParameter::weight() const
{
    return Rational::make(1, std::int64_t{1} << (components.size() - 1));
}

std::vector<CuspidalParameter> enumerate_phi2(const SpectrumStore& store, int N)
{
    std::vector<CuspidalParameter> out;
    const auto params = store.parameters();
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int remaining) {
        if (remaining == 0) {
            out.push_back({cur, N});
            return;
        }
        for (std::size_t i = start; i < params.size(); ++i) {
            if (params[i].degree > remaining)
                continue;
            cur.push_back(i);
            rec(i + 1, remaining - params[i].degree);
            cur.pop_back();
        }
    };
    if (N >= 1)
        rec(0, 2 * N);
    return out;
}

namespace {

// Component order used for unordered star-primitive parameters.
void canonical_block_order(const SpectrumStore& store, std::vector<std::size_t>& comps)
{
    std::sort(comps.begin(), comps.end(), [&](std::size_t a, std::size_t b) {
        const int da = store.parameter(a).degree;
        const int db = store.parameter(b).degree;
        return da != db ? da > db : a < b;
    });
}

}  // namespace

std::vector<StarPrimitiveParameter> enumerate_star_prim(const SpectrumStore& store, const EndoDatum& d,
                                                        FactorOrder order)
{
    std::vector<StarPrimitiveParameter> out;
    const auto parts = d.parts();
    const auto params = store.parameters();
    std::vector<std::size_t> cur;
    std::vector<bool> used(params.size(), false);
    std::function<void(std::size_t)> rec = [&](std::size_t block) {
        if (block == parts.size()) {
            out.push_back({d, cur});
            return;
        }
        // Unordered: within a run of equal parts, indices strictly increase.
        std::size_t start = 0;
        if (order == FactorOrder::Unordered && block > 0 && parts[block] == parts[block - 1])
            start = cur.back() + 1;
        for (std::size_t i = start; i < params.size(); ++i) {
            if (used[i] || params[i].degree != parts[block])
                continue;
            used[i] = true;
            cur.push_back(i);
            rec(block + 1);
            cur.pop_back();
            used[i] = false;
        }
    };
    rec(0);
    return out;
}

CuspidalParameter compose(const StarPrimitiveParameter& p)
{
    CuspidalParameter phi{p.components, p.datum.rank()};
    std::sort(phi.components.begin(), phi.components.end());
    if (std::adjacent_find(phi.components.begin(), phi.components.end()) != phi.components.end())
        throw std::invalid_argument("compose: components of a star-primitive parameter must be distinct");
    return phi;
}

std::pair<EndoDatum, StarPrimitiveParameter> classify(const SpectrumStore& store, const CuspidalParameter& phi)
{
    std::vector<int> degrees;
    for (auto c : phi.components)
        degrees.push_back(store.parameter(c).degree);
    EndoDatum d(degrees);
    std::vector<std::size_t> comps = phi.components;
    canonical_block_order(store, comps);
    return {d, StarPrimitiveParameter{d, std::move(comps)}};
}

std::vector<SemisimpleClass> local_blocks(const SpectrumStore& store, std::span<const std::size_t> components,
                                          std::size_t slot)
{
    std::vector<SemisimpleClass> out;
    out.reserve(components.size());
    for (auto c : components)
        out.push_back(store.satake(c, slot));
    return out;
}

SemisimpleClass local_class(const SpectrumStore& store, const CuspidalParameter& phi, std::size_t slot)
{
    std::vector<double> angles;
    for (auto c : phi.components) {
        auto a = store.satake_angles(c, slot);
        angles.insert(angles.end(), a.begin(), a.end());
    }
    return SemisimpleClass(std::move(angles));
}

std::string parameter_label(const SpectrumStore& store, std::span<const std::size_t> components)
{
    std::vector<std::size_t> sorted(components.begin(), components.end());
    std::sort(sorted.begin(), sorted.end());
    std::string s;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i)
            s += "+";
        s += store.parameter(sorted[i]).label;
    }
    return s;
}

kernels::WeightedTuple weighted_tuple(const SpectrumStore& store, std::span<const std::size_t> components,
                                      double weight)
{
    kernels::WeightedTuple t;
    t.weight = weight;
    for (auto c : components) {
        const auto& p = store.parameter(c);
        t.blocks.push_back({std::span<const double>(p.angles), p.rank()});
    }
    return t;
}

}  // namespace endoscopy
