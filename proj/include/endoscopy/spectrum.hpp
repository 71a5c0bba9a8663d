#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "endoscopy/endoscopic_data.hpp"
#include "endoscopy/kernels.hpp"
#include "endoscopy/symplectic_chars.hpp"

namespace endoscopy {

/// A finite place of the (degree-one) base field, i.e. a rational prime.
struct Place {
    std::size_t index = 0;  // position among all primes, from 0
    std::uint32_t norm = 0;
    bool ramified = false;
};

struct SpectrumConfig {
    int N = 1;
    std::map<int, int> pool_sizes;  // degree m (even) -> number of simple parameters
    std::uint32_t prime_bound = 1000;
    std::uint64_t seed = 0;
    std::vector<std::uint32_t> ramified;  // primes in the finite set S

    bool operator==(const SpectrumConfig&) const = default;
};

/// A simple generic parameter of degree m: a symplectic-type cuspidal
/// representation of GL(m), modelled by its Satake classes in USp(m) at the
/// unramified places. Two parameters are equivalent iff their labels agree.
struct SimpleParameter {
    std::string label;
    int degree = 0;
    double tau = 0.0;           // carried, not interpreted
    std::vector<double> angles;  // degree/2 angles per unramified slot, slot-major

    int rank() const { return degree / 2; }
    bool operator==(const SimpleParameter&) const = default;
};

/// An immutable pool of simple parameters together with the places they are
/// sampled at. Unramified places are addressed by "slot", their position in
/// the ascending list of unramified primes.
class SpectrumStore {
public:
    SpectrumStore(SpectrumConfig config, std::vector<SimpleParameter> parameters);

    const SpectrumConfig& config() const { return config_; }
    int rank() const { return config_.N; }

    std::span<const Place> places() const { return places_; }
    std::span<const std::uint32_t> unramified_norms() const { return unramified_; }
    std::size_t slot_count() const { return unramified_.size(); }

    /// Number of unramified slots with norm <= bound.
    std::size_t slots_up_to(std::uint32_t bound) const;
    std::optional<std::size_t> slot_of(std::uint32_t norm) const;
    bool is_ramified(std::uint32_t norm) const;

    std::span<const SimpleParameter> parameters() const { return parameters_; }
    const SimpleParameter& parameter(std::size_t i) const { return parameters_.at(i); }

    std::span<const double> satake_angles(std::size_t param, std::size_t slot) const;
    SemisimpleClass satake(std::size_t param, std::size_t slot) const;

    bool operator==(const SpectrumStore& o) const
    {
        return config_ == o.config_ && parameters_ == o.parameters_;
    }

private:
    SpectrumConfig config_;
    std::vector<Place> places_;
    std::vector<std::uint32_t> unramified_;
    std::vector<SimpleParameter> parameters_;
};

/// Draws a pool of simple parameters with Haar-random Satake classes at
/// every unramified prime <= prime_bound. Parameter i of degree m uses RNG
/// stream (m, i), so the draw is reproducible bit for bit from the config and
/// does not change when pools of other degrees are resized.
SpectrumStore generate_spectrum(const SpectrumConfig& config);

/// phi = phi_1 [+] ... [+] phi_k, a set of mutually distinct pool parameters.
struct CuspidalParameter {
    std::vector<std::size_t> components;  // pool indices, ascending
    int N = 0;

    int k() const { return static_cast<int>(components.size()); }
    bool is_simple() const { return components.size() == 1; }
    /// 1/|S_phi| = 2^{1-k}.
    Rational weight() const;
    bool operator==(const CuspidalParameter&) const = default;
};

/// phi_H = phi_1 x ... x phi_k for a datum (H, rho). components[i] sits on
/// block i of the datum, so its degree is datum.parts()[i].
struct StarPrimitiveParameter {
    EndoDatum datum;
    std::vector<std::size_t> components;
    bool operator==(const StarPrimitiveParameter&) const = default;
};

/// Unordered: one element per set of parameters; among equal-degree blocks
/// the components are in ascending pool order. Ordered: every assignment to
/// the blocks (the literal product set, used to compare with per-factor sums).
enum class FactorOrder { Unordered, Ordered };

/// Phi_2(G): all sets of distinct pool parameters of total degree 2N.
std::vector<CuspidalParameter> enumerate_phi2(const SpectrumStore& store, int N);

/// Phi_*prim(H): assignments of mutually distinct pool parameters to the
/// blocks of d with matching degrees.
std::vector<StarPrimitiveParameter> enumerate_star_prim(const SpectrumStore& store, const EndoDatum& d,
                                                        FactorOrder order = FactorOrder::Unordered);

/// rho o phi_H.
CuspidalParameter compose(const StarPrimitiveParameter& p);

/// The unique (datum, phi_H) with compose(phi_H) == phi.
std::pair<EndoDatum, StarPrimitiveParameter> classify(const SpectrumStore& store, const CuspidalParameter& phi);

/// c(phi_w) in Sp(2N) at an unramified slot.
SemisimpleClass local_class(const SpectrumStore& store, const CuspidalParameter& phi, std::size_t slot);

/// Block classes of phi_H at an unramified slot, in block order. Accepts any
/// component tuple (repeated components allowed).
std::vector<SemisimpleClass> local_blocks(const SpectrumStore& store, std::span<const std::size_t> components,
                                          std::size_t slot);

/// "d2.0+d4.1": labels of the components joined in ascending pool order.
std::string parameter_label(const SpectrumStore& store, std::span<const std::size_t> components);

/// Kernel view of a parameter tuple.
kernels::WeightedTuple weighted_tuple(const SpectrumStore& store, std::span<const std::size_t> components,
                                      double weight);

}  // namespace endoscopy
