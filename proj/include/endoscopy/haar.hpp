#pragma once

#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace endoscopy {

/// Samples eigenvalue angles of a Haar-random element of USp(2n).
///
/// The angle density is proportional to
///   prod_{i<j} (cos t_i - cos t_j)^2 * prod_j sin^2 t_j   on [0, pi]^n
/// (Weyl integration formula). Draws are rejection samples against the
/// uniform box. The envelope is the exact maximum of the density, which in
/// x_j = cos t_j is attained at the zeros of the degree-n Legendre polynomial.
class WeylAngleSampler {
public:
    explicit WeylAngleSampler(int n);

    int rank() const { return n_; }

    /// Unnormalized Weyl density at the given angles.
    double density(std::span<const double> angles) const;

    /// Supremum of density() over the box.
    double envelope() const { return envelope_; }

    /// Writes n angles (unsorted) into out. Returns the number of proposals
    /// that were rejected.
    template <class Rng>
    long sample(Rng& rng, std::span<double> out) const
    {
        std::uniform_real_distribution<double> angle(0.0, kPi);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        long rejected = 0;
        for (;;) {
            for (double& t : out)
                t = angle(rng);
            const double f = density(out);
            if (f > envelope_)
                throw std::logic_error("Weyl density exceeded its envelope");
            if (unit(rng) * envelope_ < f)
                return rejected;
            ++rejected;
        }
    }

private:
    static constexpr double kPi = 3.14159265358979323846;
    int n_;
    double envelope_;
};

/// Zeros of the Legendre polynomial P_n in ascending order.
std::vector<double> legendre_zeros(int n);

}  // namespace endoscopy
