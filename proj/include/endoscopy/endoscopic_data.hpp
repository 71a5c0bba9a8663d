#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "endoscopy/symplectic_chars.hpp"

namespace endoscopy {

/// Exact nonnegative rational, kept in lowest terms.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t num, std::int64_t den);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
    Rational operator*(const Rational& o) const { return make(num * o.num, den * o.den); }
    bool operator==(const Rational&) const = default;
};

/// An elliptic star-beyond-endoscopic datum (H, rho) of G = SO(2N+1),
/// H = SO(m_1+1) x ... x SO(m_k+1). Equivalence classes are determined by the
/// unordered partition 2N = m_1 + ... + m_k into even parts, so that is all
/// this type stores (parts sorted descending). The dual embedding rho is the
/// block-diagonal inclusion Sp(m_1) x ... x Sp(m_k) -> Sp(2N).
class EndoDatum {
public:
    explicit EndoDatum(std::vector<int> parts);

    int rank() const { return rank_; }
    int size() const { return static_cast<int>(parts_.size()); }
    std::span<const int> parts() const { return parts_; }

    /// m_i / 2, the rank of the i-th dual block Sp(m_i).
    int block_rank(int i) const { return parts_[static_cast<std::size_t>(i)] / 2; }

    /// iota(G, H) = |S_rho / Z(G^)|^{-1} = 2^{1-k}.
    Rational iota() const;

    /// "[4,2,2]"
    std::string str() const;

    auto operator<=>(const EndoDatum& o) const { return parts_ <=> o.parts_; }
    bool operator==(const EndoDatum& o) const { return parts_ == o.parts_; }

private:
    std::vector<int> parts_;
    int rank_ = 0;
};

/// Partitions of n in reverse lexicographic order, parts descending.
std::vector<std::vector<int>> integer_partitions(int n);

/// Every equivalence class of elliptic data of SO(2N+1), starting with [2N].
/// There are p(N) of them. Throws std::invalid_argument for N < 1.
std::vector<EndoDatum> enumerate_elliptic(int N);

inline Rational iota(const EndoDatum& d) { return d.iota(); }

/// Image under rho of a tuple of block classes (block i of rank m_i/2).
/// Throws std::invalid_argument on a size mismatch.
SemisimpleClass embed_class(const EndoDatum& d, std::span<const SemisimpleClass> blocks);

}  // namespace endoscopy
