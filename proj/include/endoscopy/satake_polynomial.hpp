#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "endoscopy/endoscopic_data.hpp"
#include "endoscopy/symplectic_chars.hpp"

namespace endoscopy {

/// Formal variable T_power^{(block)}: it evaluates to tr(std(b^power)) on
/// the class b sitting in the given block. Test functions on G use block 0
/// only; their transfers to H = prod SO(m_i+1) use one block per factor.
struct TraceVar {
    int block = 0;
    int power = 1;
    auto operator<=>(const TraceVar&) const = default;
};

/// Sorted (variable, exponent) pairs with positive exponents.
using Monomial = std::vector<std::pair<TraceVar, int>>;

/// Spherical test function on the Satake side: a Weyl-invariant polynomial
/// written in the trace-of-power variables.
class SatakePolynomial {
public:
    SatakePolynomial() = default;

    static SatakePolynomial constant(double c);
    static SatakePolynomial unit() { return constant(1.0); }
    static SatakePolynomial variable(int power, int block = 0);

    const std::map<Monomial, double>& terms() const { return terms_; }

    /// Largest power m of any T_m appearing.
    int depth() const;
    /// 1 + largest block index appearing (0 for a constant).
    int block_count() const;
    bool is_unit() const;

    SatakePolynomial& operator+=(const SatakePolynomial& o);
    SatakePolynomial& operator-=(const SatakePolynomial& o);
    SatakePolynomial& operator*=(double c);
    friend SatakePolynomial operator+(SatakePolynomial a, const SatakePolynomial& b) { return a += b; }
    friend SatakePolynomial operator-(SatakePolynomial a, const SatakePolynomial& b) { return a -= b; }
    friend SatakePolynomial operator*(SatakePolynomial a, double c) { return a *= c; }
    friend SatakePolynomial operator*(double c, SatakePolynomial a) { return a *= c; }
    friend SatakePolynomial operator*(const SatakePolynomial& a, const SatakePolynomial& b);

    /// Value at a tuple of block classes.
    double evaluate(std::span<const SemisimpleClass> blocks) const;
    double evaluate(const SemisimpleClass& c) const { return evaluate(std::span<const SemisimpleClass>(&c, 1)); }

    /// The homomorphism b for the datum d: substitutes
    /// T_m -> T_m^{(0)} + ... + T_m^{(k-1)}. Requires a one-block polynomial.
    SatakePolynomial restrict_to(const EndoDatum& d) const;

    std::string str() const;

    bool operator==(const SatakePolynomial&) const = default;

private:
    void add_term(const Monomial& m, double c);

    std::map<Monomial, double> terms_;
};

/// The polynomial whose value at every class c is tr(r(c^n)) (its Satake
/// transform is the function h^r_w with index n). Exterior powers are
/// expanded in power sums by Newton's identities with p_i -> T_{i n}.
SatakePolynomial satake_hr(const RepLabel& r, int n);

}  // namespace endoscopy
