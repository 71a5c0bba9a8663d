#include "endoscopy/trace_formula.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "endoscopy/dimension_data.hpp"
#include "endoscopy/kernels.hpp"

namespace endoscopy {

namespace {

double ramified_factor(const TestFunction& f, const std::string& label)
{
    double v = 1.0;
    for (std::uint32_t place : f.S) {
        auto table = f.ramified_values.find(place);
        if (table == f.ramified_values.end())
            continue;
        auto it = table->second.find(label);
        if (it != table->second.end())
            v *= it->second;
    }
    return v;
}

void check_places(const TestFunction& f, const SpectrumStore& store)
{
    for (std::uint32_t s : store.config().ramified) {
        if (!f.S.contains(s))
            throw std::invalid_argument("parameters are ramified at " + std::to_string(s) +
                                        ", which is not in the test function's S");
    }
}

std::size_t slot_for(const SpectrumStore& store, std::uint32_t norm)
{
    auto slot = store.slot_of(norm);
    if (!slot)
        throw std::invalid_argument("spherical component at " + std::to_string(norm) +
                                    ", which is ramified or outside the generated prime range");
    return *slot;
}

double eval_product(const TestFunction& f, const SpectrumStore& store, std::span<const std::size_t> components)
{
    check_places(f, store);
    double v = ramified_factor(f, parameter_label(store, components));
    for (const auto& [norm, poly] : f.local) {
        if (f.S.contains(norm))
            throw std::invalid_argument("place " + std::to_string(norm) + " is both spherical and in S");
        const auto slot = slot_for(store, norm);
        if (f.datum) {
            auto blocks = local_blocks(store, components, slot);
            v *= poly.evaluate(blocks);
        } else {
            std::vector<double> angles;
            for (auto c : components) {
                auto a = store.satake_angles(c, slot);
                angles.insert(angles.end(), a.begin(), a.end());
            }
            v *= poly.evaluate(SemisimpleClass(std::move(angles)));
        }
    }
    return v;
}

double s_cusp_over(const TestFunction& f, const SpectrumStore& store, const std::vector<CuspidalParameter>& phis)
{
    double total = 0.0;
    for (const auto& phi : phis)
        total += phi.weight().value() * eval_fG(f, store, phi);
    return total;
}

// Lambda^a of the block sum on H, expanded block by block.
SatakePolynomial lambda_on_H(int a, int n, const EndoDatum& d)
{
    if (a < 0 || a > 2 * d.rank())
        return {};
    // per-block elementary polynomials e_b^{(i)}, b = 0..m_i
    std::vector<std::vector<SatakePolynomial>> e(static_cast<std::size_t>(d.size()));
    for (int i = 0; i < d.size(); ++i) {
        auto& ei = e[static_cast<std::size_t>(i)];
        ei.push_back(SatakePolynomial::unit());
        for (int b = 1; b <= d.parts()[static_cast<std::size_t>(i)]; ++b) {
            SatakePolynomial acc;
            for (int j = 1; j <= b; ++j)
                acc += (j % 2 == 1 ? 1.0 : -1.0) *
                       (ei[static_cast<std::size_t>(b - j)] * SatakePolynomial::variable(j * n, i));
            ei.push_back(acc * (1.0 / b));
        }
    }
    SatakePolynomial out;
    std::function<void(int, int, SatakePolynomial)> rec = [&](int block, int remaining, SatakePolynomial acc) {
        if (block == d.size()) {
            if (remaining == 0)
                out += acc;
            return;
        }
        const int m = d.parts()[static_cast<std::size_t>(block)];
        for (int b = 0; b <= std::min(m, remaining); ++b)
            rec(block + 1, remaining - b, acc * e[static_cast<std::size_t>(block)][static_cast<std::size_t>(b)]);
    };
    rec(0, a, SatakePolynomial::unit());
    return out;
}

}  // namespace

double eval_fG(const TestFunction& f, const SpectrumStore& store, const CuspidalParameter& phi)
{
    if (f.datum)
        throw std::invalid_argument("eval_fG: test function lives on H = " + f.datum->str());
    return eval_product(f, store, phi.components);
}

double eval_fH(const TestFunction& fH, const SpectrumStore& store, std::span<const std::size_t> components)
{
    if (!fH.datum)
        throw std::invalid_argument("eval_fH: test function lives on G");
    if (static_cast<int>(components.size()) != fH.datum->size())
        throw std::invalid_argument("eval_fH: wrong number of components for " + fH.datum->str());
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (store.parameter(components[i]).degree != fH.datum->parts()[i])
            throw std::invalid_argument("eval_fH: component degree does not match its block");
    }
    return eval_product(fH, store, components);
}

double eval_fH(const TestFunction& fH, const SpectrumStore& store, const StarPrimitiveParameter& phiH)
{
    if (!fH.datum || !(*fH.datum == phiH.datum))
        throw std::invalid_argument("eval_fH: parameter and test function are on different data");
    return eval_fH(fH, store, std::span<const std::size_t>(phiH.components));
}

TestFunction transfer(const TestFunction& f, const EndoDatum& d)
{
    if (f.datum)
        throw std::invalid_argument("transfer: test function already lives on H");
    TestFunction out;
    out.S = f.S;
    out.ramified_values = f.ramified_values;
    out.datum = d;
    for (const auto& [norm, poly] : f.local)
        out.local.emplace(norm, poly.restrict_to(d));
    return out;
}

SatakePolynomial h_r(const RepLabel& r, int n, int N)
{
    r.check_rank(N);
    return satake_hr(r, n);
}

SatakePolynomial h_r_on_H(const RepLabel& r, int n, const EndoDatum& d)
{
    r.check_rank(d.rank());
    switch (r.kind()) {
    case RepLabel::Kind::Std: {
        SatakePolynomial s;
        for (int i = 0; i < d.size(); ++i)
            s += SatakePolynomial::variable(n, i);
        return s;
    }
    case RepLabel::Kind::LambdaStd: return lambda_on_H(r.degree(), n, d);
    case RepLabel::Kind::ExtSquare: return lambda_on_H(2, n, d);
    case RepLabel::Kind::Fund: return lambda_on_H(r.degree(), n, d) - lambda_on_H(r.degree() - 2, n, d);
    case RepLabel::Kind::Tensor: return h_r_on_H(r.left(), n, d) * h_r_on_H(r.right(), n, d);
    }
    return {};
}

TestFunction modify(const TestFunction& f, const RepLabel& r, int n, std::uint32_t w, int N)
{
    if (f.S.contains(w))
        throw std::invalid_argument("modify: place " + std::to_string(w) + " is in S");
    TestFunction out = f;
    const auto h = f.datum ? h_r_on_H(r, n, *f.datum) : h_r(r, n, N);
    auto it = out.local.find(w);
    if (it == out.local.end())
        out.local.emplace(w, h);
    else
        it->second = it->second * h;
    return out;
}

double s_cusp(const TestFunction& f, const SpectrumStore& store, int N)
{
    return s_cusp_over(f, store, enumerate_phi2(store, N));
}

double star_p(const TestFunction& fH, const EndoDatum& d, const SpectrumStore& store, FactorOrder order)
{
    double total = 0.0;
    for (const auto& p : enumerate_star_prim(store, d, order))
        total += eval_fH(fH, store, std::span<const std::size_t>(p.components));
    return total;
}

DecompositionReport verify_decomposition(const TestFunction& f, const SpectrumStore& store, int N)
{
    DecompositionReport rep;
    rep.lhs = s_cusp(f, store, N);
    for (const auto& d : enumerate_elliptic(N)) {
        DecompositionTerm t{d, d.iota(), 0.0, enumerate_star_prim(store, d).size()};
        t.star_p = star_p(transfer(f, d), d, store);
        rep.rhs += t.iota.value() * t.star_p;
        rep.terms.push_back(std::move(t));
    }
    rep.abs_diff = std::abs(rep.lhs - rep.rhs);
    rep.tolerance = 1e-10 * (1.0 + std::abs(rep.lhs));
    rep.passed = rep.abs_diff <= rep.tolerance;
    return rep;
}

std::vector<std::pair<double, double>> r_limit_partial_sums(const TestFunction& f, const RepLabel& r,
                                                            const SpectrumStore& store, int N,
                                                            const std::vector<double>& x_grid)
{
    r.check_rank(N);
    if (!std::is_sorted(x_grid.begin(), x_grid.end()))
        throw std::invalid_argument("r_limit_partial_sums: X grid must be ascending");
    if (!x_grid.empty() && x_grid.back() > store.config().prime_bound)
        throw std::out_of_range("r_limit_partial_sums: X exceeds the generated prime range");

    std::vector<kernels::WeightedTuple> tuples;
    for (const auto& phi : enumerate_phi2(store, N)) {
        const double w = phi.weight().value() * eval_fG(f, store, phi);
        tuples.push_back(weighted_tuple(store, phi.components, w));
    }
    const double x_max = x_grid.empty() ? 0.0 : x_grid.back();
    const auto slots = store.slots_up_to(static_cast<std::uint32_t>(x_max));
    const auto norms = store.unramified_norms().first(slots);
    // Primes in S are skipped: their slots do not exist.
    const auto terms = kernels::weighted_trace_terms(norms, tuples, r, 1);

    std::vector<std::pair<double, double>> out;
    double cumulative = 0.0;
    std::size_t done = 0;
    for (double x : x_grid) {
        const auto upto = store.slots_up_to(static_cast<std::uint32_t>(x));
        cumulative += kernels::pairwise_sum(std::span<const double>(terms).subspan(done, upto - done));
        done = upto;
        out.emplace_back(x, cumulative / x);
    }
    return out;
}

std::int64_t trivial_multiplicity(const RepLabel& r, const EndoDatum& d)
{
    switch (r.kind()) {
    case RepLabel::Kind::Std: return 0;
    case RepLabel::Kind::LambdaStd:
        return r.degree() > 2 * d.rank() ? 0 : mult_trivial_lambda(d, r.degree());
    case RepLabel::Kind::ExtSquare: return mult_trivial_lambda(d, 2);
    case RepLabel::Kind::Fund: return dim_data(d, r.degree());
    case RepLabel::Kind::Tensor: break;
    }
    throw std::invalid_argument("trivial multiplicity of " + r.name() + " is not implemented");
}

double r_limit_prediction(const TestFunction& f, const RepLabel& r, const SpectrumStore& store, int N)
{
    double total = 0.0;
    for (const auto& d : enumerate_elliptic(N)) {
        const auto m = trivial_multiplicity(r, d);
        if (m == 0)
            continue;
        total += d.iota().value() * static_cast<double>(m) * star_p(transfer(f, d), d, store);
    }
    return total;
}

std::complex<double> DirichletCoefficients::evaluate(std::complex<double> s) const
{
    std::complex<double> total = 0.0;
    for (std::size_t w = 0; w < norms.size(); ++w) {
        const double logp = std::log(static_cast<double>(norms[w]));
        for (int n = 1; n <= n_max; ++n)
            total += at(w, n) * std::exp(-static_cast<double>(n) * s * logp);
    }
    return total;
}

DirichletCoefficients r_series_coefficients(const TestFunction& f, const RepLabel& r, const SpectrumStore& store,
                                            int N, std::uint32_t prime_bound, int n_max)
{
    r.check_rank(N);
    if (n_max < 1)
        throw std::invalid_argument("r_series: n_max must be >= 1");
    if (prime_bound > store.config().prime_bound)
        throw std::out_of_range("r_series: prime bound exceeds the generated prime range");
    const auto phis = enumerate_phi2(store, N);
    DirichletCoefficients c;
    c.n_max = n_max;
    const auto slots = store.slots_up_to(prime_bound);
    const auto norms = store.unramified_norms().first(slots);
    c.norms.assign(norms.begin(), norms.end());
    c.values.resize(slots * static_cast<std::size_t>(n_max));
    for (std::size_t w = 0; w < slots; ++w) {
        const double logp = std::log(static_cast<double>(c.norms[w]));
        for (int n = 1; n <= n_max; ++n)
            c.values[w * static_cast<std::size_t>(n_max) + static_cast<std::size_t>(n - 1)] =
                logp * s_cusp_over(modify(f, r, n, c.norms[w], N), store, phis);
    }
    return c;
}

std::complex<double> r_series(const TestFunction& f, const RepLabel& r, const SpectrumStore& store, int N,
                              std::complex<double> s, int n_max)
{
    return r_series_coefficients(f, r, store, N, store.config().prime_bound, n_max).evaluate(s);
}

TestFunction random_test_function(const SpectrumStore& store, int N, std::uint64_t seed, int spherical_places)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> positive(0.5, 1.5);
    TestFunction f;
    for (std::uint32_t s : store.config().ramified)
        f.S.insert(s);
    const auto norms = store.unramified_norms();
    for (int i = 0; i < spherical_places && static_cast<std::size_t>(i) < norms.size(); ++i) {
        using P = SatakePolynomial;
        P poly = P::constant(1.0 + coeff(rng)) + coeff(rng) * P::variable(1) + coeff(rng) * P::variable(2) +
                 coeff(rng) * P::variable(1) * P::variable(1) + coeff(rng) * P::variable(3) +
                 coeff(rng) * P::variable(1) * P::variable(2);
        f.local.emplace(norms[static_cast<std::size_t>(i)], std::move(poly));
    }
    for (std::uint32_t s : f.S) {
        auto& table = f.ramified_values[s];
        for (const auto& phi : enumerate_phi2(store, N))
            table[parameter_label(store, phi.components)] = positive(rng);
    }
    return f;
}

}  // namespace endoscopy
