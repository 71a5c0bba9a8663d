#include "endoscopy/lfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "endoscopy/kernels.hpp"
#include "endoscopy/trace_formula.hpp"

namespace endoscopy {

namespace {

// |1 - z| below this counts as a vanishing Euler factor.
constexpr double kPoleTolerance = 1e-14;

std::complex<double> norm_power(double norm, std::complex<double> s)
{
    return std::exp(-s * std::log(norm));
}

LocalFactorValue factor_from(const std::vector<std::complex<double>>& eigenvalues, double norm,
                             std::complex<double> s)
{
    const auto x = norm_power(norm, s);
    LocalFactorValue out;
    std::complex<double> det = 1.0;
    for (const auto& lambda : eigenvalues) {
        const auto term = 1.0 - lambda * x;
        if (std::abs(term) < kPoleTolerance)
            ++out.pole_order;
        else
            det *= term;
    }
    out.value = 1.0 / det;
    return out;
}

std::vector<double> concat_angles(const SpectrumStore& store, std::span<const std::size_t> comps, std::size_t slot)
{
    std::vector<double> angles;
    for (auto c : comps) {
        auto a = store.satake_angles(c, slot);
        angles.insert(angles.end(), a.begin(), a.end());
    }
    return angles;
}

double max_rel(double current, std::complex<double> a, std::complex<double> b)
{
    return std::max(current, std::abs(a - b) / std::max(1.0, std::abs(a)));
}

}  // namespace

LocalFactorValue LocalLFactor::evaluate(std::complex<double> s) const
{
    return factor_from(eigenvalues, static_cast<double>(norm), s);
}

std::complex<double> LocalLFactor::log_value(std::complex<double> s) const
{
    const auto x = norm_power(static_cast<double>(norm), s);
    std::complex<double> total = 0.0;
    for (const auto& lambda : eigenvalues) {
        const auto term = 1.0 - lambda * x;
        if (std::abs(term) < kPoleTolerance)
            throw std::domain_error("log of an Euler factor at its pole");
        total -= std::log(term);
    }
    return total;
}

LocalFactorValue local_factor(const RepLabel& r, const SemisimpleClass& c, double norm, std::complex<double> s)
{
    return factor_from(rep_eigenvalues(r, c), norm, s);
}

LocalFactorValue partial_L(const RepLabel& r, const SpectrumStore& store, const CuspidalParameter& phi,
                           std::uint32_t prime_bound, std::complex<double> s)
{
    r.check_rank(phi.N);
    LocalFactorValue out;
    std::complex<double> log_total = 0.0;
    const auto slots = store.slots_up_to(prime_bound);
    for (std::size_t slot = 0; slot < slots; ++slot) {
        LocalLFactor lf{store.unramified_norms()[slot], rep_eigenvalues(r, local_class(store, phi, slot))};
        const auto v = lf.evaluate(s);
        out.pole_order += v.pole_order;
        log_total += std::log(v.value);
    }
    out.value = std::exp(log_total);
    return out;
}

std::complex<double> log_partial_L(const RepLabel& r, const SpectrumStore& store, const CuspidalParameter& phi,
                                   std::uint32_t prime_bound, std::complex<double> s)
{
    r.check_rank(phi.N);
    std::complex<double> total = 0.0;
    const auto slots = store.slots_up_to(prime_bound);
    for (std::size_t slot = 0; slot < slots; ++slot) {
        LocalLFactor lf{store.unramified_norms()[slot], rep_eigenvalues(r, local_class(store, phi, slot))};
        total += lf.log_value(s);
    }
    return total;
}

std::complex<double> PartialSeries::evaluate(std::complex<double> s) const
{
    std::complex<double> total = 0.0;
    for (std::size_t w = 0; w < norms.size(); ++w) {
        const double logp = std::log(static_cast<double>(norms[w]));
        for (int n = 1; n <= n_max; ++n) {
            const double c = at(w, n);
            if (c != 0.0)
                total += c * std::exp(-static_cast<double>(n) * s * logp);
        }
    }
    return total;
}

PartialSeries log_deriv_series(const RepLabel& r, const SpectrumStore& store, const CuspidalParameter& phi,
                               std::uint32_t prime_bound, int n_max)
{
    if (n_max < 1)
        throw std::invalid_argument("log_deriv_series: n_max must be >= 1");
    PartialSeries ps;
    ps.n_max = n_max;
    const auto slots = store.slots_up_to(prime_bound);
    const auto norms = store.unramified_norms().first(slots);
    ps.norms.assign(norms.begin(), norms.end());
    ps.coeff.resize(slots * static_cast<std::size_t>(n_max));
    const std::vector<kernels::WeightedTuple> tuple{weighted_tuple(store, phi.components, 1.0)};
    for (int n = 1; n <= n_max; ++n) {
        const auto terms = kernels::weighted_trace_terms(norms, tuple, r, n);
        for (std::size_t w = 0; w < slots; ++w)
            ps.coeff[w * static_cast<std::size_t>(n_max) + static_cast<std::size_t>(n - 1)] = terms[w];
    }
    return ps;
}

std::pair<PartialSeries, PartialSeries> fe_split(const PartialSeries& series)
{
    PartialSeries F = series;
    PartialSeries E = series;
    for (std::size_t w = 0; w < series.norms.size(); ++w) {
        for (int n = 1; n <= series.n_max; ++n) {
            const auto idx = w * static_cast<std::size_t>(series.n_max) + static_cast<std::size_t>(n - 1);
            (n == 1 ? E : F).coeff[idx] = 0.0;
        }
    }
    return {std::move(F), std::move(E)};
}

FactorizationReport verify_lambda2_factorization(const SpectrumStore& store, const CuspidalParameter& phi,
                                                 std::uint32_t prime_bound, std::complex<double> s)
{
    FactorizationReport rep;
    const auto slots = store.slots_up_to(prime_bound);
    rep.places = slots;
    for (std::size_t slot = 0; slot < slots; ++slot) {
        const double norm = store.unramified_norms()[slot];
        std::vector<GLClass> blocks;
        for (auto c : phi.components)
            blocks.push_back(gl_class(store.satake(c, slot)));
        GLClass pi;
        for (const auto& b : blocks)
            pi = direct_sum(pi, b);

        // Lambda^2 of the sum against the block-wise product
        const auto whole = factor_from(exterior_square_class(pi), norm, s).value;
        std::complex<double> parts = 1.0;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            parts *= factor_from(exterior_square_class(blocks[i]), norm, s).value;
            for (std::size_t j = i + 1; j < blocks.size(); ++j)
                parts *= factor_from(tensor_class(blocks[i], blocks[j]), norm, s).value;
        }
        rep.lambda2_block_error = max_rel(rep.lambda2_block_error, whole, parts);

        // Lambda^2 std = r_2 + 1 on the embedded class
        const SemisimpleClass c(concat_angles(store, phi.components, slot));
        const auto ext = local_factor(RepLabel::ext_square(), c, norm, s).value;
        std::complex<double> r2zeta = factor_from({1.0}, norm, s).value;
        if (phi.N >= 2)
            r2zeta *= local_factor(RepLabel::fund(2), c, norm, s).value;
        rep.r2_zeta_error = max_rel(rep.r2_zeta_error, ext, r2zeta);

        // standard factor of the sum
        const auto std_whole = local_factor(RepLabel::standard(), c, norm, s).value;
        std::complex<double> std_parts = 1.0;
        for (const auto& b : blocks)
            std_parts *= factor_from(b, norm, s).value;
        rep.std_block_error = max_rel(rep.std_block_error, std_whole, std_parts);
    }
    rep.passed = rep.lambda2_block_error <= 1e-12 && rep.r2_zeta_error <= 1e-12 && rep.std_block_error <= 1e-12;
    return rep;
}

std::vector<std::pair<double, double>> cesaro_partial_sums(const RepLabel& r, const SpectrumStore& store,
                                                           std::span<const std::size_t> components,
                                                           const std::vector<double>& x_grid)
{
    if (!std::is_sorted(x_grid.begin(), x_grid.end()))
        throw std::invalid_argument("cesaro_partial_sums: X grid must be ascending");
    if (!x_grid.empty() && x_grid.back() > store.config().prime_bound)
        throw std::out_of_range("cesaro_partial_sums: X exceeds the generated prime range");
    const double x_max = x_grid.empty() ? 0.0 : x_grid.back();
    const auto slots = store.slots_up_to(static_cast<std::uint32_t>(x_max));
    const std::vector<kernels::WeightedTuple> tuple{weighted_tuple(store, components, 1.0)};
    const auto terms = kernels::weighted_trace_terms(store.unramified_norms().first(slots), tuple, r, 1);
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

ResidueEstimate residue_estimate(const RepLabel& r, const SpectrumStore& store, const StarPrimitiveParameter& phiH,
                                 std::uint32_t prime_bound)
{
    const auto sums = cesaro_partial_sums(r, store, phiH.components, {static_cast<double>(prime_bound)});
    return {sums.back().second, trivial_multiplicity(r, phiH.datum)};
}

double r_series_interchange_error(const TestFunction& f, const RepLabel& r, const SpectrumStore& store, int N,
                                  std::uint32_t prime_bound, int n_max)
{
    const auto literal = r_series_coefficients(f, r, store, N, prime_bound, n_max);
    std::vector<double> summed(literal.values.size(), 0.0);
    for (const auto& phi : enumerate_phi2(store, N)) {
        const double w = phi.weight().value() * eval_fG(f, store, phi);
        const auto series = log_deriv_series(r, store, phi, prime_bound, n_max);
        for (std::size_t i = 0; i < summed.size(); ++i)
            summed[i] += w * series.coeff[i];
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < summed.size(); ++i)
        worst = std::max(worst, std::abs(literal.values[i] - summed[i]) / std::max(1.0, std::abs(literal.values[i])));
    return worst;
}

}  // namespace endoscopy
