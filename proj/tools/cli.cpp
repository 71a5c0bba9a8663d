#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <json.hpp>

#include "endoscopy/dimension_data.hpp"
#include "endoscopy/endoscopic_data.hpp"
#include "endoscopy/kernels.hpp"
#include "endoscopy/lfunctions.hpp"
#include "endoscopy/spectrum.hpp"
#include "endoscopy/spectrum_io.hpp"
#include "endoscopy/trace_formula.hpp"

namespace endoscopy::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kModelNote =
    "synthetic tempered spectrum: Satake classes are Haar-random in USp(m) per simple parameter "
    "and stand in for automorphic data";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpectrumOptions {
    int n = 2;
    std::uint64_t seed = 1;
    std::uint32_t prime_bound = 10000;
    std::string pool;
    std::vector<std::uint32_t> ramified{2};
    std::string input;
};

void add_spectrum_options(CLI::App* app, SpectrumOptions& o)
{
    app->add_option("--n", o.n, "rank N of SO(2N+1)")->check(CLI::Range(1, 12));
    app->add_option("--seed", o.seed, "spectrum seed");
    app->add_option("--prime-bound", o.prime_bound, "largest prime carrying Satake data")->check(CLI::Range(100u, 50000000u));
    app->add_option("--pool", o.pool, "simple parameters per degree, e.g. 2:3,4:2 (default 2:3 and 2 of every other degree)");
    app->add_option("--ramified", o.ramified, "primes in S")->delimiter(',');
    app->add_option("--spectrum", o.input, "load a saved spectrum instead of generating one");
}

std::map<int, int> parse_pool(const std::string& text, int N)
{
    std::map<int, int> pool;
    if (text.empty()) {
        for (int m = 2; m <= 2 * N; m += 2)
            pool[m] = m == 2 ? 3 : 2;
        return pool;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw UsageError("--pool: expected degree:count, got '" + item + "'");
        try {
            pool[std::stoi(item.substr(0, colon))] = std::stoi(item.substr(colon + 1));
        } catch (const std::logic_error&) {
            throw UsageError("--pool: expected degree:count, got '" + item + "'");
        }
    }
    return pool;
}

SpectrumStore make_store(const SpectrumOptions& o, std::uint64_t seed_offset = 0)
{
    if (!o.input.empty()) {
        auto store = load_spectrum(o.input);
        return store;
    }
    SpectrumConfig c;
    c.N = o.n;
    c.pool_sizes = parse_pool(o.pool, o.n);
    c.prime_bound = o.prime_bound;
    c.seed = o.seed + seed_offset;
    c.ramified = o.ramified;
    return generate_spectrum(c);
}

std::string num(double v)
{
    return fmt::format("{:.17g}", v);
}

std::vector<double> default_grid(std::uint32_t bound)
{
    std::vector<double> grid;
    for (double x = 100.0; x < bound; x *= 10.0)
        grid.push_back(x);
    grid.push_back(static_cast<double>(bound));
    return grid;
}

std::vector<double> checked_grid(std::vector<double> grid, std::uint32_t bound)
{
    if (grid.empty())
        return default_grid(bound);
    if (!std::is_sorted(grid.begin(), grid.end()) || grid.front() < 2.0)
        throw UsageError("--x-grid: values must be ascending and >= 2");
    if (grid.back() > bound)
        throw UsageError("--x-grid: values must not exceed the prime bound");
    return grid;
}

RepLabel parse_rep(const std::string& name, int N)
{
    try {
        auto r = RepLabel::parse(name);
        r.check_rank(N);
        return r;
    } catch (const std::exception& e) {
        throw UsageError(std::string("--rep: ") + e.what());
    }
}

CuspidalParameter pick_phi(const SpectrumStore& store, const std::vector<std::size_t>& given)
{
    const int N = store.rank();
    if (given.empty()) {
        auto all = enumerate_phi2(store, N);
        if (all.empty())
            throw UsageError("the pool has no cuspidal parameter of degree 2N");
        return all.front();
    }
    CuspidalParameter phi{given, N};
    std::sort(phi.components.begin(), phi.components.end());
    int degree = 0;
    for (std::size_t i = 0; i < phi.components.size(); ++i) {
        if (phi.components[i] >= store.parameters().size())
            throw UsageError("--phi: pool index out of range");
        if (i > 0 && phi.components[i] == phi.components[i - 1])
            throw UsageError("--phi: components must be distinct");
        degree += store.parameter(phi.components[i]).degree;
    }
    if (degree != 2 * N)
        throw UsageError("--phi: degrees must sum to 2N");
    return phi;
}

ordered_json header(const std::string& command, bool spectral)
{
    ordered_json j;
    j["schema"] = kSchema;
    j["command"] = command;
    if (spectral)
        j["model"] = kModelNote;
    return j;
}

void csv_model_line(std::ostream& out)
{
    out << "# model: " << kModelNote << '\n';
}

// ---------------------------------------------------------------- enumerate

int cmd_enumerate(int n, std::ostream& out)
{
    for (const auto& d : enumerate_elliptic(n)) {
        ordered_json j;
        j["schema"] = kSchema;
        j["parts"] = d.parts();
        j["k"] = d.size();
        j["iota"] = d.iota().str();
        out << j.dump() << '\n';
    }
    return kExitOk;
}

// ------------------------------------------------------------------ dimdata

struct DimdataOptions {
    int n = 2;
    std::vector<int> a;
    bool verify_mc = false;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    double sigmas = 3.0;
};

int cmd_dimdata(const DimdataOptions& o, std::ostream& out)
{
    auto indices = o.a;
    if (indices.empty())
        for (int a = 1; a <= o.n; ++a)
            indices.push_back(a);
    for (int a : indices)
        if (a < 1 || a > o.n)
            throw UsageError("--a: indices must lie in [1, N]");

    out << "partition,k";
    for (int a : indices) {
        out << ",a" << a;
        if (o.verify_mc)
            out << ",a" << a << "_mc,a" << a << "_se";
    }
    out << '\n';
    bool ok = true;
    for (const auto& d : enumerate_elliptic(o.n)) {
        out << '"' << d.str() << "\"," << d.size();
        std::vector<McEstimate> mc;
        if (o.verify_mc)
            mc = mc_dim_data_all(d, o.samples, o.seed);
        for (int a : indices) {
            const auto exact = dim_data(d, a);
            out << ',' << exact;
            if (o.verify_mc) {
                const auto& e = mc[static_cast<std::size_t>(a - 1)];
                out << ',' << fmt::format("{:.6f}", e.estimate) << ',' << fmt::format("{:.6f}", e.stderr_);
                if (std::abs(e.estimate - static_cast<double>(exact)) > o.sigmas * e.stderr_)
                    ok = false;
            }
        }
        out << '\n';
    }
    return ok ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------------ recover

int cmd_recover(int n, const std::string& values, std::ostream& out)
{
    std::map<int, std::int64_t> query;
    std::stringstream ss(values);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw UsageError("--values: expected a=m, got '" + item + "'");
        try {
            query[std::stoi(item.substr(0, eq))] = std::stoll(item.substr(eq + 1));
        } catch (const std::logic_error&) {
            throw UsageError("--values: expected a=m, got '" + item + "'");
        }
    }
    auto j = header("recover", false);
    j["N"] = n;
    ordered_json q = ordered_json::object();
    for (const auto& [a, m] : query)
        q[std::to_string(a)] = m;
    j["query"] = q;
    j["indices"] = recovery_indices(n);
    const auto result = recover_partition(n, query);
    int code = kExitOk;
    if (const auto* d = std::get_if<EndoDatum>(&result)) {
        j["status"] = "unique";
        j["partition"] = d->parts();
    } else {
        const auto& rep = std::get<AmbiguityReport>(result);
        j["status"] = rep.matches.empty() ? "none" : "ambiguous";
        ordered_json matches = ordered_json::array();
        for (const auto& m : rep.matches)
            matches.push_back(m.parts());
        j["matches"] = matches;
        code = kExitCheckFailed;
    }
    out << j.dump(2) << '\n';
    return code;
}

// ----------------------------------------------------------------- spectrum

int cmd_spectrum(const SpectrumOptions& o, const std::string& path, bool summary, std::ostream& out)
{
    const auto store = make_store(o);
    if (summary) {
        auto j = header("spectrum", true);
        j["N"] = store.rank();
        j["seed"] = store.config().seed;
        j["prime_bound"] = store.config().prime_bound;
        j["ramified"] = store.config().ramified;
        j["unramified_places"] = store.slot_count();
        ordered_json params = ordered_json::array();
        for (const auto& p : store.parameters())
            params.push_back({{"label", p.label}, {"degree", p.degree}});
        j["parameters"] = params;
        ordered_json phi2 = ordered_json::array();
        for (const auto& phi : enumerate_phi2(store, store.rank()))
            phi2.push_back({{"parameter", parameter_label(store, phi.components)},
                            {"k", phi.k()},
                            {"weight", phi.weight().str()},
                            {"datum", classify(store, phi).first.str()}});
        j["phi2"] = phi2;
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    if (path.empty() || path == "-")
        out << spectrum_to_json(store).dump(1) << '\n';
    else
        save_spectrum(store, path);
    return kExitOk;
}

// ----------------------------------------------------------------------- tf

struct TfOptions {
    SpectrumOptions spectrum;
    std::optional<std::uint64_t> tf_seed;
    int trials = 1;
    double tol = 1e-10;
    std::optional<double> limit_tol;
    std::string rep = "fund2";
    std::vector<double> x_grid;
    std::string format = "csv";
    double s = 1.5;
    double s_imag = 0.0;
    int n_max = 8;
    std::uint32_t series_bound = 1000;
};

std::uint64_t tf_seed(const TfOptions& o, int trial)
{
    return o.tf_seed.value_or(o.spectrum.seed) + static_cast<std::uint64_t>(trial);
}

int cmd_verify_decomp(const TfOptions& o, std::ostream& out)
{
    auto j = header("tf verify-decomp", true);
    ordered_json trials = ordered_json::array();
    bool all = true;
    for (int t = 0; t < o.trials; ++t) {
        const auto store = make_store(o.spectrum, static_cast<std::uint64_t>(t));
        const int N = store.rank();
        const auto f = random_test_function(store, N, tf_seed(o, t));
        auto rep = verify_decomposition(f, store, N);
        rep.tolerance = o.tol * (1.0 + std::abs(rep.lhs));
        rep.passed = rep.abs_diff <= rep.tolerance;
        all = all && rep.passed;
        ordered_json tj;
        tj["spectrum_seed"] = store.config().seed;
        tj["test_function_seed"] = tf_seed(o, t);
        tj["N"] = N;
        tj["s_cusp"] = rep.lhs;
        tj["endoscopic_sum"] = rep.rhs;
        tj["abs_diff"] = rep.abs_diff;
        tj["tolerance"] = rep.tolerance;
        tj["passed"] = rep.passed;
        ordered_json terms = ordered_json::array();
        for (const auto& term : rep.terms)
            terms.push_back({{"datum", term.datum.str()},
                             {"iota", term.iota.str()},
                             {"parameters", term.parameters},
                             {"star_p", term.star_p}});
        tj["terms"] = terms;
        trials.push_back(tj);
    }
    j["trials"] = trials;
    j["passed"] = all;
    out << j.dump(2) << '\n';
    return all ? kExitOk : kExitCheckFailed;
}

int cmd_r_limit(const TfOptions& o, std::ostream& out)
{
    const auto store = make_store(o.spectrum);
    const int N = store.rank();
    const auto r = parse_rep(o.rep, N);
    const auto grid = checked_grid(o.x_grid, store.config().prime_bound);
    const auto f = random_test_function(store, N, tf_seed(o, 0));
    const auto sums = r_limit_partial_sums(f, r, store, N, grid);
    const double prediction = r_limit_prediction(f, r, store, N);
    const double final_error = sums.back().second - prediction;
    const bool ok = !o.limit_tol || std::abs(final_error) <= *o.limit_tol;
    if (o.format == "json") {
        auto j = header("tf r-limit", true);
        j["rep"] = r.name();
        j["prediction"] = prediction;
        ordered_json rows = ordered_json::array();
        for (const auto& [x, v] : sums)
            rows.push_back({{"X", x}, {"estimate", v}, {"error", v - prediction}});
        j["partial_sums"] = rows;
        if (o.limit_tol) {
            j["tolerance"] = *o.limit_tol;
            j["passed"] = ok;
        }
        out << j.dump(2) << '\n';
    } else {
        csv_model_line(out);
        out << "X,estimate,prediction,error\n";
        for (const auto& [x, v] : sums)
            out << num(x) << ',' << num(v) << ',' << num(prediction) << ',' << num(v - prediction) << '\n';
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_r_series(const TfOptions& o, std::ostream& out)
{
    const auto store = make_store(o.spectrum);
    const int N = store.rank();
    const auto r = parse_rep(o.rep, N);
    if (o.n_max < 1)
        throw UsageError("--nmax must be >= 1");
    const auto bound = std::min(o.series_bound, store.config().prime_bound);
    const auto f = random_test_function(store, N, tf_seed(o, 0));
    const auto coeffs = r_series_coefficients(f, r, store, N, bound, o.n_max);
    const std::complex<double> s{o.s, o.s_imag};
    const auto value = coeffs.evaluate(s);
    const double dev = r_series_interchange_error(f, r, store, N, bound, o.n_max);
    const bool ok = dev <= 1e-12;
    auto j = header("tf r-series", true);
    j["rep"] = r.name();
    j["s"] = {o.s, o.s_imag};
    j["n_max"] = o.n_max;
    j["prime_bound"] = bound;
    j["places"] = coeffs.norms.size();
    j["value"] = {value.real(), value.imag()};
    j["interchange_max_rel_deviation"] = dev;
    j["passed"] = ok;
    out << j.dump(2) << '\n';
    return ok ? kExitOk : kExitCheckFailed;
}

// --------------------------------------------------------------------- lfun

struct LfunOptions {
    SpectrumOptions spectrum;
    std::string rep = "std";
    std::vector<std::size_t> phi;
    double s = 2.0;
    double s_imag = 0.0;
    int n_max = 20;
    std::vector<double> x_grid;
    std::optional<double> tol;
};

int cmd_euler(const LfunOptions& o, std::ostream& out)
{
    const auto store = make_store(o.spectrum);
    const auto r = parse_rep(o.rep, store.rank());
    const auto phi = pick_phi(store, o.phi);
    const std::complex<double> s{o.s, o.s_imag};
    csv_model_line(out);
    out << "# parameter: " << parameter_label(store, phi.components) << '\n';
    out << "X,re,im,pole_order\n";
    for (double x : checked_grid(o.x_grid, store.config().prime_bound)) {
        const auto v = partial_L(r, store, phi, static_cast<std::uint32_t>(x), s);
        out << num(x) << ',' << num(v.value.real()) << ',' << num(v.value.imag()) << ',' << v.pole_order << '\n';
    }
    return kExitOk;
}

int cmd_logderiv(const LfunOptions& o, std::ostream& out)
{
    const auto store = make_store(o.spectrum);
    const auto r = parse_rep(o.rep, store.rank());
    const auto phi = pick_phi(store, o.phi);
    const std::complex<double> s{o.s, o.s_imag};
    const double h = 1e-5;
    bool ok = true;
    csv_model_line(out);
    out << "# parameter: " << parameter_label(store, phi.components) << '\n';
    out << "X,series_re,series_im,fd_re,fd_im,abs_diff,F_re,E_re\n";
    for (double x : checked_grid(o.x_grid, store.config().prime_bound)) {
        const auto bound = static_cast<std::uint32_t>(x);
        const auto series = log_deriv_series(r, store, phi, bound, o.n_max);
        const auto v = series.evaluate(s);
        const auto fd = -(log_partial_L(r, store, phi, bound, s + h) - log_partial_L(r, store, phi, bound, s - h)) /
                        (2.0 * h);
        const auto [F, E] = fe_split(series);
        const double diff = std::abs(v - fd);
        if (o.tol && diff > *o.tol)
            ok = false;
        out << num(x) << ',' << num(v.real()) << ',' << num(v.imag()) << ',' << num(fd.real()) << ','
            << num(fd.imag()) << ',' << num(diff) << ',' << num(F.evaluate(s).real()) << ','
            << num(E.evaluate(s).real()) << '\n';
    }
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_residue(const LfunOptions& o, std::ostream& out)
{
    const auto store = make_store(o.spectrum);
    const auto r = parse_rep(o.rep, store.rank());
    const auto phi = pick_phi(store, o.phi);
    const auto [datum, phiH] = classify(store, phi);
    const auto target = trivial_multiplicity(r, datum);
    const auto sums = cesaro_partial_sums(r, store, phiH.components, checked_grid(o.x_grid, store.config().prime_bound));
    csv_model_line(out);
    out << "# parameter: " << parameter_label(store, phi.components) << " on " << datum.str() << '\n';
    out << "X,cesaro,target,error\n";
    for (const auto& [x, v] : sums)
        out << num(x) << ',' << num(v) << ',' << target << ',' << num(v - static_cast<double>(target)) << '\n';
    const bool ok = !o.tol || std::abs(sums.back().second - static_cast<double>(target)) <= *o.tol;
    return ok ? kExitOk : kExitCheckFailed;
}

// ----------------------------------------------------------------- selftest

int cmd_selftest(int n, std::uint64_t seed, std::ostream& out)
{
    bool all = true;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        out << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
        all = all && ok;
    };

    {
        bool ok = true;
        for (const auto& d : enumerate_elliptic(n)) {
            const auto v = dim_data_vector(d);
            for (int a = 1; a <= n; ++a) {
                const auto m = v[static_cast<std::size_t>(a - 1)];
                if ((a == 1 && m != 0) || (a == 2 && m != d.size() - 1) || (a % 2 == 1 && m != 0))
                    ok = false;
            }
        }
        report("dimension-data", ok, fmt::format("{} partitions of {}", enumerate_elliptic(n).size(), 2 * n));
    }
    {
        bool ok = true;
        for (const auto& d : enumerate_elliptic(n)) {
            std::map<int, std::int64_t> q;
            for (int a : recovery_indices(n))
                q[a] = dim_data(d, a);
            const auto r = recover_partition(n, q);
            ok = ok && std::holds_alternative<EndoDatum>(r) && std::get<EndoDatum>(r) == d;
        }
        report("recovery", ok, "round trip over all partitions");
    }

    SpectrumConfig cfg;
    cfg.N = n;
    cfg.pool_sizes = parse_pool("", n);
    cfg.prime_bound = 1000;
    cfg.seed = seed;
    cfg.ramified = {2};
    {
        double worst = 0.0;
        bool ok = true;
        for (int t = 0; t < 3; ++t) {
            auto c = cfg;
            c.seed = seed + static_cast<std::uint64_t>(t);
            const auto store = generate_spectrum(c);
            const auto rep = verify_decomposition(random_test_function(store, n, seed + 100 + t), store, n);
            worst = std::max(worst, rep.abs_diff / (1.0 + std::abs(rep.lhs)));
            ok = ok && rep.passed;
        }
        report("decomposition", ok, fmt::format("max relative gap {:.3e}", worst));
    }
    const auto store = generate_spectrum(cfg);
    {
        bool ok = true;
        for (const auto& phi : enumerate_phi2(store, n))
            ok = ok && verify_lambda2_factorization(store, phi, 1000, {1.5, 0.5}).passed;
        report("factorization", ok, "Lambda^2, r2 + 1 and std blocks per prime");
    }
    {
        const auto f = random_test_function(store, n, seed + 7);
        const double dev = r_series_interchange_error(f, RepLabel::standard(), store, n, 200, 3);
        report("series", dev <= 1e-12, fmt::format("max relative deviation {:.3e}", dev));
    }
    {
        std::vector<kernels::WeightedTuple> tuples;
        for (const auto& phi : enumerate_phi2(store, n))
            tuples.push_back(weighted_tuple(store, phi.components, phi.weight().value()));
        const auto a = kernels::serial::weighted_trace_terms(store.unramified_norms(), tuples, RepLabel::standard(), 1);
        const auto b = kernels::omp::weighted_trace_terms(store.unramified_norms(), tuples, RepLabel::standard(), 1);
        report("kernels", a == b, "serial and OpenMP prime sums identical");
    }
    return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Beyond-endoscopic decomposition toolkit for SO(2N+1)", "endoscopy"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a TOML/INI file (flags take precedence)");

    int enum_n = 1;
    auto* enumerate = app.add_subcommand("enumerate", "elliptic data as JSON lines");
    enumerate->add_option("--n", enum_n, "rank N")->required()->check(CLI::Range(1, 40));

    DimdataOptions dim;
    auto* dimdata = app.add_subcommand("dimdata", "dimension data table (CSV)");
    dimdata->add_option("--n", dim.n, "rank N")->required()->check(CLI::Range(1, 30));
    dimdata->add_option("--a", dim.a, "fundamental indices")->delimiter(',');
    dimdata->add_flag("--verify-mc", dim.verify_mc, "add Monte-Carlo estimates and check them");
    dimdata->add_option("--samples", dim.samples, "Monte-Carlo samples")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
    dimdata->add_option("--seed", dim.seed, "Monte-Carlo seed");
    dimdata->add_option("--sigmas", dim.sigmas, "allowed deviation in standard errors")->check(CLI::PositiveNumber);

    int rec_n = 1;
    std::string rec_values;
    auto* recover = app.add_subcommand("recover", "partition from dimension data");
    recover->add_option("--n", rec_n, "rank N")->required()->check(CLI::Range(1, 30));
    recover->add_option("--values", rec_values, "a=m pairs, e.g. 2=1,4=0")->required();

    SpectrumOptions spec_opts;
    std::string spec_out;
    bool spec_summary = false;
    auto* spectrum = app.add_subcommand("spectrum", "generate and save a synthetic spectrum");
    add_spectrum_options(spectrum, spec_opts);
    spectrum->add_option("--out", spec_out, "output path (default stdout)");
    spectrum->add_flag("--summary", spec_summary, "print parameters and Phi_2 instead of the store");

    TfOptions tf;
    auto* tf_cmd = app.add_subcommand("tf", "trace-formula identities");
    tf_cmd->require_subcommand(1);
    auto* decomp = tf_cmd->add_subcommand("verify-decomp", "check the decomposition identity");
    auto* rlimit = tf_cmd->add_subcommand("r-limit", "partial sums of the r-trace formula");
    auto* rseries = tf_cmd->add_subcommand("r-series", "Dirichlet series of the r-trace formula");
    for (auto* sub : {decomp, rlimit, rseries}) {
        add_spectrum_options(sub, tf.spectrum);
        sub->add_option("--tf-seed", tf.tf_seed, "test-function seed (default: spectrum seed)");
    }
    decomp->add_option("--trials", tf.trials, "spectra seed, seed+1, ...")->check(CLI::Range(1, 100000));
    decomp->add_option("--tol", tf.tol, "relative tolerance")->check(CLI::PositiveNumber);
    rlimit->add_option("--rep", tf.rep, "representation: std, fundA, lambdaA, ext2");
    rlimit->add_option("--x-grid", tf.x_grid, "cutoffs X")->delimiter(',');
    rlimit->add_option("--format", tf.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    rlimit->add_option("--tol", tf.limit_tol, "fail if |estimate - prediction| at the largest X exceeds this")
        ->check(CLI::PositiveNumber);
    rseries->add_option("--rep", tf.rep, "representation");
    rseries->add_option("--s", tf.s, "real part of s");
    rseries->add_option("--s-imag", tf.s_imag, "imaginary part of s");
    rseries->add_option("--nmax", tf.n_max, "largest prime power index");
    rseries->add_option("--series-bound", tf.series_bound, "largest prime in the series");

    LfunOptions lf;
    auto* lfun = app.add_subcommand("lfun", "partial L-functions");
    lfun->require_subcommand(1);
    auto* euler = lfun->add_subcommand("euler", "truncated Euler products");
    auto* logderiv = lfun->add_subcommand("logderiv", "logarithmic derivative series");
    auto* residue = lfun->add_subcommand("residue", "Cesaro residue estimator");
    for (auto* sub : {euler, logderiv, residue}) {
        add_spectrum_options(sub, lf.spectrum);
        sub->add_option("--rep", lf.rep, "representation");
        sub->add_option("--phi", lf.phi, "pool indices of the components (default: first in Phi_2)")->delimiter(',');
        sub->add_option("--x-grid", lf.x_grid, "prime bounds X")->delimiter(',');
    }
    for (auto* sub : {euler, logderiv}) {
        sub->add_option("--s", lf.s, "real part of s");
        sub->add_option("--s-imag", lf.s_imag, "imaginary part of s");
    }
    logderiv->add_option("--nmax", lf.n_max, "largest prime power index");
    logderiv->add_option("--tol", lf.tol, "fail if the series and finite differences differ by more")
        ->check(CLI::PositiveNumber);
    residue->add_option("--tol", lf.tol, "fail if the final estimate misses the target by more")
        ->check(CLI::PositiveNumber);

    int self_n = 2;
    std::uint64_t self_seed = 7;
    auto* selftest = app.add_subcommand("selftest", "quick internal consistency checks");
    selftest->add_option("--n", self_n, "rank N")->check(CLI::Range(1, 6));
    selftest->add_option("--seed", self_seed, "seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*enumerate)
            return cmd_enumerate(enum_n, out);
        if (*dimdata)
            return cmd_dimdata(dim, out);
        if (*recover)
            return cmd_recover(rec_n, rec_values, out);
        if (*spectrum)
            return cmd_spectrum(spec_opts, spec_out, spec_summary, out);
        if (*decomp)
            return cmd_verify_decomp(tf, out);
        if (*rlimit)
            return cmd_r_limit(tf, out);
        if (*rseries)
            return cmd_r_series(tf, out);
        if (*euler)
            return cmd_euler(lf, out);
        if (*logderiv)
            return cmd_logderiv(lf, out);
        if (*residue)
            return cmd_residue(lf, out);
        if (*selftest)
            return cmd_selftest(self_n, self_seed, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

int run(int argc, const char* const* argv)
{
    return run(argc, argv, std::cout, std::cerr);
}

}  // namespace endoscopy::cli
