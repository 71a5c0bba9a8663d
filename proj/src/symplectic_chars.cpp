#include "endoscopy/symplectic_chars.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace endoscopy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::int64_t result = 1;
    for (int i = 1; i <= k; ++i)
        result = result * (n - k + i) / i;
    return result;
}

Weight unit_weight(int n, int j, int sign)
{
    Weight w(static_cast<std::size_t>(n), 0);
    w[static_cast<std::size_t>(j)] = sign;
    return w;
}

// Weights of std: +e_j and -e_j for every j.
std::vector<Weight> std_weights(int n)
{
    std::vector<Weight> ws;
    ws.reserve(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < n; ++j) {
        ws.push_back(unit_weight(n, j, +1));
        ws.push_back(unit_weight(n, j, -1));
    }
    return ws;
}

void add_subsets(const std::vector<Weight>& base, int a, std::size_t start, Weight& acc,
                 WeightMultiset& out)
{
    if (a == 0) {
        ++out[acc];
        return;
    }
    for (std::size_t i = start; i + static_cast<std::size_t>(a) <= base.size(); ++i) {
        for (std::size_t t = 0; t < acc.size(); ++t)
            acc[t] += base[i][t];
        add_subsets(base, a - 1, i + 1, acc, out);
        for (std::size_t t = 0; t < acc.size(); ++t)
            acc[t] -= base[i][t];
    }
}

WeightMultiset lambda_weights(int a, int n)
{
    WeightMultiset out;
    if (a < 0 || a > 2 * n)
        return out;
    Weight acc(static_cast<std::size_t>(n), 0);
    add_subsets(std_weights(n), a, 0, acc, out);
    return out;
}

std::size_t top_level_comma(std::string_view s)
{
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(')
            ++depth;
        else if (s[i] == ')')
            --depth;
        else if (s[i] == ',' && depth == 0)
            return i;
    }
    return std::string_view::npos;
}

int parse_degree(std::string_view digits, std::string_view whole)
{
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw std::invalid_argument("bad representation label: " + std::string(whole));
    return std::stoi(std::string(digits));
}

}  // namespace

double canonical_angle(double theta)
{
    if (!std::isfinite(theta))
        throw std::invalid_argument("eigenvalue angle must be finite");
    double t = std::fmod(theta, kTwoPi);
    if (t < 0)
        t += kTwoPi;
    if (t > std::numbers::pi)
        t = kTwoPi - t;
    return t;
}

SemisimpleClass::SemisimpleClass(std::vector<double> angles) : angles_(std::move(angles))
{
    if (angles_.empty())
        throw std::invalid_argument("SemisimpleClass needs rank n >= 1");
    for (double& t : angles_)
        t = canonical_angle(t);
    std::sort(angles_.begin(), angles_.end());
}

SemisimpleClass SemisimpleClass::identity(int n)
{
    if (n < 1)
        throw std::invalid_argument("SemisimpleClass needs rank n >= 1");
    return SemisimpleClass(std::vector<double>(static_cast<std::size_t>(n), 0.0));
}

SemisimpleClass SemisimpleClass::from_eigenvalues(std::span<const std::complex<double>> eigenvalues,
                                                  double tolerance)
{
    if (eigenvalues.empty() || eigenvalues.size() % 2 != 0)
        throw std::invalid_argument("a symplectic class has an even, nonzero number of eigenvalues");
    std::vector<double> args;
    args.reserve(eigenvalues.size());
    for (const auto& z : eigenvalues) {
        if (std::abs(std::abs(z) - 1.0) > tolerance)
            throw std::invalid_argument("eigenvalue off the unit circle: only tempered classes are supported");
        args.push_back(std::arg(z));
    }
    // Pair each eigenvalue with an unused inverse.
    std::vector<bool> used(args.size(), false);
    std::vector<double> angles;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (used[i])
            continue;
        used[i] = true;
        std::size_t best = args.size();
        double best_gap = tolerance;
        for (std::size_t j = 0; j < args.size(); ++j) {
            if (used[j])
                continue;
            double gap = std::abs(eigenvalues[i] * eigenvalues[j] - 1.0);
            if (gap <= best_gap) {
                best_gap = gap;
                best = j;
            }
        }
        if (best == args.size())
            throw std::invalid_argument("eigenvalue multiset is not closed under inversion");
        used[best] = true;
        angles.push_back(args[i]);
    }
    return SemisimpleClass(std::move(angles));
}

SemisimpleClass SemisimpleClass::power(int m) const
{
    std::vector<double> out(angles_.size());
    for (std::size_t j = 0; j < angles_.size(); ++j)
        out[j] = std::fmod(static_cast<double>(m) * angles_[j], kTwoPi);
    return SemisimpleClass(std::move(out));
}

std::vector<std::complex<double>> SemisimpleClass::eigenvalues() const
{
    std::vector<std::complex<double>> out;
    out.reserve(2 * angles_.size());
    for (double t : angles_)
        out.push_back(std::polar(1.0, t));
    for (double t : angles_)
        out.push_back(std::polar(1.0, -t));
    return out;
}

// ---------------------------------------------------------------------------

RepLabel RepLabel::lambda_std(int a)
{
    if (a < 0)
        throw std::out_of_range("exterior power degree must be nonnegative");
    return RepLabel(Kind::LambdaStd, a);
}

RepLabel RepLabel::fund(int a)
{
    if (a < 1)
        throw std::out_of_range("fundamental representation index must be >= 1");
    return RepLabel(Kind::Fund, a);
}

RepLabel RepLabel::standard() { return RepLabel(Kind::Std, 1); }

RepLabel RepLabel::ext_square() { return RepLabel(Kind::ExtSquare, 2); }

RepLabel RepLabel::tensor(const RepLabel& left, const RepLabel& right)
{
    RepLabel r(Kind::Tensor, left.degree() + right.degree());
    r.left_ = std::make_shared<const RepLabel>(left);
    r.right_ = std::make_shared<const RepLabel>(right);
    return r;
}

RepLabel RepLabel::parse(std::string_view text)
{
    if (text == "std" || text == "r1")
        return standard();
    if (text == "ext2" || text == "ext_square")
        return ext_square();
    if (text == "trivial")
        return lambda_std(0);
    if (text.starts_with("lambda"))
        return lambda_std(parse_degree(text.substr(6), text));
    if (text.starts_with("fund"))
        return fund(parse_degree(text.substr(4), text));
    if (text.starts_with("tensor(") && text.ends_with(")")) {
        auto inner = text.substr(7, text.size() - 8);
        auto comma = top_level_comma(inner);
        if (comma == std::string_view::npos)
            throw std::invalid_argument("bad representation label: " + std::string(text));
        return tensor(parse(inner.substr(0, comma)), parse(inner.substr(comma + 1)));
    }
    throw std::invalid_argument("bad representation label: " + std::string(text));
}

std::string RepLabel::name() const
{
    switch (kind_) {
    case Kind::LambdaStd: return "lambda" + std::to_string(degree_);
    case Kind::Fund: return "fund" + std::to_string(degree_);
    case Kind::Std: return "std";
    case Kind::ExtSquare: return "ext2";
    case Kind::Tensor: return "tensor(" + left_->name() + "," + right_->name() + ")";
    }
    return {};
}

void RepLabel::check_rank(int n) const
{
    switch (kind_) {
    case Kind::Fund:
        if (degree_ > n)
            throw std::out_of_range("fund(" + std::to_string(degree_) + ") is not a fundamental representation of Sp(" +
                                    std::to_string(2 * n) + ")");
        break;
    case Kind::Tensor:
        left_->check_rank(n);
        right_->check_rank(n);
        break;
    default:
        break;
    }
}

std::int64_t RepLabel::dimension(int n) const
{
    check_rank(n);
    switch (kind_) {
    case Kind::LambdaStd: return binomial(2 * n, degree_);
    case Kind::Fund: return binomial(2 * n, degree_) - binomial(2 * n, degree_ - 2);
    case Kind::Std: return 2 * n;
    case Kind::ExtSquare: return binomial(2 * n, 2);
    case Kind::Tensor: return left_->dimension(n) * right_->dimension(n);
    }
    return 0;
}

// ---------------------------------------------------------------------------

void elementary_symmetric(std::span<const double> angles, std::span<double> out)
{
    const std::size_t deg = 2 * angles.size();
    if (out.size() != deg + 1)
        throw std::invalid_argument("elementary_symmetric: output buffer must have size 2n+1");
    std::fill(out.begin(), out.end(), 0.0);
    out[0] = 1.0;
    std::size_t cur = 0;
    for (double t : angles) {
        const double b = 2.0 * std::cos(t);
        // multiply by (1 + b x + x^2), highest degree first
        out[cur + 2] += out[cur];
        out[cur + 1] += b * out[cur] + (cur >= 1 ? out[cur - 1] : 0.0);
        for (std::size_t i = cur; i >= 1; --i)
            out[i] += b * out[i - 1] + (i >= 2 ? out[i - 2] : 0.0);
        cur += 2;
    }
}

std::vector<double> elementary_symmetric(std::span<const double> angles)
{
    std::vector<double> e(2 * angles.size() + 1);
    elementary_symmetric(angles, e);
    return e;
}

double std_power_sum(std::span<const double> angles, int m)
{
    double s = 0.0;
    for (double t : angles)
        s += 2.0 * std::cos(static_cast<double>(m) * t);
    return s;
}

double char_lambda(int a, const SemisimpleClass& c)
{
    if (a < 0 || a > 2 * c.rank())
        return 0.0;
    return elementary_symmetric(c.angles())[static_cast<std::size_t>(a)];
}

double char_fund(int a, const SemisimpleClass& c)
{
    RepLabel::fund(a).check_rank(c.rank());
    auto e = elementary_symmetric(c.angles());
    return e[static_cast<std::size_t>(a)] - (a >= 2 ? e[static_cast<std::size_t>(a - 2)] : 0.0);
}

double character(const RepLabel& r, std::span<const double> angles)
{
    const int n = static_cast<int>(angles.size());
    auto lambda = [&](int a) {
        if (a < 0 || a > 2 * n)
            return 0.0;
        return elementary_symmetric(angles)[static_cast<std::size_t>(a)];
    };
    switch (r.kind()) {
    case RepLabel::Kind::LambdaStd: return lambda(r.degree());
    case RepLabel::Kind::Fund: {
        r.check_rank(n);
        auto e = elementary_symmetric(angles);
        const auto a = static_cast<std::size_t>(r.degree());
        return e[a] - (a >= 2 ? e[a - 2] : 0.0);
    }
    case RepLabel::Kind::Std: return std_power_sum(angles, 1);
    case RepLabel::Kind::ExtSquare: return lambda(2);
    case RepLabel::Kind::Tensor: return character(r.left(), angles) * character(r.right(), angles);
    }
    return 0.0;
}

double trace_power(const RepLabel& r, const SemisimpleClass& c, int m)
{
    return character(r, c.power(m).angles());
}

WeightMultiset rep_weights(const RepLabel& r, int n)
{
    r.check_rank(n);
    switch (r.kind()) {
    case RepLabel::Kind::LambdaStd: return lambda_weights(r.degree(), n);
    case RepLabel::Kind::Std: return lambda_weights(1, n);
    case RepLabel::Kind::ExtSquare: return lambda_weights(2, n);
    case RepLabel::Kind::Fund: {
        auto top = lambda_weights(r.degree(), n);
        for (const auto& [w, mult] : lambda_weights(r.degree() - 2, n)) {
            auto it = top.find(w);
            if (it == top.end() || it->second < mult)
                throw std::logic_error("weight multiset difference went negative");
            it->second -= mult;
            if (it->second == 0)
                top.erase(it);
        }
        return top;
    }
    case RepLabel::Kind::Tensor: {
        WeightMultiset out;
        auto lw = rep_weights(r.left(), n);
        auto rw = rep_weights(r.right(), n);
        for (const auto& [a, ma] : lw) {
            for (const auto& [b, mb] : rw) {
                Weight s(a);
                for (std::size_t t = 0; t < s.size(); ++t)
                    s[t] += b[t];
                out[s] += ma * mb;
            }
        }
        return out;
    }
    }
    return {};
}

std::vector<std::complex<double>> rep_eigenvalues(const RepLabel& r, const SemisimpleClass& c)
{
    std::vector<std::complex<double>> out;
    auto theta = c.angles();
    for (const auto& [w, mult] : rep_weights(r, c.rank())) {
        double phase = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j)
            phase += w[j] * theta[j];
        const auto z = std::polar(1.0, phase);
        for (std::int64_t i = 0; i < mult; ++i)
            out.push_back(z);
    }
    return out;
}

GLClass gl_class(const SemisimpleClass& c) { return c.eigenvalues(); }

GLClass direct_sum(const GLClass& a, const GLClass& b)
{
    GLClass out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

GLClass tensor_class(const GLClass& a, const GLClass& b)
{
    GLClass out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b)
            out.push_back(x * y);
    return out;
}

GLClass exterior_square_class(const GLClass& a)
{
    GLClass out;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            out.push_back(a[i] * a[j]);
    return out;
}

}  // namespace endoscopy
