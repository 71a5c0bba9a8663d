#include "endoscopy/satake_polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace endoscopy {

namespace {

Monomial multiply(const Monomial& a, const Monomial& b)
{
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

void SatakePolynomial::add_term(const Monomial& m, double c)
{
    if (c == 0.0)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0)
            terms_.erase(it);
    }
}

SatakePolynomial SatakePolynomial::constant(double c)
{
    SatakePolynomial p;
    p.add_term({}, c);
    return p;
}

SatakePolynomial SatakePolynomial::variable(int power, int block)
{
    if (power < 1 || block < 0)
        throw std::invalid_argument("trace variable needs power >= 1 and block >= 0");
    SatakePolynomial p;
    p.add_term({{TraceVar{block, power}, 1}}, 1.0);
    return p;
}

int SatakePolynomial::depth() const
{
    int d = 0;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m)
            d = std::max(d, v.power);
    return d;
}

int SatakePolynomial::block_count() const
{
    int b = 0;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m)
            b = std::max(b, v.block + 1);
    return b;
}

bool SatakePolynomial::is_unit() const
{
    return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second == 1.0;
}

SatakePolynomial& SatakePolynomial::operator+=(const SatakePolynomial& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

SatakePolynomial& SatakePolynomial::operator-=(const SatakePolynomial& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

SatakePolynomial& SatakePolynomial::operator*=(double c)
{
    if (c == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_)
        v *= c;
    return *this;
}

SatakePolynomial operator*(const SatakePolynomial& a, const SatakePolynomial& b)
{
    SatakePolynomial out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            out.add_term(multiply(ma, mb), ca * cb);
    return out;
}

double SatakePolynomial::evaluate(std::span<const SemisimpleClass> blocks) const
{
    std::map<TraceVar, double> cache;
    double total = 0.0;
    for (const auto& [m, c] : terms_) {
        double v = c;
        for (const auto& [var, e] : m) {
            if (var.block >= static_cast<int>(blocks.size()))
                throw std::out_of_range("Satake polynomial refers to block " + std::to_string(var.block) +
                                        " but only " + std::to_string(blocks.size()) + " were given");
            auto it = cache.find(var);
            if (it == cache.end())
                it = cache.emplace(var, std_power_sum(blocks[static_cast<std::size_t>(var.block)].angles(), var.power))
                         .first;
            for (int i = 0; i < e; ++i)
                v *= it->second;
        }
        total += v;
    }
    return total;
}

SatakePolynomial SatakePolynomial::restrict_to(const EndoDatum& d) const
{
    if (block_count() > 1)
        throw std::invalid_argument("restrict_to: polynomial already lives on a product");
    std::map<int, SatakePolynomial> image;
    auto image_of = [&](int power) -> const SatakePolynomial& {
        auto it = image.find(power);
        if (it == image.end()) {
            SatakePolynomial s;
            for (int i = 0; i < d.size(); ++i)
                s += variable(power, i);
            it = image.emplace(power, std::move(s)).first;
        }
        return it->second;
    };
    SatakePolynomial out;
    for (const auto& [m, c] : terms_) {
        SatakePolynomial term = constant(c);
        for (const auto& [var, e] : m)
            for (int i = 0; i < e; ++i)
                term = term * image_of(var.power);
        out += term;
    }
    return out;
}

std::string SatakePolynomial::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << c;
        for (const auto& [var, e] : m) {
            os << "*T" << var.power;
            if (var.block != 0)
                os << "_" << var.block;
            if (e != 1)
                os << "^" << e;
        }
    }
    return os.str();
}

namespace {

// Newton: a e_a = sum_{i=1}^a (-1)^{i-1} e_{a-i} p_i, with p_i -> T_{i n}.
std::vector<SatakePolynomial> elementary_in_power_sums(int top, int n)
{
    std::vector<SatakePolynomial> e;
    e.push_back(SatakePolynomial::unit());
    for (int a = 1; a <= top; ++a) {
        SatakePolynomial acc;
        for (int i = 1; i <= a; ++i) {
            auto term = e[static_cast<std::size_t>(a - i)] * SatakePolynomial::variable(i * n);
            acc += (i % 2 == 1 ? 1.0 : -1.0) * term;
        }
        e.push_back(acc * (1.0 / a));
    }
    return e;
}

}  // namespace

SatakePolynomial satake_hr(const RepLabel& r, int n)
{
    if (n < 1)
        throw std::invalid_argument("satake_hr: n must be >= 1");
    switch (r.kind()) {
    case RepLabel::Kind::Std: return SatakePolynomial::variable(n);
    case RepLabel::Kind::LambdaStd: return elementary_in_power_sums(r.degree(), n).back();
    case RepLabel::Kind::ExtSquare: return elementary_in_power_sums(2, n).back();
    case RepLabel::Kind::Fund: {
        auto e = elementary_in_power_sums(r.degree(), n);
        auto out = e.back();
        if (r.degree() >= 2)
            out -= e[static_cast<std::size_t>(r.degree() - 2)];
        return out;
    }
    case RepLabel::Kind::Tensor: return satake_hr(r.left(), n) * satake_hr(r.right(), n);
    }
    return {};
}

}  // namespace endoscopy
