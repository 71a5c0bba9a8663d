#include "endoscopy/endoscopic_data.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace endoscopy {

Rational Rational::make(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const auto g = std::gcd(num, den);
    return Rational{num / (g == 0 ? 1 : g), den / (g == 0 ? 1 : g)};
}

std::string Rational::str() const
{
    if (den == 1)
        return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

EndoDatum::EndoDatum(std::vector<int> parts) : parts_(std::move(parts))
{
    if (parts_.empty())
        throw std::invalid_argument("an endoscopic datum needs at least one block");
    for (int m : parts_) {
        if (m <= 0 || m % 2 != 0)
            throw std::invalid_argument("block sizes m_i must be positive and even");
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
    rank_ = std::accumulate(parts_.begin(), parts_.end(), 0) / 2;
    if (parts_.size() > 62)
        throw std::out_of_range("too many blocks for an exact iota");
}

Rational EndoDatum::iota() const
{
    return Rational::make(1, std::int64_t{1} << (parts_.size() - 1));
}

std::string EndoDatum::str() const
{
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(parts_[i]);
    }
    return s + "]";
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        cur.push_back(part);
        partitions_rec(remaining - part, part, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::vector<int>> integer_partitions(int n)
{
    std::vector<std::vector<int>> out;
    if (n < 0)
        return out;
    std::vector<int> cur;
    partitions_rec(n, n, cur, out);
    return out;
}

std::vector<EndoDatum> enumerate_elliptic(int N)
{
    if (N < 1)
        throw std::invalid_argument("enumerate_elliptic: N must be >= 1");
    std::vector<EndoDatum> out;
    for (auto p : integer_partitions(N)) {
        for (int& x : p)
            x *= 2;
        out.emplace_back(std::move(p));
    }
    return out;
}

SemisimpleClass embed_class(const EndoDatum& d, std::span<const SemisimpleClass> blocks)
{
    if (static_cast<int>(blocks.size()) != d.size())
        throw std::invalid_argument("embed_class: expected " + std::to_string(d.size()) + " blocks, got " +
                                    std::to_string(blocks.size()));
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(d.rank()));
    for (int i = 0; i < d.size(); ++i) {
        const auto& b = blocks[static_cast<std::size_t>(i)];
        if (b.rank() != d.block_rank(i))
            throw std::invalid_argument("embed_class: block " + std::to_string(i) + " has rank " +
                                        std::to_string(b.rank()) + ", datum needs " +
                                        std::to_string(d.block_rank(i)));
        angles.insert(angles.end(), b.angles().begin(), b.angles().end());
    }
    return SemisimpleClass(std::move(angles));
}

}  // namespace endoscopy
