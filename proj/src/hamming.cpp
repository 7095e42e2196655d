#include "hamperc/hamming.hpp"

#include "hamperc/errors.hpp"
#include "hamperc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hamperc {

HammingSpace::HammingSpace(int n, int k)
    : HammingSpace(n >= 1 && n <= 4096 ? std::vector<int>(n, k) : std::vector<int>{})
{
}

HammingSpace::HammingSpace(std::vector<int> const& radices) : n_(static_cast<int>(radices.size()))
{
    if (n_ < 1 || n_ > 4096)
        throw InputDomainError("Hamming space needs 1 <= n <= 4096");
    k_ = radices.front();
    tag_ = 0xcbf29ce484222325ULL;
    for (int r : radices)
    {
        if (r < 2)
            throw InputDomainError("Hamming space needs every base order k >= 2");
        if (r != k_)
            k_ = 0;
        tag_ = SplitMix64::mix(tag_ ^ static_cast<std::uint64_t>(r));
    }
    binary_ = k_ == 2;
    for (int i = 0; i < n_ && i <= max_packed_dim; ++i)
        radix_[i] = radices[i];
    std::uint64_t const cap = std::uint64_t(1) << 63;
    std::uint64_t w = 1;
    packable_ = n_ <= max_packed_dim;
    for (int i = 0; i < n_ && packable_; ++i)
    {
        weight_[i] = w;
        if (w > cap / std::uint64_t(radices[i]))
            packable_ = false;
        else
            w *= radices[i];
    }
    if (packable_)
        size_ = w;
    if (!uniform())
        radices_.assign(radices.begin(), radices.end());
    else
        radices_.assign(1, k_);
}

int HammingSpace::k() const
{
    if (k_ == 0)
        throw InputDomainError("operation needs a uniform base order k");
    return k_;
}

BigCount HammingSpace::vertex_count() const
{
    if (uniform())
        return big_pow(k_, n_);
    BigCount c = 1;
    for (int r : radices_)
        c *= r;
    return c;
}

std::uint64_t HammingSpace::degree() const
{
    if (uniform())
        return std::uint64_t(n_) * (k_ - 1);
    std::uint64_t d = 0;
    for (int r : radices_)
        d += r - 1;
    return d;
}

std::string HammingSpace::name() const
{
    if (uniform())
        return "K_" + std::to_string(k_) + "^" + std::to_string(n_);
    std::string out;
    for (std::size_t i = 0; i < radices_.size(); ++i)
        out += (i ? "xK_" : "K_") + std::to_string(radices_[i]);
    return out;
}

std::uint64_t HammingSpace::size() const
{
    if (!packable_)
        throw CapabilityError("k^n exceeds 2^63; vertices cannot be packed");
    return size_;
}

void HammingSpace::require_valid(Vertex v) const
{
    if (!valid(v))
        throw InputDomainError("vertex " + std::to_string(v) + " is not in " + name());
}

Vertex HammingSpace::encode(std::vector<int> const& digits) const
{
    size();
    if (static_cast<int>(digits.size()) != n_)
        throw InputDomainError("vertex has " + std::to_string(digits.size())
                               + " digits, expected " + std::to_string(n_));
    Vertex v = 0;
    for (int i = 0; i < n_; ++i)
    {
        if (digits[i] < 0 || digits[i] >= radix_[i])
            throw InputDomainError("digit out of range [0, k-1]");
        v += weight_[i] * digits[i];
    }
    return v;
}

std::vector<int> HammingSpace::decode(Vertex v) const
{
    require_valid(v);
    std::vector<int> out(n_);
    for (int i = 0; i < n_; ++i)
        out[i] = digit(v, i);
    return out;
}

Vertex HammingSpace::parse(std::string const& text) const
{
    std::vector<int> digits;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        try
        {
            std::size_t used = 0;
            digits.push_back(std::stoi(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos)
                throw std::invalid_argument(item);
        }
        catch (std::logic_error const&)
        {
            throw InputDomainError("bad vertex syntax: '" + text + "'");
        }
    }
    return encode(digits);
}

std::string HammingSpace::format(Vertex v) const
{
    std::string out;
    for (int i = 0; i < n_; ++i)
    {
        if (i)
            out += ',';
        out += std::to_string(digit(v, i));
    }
    return out;
}

InfectionConfig::InfectionConfig(HammingSpace s, std::vector<Vertex> vs)
    : space(s), infected(std::move(vs))
{
    for (Vertex v : infected)
        space.require_valid(v);
    std::sort(infected.begin(), infected.end());
    infected.erase(std::unique(infected.begin(), infected.end()), infected.end());
}

bool InfectionConfig::contains(Vertex v) const
{
    return std::binary_search(infected.begin(), infected.end(), v);
}

std::vector<Vertex> neighbors(HammingSpace const& space, Vertex v)
{
    space.require_valid(v);
    std::vector<Vertex> out;
    out.reserve(space.degree());
    for_each_neighbor(space, v, [&](Vertex u) { out.push_back(u); });
    return out;
}

int vertex_distance(HammingSpace const& space, Vertex u, Vertex v)
{
    space.require_valid(u);
    space.require_valid(v);
    if (space.binary())
        return __builtin_popcountll(u ^ v);
    int d = 0;
    for (int i = 0; i < space.n(); ++i)
        d += space.digit(u, i) != space.digit(v, i);
    return d;
}

InfectionConfig sample_infected(HammingSpace const& space, double p, std::uint64_t seed)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw InputDomainError("p must lie in [0, 1]");
    std::uint64_t const total = space.size();
    std::vector<Vertex> picked;
    if (p == 1.0)
    {
        picked.resize(total);
        for (std::uint64_t v = 0; v < total; ++v)
            picked[v] = v;
    }
    else if (p > 0.0)
    {
        // Gap before the next success is Geometric(p) on {0, 1, ...}.
        SplitMix64 gen(seed);
        double const log_q = std::log1p(-p);
        std::uint64_t pos = 0;
        while (true)
        {
            double gap = std::floor(std::log(uniform_open01(gen)) / log_q);
            if (gap >= static_cast<double>(total - pos))
                break;
            pos += static_cast<std::uint64_t>(gap);
            picked.push_back(pos);
            if (++pos >= total)
                break;
        }
    }
    return InfectionConfig(space, std::move(picked));
}

} // namespace hamperc
