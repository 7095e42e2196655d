#include "hamperc/oracle.hpp"

#include "hamperc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace hamperc::oracle {
namespace {

// Adjacency over vertex indices 0..N-1, built from digit comparisons.
std::vector<std::vector<int>> brute_adjacency(HammingSpace const& space)
{
    auto const N = static_cast<int>(space.size());
    std::vector<std::vector<int>> digits(N);
    for (int v = 0; v < N; ++v)
        digits[v] = space.decode(v);
    std::vector<std::vector<int>> adj(N);
    for (int u = 0; u < N; ++u)
        for (int v = 0; v < N; ++v)
        {
            int diff = 0;
            for (int i = 0; i < space.n(); ++i)
                diff += digits[u][i] != digits[v][i];
            if (diff == 1)
                adj[u].push_back(v);
        }
    return adj;
}

int brute_distance(HammingSpace const& space, Vertex u, Vertex v)
{
    auto a = space.decode(u);
    auto b = space.decode(v);
    int diff = 0;
    for (int i = 0; i < space.n(); ++i)
        diff += a[i] != b[i];
    return diff;
}

// Fixed-point sweeps over a vertex set of at most 64 elements.
std::uint64_t closure_mask(std::vector<std::uint64_t> const& adj, std::uint64_t s)
{
    bool changed = true;
    while (changed)
    {
        changed = false;
        for (std::size_t v = 0; v < adj.size(); ++v)
        {
            std::uint64_t bit = std::uint64_t(1) << v;
            if (!(s & bit) && __builtin_popcountll(adj[v] & s) >= 2)
            {
                s |= bit;
                changed = true;
            }
        }
    }
    return s;
}

std::vector<std::uint64_t> mask_adjacency(HammingSpace const& space)
{
    auto adj = brute_adjacency(space);
    std::vector<std::uint64_t> out(adj.size(), 0);
    for (std::size_t v = 0; v < adj.size(); ++v)
        for (int u : adj[v])
            out[v] |= std::uint64_t(1) << u;
    return out;
}

// Same sweep for larger spaces, on a byte-per-vertex set.
void closure_inplace(std::vector<std::vector<int>> const& adj, std::vector<char>& in)
{
    bool changed = true;
    while (changed)
    {
        changed = false;
        for (std::size_t v = 0; v < adj.size(); ++v)
        {
            if (in[v])
                continue;
            int c = 0;
            for (int u : adj[v])
                c += in[u];
            if (c >= 2)
            {
                in[v] = 1;
                changed = true;
            }
        }
    }
}

template<class T>
T eval_counts(std::vector<BigCount> const& counts, T const& p)
{
    T total = 0;
    auto const N = static_cast<int>(counts.size()) - 1;
    for (int s = 0; s <= N; ++s)
    {
        if (counts[s] == 0)
            continue;
        T term = static_cast<T>(counts[s]);
        for (int a = 0; a < s; ++a)
            term *= p;
        for (int a = s; a < N; ++a)
            term *= 1 - p;
        total += term;
    }
    return total;
}

std::vector<BigCount> counts_by_size(std::vector<char> const& good, int N)
{
    std::vector<BigCount> counts(N + 1, 0);
    for (std::size_t m = 0; m < good.size(); ++m)
        if (good[m])
            counts[__builtin_popcountll(m)] += 1;
    return counts;
}

} // namespace

Rational PercolationPolynomial::operator()(Rational const& p) const
{
    return eval_counts(counts, p);
}

double PercolationPolynomial::operator()(double p) const
{
    return eval_counts(counts, p);
}

PercolationPolynomial exact_percolation_polynomial(HammingSpace const& space)
{
    if (!space.packable() || space.size() > 24)
        throw CapabilityError("percolation polynomial needs k^n <= 24");
    auto const N = static_cast<int>(space.size());
    auto adj = mask_adjacency(space);
    std::uint64_t const all = (std::uint64_t(1) << N) - 1;
    std::vector<char> perc(std::size_t(1) << N, 0);
    for (std::uint64_t m = 0; m <= all; ++m)
        perc[m] = closure_mask(adj, m) == all;
    // Percolation is an up-set.
    for (std::uint64_t m = 0; m <= all; ++m)
        if (perc[m])
            for (int v = 0; v < N; ++v)
                if (!perc[m | (std::uint64_t(1) << v)])
                    throw std::logic_error("percolating sets are not upward closed");
    return {space, counts_by_size(perc, N)};
}

std::vector<BigCount> spanned_counts(HammingSpace const& space, Projection const& P)
{
    if (vertex_count(space, P) > 24)
        throw CapabilityError("spanned probability needs k^dim <= 24");
    std::vector<Vertex> vs = vertices(space, P);
    auto const N = static_cast<int>(vs.size());
    std::vector<std::uint64_t> adj(N, 0);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            if (brute_distance(space, vs[a], vs[b]) == 1)
                adj[a] |= std::uint64_t(1) << b;
    // Outside vertices see at most one vertex of a projection, so the
    // closure of a subset of P can be computed inside P.
    std::uint64_t const all = (std::uint64_t(1) << N) - 1;
    std::vector<char> good(std::size_t(1) << N, 0);
    for (std::uint64_t m = 0; m <= all; ++m)
        good[m] = closure_mask(adj, m) == all;
    return counts_by_size(good, N);
}

Rational exact_spanned_prob(HammingSpace const& space, Projection const& P, Rational const& p)
{
    if (p < 0 || p > 1)
        throw InputDomainError("p must lie in [0, 1]");
    return eval_counts(spanned_counts(space, P), p);
}

std::vector<std::vector<Vertex>> list_spanning_sequences(HammingSpace const& space, int ell)
{
    if (!space.packable() || space.size() > 4096)
        throw CapabilityError("sequence enumeration needs k^n <= 4096");
    if (ell < 0 || ell > space.n() / 2)
        throw InputDomainError("sequence enumeration needs 0 <= ell <= floor(n/2)");
    auto const N = static_cast<int>(space.size());
    auto adj = brute_adjacency(space);
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> prefix;

    auto dfs = [&](auto&& self) -> void {
        if (static_cast<int>(prefix.size()) == ell + 1)
        {
            out.push_back(prefix);
            return;
        }
        std::vector<char> closed(N, 0);
        for (Vertex v : prefix)
            closed[v] = 1;
        closure_inplace(adj, closed);
        for (int v = 0; v < N; ++v)
        {
            if (std::find(prefix.begin(), prefix.end(), Vertex(v)) != prefix.end())
                continue;
            if (!prefix.empty())
            {
                int best = space.n() + 1;
                for (int u = 0; u < N && best >= 2; ++u)
                    if (closed[u])
                        best = std::min(best, brute_distance(space, u, v));
                if (best != 2)
                    continue;
            }
            prefix.push_back(v);
            self(self);
            prefix.pop_back();
        }
    };
    dfs(dfs);
    return out;
}

BigCount enumerate_spanning_sequences(HammingSpace const& space, int ell)
{
    return list_spanning_sequences(space, ell).size();
}

std::map<AdmissibleIndex, BigCount> enumerate_quadruples(int m, int k, int t)
{
    HammingSpace space(m, k);
    if (!space.packable() || space.size() > 512)
        throw CapabilityError("quadruple enumeration needs k^m <= 512");
    if (t < 1 || t > m)
        throw InputDomainError("quadruple enumeration needs 1 <= t <= m");
    auto const N = static_cast<int>(space.size());
    auto adj = brute_adjacency(space);

    // Every projection as (dimension, vertex membership), keyed by membership.
    struct Proj
    {
        int dim;
        std::vector<char> in;
    };
    std::vector<Proj> projs;
    std::map<std::vector<char>, int> dim_of;
    std::vector<int> choice(m, 0); // 0 = free, c > 0 = fixed to digit c-1
    while (true)
    {
        Proj pr{0, std::vector<char>(N, 0)};
        for (int i = 0; i < m; ++i)
            pr.dim += choice[i] == 0;
        for (int v = 0; v < N; ++v)
        {
            auto dg = space.decode(v);
            bool inside = true;
            for (int i = 0; i < m; ++i)
                inside = inside && (choice[i] == 0 || dg[i] == choice[i] - 1);
            pr.in[v] = inside;
        }
        dim_of[pr.in] = pr.dim;
        projs.push_back(std::move(pr));
        int i = 0;
        while (i < m && ++choice[i] > k)
            choice[i++] = 0;
        if (i == m)
            break;
    }

    std::map<AdmissibleIndex, BigCount> out;
    for (std::size_t a = 0; a < projs.size(); ++a)
    {
        if (projs[a].dim >= t)
            continue;
        for (std::size_t b = a + 1; b < projs.size(); ++b)
        {
            if (projs[b].dim >= t)
                continue;
            int d = m + 1;
            for (int u = 0; u < N; ++u)
                if (projs[a].in[u])
                    for (int v = 0; v < N; ++v)
                        if (projs[b].in[v])
                            d = std::min(d, brute_distance(space, u, v));
            if (d > 2)
                continue;
            std::vector<char> cl(N);
            for (int v = 0; v < N; ++v)
                cl[v] = projs[a].in[v] || projs[b].in[v];
            closure_inplace(adj, cl);
            auto it = dim_of.find(cl);
            if (it == dim_of.end())
                throw std::logic_error("closure of two close projections is not a projection");
            int ell = it->second;
            if (ell < t)
                continue;
            int i = std::max(projs[a].dim, projs[b].dim);
            int j = std::min(projs[a].dim, projs[b].dim);
            out[{ell, i, j, d}] += 1;
        }
    }
    return out;
}

std::vector<BigCount> overlap_histogram(HammingSpace const& space, int ell)
{
    if (seq_count(space.n(), space.k(), ell) > 100000)
        throw CapabilityError("overlap count needs |S_ell| <= 1e5");
    std::map<std::vector<Vertex>, std::uint64_t> by_set;
    for (auto seq : list_spanning_sequences(space, ell))
    {
        std::sort(seq.begin(), seq.end());
        by_set[seq] += 1;
    }
    std::vector<std::pair<std::vector<Vertex>, std::uint64_t>> sets(by_set.begin(), by_set.end());
    std::vector<std::uint64_t> hist(ell + 2, 0);
    for (std::size_t a = 0; a < sets.size(); ++a)
    {
        auto const& x = sets[a].first;
        hist[ell + 1] += sets[a].second * (sets[a].second - 1) / 2;
        for (std::size_t b = a + 1; b < sets.size(); ++b)
        {
            auto const& y = sets[b].first;
            std::size_t common = 0;
            for (std::size_t u = 0, v = 0; u < x.size() && v < y.size();)
            {
                if (x[u] < y[v])
                    ++u;
                else if (y[v] < x[u])
                    ++v;
                else
                {
                    ++common;
                    ++u;
                    ++v;
                }
            }
            hist[common] += sets[a].second * sets[b].second;
        }
    }
    return {hist.begin(), hist.end()};
}

BigCount count_overlaps(HammingSpace const& space, int ell, int i)
{
    if (i < 0)
        throw InputDomainError("overlap size must be nonnegative");
    auto hist = overlap_histogram(space, ell);
    return i < static_cast<int>(hist.size()) ? hist[i] : BigCount(0);
}

VdbkResult check_vdbk(HammingSpace const& space, Projection const& U, Projection const& W,
                      Rational const& p)
{
    if (!space.packable() || space.size() > 16)
        throw CapabilityError("vdBK check needs k^n <= 16");
    if (p < 0 || p > 1)
        throw InputDomainError("p must lie in [0, 1]");
    auto adj = mask_adjacency(space);
    auto mask_of = [&](Projection const& P) {
        std::uint64_t m = 0;
        for (Vertex v : vertices(space, P))
            m |= std::uint64_t(1) << v;
        return m;
    };
    std::uint64_t const mu = mask_of(U);
    std::uint64_t const mw = mask_of(W);
    auto spans = [&](std::uint64_t s, std::uint64_t target) {
        return (s & ~target) == 0 && closure_mask(adj, s) == target;
    };

    // Minimal internally spanning subsets of U suffice for the witness search,
    // since spanning W is monotone in the available vertices.
    std::vector<std::uint64_t> minimal_u;
    for (std::uint64_t s = mu;; s = (s - 1) & mu)
    {
        if (spans(s, mu))
        {
            bool minimal = true;
            for (std::uint64_t r = s; r && minimal; r &= r - 1)
                minimal = !spans(s & ~(r & -r), mu);
            if (minimal)
                minimal_u.push_back(s);
        }
        if (s == 0)
            break;
    }

    auto weight = [&](int inside, int outside) {
        Rational w = 1;
        for (int a = 0; a < inside; ++a)
            w *= p;
        for (int a = 0; a < outside; ++a)
            w *= 1 - p;
        return w;
    };
    std::uint64_t const region = mu | mw;
    int const rsize = __builtin_popcountll(region);
    Rational left = 0;
    for (std::uint64_t b = region;; b = (b - 1) & region)
    {
        bool ok = false;
        for (std::uint64_t s : minimal_u)
            if ((s & ~b) == 0 && spans(b & mw & ~s, mw))
            {
                ok = true;
                break;
            }
        if (ok)
            left += weight(__builtin_popcountll(b), rsize - __builtin_popcountll(b));
        if (b == 0)
            break;
    }
    Rational right = exact_spanned_prob(space, U, p) * exact_spanned_prob(space, W, p);
    return {left, right, left <= right};
}

namespace {

// Base 10 regardless of leading zeros, which the cpp_int constructor reads as octal.
BigCount decimal_integer(std::string const& text)
{
    std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
    if (start == text.size())
        throw std::runtime_error("empty integer");
    BigCount out = 0;
    for (std::size_t i = start; i < text.size(); ++i)
    {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw std::runtime_error("not an integer");
        out = out * 10 + (text[i] - '0');
    }
    return text[0] == '-' ? BigCount(-out) : out;
}

} // namespace

Rational parse_rational(std::string const& text)
{
    auto bad = [&]() { return InputDomainError("cannot parse '" + text + "' as a number"); };
    auto slash = text.find('/');
    if (slash != std::string::npos)
    {
        try
        {
            BigCount a = decimal_integer(text.substr(0, slash));
            BigCount b = decimal_integer(text.substr(slash + 1));
            if (b == 0)
                throw bad();
            return Rational(a, b);
        }
        catch (std::runtime_error const&)
        {
            throw bad();
        }
    }
    std::string mant = text;
    long long exp10 = 0;
    auto e = text.find_first_of("eE");
    if (e != std::string::npos)
    {
        mant = text.substr(0, e);
        try
        {
            std::size_t used = 0;
            exp10 = std::stoll(text.substr(e + 1), &used);
            if (used != text.size() - e - 1)
                throw bad();
        }
        catch (std::logic_error const&)
        {
            throw bad();
        }
    }
    bool neg = !mant.empty() && mant[0] == '-';
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+'))
        mant.erase(0, 1);
    std::string digits;
    bool seen_dot = false;
    for (char c : mant)
    {
        if (c == '.' && !seen_dot)
            seen_dot = true;
        else if (std::isdigit(static_cast<unsigned char>(c)))
        {
            digits += c;
            if (seen_dot)
                --exp10;
        }
        else
            throw bad();
    }
    if (digits.empty())
        throw bad();
    Rational r{decimal_integer(digits)};
    if (exp10 >= 0)
        r *= big_pow(10, exp10);
    else
        r /= big_pow(10, -exp10);
    return neg ? -r : r;
}

} // namespace hamperc::oracle
