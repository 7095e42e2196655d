#include "hamperc/projection.hpp"

#include "hamperc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace hamperc {
namespace {

std::uint64_t coord_mask(int n)
{
    return n >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
}

void check_space(HammingSpace const& space, Projection const& P)
{
    if (P.n != space.n() || P.space_tag != space.tag())
        throw InputDomainError("projection belongs to a different Hamming space");
}

// Coordinates fixed in both P and Q whose digits differ.
std::uint64_t conflict_mask(HammingSpace const& space, Projection const& P, Projection const& Q)
{
    std::uint64_t both = ~(P.free_mask | Q.free_mask) & coord_mask(space.n());
    if (space.binary())
        return both & (P.base ^ Q.base);
    std::uint64_t out = 0;
    for (std::uint64_t m = both; m; m &= m - 1)
    {
        int i = __builtin_ctzll(m);
        if (space.digit(P.base, i) != space.digit(Q.base, i))
            out |= std::uint64_t(1) << i;
    }
    return out;
}

} // namespace

Projection Projection::point(HammingSpace const& space, Vertex v)
{
    space.require_valid(v);
    return {space.n(), space.tag(), 0, v};
}

Projection Projection::full(HammingSpace const& space)
{
    space.size();
    return {space.n(), space.tag(), coord_mask(space.n()), 0};
}

Projection Projection::make(HammingSpace const& space, std::uint64_t free_mask, Vertex v)
{
    space.require_valid(v);
    if (free_mask & ~coord_mask(space.n()))
        throw InputDomainError("free coordinate outside [0, n)");
    for (std::uint64_t m = free_mask; m; m &= m - 1)
        v = space.with_digit(v, __builtin_ctzll(m), 0);
    return {space.n(), space.tag(), free_mask, v};
}

bool contains(HammingSpace const& space, Projection const& P, Vertex v)
{
    check_space(space, P);
    space.require_valid(v);
    std::uint64_t fixed = ~P.free_mask & coord_mask(space.n());
    if (space.binary())
        return ((v ^ P.base) & fixed) == 0;
    for (std::uint64_t m = fixed; m; m &= m - 1)
    {
        int i = __builtin_ctzll(m);
        if (space.digit(v, i) != space.digit(P.base, i))
            return false;
    }
    return true;
}

bool is_subset(HammingSpace const& space, Projection const& P, Projection const& Q)
{
    check_space(space, P);
    check_space(space, Q);
    return (P.free_mask & ~Q.free_mask) == 0 && conflict_mask(space, P, Q) == 0;
}

int projection_distance(HammingSpace const& space, Projection const& P, Projection const& Q)
{
    check_space(space, P);
    check_space(space, Q);
    return __builtin_popcountll(conflict_mask(space, P, Q));
}

Projection merge_span(HammingSpace const& space, Projection const& P, Projection const& Q)
{
    check_space(space, P);
    check_space(space, Q);
    std::uint64_t delta = conflict_mask(space, P, Q);
    if (__builtin_popcountll(delta) > 2)
        throw PreconditionError("merge_span needs projections at distance <= 2");
    std::uint64_t free_mask = P.free_mask | Q.free_mask | delta;
    // Coordinates left fixed are fixed in both with equal digits.
    return Projection::make(space, free_mask, P.base);
}

BigCount vertex_count(HammingSpace const& space, Projection const& P)
{
    check_space(space, P);
    BigCount c = 1;
    for (std::uint64_t m = P.free_mask; m; m &= m - 1)
        c *= space.radix(__builtin_ctzll(m));
    return c;
}

std::vector<Vertex> vertices(HammingSpace const& space, Projection const& P)
{
    check_space(space, P);
    if (vertex_count(space, P) > (BigCount(1) << 26))
        throw CapabilityError("projection too large to list its vertices");
    std::vector<int> free_coords;
    for (std::uint64_t m = P.free_mask; m; m &= m - 1)
        free_coords.push_back(__builtin_ctzll(m));
    std::vector<Vertex> out{P.base};
    for (int i : free_coords)
    {
        std::size_t cur = out.size();
        for (int d = 1; d < space.radix(i); ++d)
            for (std::size_t a = 0; a < cur; ++a)
                out.push_back(out[a] + space.weight(i) * d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Projection> as_projection(HammingSpace const& space, std::vector<Vertex> const& vs)
{
    if (vs.empty())
        return std::nullopt;
    std::uint64_t free_mask = 0;
    for (Vertex v : vs)
    {
        space.require_valid(v);
        for (int i = 0; i < space.n(); ++i)
            if (space.digit(v, i) != space.digit(vs.front(), i))
                free_mask |= std::uint64_t(1) << i;
    }
    Projection P = Projection::make(space, free_mask, vs.front());
    std::vector<Vertex> sorted = vs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (vertex_count(space, P) != sorted.size() || vertices(space, P) != sorted)
        return std::nullopt;
    return P;
}

Projection parse_projection(HammingSpace const& space, std::string const& text)
{
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        items.push_back(item);
    if (static_cast<int>(items.size()) != space.n())
        throw InputDomainError("projection '" + text + "' does not have n entries");
    std::uint64_t free_mask = 0;
    std::vector<int> digits(space.n(), 0);
    for (int i = 0; i < space.n(); ++i)
    {
        std::string const& s = items[i];
        if (s == "*")
        {
            free_mask |= std::uint64_t(1) << i;
            continue;
        }
        try
        {
            std::size_t used = 0;
            digits[i] = std::stoi(s, &used);
            if (used != s.size())
                throw std::invalid_argument(s);
        }
        catch (std::logic_error const&)
        {
            throw InputDomainError("bad projection syntax: '" + text + "'");
        }
    }
    return Projection::make(space, free_mask, space.encode(digits));
}

std::string format_projection(HammingSpace const& space, Projection const& P)
{
    check_space(space, P);
    std::string out;
    for (int i = 0; i < space.n(); ++i)
    {
        if (i)
            out += ',';
        out += P.is_free(i) ? std::string("*") : std::to_string(space.digit(P.base, i));
    }
    return out;
}

} // namespace hamperc
