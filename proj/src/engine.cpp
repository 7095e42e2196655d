#include "hamperc/engine.hpp"

#include "hamperc/errors.hpp"
#include "hamperc/rng.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace hamperc {

std::vector<Vertex> closure_queue(InfectionConfig const& seed)
{
    HammingSpace const& space = seed.space;
    std::unordered_set<Vertex> infected(seed.infected.begin(), seed.infected.end());
    std::unordered_map<Vertex, unsigned char> hits;
    std::deque<Vertex> work(seed.infected.begin(), seed.infected.end());
    while (!work.empty())
    {
        Vertex v = work.front();
        work.pop_front();
        for_each_neighbor(space, v, [&](Vertex u) {
            if (infected.count(u))
                return;
            auto it = hits.try_emplace(u, 0).first;
            if (++it->second == 2)
            {
                hits.erase(it);
                infected.insert(u);
                work.push_back(u);
            }
        });
    }
    std::vector<Vertex> out(infected.begin(), infected.end());
    std::sort(out.begin(), out.end());
    return out;
}

MergeTrace closure_components(InfectionConfig const& seed, ComponentOptions const& opts)
{
    HammingSpace const& space = seed.space;
    struct Comp
    {
        int id;
        Projection proj;
    };
    std::vector<Comp> comps;
    comps.reserve(seed.size());
    for (std::size_t a = 0; a < seed.size(); ++a)
        comps.push_back({static_cast<int>(a), Projection::point(space, seed.infected[a])});
    if (opts.shuffle_seed)
    {
        SplitMix64 gen(*opts.shuffle_seed);
        for (std::size_t a = comps.size(); a > 1; --a)
            std::swap(comps[a - 1], comps[uniform_below(gen, a)]);
    }

    MergeTrace trace;
    int next_id = static_cast<int>(comps.size());
    // Invariant: every pair (x, y) with x < cursor is at distance >= 3.
    std::size_t cursor = 0;
    while (cursor < comps.size())
    {
        std::size_t y = cursor + 1;
        int d = 3;
        for (; y < comps.size(); ++y)
        {
            d = projection_distance(space, comps[cursor].proj, comps[y].proj);
            if (d <= 2)
                break;
        }
        if (y == comps.size())
        {
            ++cursor;
            continue;
        }
        Comp& a = comps[cursor];
        Projection merged = merge_span(space, a.proj, comps[y].proj);
        trace.events.push_back({a.id, comps[y].id, d, a.proj, comps[y].proj, next_id, merged});
        a = {next_id++, merged};
        comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(y));
        if (opts.stop_at_dim && merged.dim() >= *opts.stop_at_dim)
        {
            trace.stopped_early = true;
            break;
        }
        // Only pairs involving the new component can have become close.
        for (std::size_t x = 0; x < cursor; ++x)
        {
            if (projection_distance(space, comps[x].proj, merged) <= 2)
            {
                cursor = x;
                break;
            }
        }
    }
    for (Comp const& c : comps)
        trace.final.push_back(c.proj);
    return trace;
}

std::vector<Vertex> union_vertices(HammingSpace const& space, std::vector<Projection> const& comps)
{
    std::vector<Vertex> out;
    for (Projection const& P : comps)
    {
        auto vs = vertices(space, P);
        out.insert(out.end(), vs.begin(), vs.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool percolates(InfectionConfig const& seed)
{
    if (seed.size() == seed.space.size())
        return true;
    // Pair scanning costs about m^2; the queue costs about N n.
    double m = static_cast<double>(seed.size());
    if (m * m > static_cast<double>(seed.space.size()) * seed.space.n())
        return closure_queue(seed).size() == seed.space.size();
    ComponentOptions opts;
    opts.stop_at_dim = seed.space.n();
    MergeTrace trace = closure_components(seed, opts);
    return trace.stopped_early
           || (trace.final.size() == 1 && trace.final.front().dim() == seed.space.n());
}

namespace {

void require_distinct(SpanSequence const& s)
{
    std::vector<Vertex> sorted = s.vertices;
    for (Vertex v : sorted)
        s.space.require_valid(v);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputDomainError("sequence contains a repeated vertex");
}

// Prefix closure, or nullopt at the first step not at distance exactly 2.
std::optional<Projection> fold_sequence(SpanSequence const& s)
{
    require_distinct(s);
    if (s.vertices.empty())
        throw InputDomainError("empty sequence");
    Projection acc = Projection::point(s.space, s.vertices.front());
    for (std::size_t a = 1; a < s.vertices.size(); ++a)
    {
        Projection next = Projection::point(s.space, s.vertices[a]);
        if (projection_distance(s.space, acc, next) != 2)
            return std::nullopt;
        acc = merge_span(s.space, acc, next);
    }
    return acc;
}

} // namespace

bool is_sequentially_spanning(SpanSequence const& s)
{
    return fold_sequence(s).has_value();
}

Projection spanned_projection(SpanSequence const& s)
{
    auto P = fold_sequence(s);
    if (!P)
        throw PreconditionError("sequence is not sequentially spanning");
    return *P;
}

std::vector<Vertex> extend_candidates(SpanSequence const& s)
{
    Projection P = spanned_projection(s);
    HammingSpace const& space = s.space;
    std::vector<Vertex> out;
    if (2 * s.size() > space.n() - 2)
        return out;
    std::vector<int> fixed;
    for (int i = 0; i < space.n(); ++i)
        if (!P.is_free(i))
            fixed.push_back(i);
    std::vector<Vertex> body = vertices(space, P);
    for (std::size_t a = 0; a < fixed.size(); ++a)
    {
        for (std::size_t b = a + 1; b < fixed.size(); ++b)
        {
            int ia = fixed[a];
            int ib = fixed[b];
            for (Vertex v : body)
            {
                for (int da = 0; da < space.radix(ia); ++da)
                {
                    if (da == space.digit(v, ia))
                        continue;
                    for (int db = 0; db < space.radix(ib); ++db)
                    {
                        if (db == space.digit(v, ib))
                            continue;
                        out.push_back(space.with_digit(space.with_digit(v, ia, da), ib, db));
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

WitnessQuadruple witnessing_quadruple(InfectionConfig const& seed, int t)
{
    if (t < 1)
        throw InputDomainError("threshold t must be positive");
    ComponentOptions opts;
    opts.stop_at_dim = t;
    MergeTrace trace = closure_components(seed, opts);
    if (!trace.stopped_early)
        throw NotFoundError("no component reaches dimension " + std::to_string(t));
    MergeEvent const& e = trace.events.back();
    bool left_big = e.left.dim() >= e.right.dim();
    return {e.result, left_big ? e.left : e.right, left_big ? e.right : e.left, e.distance};
}

} // namespace hamperc
