#ifndef HAMPERC_TESTS_SUPPORT_HPP
#define HAMPERC_TESTS_SUPPORT_HPP

#include "hamperc/engine.hpp"
#include "hamperc/rng.hpp"

#include <algorithm>
#include <deque>
#include <vector>

namespace testsupport {

using namespace hamperc;

// Graph distances from `src` by breadth-first search over neighbors().
inline std::vector<int> bfs(HammingSpace const& space, Vertex src)
{
    std::vector<int> dist(space.size(), -1);
    std::deque<Vertex> q{src};
    dist[src] = 0;
    while (!q.empty())
    {
        Vertex v = q.front();
        q.pop_front();
        for (Vertex u : neighbors(space, v))
            if (dist[u] < 0)
            {
                dist[u] = dist[v] + 1;
                q.push_back(u);
            }
    }
    return dist;
}

inline Projection random_projection(HammingSpace const& space, SplitMix64& g, double free_prob)
{
    std::uint64_t mask = 0;
    for (int i = 0; i < space.n(); ++i)
        if (uniform_open01(g) < free_prob)
            mask |= std::uint64_t(1) << i;
    return Projection::make(space, mask, uniform_below(g, space.size()));
}

// Q differs from a random P by at most `changes` fixed digits.
inline Projection perturb(HammingSpace const& space, Projection const& P, SplitMix64& g,
                          int changes, double free_prob)
{
    Vertex v = P.base;
    for (int c = 0; c < changes; ++c)
    {
        int i = static_cast<int>(uniform_below(g, space.n()));
        v = space.with_digit(v, i, static_cast<int>(uniform_below(g, space.radix(i))));
    }
    std::uint64_t mask = 0;
    for (int i = 0; i < space.n(); ++i)
        if (uniform_open01(g) < free_prob)
            mask |= std::uint64_t(1) << i;
    return Projection::make(space, mask, v);
}

inline std::vector<Vertex> merged_vertices(HammingSpace const& space, Projection const& P,
                                           Projection const& Q)
{
    auto a = vertices(space, P);
    auto b = vertices(space, Q);
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

inline InfectionConfig random_seed_set(HammingSpace const& space, SplitMix64& g, std::size_t max_size)
{
    std::size_t m = 1 + uniform_below(g, max_size);
    std::vector<Vertex> vs;
    for (std::size_t a = 0; a < m; ++a)
        vs.push_back(uniform_below(g, space.size()));
    return InfectionConfig(space, vs);
}

// Grow a random sequentially spanning sequence with `steps` steps.
inline SpanSequence grow_sequence(HammingSpace const& space, SplitMix64& g, int steps)
{
    SpanSequence s{space, {uniform_below(g, space.size())}};
    for (int a = 0; a < steps; ++a)
    {
        auto cand = extend_candidates(s);
        if (cand.empty())
            break;
        s.vertices.push_back(cand[uniform_below(g, cand.size())]);
    }
    return s;
}

} // namespace testsupport

#endif
