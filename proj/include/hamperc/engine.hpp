#ifndef HAMPERC_ENGINE_HPP
#define HAMPERC_ENGINE_HPP

#include "projection.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hamperc {

struct MergeEvent
{
    int left_id;
    int right_id;
    int distance;
    Projection left;
    Projection right;
    int result_id;
    Projection result;
};

/**
 * Record of the component merge process. Components start as the seed
 * singletons with ids 0..m-1 in seed order; each merge creates a fresh id.
 * `final` lists the surviving components, pairwise at distance >= 3,
 * unless the run stopped early.
 */
struct MergeTrace
{
    std::vector<MergeEvent> events;
    std::vector<Projection> final;
    bool stopped_early = false;
};

struct ComponentOptions
{
    // Stop right after the first merge whose result has at least this dimension.
    std::optional<int> stop_at_dim;
    // Shuffle the initial singleton order with this seed.
    std::optional<std::uint64_t> shuffle_seed;
};

// Closure [A] by infected-neighbour counters and a work queue. Sorted.
std::vector<Vertex> closure_queue(InfectionConfig const& seed);

/**
 * Closure as a union of projections. Repeatedly merges the lowest-index pair
 * of components at distance <= 2 (scan order is insertion order, lowest first
 * index, then lowest second index); the merged component takes the lower slot.
 */
MergeTrace closure_components(InfectionConfig const& seed, ComponentOptions const& opts = {});

// Sorted vertex set covered by the final components.
std::vector<Vertex> union_vertices(HammingSpace const& space, std::vector<Projection> const& comps);

// Component engine with early exit; dense seeds (m^2 > N n) use the queue.
bool percolates(InfectionConfig const& seed);

struct SpanSequence
{
    HammingSpace space;
    std::vector<Vertex> vertices;

    // Number of steps: vertex count minus one.
    int size() const { return static_cast<int>(vertices.size()) - 1; }
};

// Every vertex after the first is at distance exactly 2 from the closure of
// its predecessors. Throws InputDomainError on duplicates.
bool is_sequentially_spanning(SpanSequence const& s);
// Closure of a sequentially spanning sequence as a projection.
Projection spanned_projection(SpanSequence const& s);
// Vertices at distance exactly 2 from the spanned projection; empty when
// 2 * size > n - 2. Sorted.
std::vector<Vertex> extend_candidates(SpanSequence const& s);

struct WitnessQuadruple
{
    Projection H_ell;
    Projection H_i;
    Projection H_j;
    int d;
};

// Operands of the first merge event reaching dimension >= t, the larger one
// as H_i. Throws NotFoundError if no component reaches t.
WitnessQuadruple witnessing_quadruple(InfectionConfig const& seed, int t);

} // namespace hamperc

#endif
