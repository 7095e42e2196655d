#ifndef HAMPERC_PROJECTION_HPP
#define HAMPERC_PROJECTION_HPP

#include "hamming.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hamperc {

/**
 * Sub-product of K_k^n: coordinates in `free_mask` range over all digits,
 * the others are fixed to the digits of `base`.
 *
 * `base` has digit 0 on every free coordinate, so two projections are equal
 * exactly when their fields are equal. The owning space is not stored; every
 * operation takes it explicitly and checks it against `space_tag`.
 */
struct Projection
{
    int n = 0;
    std::uint64_t space_tag = 0;
    std::uint64_t free_mask = 0;
    Vertex base = 0;

    static Projection point(HammingSpace const& space, Vertex v);
    static Projection full(HammingSpace const& space);
    // Normalizes the digits of `v` on free coordinates.
    static Projection make(HammingSpace const& space, std::uint64_t free_mask, Vertex v);

    int dim() const { return __builtin_popcountll(free_mask); }
    bool is_free(int i) const { return (free_mask >> i) & 1; }

    friend bool operator==(Projection const&, Projection const&) = default;
    friend auto operator<=>(Projection const&, Projection const&) = default;
};

bool contains(HammingSpace const& space, Projection const& P, Vertex v);
// P is a subset of Q.
bool is_subset(HammingSpace const& space, Projection const& P, Projection const& Q);
int projection_distance(HammingSpace const& space, Projection const& P, Projection const& Q);

/**
 * Smallest projection containing P and Q: free set F_P u F_Q u Delta, where
 * Delta holds the coordinates fixed in both with different digits. It equals
 * the closure of P u Q. Throws PreconditionError at distance >= 3, where the
 * two sets do not interact.
 */
Projection merge_span(HammingSpace const& space, Projection const& P, Projection const& Q);

BigCount vertex_count(HammingSpace const& space, Projection const& P);
// Ascending order. Throws CapabilityError above 2^26 vertices.
std::vector<Vertex> vertices(HammingSpace const& space, Projection const& P);
// The projection whose vertex set is exactly `vs`, if there is one.
std::optional<Projection> as_projection(HammingSpace const& space, std::vector<Vertex> const& vs);

// "*,1,0,*": star marks a free coordinate.
Projection parse_projection(HammingSpace const& space, std::string const& text);
std::string format_projection(HammingSpace const& space, Projection const& P);

} // namespace hamperc

#endif
