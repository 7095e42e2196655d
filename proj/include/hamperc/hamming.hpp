#ifndef HAMPERC_HAMMING_HPP
#define HAMPERC_HAMMING_HPP

#include "numeric.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hamperc {

// Packed vertex: digit i of the base-k string sits at weight k^i
// (little-endian mixed radix).
using Vertex = std::uint64_t;

/**
 * The Hamming graph K_k^n, or more generally a product K_r0 x ... x K_r(n-1)
 * of complete graphs with per-coordinate orders.
 *
 * Dynamic engines need the vertex count to be at most 2^63 so that vertices
 * pack into one word; packable() reports whether that holds. Construction
 * itself only requires n >= 1 and every order >= 2. The bound calculus only
 * deals with the uniform case.
 */
class HammingSpace
{
  public:
    static constexpr int max_packed_dim = 63;

    HammingSpace(int n, int k);
    explicit HammingSpace(std::vector<int> const& radices);

    int n() const { return n_; }
    bool uniform() const { return k_ != 0; }
    // Common order; throws InputDomainError for mixed products.
    int k() const;
    int radix(int i) const { return radix_[i]; }
    // Equal exactly for identical radix sequences.
    std::uint64_t tag() const { return tag_; }
    BigCount vertex_count() const;
    std::uint64_t degree() const;

    bool packable() const { return packable_; }
    // Number of vertices; throws CapabilityError when not packable.
    std::uint64_t size() const;
    std::uint64_t weight(int i) const { return weight_[i]; }

    int digit(Vertex v, int i) const
    {
        return static_cast<int>(binary_ ? (v >> i) & 1 : (v / weight_[i]) % radix_[i]);
    }
    Vertex with_digit(Vertex v, int i, int d) const
    {
        return v - weight_[i] * digit(v, i) + weight_[i] * d;
    }
    bool binary() const { return binary_; }

    bool valid(Vertex v) const { return packable_ && v < size_; }
    void require_valid(Vertex v) const;

    Vertex encode(std::vector<int> const& digits) const;
    std::vector<int> decode(Vertex v) const;
    // "d1,d2,...,dn"
    Vertex parse(std::string const& text) const;
    std::string format(Vertex v) const;
    // "K_2^4" or "K_4xK_4xK_2"
    std::string name() const;

    friend bool operator==(HammingSpace const& a, HammingSpace const& b)
    {
        return a.n_ == b.n_ && a.tag_ == b.tag_;
    }

  private:
    int n_ = 0;
    int k_ = 0; // 0 for mixed products
    bool binary_ = false;
    bool packable_ = false;
    std::uint64_t size_ = 0;
    std::uint64_t tag_ = 0;
    std::vector<int> radices_; // one entry when uniform
    std::array<int, max_packed_dim + 1> radix_{};
    std::array<std::uint64_t, max_packed_dim + 1> weight_{};
};

/// Sorted set of infected vertices.
struct InfectionConfig
{
    HammingSpace space;
    std::vector<Vertex> infected;

    // Sorts, removes duplicates and validates membership.
    InfectionConfig(HammingSpace s, std::vector<Vertex> vs);

    bool contains(Vertex v) const;
    std::size_t size() const { return infected.size(); }
};

// Coordinate-major, digit-ascending.
std::vector<Vertex> neighbors(HammingSpace const& space, Vertex v);

template<class F>
void for_each_neighbor(HammingSpace const& space, Vertex v, F&& f)
{
    for (int i = 0; i < space.n(); ++i)
    {
        int own = space.digit(v, i);
        Vertex base = v - space.weight(i) * own;
        for (int d = 0; d < space.radix(i); ++d)
        {
            if (d != own)
                f(base + space.weight(i) * d);
        }
    }
}

int vertex_distance(HammingSpace const& space, Vertex u, Vertex v);

/**
 * p-random subset of the vertex set.
 *
 * Positions are generated by geometric skipping, so the cost is proportional
 * to the number of infected vertices. The stream is SplitMix64 seeded with
 * `seed` directly.
 */
InfectionConfig sample_infected(HammingSpace const& space, double p, std::uint64_t seed);

} // namespace hamperc

#endif
