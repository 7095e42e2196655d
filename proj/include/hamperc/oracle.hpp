#ifndef HAMPERC_ORACLE_HPP
#define HAMPERC_ORACLE_HPP

#include "bounds.hpp"
#include "projection.hpp"

#include <map>
#include <string>
#include <vector>

namespace hamperc::oracle {

// Brute-force ground truth on tiny instances. Nothing here calls the
// closure engines or merge_span; closures are recomputed on explicit
// vertex bitsets.

struct PercolationPolynomial
{
    HammingSpace space;
    // counts[s] = number of s-subsets whose closure is the whole space.
    std::vector<BigCount> counts;

    Rational operator()(Rational const& p) const;
    double operator()(double p) const;
};

// k^n <= 24.
PercolationPolynomial exact_percolation_polynomial(HammingSpace const& space);

// k^dim(P) <= 24. Counts of s-subsets of P that internally span P.
std::vector<BigCount> spanned_counts(HammingSpace const& space, Projection const& P);
Rational exact_spanned_prob(HammingSpace const& space, Projection const& P, Rational const& p);

// All sequentially spanning sequences with ell steps, by depth-first search.
// k^n <= 4096.
std::vector<std::vector<Vertex>> list_spanning_sequences(HammingSpace const& space, int ell);
BigCount enumerate_spanning_sequences(HammingSpace const& space, int ell);

// Unordered candidate-pair counts per index on K_k^m. k^m <= 512.
std::map<AdmissibleIndex, BigCount> enumerate_quadruples(int m, int k, int t);

// Unordered pairs of distinct ell-step sequences sharing exactly i vertices.
// |S_ell| <= 1e5.
BigCount count_overlaps(HammingSpace const& space, int ell, int i);
// All of the above at once: entry i counts pairs sharing exactly i vertices.
std::vector<BigCount> overlap_histogram(HammingSpace const& space, int ell);

struct VdbkResult
{
    Rational left;  // P(U and W disjointly internally spanned)
    Rational right; // P(U internally spanned) P(W internally spanned)
    bool holds;
};

// k^n <= 16.
VdbkResult check_vdbk(HammingSpace const& space, Projection const& U, Projection const& W,
                      Rational const& p);

// "3/8", "0.25", "1e-3" parsed exactly.
Rational parse_rational(std::string const& text);

} // namespace hamperc::oracle

#endif
