#ifndef HAMPERC_MONTECARLO_HPP
#define HAMPERC_MONTECARLO_HPP

#include "errors.hpp"
#include "hamming.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hamperc {

struct Estimate
{
    double p = 0;
    std::uint64_t trials = 0;
    std::uint64_t hits = 0;
    double p_hat = 0;
    double ci_low = 0; // Wilson 95%
    double ci_high = 0;
    std::uint64_t master_seed = 0;
};

void wilson_interval(std::uint64_t hits, std::uint64_t trials, double& low, double& high);

// Trial t samples with seed stream_seed(master_seed, t), so hit counts do
// not depend on `workers`.
Estimate estimate_percolation(HammingSpace const& space, double p, std::uint64_t trials,
                              std::uint64_t master_seed, int workers = 1);

class BracketError : public DiagnosticError
{
  public:
    BracketError(std::string const& what, Estimate lo, Estimate hi)
        : DiagnosticError(what), low(lo), high(hi)
    {
    }
    Estimate low;
    Estimate high;
};

struct PcResult
{
    double p_c = 0;
    double bracket_low = 0;
    double bracket_high = 0;
    int probes = 0;
    int expansions = 0;
};

/**
 * Bisection on log p for the smallest p with estimated percolation
 * probability >= target. The starting bracket is [p_* / 100, min(1, 100 p^*)],
 * widened by a factor 10 at either end up to 6 times until the low end
 * estimates strictly below the target and the high end strictly above.
 * Stops once high/low < 1 + rel_tol and returns the geometric midpoint.
 */
PcResult find_pc(HammingSpace const& space, double target, double rel_tol,
                 std::uint64_t trials_per_probe, std::uint64_t master_seed, int workers = 1);

struct SweepResult
{
    std::vector<Estimate> rows;
    std::vector<std::string> warnings;
    int isotonic_violations = 0;
};

// Grid is deduplicated (with a warning) and must then be ascending.
SweepResult sweep(HammingSpace const& space, std::vector<double> grid, std::uint64_t trials,
                  std::uint64_t master_seed, int workers = 1);

// Percolation indicators of one trial at every grid point, using one shared
// uniform per vertex. Requires k^n <= 2^22.
std::vector<bool> coupled_trial(HammingSpace const& space, std::vector<double> const& grid,
                                std::uint64_t seed);

// Worker count from HAMPERC_WORKERS, else 1.
int default_workers();

} // namespace hamperc

#endif
