#include "hamperc/montecarlo.hpp"

#include "hamperc/bounds.hpp"
#include "hamperc/engine.hpp"
#include "hamperc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace hamperc {

void wilson_interval(std::uint64_t hits, std::uint64_t trials, double& low, double& high)
{
    double const z = 1.959963984540054;
    double const nt = static_cast<double>(trials);
    double const ph = static_cast<double>(hits) / nt;
    double const z2 = z * z;
    double const centre = (ph + z2 / (2 * nt)) / (1 + z2 / nt);
    double const half = z * std::sqrt(ph * (1 - ph) / nt + z2 / (4 * nt * nt)) / (1 + z2 / nt);
    low = std::max(0.0, std::min(ph, centre - half));
    high = std::min(1.0, std::max(ph, centre + half));
}

Estimate estimate_percolation(HammingSpace const& space, double p, std::uint64_t trials,
                              std::uint64_t master_seed, int workers)
{
    if (trials < 1)
        throw InputDomainError("trials must be at least 1");
    if (!(p >= 0 && p <= 1))
        throw InputDomainError("p must lie in [0, 1]");
    space.size();
    workers = std::max(1, workers);
    auto const nw = static_cast<std::uint64_t>(std::min<std::uint64_t>(workers, trials));

    auto run = [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t hits = 0;
        for (std::uint64_t t = begin; t < end; ++t)
            hits += percolates(sample_infected(space, p, stream_seed(master_seed, t)));
        return hits;
    };

    std::vector<std::uint64_t> partial(nw, 0);
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_lock;
    for (std::uint64_t w = 0; w < nw; ++w)
    {
        std::uint64_t begin = trials * w / nw;
        std::uint64_t end = trials * (w + 1) / nw;
        pool.emplace_back([&, w, begin, end]() {
            try
            {
                partial[w] = run(begin, end);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> g(failure_lock);
                failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);

    Estimate e;
    e.p = p;
    e.trials = trials;
    for (auto h : partial)
        e.hits += h;
    e.p_hat = static_cast<double>(e.hits) / static_cast<double>(trials);
    e.master_seed = master_seed;
    wilson_interval(e.hits, e.trials, e.ci_low, e.ci_high);
    return e;
}

namespace {

std::string describe(Estimate const& e)
{
    std::ostringstream os;
    os.precision(6);
    os << "p=" << e.p << " p_hat=" << e.p_hat << " (" << e.hits << "/" << e.trials << ")";
    return os.str();
}

} // namespace

PcResult find_pc(HammingSpace const& space, double target, double rel_tol,
                 std::uint64_t trials_per_probe, std::uint64_t master_seed, int workers)
{
    if (!(target > 0 && target <= 1))
        throw InputDomainError("target must lie in (0, 1]");
    if (!(rel_tol >= 1e-3))
        throw InputDomainError("rel_tol must be at least 1e-3");
    ThresholdParams tp = parameters(space.n(), space.k());
    double lo = std::exp(static_cast<double>(tp.p_star.ln())) / 100;
    double hi = std::min(1.0, 100 * std::exp(static_cast<double>(tp.p_upper_star.ln())));
    if (!(lo > 0))
        throw CapabilityError("lower bracket underflows double precision");

    PcResult r;
    auto probe = [&](double p) {
        ++r.probes;
        return estimate_percolation(space, p, trials_per_probe, master_seed, workers);
    };
    Estimate elo = probe(lo);
    for (int a = 0; a < 6 && elo.p_hat >= target; ++a)
    {
        lo /= 10;
        ++r.expansions;
        elo = probe(lo);
    }
    Estimate ehi = probe(hi);
    for (int a = 0; a < 6 && ehi.p_hat <= target && hi < 1; ++a)
    {
        hi = std::min(1.0, hi * 10);
        ++r.expansions;
        ehi = probe(hi);
    }
    if (!(elo.p_hat < target && ehi.p_hat > target))
        throw BracketError("bracket does not separate the target: low " + describe(elo) + ", high "
                               + describe(ehi),
                           elo, ehi);

    while (hi / lo >= 1 + rel_tol)
    {
        double mid = std::sqrt(lo * hi);
        if (probe(mid).p_hat >= target)
            hi = mid;
        else
            lo = mid;
    }
    r.bracket_low = lo;
    r.bracket_high = hi;
    r.p_c = std::sqrt(lo * hi);
    return r;
}

SweepResult sweep(HammingSpace const& space, std::vector<double> grid, std::uint64_t trials,
                  std::uint64_t master_seed, int workers)
{
    if (grid.empty())
        throw InputDomainError("p grid is empty");
    SweepResult out;
    std::vector<double> unique;
    for (double p : grid)
    {
        if (std::find(unique.begin(), unique.end(), p) != unique.end())
        {
            std::ostringstream os;
            os.precision(17);
            os << "duplicate grid point " << p << " removed";
            out.warnings.push_back(os.str());
            continue;
        }
        unique.push_back(p);
    }
    if (!std::is_sorted(unique.begin(), unique.end()))
        throw InputDomainError("p grid must be ascending");
    for (double p : unique)
        out.rows.push_back(estimate_percolation(space, p, trials, master_seed, workers));
    for (std::size_t a = 1; a < out.rows.size(); ++a)
        out.isotonic_violations += out.rows[a].p_hat < out.rows[a - 1].p_hat;
    return out;
}

std::vector<bool> coupled_trial(HammingSpace const& space, std::vector<double> const& grid,
                                std::uint64_t seed)
{
    if (!space.packable() || space.size() > (std::uint64_t(1) << 22))
        throw CapabilityError("coupled trials need k^n <= 2^22");
    SplitMix64 gen(seed);
    std::vector<double> u(space.size());
    for (auto& x : u)
        x = uniform_open01(gen);
    std::vector<bool> out;
    for (double p : grid)
    {
        std::vector<Vertex> vs;
        for (Vertex v = 0; v < u.size(); ++v)
            if (u[v] < p)
                vs.push_back(v);
        out.push_back(percolates(InfectionConfig(space, std::move(vs))));
    }
    return out;
}

int default_workers()
{
    if (char const* env = std::getenv("HAMPERC_WORKERS"))
    {
        int w = std::atoi(env);
        if (w >= 1)
            return w;
    }
    return 1;
}

} // namespace hamperc
