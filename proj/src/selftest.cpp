#include "hamperc/bounds.hpp"
#include "hamperc/cli.hpp"
#include "hamperc/engine.hpp"
#include "hamperc/errors.hpp"
#include "hamperc/oracle.hpp"
#include "hamperc/projection.hpp"
#include "hamperc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

namespace hamperc::cli {
namespace {

BigCount binom_off_by_one(std::int64_t a, std::int64_t b)
{
    return binom(a + 1, b);
}

// Empty string means pass; anything else is the failure detail.
using Check = std::function<std::string()>;

std::string str(BigCount const& c)
{
    return c.str();
}

Projection random_projection(HammingSpace const& space, SplitMix64& g)
{
    std::uint64_t mask = 0;
    for (int i = 0; i < space.n(); ++i)
        if (g() & 1)
            mask |= std::uint64_t(1) << i;
    return Projection::make(space, mask, uniform_below(g, space.size()));
}

InfectionConfig random_seed(HammingSpace const& space, SplitMix64& g, std::size_t max_size)
{
    std::size_t m = 1 + uniform_below(g, max_size);
    std::vector<Vertex> vs;
    for (std::size_t a = 0; a < m; ++a)
        vs.push_back(uniform_below(g, space.size()));
    return InfectionConfig(space, vs);
}

std::vector<Projection> all_projections(HammingSpace const& space)
{
    std::vector<Projection> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << space.n()); ++mask)
        for (Vertex v = 0; v < space.size(); ++v)
        {
            Projection P = Projection::make(space, mask, v);
            if (P.base == v)
                out.push_back(P);
        }
    return out;
}

} // namespace

int selftest(SelftestOptions const& opts, std::ostream& out)
{
    if (!opts.fault.empty() && opts.fault != "u-binom")
        throw InputDomainError("unknown fault '" + opts.fault + "'");
    BinomFn quad_binom = opts.fault == "u-binom" ? &binom_off_by_one : &binom;

    std::vector<std::pair<std::string, Check>> checks;

    for (auto [n, k, ell] : {std::tuple{2, 2, 1}, std::tuple{4, 2, 1}, std::tuple{4, 2, 2},
                             std::tuple{3, 3, 1}, std::tuple{2, 3, 1}})
        checks.emplace_back("sequence count formula = enumeration (n=" + std::to_string(n) + ",k="
                                + std::to_string(k) + ",ell=" + std::to_string(ell) + ")",
                            [n, k, ell]() -> std::string {
                                BigCount a = seq_count(n, k, ell);
                                BigCount b = oracle::enumerate_spanning_sequences(HammingSpace(n, k), ell);
                                return a == b ? "" : "formula " + str(a) + ", enumeration " + str(b);
                            });

    for (int m = 1; m <= 3; ++m)
        for (int k : {2, 3})
            checks.emplace_back("quadruple formula = enumeration (m=" + std::to_string(m) + ",k="
                                    + std::to_string(k) + ")",
                                [m, k, quad_binom]() -> std::string {
                                    for (int t = 1; t <= m; ++t)
                                    {
                                        auto counts = oracle::enumerate_quadruples(m, k, t);
                                        for (auto const& [idx, c] : counts)
                                            if (!is_admissible(m, t, idx))
                                                return "oracle found an inadmissible index";
                                        for (auto const& idx : admissible_indices(m, t))
                                        {
                                            auto it = counts.find(idx);
                                            BigCount o = it == counts.end() ? BigCount(0) : it->second;
                                            BigCount f = count_quadruples(m, k, t, idx, quad_binom);
                                            if (o != f)
                                            {
                                                std::ostringstream os;
                                                os << "t=" << t << " index (" << idx.ell << "," << idx.i << ","
                                                   << idx.j << "," << idx.d << "): formula " << f
                                                   << ", enumeration " << o;
                                                return os.str();
                                            }
                                        }
                                    }
                                    return "";
                                });

    checks.emplace_back("U in exact and log arithmetic agree (n=64)", []() -> std::string {
        int t = parameters(64, 2).D;
        for (int k : {2, 3, 16})
            for (auto const& idx : admissible_indices(64, t))
            {
                BigCount exact = count_quadruples(64, k, t, idx);
                LogNumber logv = count_quadruples_log(64, k, t, idx);
                if (exact == 0 ? !logv.is_zero()
                               : std::abs(static_cast<double>(LogNumber::from_count(exact).ln() - logv.ln()))
                                     > 1e-10 * std::max<double>(1, std::abs(static_cast<double>(logv.ln()))))
                    return "mismatch at k=" + std::to_string(k);
            }
        return "";
    });

    for (auto const& space : {HammingSpace(2, 2), HammingSpace(3, 2), HammingSpace(4, 2), HammingSpace(2, 3),
                              HammingSpace(2, 4), HammingSpace(std::vector<int>{4, 2}), HammingSpace(5, 2)})
        checks.emplace_back("engine percolation counts = exact polynomial (" + space.name() + ")",
                            [space]() -> std::string {
                                auto poly = oracle::exact_percolation_polynomial(space);
                                std::size_t N = space.size();
                                std::vector<BigCount> counts(N + 1, 0);
                                for (std::uint64_t s = 0; s < (std::uint64_t(1) << N); ++s)
                                {
                                    std::vector<Vertex> vs;
                                    for (Vertex v = 0; v < N; ++v)
                                        if ((s >> v) & 1)
                                            vs.push_back(v);
                                    if (vs.empty())
                                        continue;
                                    if (percolates(InfectionConfig(space, vs)))
                                        counts[vs.size()] += 1;
                                }
                                return counts == poly.counts ? "" : "subset counts differ";
                            });

    checks.emplace_back("queue closure = component closure", [seed = opts.seed]() -> std::string {
        SplitMix64 g(stream_seed(seed, 1));
        for (auto const& space : {HammingSpace(6, 2), HammingSpace(4, 3), HammingSpace(3, 5),
                                  HammingSpace(std::vector<int>{4, 4, 2})})
            for (int trial = 0; trial < 300; ++trial)
            {
                InfectionConfig c = random_seed(space, g, 1 + space.size() / 6);
                auto a = closure_queue(c);
                auto b = union_vertices(space, closure_components(c).final);
                if (a != b)
                    return "disagreement on " + space.name();
            }
        return "";
    });

    checks.emplace_back("merge span = closure of union", [seed = opts.seed]() -> std::string {
        SplitMix64 g(stream_seed(seed, 2));
        int checked = 0;
        for (auto const& space : {HammingSpace(5, 2), HammingSpace(4, 3), HammingSpace(3, 4)})
            for (int trial = 0; trial < 2000; ++trial)
            {
                Projection P = random_projection(space, g);
                Projection Q = random_projection(space, g);
                if (projection_distance(space, P, Q) > 2)
                    continue;
                auto vs = vertices(space, P);
                auto ws = vertices(space, Q);
                vs.insert(vs.end(), ws.begin(), ws.end());
                if (closure_queue(InfectionConfig(space, vs)) != vertices(space, merge_span(space, P, Q)))
                    return "mismatch on " + space.name();
                ++checked;
            }
        return checked > 0 ? "" : "no pairs at distance <= 2";
    });

    checks.emplace_back("spanned probability symmetric across projections", []() -> std::string {
        for (auto const& space : {HammingSpace(4, 2), HammingSpace(3, 3)})
        {
            std::vector<std::vector<BigCount>> by_dim(space.n() + 1);
            for (auto const& P : all_projections(space))
            {
                if (vertex_count(space, P) > 24)
                    continue;
                auto c = oracle::spanned_counts(space, P);
                if (by_dim[P.dim()].empty())
                    by_dim[P.dim()] = c;
                else if (by_dim[P.dim()] != c)
                    return "asymmetry on " + space.name();
            }
        }
        return "";
    });

    for (auto const& space : {HammingSpace(2, 2), HammingSpace(3, 2)})
        checks.emplace_back("disjoint-occurrence inequality (" + space.name() + ")", [space]() -> std::string {
            auto projs = all_projections(space);
            for (Rational p : {Rational(1, 4), Rational(1, 2), Rational(3, 4)})
                for (std::size_t a = 0; a < projs.size(); ++a)
                    for (std::size_t b = a; b < projs.size(); ++b)
                    {
                        auto r = oracle::check_vdbk(space, projs[a], projs[b], p);
                        if (!r.holds || r.left > r.right)
                            return "violated for " + format_projection(space, projs[a]) + " and "
                                   + format_projection(space, projs[b]);
                    }
            return "";
        });

    checks.emplace_back("overlap counts within overlap bound", []() -> std::string {
        for (auto [n, k] : {std::pair{2, 2}, std::pair{4, 2}, std::pair{6, 2}, std::pair{3, 3}})
        {
            HammingSpace space(n, k);
            for (int ell = 0; ell <= n / 2; ++ell)
            {
                if (seq_count(n, k, ell) > 100000)
                    continue;
                for (int i = 1; i <= ell + 1; ++i)
                    if (!(LogNumber::from_count(oracle::count_overlaps(space, ell, i)) <= overlap_bound(n, k, ell, i)))
                        return "violated at n=" + std::to_string(n) + " ell=" + std::to_string(ell);
            }
        }
        return "";
    });

    checks.emplace_back("Psi decreasing in its first argument", []() -> std::string {
        for (int n : {30, 64})
            for (int k : {2, 3})
                for (int m = 0; m < 12; ++m)
                    for (int i = 1; i <= m + 1; ++i)
                        for (int s = 0; s <= 12; ++s)
                        {
                            Rational hi, lo;
                            try
                            {
                                hi = psi_exact(m, i, s, n, k);
                                lo = psi_exact(m + 1, i, s, n, k);
                            }
                            catch (InputDomainError const&)
                            {
                                continue;
                            }
                            if (lo > hi)
                                return "violated at m=" + std::to_string(m);
                        }
        return "";
    });

    checks.emplace_back("witnessing quadruples are valid", [seed = opts.seed]() -> std::string {
        SplitMix64 g(stream_seed(seed, 3));
        HammingSpace space(6, 2);
        int found = 0;
        for (int trial = 0; trial < 400; ++trial)
        {
            InfectionConfig c = random_seed(space, g, 12);
            int t = 1 + static_cast<int>(uniform_below(g, space.n()));
            WitnessQuadruple w;
            try
            {
                w = witnessing_quadruple(c, t);
            }
            catch (NotFoundError const&)
            {
                continue;
            }
            ++found;
            if (!(w.H_i.dim() < t && w.H_j.dim() < t && w.H_ell.dim() >= t && w.d <= 2
                  && projection_distance(space, w.H_i, w.H_j) == w.d
                  && merge_span(space, w.H_i, w.H_j) == w.H_ell))
                return "invalid quadruple";
        }
        return found > 0 ? "" : "no witness found";
    });

    checks.emplace_back("sequential spanning dimension is twice the size", [seed = opts.seed]() -> std::string {
        SplitMix64 g(stream_seed(seed, 4));
        for (auto const& space : {HammingSpace(8, 2), HammingSpace(6, 3)})
            for (int trial = 0; trial < 200; ++trial)
            {
                SpanSequence s{space, {uniform_below(g, space.size())}};
                while (true)
                {
                    auto cand = extend_candidates(s);
                    if (cand.empty())
                        break;
                    s.vertices.push_back(cand[uniform_below(g, cand.size())]);
                    auto closed = closure_queue(InfectionConfig(space, s.vertices));
                    auto P = as_projection(space, closed);
                    if (!P || P->dim() != 2 * s.size())
                        return "wrong closure dimension on " + space.name();
                }
            }
        return "";
    });

    int passed = 0, failed = 0, skipped = 0;
    for (auto const& [name, check] : checks)
    {
        std::string detail;
        char const* tag = "PASS";
        try
        {
            detail = check();
            if (!detail.empty())
                tag = "FAIL";
        }
        catch (CapabilityError const& e)
        {
            tag = "SKIP";
            detail = e.what();
        }
        catch (std::exception const& e)
        {
            tag = "FAIL";
            detail = e.what();
        }
        out << tag << "  " << name;
        if (!detail.empty())
            out << ": " << detail;
        out << "\n";
        passed += tag[0] == 'P';
        failed += tag[0] == 'F';
        skipped += tag[0] == 'S';
    }
    out << "selftest: " << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
    return failed == 0 ? kOk : kDiagnostic;
}

} // namespace hamperc::cli
