#include "hamperc/bounds.hpp"
#include "hamperc/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace hamperc;
using real = LogNumber::real;

namespace {

bool close_ln(LogNumber a, real expect_ln, real tol = 1e-12)
{
    return !a.is_zero() && std::abs(a.ln() - expect_ln) <= tol * std::max<real>(1, std::abs(expect_ln));
}

real lnv(real x)
{
    return std::log(x);
}

} // namespace

TEST_CASE("LogNumber arithmetic")
{
    auto two = LogNumber::from_value(2);
    auto three = LogNumber::from_value(3);
    CHECK(close_ln(two * three, lnv(6)));
    CHECK(close_ln(two + three, lnv(5)));
    CHECK(close_ln(three / two, lnv(1.5L)));
    CHECK(close_ln(two.pow(10), lnv(1024)));
    CHECK((two * LogNumber::zero()).is_zero());
    CHECK((LogNumber::zero() + two) == two);
    CHECK(LogNumber::zero() < two);
    CHECK(two < three);
    CHECK(two + three > three);
    CHECK(LogNumber::zero().pow(0) == LogNumber::one());
    CHECK_THROWS_AS(LogNumber::from_value(-1), InputDomainError);
    // Sums far below double range stay exact in log space.
    auto tiny = LogNumber::from_log(-1e6);
    CHECK(close_ln(tiny + tiny, -1e6 + lnv(2)));
}

TEST_CASE("BigCount to LogNumber conversion")
{
    CHECK(close_ln(LogNumber::from_count(big_pow(3, 1000)), 1000 * lnv(3)));
    CHECK(close_ln(LogNumber::from_count(big_pow(10, 50)), 50 * lnv(10)));
    CHECK(close_ln(LogNumber::from_count(BigCount(~std::uint64_t(0))), 64 * lnv(2)));
    CHECK(close_ln(LogNumber::from_count(big_pow(7, 3000) + 1), 3000 * lnv(7)));
    CHECK(close_ln(LogNumber::from_count(12345), lnv(12345)));
    CHECK(LogNumber::from_count(0).is_zero());
    CHECK(close_ln(LogNumber::from_rational(Rational(7, 16)), lnv(7.0L / 16)));
}

TEST_CASE("exact integer helpers")
{
    CHECK(binom(20, 2) == 190);
    CHECK(binom(5, 6) == 0);
    CHECK(binom(5, -1) == 0);
    CHECK(binom(100, 50) == BigCount("100891344545564193334812497256"));
    CHECK(isqrt(99) == 9);
    CHECK(isqrt(100) == 10);
    CHECK(isqrt(4'000'000'000'000LL) == 2'000'000);
}

TEST_CASE("threshold parameters")
{
    auto a = parameters(16, 2);
    CHECK(a.D == 6);
    CHECK(a.L == 8);
    CHECK(a.i_star == 3);
    CHECK(close_ln(a.p_star, -15 * lnv(2)));
    CHECK(std::abs(a.p_upper_star.to_double() - 200 * std::pow(2.0, -15)) < 1e-15);
    CHECK(std::abs(a.p_upper_star.to_double() - 6.1035e-3) < 1e-7);

    auto b = parameters(4, 2);
    CHECK(b.D == 2);
    CHECK(b.L == 2);
    CHECK(b.i_star == 1);

    auto c = parameters(100, 2);
    CHECK(c.D == 18);
    CHECK(c.L == 50);
    CHECK(close_ln(c.p_star, -4 * lnv(10) - 19 * lnv(2)));
    CHECK(std::abs(c.p_star.to_double() / 1.9073e-10 - 1) < 1e-4);

    // floor(2 sqrt n) is taken exactly on perfect squares and just below them
    CHECK(parameters(99, 2).D == 17);
    CHECK(parameters(10000, 3).D == 198);
}

TEST_CASE("c(m)")
{
    CHECK(c_const(0, 10, 2) == LogNumber::one());
    CHECK(close_ln(c_const(1, 10, 2), lnv(9 * std::sqrt(2.0L) / 20)));
    CHECK(std::abs(c_const(1, 10, 2).to_double() - 0.63640) < 1e-5);
    CHECK(close_ln(c_const(15, 100, 2), c_const(14, 100, 2).ln() + lnv(1.25L) + lnv(1.04L)));
    CHECK(close_ln(c_const(2, 5, 3), lnv(0.5L * 0.81L * 2)));
}

TEST_CASE("Phi examples")
{
    for (int k : {2, 3, 7})
    {
        for (double p : {0.5, 1e-3, 1e-9})
        {
            real P = p;
            CHECK(close_ln(phi(0, 50, k, p), lnv(P)));
            CHECK(close_ln(phi(1, 50, k, p), lnv(0.45L * (k - 1) * std::pow(real(k), 0.75L) * std::pow(P, 1.5L))));
            CHECK(close_ln(phi(2, 50, k, p), lnv(0.81L * (k - 1) * (k - 1) * k * k * P * P)));
        }
    }
    CHECK_THROWS_AS(phi(1, 10, 2, 0.0), InputDomainError);
    CHECK_THROWS_AS(phi(1, 10, 2, 1.0), InputDomainError);
}

TEST_CASE("admissible indices")
{
    CHECK(admissible_indices(2, 2)
          == std::vector<AdmissibleIndex>{{2, 0, 0, 2}, {2, 1, 0, 1}, {2, 1, 1, 0}, {2, 1, 1, 1}});
    CHECK(admissible_indices(1, 1) == std::vector<AdmissibleIndex>{{1, 0, 0, 1}});
    CHECK_THROWS_AS(admissible_indices(2, 3), InputDomainError);
    auto big = admissible_indices(9, 4);
    CHECK(std::is_sorted(big.begin(), big.end()));
    // exhaustive filter
    std::vector<AdmissibleIndex> filt;
    for (int ell = 0; ell <= 12; ++ell)
        for (int i = 0; i <= 12; ++i)
            for (int j = 0; j <= 12; ++j)
                for (int d = 0; d <= 3; ++d)
                    if (4 <= ell && ell <= std::min(i + j + d, 9) && j <= i && i < 4 && i + d <= ell && d <= 2)
                        filt.push_back({ell, i, j, d});
    CHECK(big == filt);
}

TEST_CASE("U examples")
{
    CHECK(count_quadruples(2, 2, 2, {2, 0, 0, 2}) == 2);
    CHECK(count_quadruples(2, 2, 2, {2, 1, 1, 0}) == 4);
    CHECK(count_quadruples(2, 2, 2, {2, 1, 0, 2}) == 0);
    CHECK(count_quadruples(2, 2, 2, {2, 1, 0, 1}) == 8);
    CHECK(count_quadruples(2, 2, 2, {2, 1, 1, 1}) == 2);
    CHECK(count_quadruples(1, 2, 1, {1, 0, 0, 1}) == 1);
}

TEST_CASE("U in log space agrees with the exact count")
{
    for (int m : {3, 8, 20, 45})
        for (int k : {2, 3, 11})
            for (int t : {1, m / 2 + 1, m})
                for (auto const& idx : admissible_indices(m, t))
                {
                    BigCount u = count_quadruples(m, k, t, idx);
                    LogNumber lu = count_quadruples_log(m, k, t, idx);
                    REQUIRE(u > 0);
                    CHECK(std::abs(lu.ln() - LogNumber::from_count(u).ln())
                          <= 1e-10 * std::max<real>(1, std::abs(lu.ln())));
                }
}

TEST_CASE("f examples")
{
    LogNumber half = LogNumber::from_value(0.5);
    CHECK(close_ln(f_value(2, 2, half, 2, {2, 0, 0, 2}), lnv(0.5L)));
    real phi1 = 0.45L * std::pow(2.0L, 0.75L) * std::pow(2.0L, -1.5L);
    CHECK(close_ln(f_value(2, 2, half, 2, {2, 1, 1, 0}), lnv(4 * phi1 * phi1)));
    CHECK(f_value(2, 2, half, 2, {2, 1, 0, 2}).is_zero());
}

TEST_CASE("lower bound report")
{
    auto tp = parameters(16, 2);
    auto r = lower_bound_report(16, 2, tp.p_star);
    CHECK(r.D == 6);
    CHECK(r.bottleneck < LogNumber::one());
    CHECK(r.sum_T1 <= LogNumber::from_value(5 * std::sqrt(2.0)) * r.dominant);
    CHECK(close_ln(r.dominant, f_value(16, 2, tp.p_star, 6, {6, 4, 0, 2}).ln()));
    CHECK(close_ln(r.bottleneck, (LogNumber::from_value(5) * r.expected_D).ln()));
    CHECK(r.dominant <= r.expected_D * LogNumber::from_value(std::sqrt(2.0)));

    // The report's sums equal a direct sum over the admissible index list.
    for (int n : {16, 30, 50})
    {
        auto p = parameters(n, 3).p_star;
        auto rep = lower_bound_report(n, 3, p);
        LogNumber t1, t2;
        std::size_t c1 = 0, c2 = 0;
        for (auto const& idx : admissible_indices(n, rep.D))
        {
            LogNumber f = f_value(n, 3, p, rep.D, idx);
            if (idx.ell * idx.ell <= 9 * n)
            {
                t1 += f;
                ++c1;
            }
            else
            {
                t2 += f;
                ++c2;
            }
        }
        CHECK(rep.terms_T1 == c1);
        CHECK(rep.terms_T2 == c2);
        CHECK(close_ln(rep.sum_T1, t1.ln(), 1e-10));
        if (c2)
            CHECK(close_ln(rep.sum_T2, t2.ln(), 1e-10));
        CHECK(close_ln(rep.total_rhs, (rep.bottleneck + rep.sum_T2).ln()));
    }

    auto zero = lower_bound_report(16, 2, LogNumber::zero());
    CHECK(zero.sum_T1.is_zero());
    CHECK(zero.bottleneck.is_zero());
    auto tiny = lower_bound_report(16, 2, LogNumber::from_log(-200));
    CHECK(tiny.total_rhs.ln() < -200);
    CHECK_THROWS_AS(lower_bound_report(1, 2, tp.p_star), InputDomainError);
}

TEST_CASE("sequence counts")
{
    CHECK(seq_extension_count(4, 2, 1) == 6);
    CHECK(seq_extension_count(4, 2, 2) == 4);
    CHECK(seq_extension_count(2, 3, 1) == 4);
    CHECK(seq_count(2, 2, 0) == 4);
    CHECK(seq_count(2, 2, 1) == 4);
    CHECK(seq_count(4, 2, 2) == 384);
    CHECK_THROWS_AS(seq_extension_count(4, 2, 3), InputDomainError);
    CHECK_THROWS_AS(seq_extension_count(4, 2, 0), InputDomainError);
    CHECK_THROWS_AS(seq_count(4, 2, 3), InputDomainError);
    for (int n : {5, 12, 40})
        for (int k : {2, 5})
            for (int ell = 0; ell <= n / 2; ++ell)
                CHECK(close_ln(seq_count_log(n, k, ell), LogNumber::from_count(seq_count(n, k, ell)).ln()));
}

TEST_CASE("expected sequence counts")
{
    CHECK(expected_sequences(2, 2, 1, LogNumber::zero()).is_zero());
    CHECK(close_ln(expected_sequences(2, 2, 1, LogNumber::from_value(0.5)), 0));
    auto tp = parameters(16, 2);
    CHECK(expected_sequences(16, 2, 8, tp.p_upper_star) > LogNumber::zero());
}

TEST_CASE("D-hat")
{
    CHECK(dhat(1, 20, 2) == 190);
    CHECK(dhat(2, 4, 2) == 18);
    for (int j = 1; j < 15; ++j)
    {
        CHECK(dhat(j + 1, 30, 3) >= 3 * dhat(j, 30, 3));
        CHECK(dhat(j, 30, 3) >= seq_extension_count(30, 3, j));
    }
    CHECK_THROWS_AS(dhat(0, 20, 2), InputDomainError);
    CHECK_THROWS_AS(dhat(11, 20, 2), InputDomainError);
}

TEST_CASE("Psi")
{
    for (int m = 0; m < 5; ++m)
        for (int i = 0; i <= m + 1; ++i)
            CHECK(psi(m, i, 0, 20, 2) == LogNumber::one());
    CHECK_THROWS_AS(psi(1, 3, 0, 20, 2), InputDomainError);
    CHECK(close_ln(psi(0, 1, 1, 4, 2), lnv(1.0L / 6)));
    for (int i = 2; i <= 8; ++i)
    {
        LogNumber prod = LogNumber::one();
        for (int j = 1; j <= i - 1; ++j)
            prod /= LogNumber::from_count(dhat(j, 30, 2));
        CHECK(close_ln(psi(0, 1, i - 1, 30, 2), prod.ln()));
    }
    CHECK_THROWS_AS(psi(0, 1, 5, 4, 2), InputDomainError);
}

TEST_CASE("Psi decreases in its first argument")
{
    int checked = 0;
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
                        CHECK(lo <= hi);
                        ++checked;
                    }
    CHECK(checked > 1000);
}

TEST_CASE("overlap bound shape")
{
    CHECK(overlap_bound(2, 2, 1, 2) >= LogNumber::from_value(2));
    CHECK_THROWS_AS(overlap_bound(4, 2, 2, 4), InputDomainError);
    CHECK_THROWS_AS(overlap_bound(4, 2, 3, 1), InputDomainError);
    // For a fixed denominator the bound scales exactly as 8^i.
    for (int i = 1; i <= 8; ++i)
    {
        LogNumber norm = overlap_bound(20, 3, 7, i) * seq_count_log(20, 3, i - 1)
                         / LogNumber::from_value(8).pow(i);
        CHECK(close_ln(norm, (overlap_bound(20, 3, 7, 1) * seq_count_log(20, 3, 0) / LogNumber::from_value(8)).ln()));
    }
}

TEST_CASE("second moment report")
{
    auto z = second_moment_report(16, 2, LogNumber::zero());
    CHECK(z.expected_XL.is_zero());
    CHECK(z.ratio_infinite);

    auto tp = parameters(16, 2);
    auto r = second_moment_report(16, 2, tp.p_upper_star);
    CHECK(r.L == 8);
    CHECK(r.argmin_i - 1 >= 3);
    CHECK(r.argmin_i - 1 <= 4);
    CHECK(r.scaled.size() == 9);
    CHECK(r.odd_case_exact <= r.odd_case_bound);
    CHECK(close_ln(r.ratio_bound, (overlap_constant() * LogNumber::from_value(16).pow(4) / r.min_scaled).ln()));

    // Odd-case defect bound at n = 9, evaluated independently.
    auto t9 = parameters(9, 2);
    auto r9 = second_moment_report(9, 2, t9.p_upper_star);
    real p = std::exp(t9.p_upper_star.ln());
    real direct = 9 * 2 * std::exp(-p * 256);
    CHECK(close_ln(r9.odd_case_bound, lnv(direct), 1e-12));
    CHECK(r9.odd_case_bound.to_double() < 1e-7);
    CHECK(close_ln(r9.odd_case_exact, lnv(18) + 256 * std::log1p(-p), 1e-12));
    CHECK_THROWS_AS(second_moment_report(3, 2, tp.p_star), InputDomainError);
}

TEST_CASE("consecutive Phi ratio bound and c(m) on the grid")
{
    for (int n : {64, 100, 400, 10000})
        for (int k : {2, 3, 16})
        {
            auto tp = parameters(n, k);
            real sqrt_n = std::sqrt(real(n));
            for (int j = 0; j < tp.D; ++j)
            {
                LogNumber ratio = phi(j + 1, n, k, tp.p_star) / phi(j, n, k, tp.p_star);
                real bound = lnv(real(j + 1) / n) + (j + 5 - 2 * sqrt_n) / 2 * lnv(k);
                CHECK(ratio.ln() <= bound);
            }
            for (int m = 1; m < tp.D; ++m)
                CHECK(c_const(m, n, k) <= c_const(m + 1, n, k));
            CHECK(c_const(tp.D, n, k) <= LogNumber::from_value(100));
        }
}

TEST_CASE("Psi in log space matches exact arithmetic")
{
    for (int m = 0; m < 8; ++m)
        for (int i = 1; i <= m + 1; ++i)
            for (int s = 0; s <= 8; ++s)
            {
                Rational exact;
                try
                {
                    exact = psi_exact(m, i, s, 30, 3);
                }
                catch (InputDomainError const&)
                {
                    continue;
                }
                double rel = std::abs(psi(m, i, s, 30, 3).ln() - LogNumber::from_rational(exact).ln());
                CHECK(rel < 1e-12);
            }
}
