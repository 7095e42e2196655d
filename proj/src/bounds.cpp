#include "hamperc/bounds.hpp"

#include "hamperc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hamperc {
namespace {

using real = LogNumber::real;

real const ln2 = std::log(real(2));

void require(bool ok, char const* what)
{
    if (!ok)
        throw InputDomainError(what);
}

real ln_int(long long x)
{
    return std::log(static_cast<real>(x));
}

// (k-1)^e as a log; k = 2 contributes nothing.
real ln_km1(int k, real e)
{
    return e == 0 ? 0 : e * ln_int(k - 1);
}

// ln binom over a cached ln-factorial table.
class LogBinomTable
{
  public:
    explicit LogBinomTable(int n_max) : lf_(n_max + 1)
    {
        for (int a = 0; a <= n_max; ++a)
            lf_[a] = log_factorial(a);
    }

    real operator()(int n, int r) const
    {
        return lf_[n] - lf_[r] - lf_[n - r];
    }

    real fact(int a) const { return lf_[a]; }

  private:
    std::vector<real> lf_;
};

bool in_T1(int ell, int n)
{
    return static_cast<long long>(ell) * ell <= 9LL * n;
}

} // namespace

long long isqrt(long long x)
{
    if (x < 0)
        throw InputDomainError("isqrt of a negative number");
    auto r = static_cast<long long>(std::sqrt(static_cast<long double>(x)));
    while (r * r > x)
        --r;
    while ((r + 1) * (r + 1) <= x)
        ++r;
    return r;
}

ThresholdParams parameters(int n, int k)
{
    require(n >= 1 && k >= 2, "parameters need n >= 1 and k >= 2");
    ThresholdParams tp;
    tp.n = n;
    tp.k = k;
    real sqrt_n = std::sqrt(static_cast<real>(n));
    tp.p_star = LogNumber::from_log(-2 * ln_int(n) + (1 - 2 * sqrt_n) * ln_int(k));
    tp.p_upper_star = tp.p_star * LogNumber::from_value(200);
    tp.D = static_cast<int>(isqrt(4LL * n)) - 2;
    tp.L = n / 2;
    tp.i_star = static_cast<int>(isqrt(n)) - 1;
    return tp;
}

LogNumber c_const(int m, int n, int k)
{
    require(m >= 0, "c(m) needs m >= 0");
    require(n >= 1 && k >= 2, "c(m) needs n >= 1 and k >= 2");
    if (m == 0)
        return LogNumber::one();
    real const base = std::log(9 * std::sqrt(real(2)) / 10);
    int head = std::min(m, 14);
    real ln_c = -ln2 + head * base;
    for (int a = 15; a <= m; ++a)
    {
        ln_c += std::log1p(std::pow(static_cast<real>(k), -(a - 11) / real(2)));
        ln_c += std::log1p(real(4) / n);
    }
    return LogNumber::from_log(ln_c);
}

LogNumber phi(int m, int n, int k, LogNumber p)
{
    require(m >= 0, "Phi(m) needs m >= 0");
    require(!p.is_zero() && p.ln() < 0, "Phi needs 0 < p < 1");
    real ln = c_const(m, n, k).ln();
    ln += (real(m) / 2 + 1) * p.ln();
    ln += log_factorial(m);
    ln -= real(m) / 2 * ln2;
    ln += ln_km1(k, m);
    ln += (real(m) * m + 2 * real(m)) / 4 * ln_int(k);
    return LogNumber::from_log(ln);
}

LogNumber phi(int m, int n, int k, double p)
{
    require(p > 0 && p < 1, "Phi needs 0 < p < 1");
    return phi(m, n, k, LogNumber::from_value(p));
}

bool is_admissible(int dim, int t, AdmissibleIndex const& x)
{
    if (x.ell < 0 || x.i < 0 || x.j < 0 || x.d < 0 || x.d > 2)
        return false;
    return t <= x.ell && x.ell <= std::min(x.i + x.j + x.d, dim) && x.j <= x.i && x.i < t
           && x.i + x.d <= x.ell;
}

std::vector<AdmissibleIndex> admissible_indices(int dim, int t)
{
    require(1 <= t && t <= dim, "admissible indices need 1 <= t <= dim");
    std::vector<AdmissibleIndex> out;
    for (int ell = t; ell <= dim; ++ell)
        for (int i = 0; i < t; ++i)
            for (int j = 0; j <= i; ++j)
                for (int d = 0; d <= 2; ++d)
                    if (is_admissible(dim, t, {ell, i, j, d}))
                        out.push_back({ell, i, j, d});
    return out;
}

BigCount count_quadruples(int m, int k, int t, AdmissibleIndex const& x, BinomFn binomial)
{
    if (!is_admissible(m, t, x))
        return 0;
    BigCount u = binomial(m, x.ell) * binomial(x.ell, x.i) * binomial(x.ell - x.i, x.d)
                 * binomial(x.i, x.i + x.j + x.d - x.ell);
    u *= big_pow(k, m + x.ell - x.i - x.j - x.d);
    u *= big_pow(k - 1, x.d);
    if (x.i == x.j)
        u /= 2;
    return u;
}

LogNumber count_quadruples_log(int m, int k, int t, AdmissibleIndex const& x)
{
    if (!is_admissible(m, t, x))
        return LogNumber::zero();
    real ln = log_binom(m, x.ell) + log_binom(x.ell, x.i) + log_binom(x.ell - x.i, x.d)
              + log_binom(x.i, x.i + x.j + x.d - x.ell);
    ln += (m + x.ell - x.i - x.j - x.d) * ln_int(k) + ln_km1(k, x.d);
    if (x.i == x.j)
        ln -= ln2;
    return LogNumber::from_log(ln);
}

LogNumber f_value(int n, int k, LogNumber p, int t, AdmissibleIndex const& x)
{
    LogNumber u = count_quadruples_log(n, k, t, x);
    if (u.is_zero())
        return u;
    return u * phi(x.i, n, k, p) * phi(x.j, n, k, p);
}

LowerBoundReport lower_bound_report(int n, int k, LogNumber p)
{
    ThresholdParams tp = parameters(n, k);
    require(tp.D >= 1, "lower bound report needs D >= 1");
    int const D = tp.D;
    LowerBoundReport r;
    r.D = D;
    if (p.is_zero())
        return r;

    std::vector<LogNumber> ph(D + 1);
    for (int m = 0; m <= D; ++m)
        ph[m] = phi(m, n, k, p);
    LogBinomTable lb(n);
    real const lk = ln_int(k);
    real const lkm1 = k == 2 ? 0 : ln_int(k - 1);

    // Only t = D, so i < D and ell <= i + j + d stays below 2D + 2.
    for (int i = 0; i < D; ++i)
    {
        for (int j = 0; j <= i; ++j)
        {
            real const lphi = ph[i].ln() + ph[j].ln() - (i == j ? ln2 : 0);
            for (int d = 0; d <= 2; ++d)
            {
                int lo = std::max(D, i + d);
                int hi = std::min(i + j + d, n);
                for (int ell = lo; ell <= hi; ++ell)
                {
                    real ln = lb(n, ell) + lb(ell, i) + lb(ell - i, d) + lb(i, i + j + d - ell)
                              + (n + ell - i - j - d) * lk + d * lkm1 + lphi;
                    if (in_T1(ell, n))
                    {
                        r.sum_T1 += LogNumber::from_log(ln);
                        ++r.terms_T1;
                    }
                    else
                    {
                        r.sum_T2 += LogNumber::from_log(ln);
                        ++r.terms_T2;
                    }
                }
            }
        }
    }
    r.dominant = f_value(n, k, p, D, {D, D - 2, 0, 2});
    r.expected_D = LogNumber::from_log(lb(n, D) + (n - D + real(0.5)) * lk) * ph[D];
    r.bottleneck = LogNumber::from_value(5) * r.expected_D;
    r.total_rhs = r.bottleneck + r.sum_T2;
    return r;
}

BigCount seq_extension_count(int n, int k, int ell)
{
    require(n >= 1 && k >= 2, "C_ell needs n >= 1 and k >= 2");
    require(1 <= ell && ell <= n / 2, "C_ell needs 1 <= ell <= floor(n/2)");
    return binom(n - 2 * ell + 2, 2) * big_pow(k - 1, 2) * big_pow(k, 2 * ell - 2);
}

BigCount seq_count(int n, int k, int ell)
{
    require(n >= 1 && k >= 2, "|S_ell| needs n >= 1 and k >= 2");
    require(0 <= ell && ell <= n / 2, "|S_ell| needs 0 <= ell <= floor(n/2)");
    BigCount falling = 1;
    for (int a = n - 2 * ell + 1; a <= n; ++a)
        falling *= a;
    BigCount closed = falling * big_pow(k - 1, 2 * ell) * big_pow(k, n + ell * ell - ell);
    closed >>= ell;

    BigCount product = big_pow(k, n);
    for (int j = 1; j <= ell; ++j)
        product *= seq_extension_count(n, k, j);
    if (product != closed)
        throw std::logic_error("|S_ell| closed form disagrees with k^n prod C_j");
    return closed;
}

LogNumber seq_count_log(int n, int k, int ell)
{
    require(n >= 1 && k >= 2, "|S_ell| needs n >= 1 and k >= 2");
    require(0 <= ell && ell <= n / 2, "|S_ell| needs 0 <= ell <= floor(n/2)");
    real ln = log_factorial(n) - log_factorial(n - 2 * ell) + ln_km1(k, 2 * ell) - ell * ln2
              + (n + static_cast<real>(ell) * ell - ell) * ln_int(k);
    return LogNumber::from_log(ln);
}

LogNumber expected_sequences(int n, int k, int ell, LogNumber p)
{
    LogNumber s = seq_count_log(n, k, ell);
    require(p.is_zero() || p.ln() <= 0, "p must lie in [0, 1]");
    return p.pow(ell + 1) * s;
}

namespace {

std::vector<BigCount> dhat_table(int upto, int n, int k)
{
    std::vector<BigCount> t(upto + 1);
    for (int j = 1; j <= upto; ++j)
    {
        BigCount c = seq_extension_count(n, k, j);
        BigCount tripled = 3 * t[j - 1];
        t[j] = j == 1 ? c : std::max(c, tripled);
    }
    return t;
}

} // namespace

BigCount dhat(int j, int n, int k)
{
    require(n >= 2 && k >= 2, "D-hat needs n >= 2 and k >= 2");
    require(1 <= j && j <= n / 2, "D-hat needs 1 <= j <= floor(n/2)");
    return dhat_table(j, n, k)[j];
}

namespace {

template<class T>
T psi_impl(int m, int i, int s, int n, int k, T (*from_count)(BigCount const&))
{
    require(m >= 0 && i >= 0 && s >= 0, "Psi needs nonnegative arguments");
    // Two m-step sequences share at most m+1 vertices.
    require(i <= m + 1, "Psi needs i <= m + 1");
    T out = from_count(1);
    if (s == 0)
        return out;
    int const L = n / 2;
    std::vector<BigCount> const table = dhat_table(L, n, k);
    auto dh = [&](int j) {
        if (j < 1 || j > L)
            throw InputDomainError("Psi needs D-hat_" + std::to_string(j)
                                   + " outside 1.." + std::to_string(L));
        return from_count(table[j]);
    };
    auto sq = [&](int j) {
        T q = from_count(2 * m - i + 2 - j) / dh(j);
        return q * q;
    };

    if (2 * (m - i + 1) < s)
    {
        for (int j = m + 1; j <= 2 * m - i + 1; ++j)
            out *= sq(j);
        for (int j = 2 * m - i + 2; j <= s + i - 1; ++j)
            out /= dh(j);
    }
    else
    {
        int const h = s / 2;
        for (int j = m + 1; j <= m + h; ++j)
            out *= sq(j);
        if (s % 2 == 1)
            out *= from_count(2 * (m - h - i + 1) + 1) / dh(m + h + 1);
    }
    return out;
}

LogNumber log_of(BigCount const& c)
{
    return LogNumber::from_count(c);
}

Rational rational_of(BigCount const& c)
{
    return Rational(c);
}

} // namespace

LogNumber psi(int m, int i, int s, int n, int k)
{
    return psi_impl<LogNumber>(m, i, s, n, k, &log_of);
}

Rational psi_exact(int m, int i, int s, int n, int k)
{
    return psi_impl<Rational>(m, i, s, n, k, &rational_of);
}

LogNumber overlap_constant()
{
    return LogNumber::from_log(std::log(real(4)) + 42 * std::log(real(3)));
}

LogNumber overlap_bound(int n, int k, int ell, int i)
{
    require(1 <= i && i <= ell + 1 && ell + 1 <= n / 2 + 1,
            "overlap bound needs 1 <= i <= ell+1 <= floor(n/2)+1");
    LogNumber s_ell = seq_count_log(n, k, ell);
    return overlap_constant() * LogNumber::from_log(i * std::log(real(8)) + 3 * ln_int(ell + 1))
           * s_ell * s_ell / seq_count_log(n, k, i - 1);
}

SecondMomentReport second_moment_report(int n, int k, LogNumber p)
{
    require(n >= 4 && k >= 2, "second moment report needs n >= 4 and k >= 2");
    require(p.is_zero() || p.ln() < 0, "second moment report needs 0 <= p < 1");
    SecondMomentReport r;
    r.L = n / 2;
    r.expected_XL = expected_sequences(n, k, r.L, p);
    for (int i = 1; i <= r.L + 1; ++i)
    {
        LogNumber v = expected_sequences(n, k, i - 1, p) / LogNumber::from_log(i * std::log(real(8)));
        r.scaled.push_back(v);
        if (i == 1 || v < r.min_scaled)
        {
            r.min_scaled = v;
            r.argmin_i = i;
        }
    }
    LogNumber numer = overlap_constant() * LogNumber::from_value(n).pow(4);
    if (r.min_scaled.is_zero())
    {
        r.ratio_infinite = true;
        r.ratio_bound = LogNumber::from_log(std::numeric_limits<real>::infinity());
    }
    else
    {
        r.ratio_bound = numer / r.min_scaled;
    }

    // Exponent (k-1) k^(n-1), kept as a log to survive large n.
    real const ln_expo = ln_km1(k, 1) + (n - 1) * ln_int(k);
    real const ln_nk = ln_int(n) + ln_int(k);
    if (p.is_zero())
    {
        r.odd_case_exact = LogNumber::from_log(ln_nk);
        r.odd_case_bound = r.odd_case_exact;
    }
    else
    {
        real const pv = std::exp(p.ln());
        r.odd_case_exact = LogNumber::from_log(ln_nk + std::exp(ln_expo) * std::log1p(-pv));
        r.odd_case_bound = LogNumber::from_log(ln_nk - std::exp(ln_expo + p.ln()));
    }
    return r;
}

} // namespace hamperc
