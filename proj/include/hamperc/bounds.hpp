#ifndef HAMPERC_BOUNDS_HPP
#define HAMPERC_BOUNDS_HPP

#include "numeric.hpp"

#include <cstddef>
#include <vector>

namespace hamperc {

struct ThresholdParams
{
    int n;
    int k;
    LogNumber p_star;       // n^-2 k^(1 - 2 sqrt n)
    LogNumber p_upper_star; // 200 p_star
    int D;                  // floor(2 sqrt n) - 2, the critical dimension
    int L;                  // floor(n / 2), the longest sequence size
    int i_star;             // floor(sqrt n) - 1
};

ThresholdParams parameters(int n, int k);

// floor(sqrt(x)) in exact integer arithmetic.
long long isqrt(long long x);

LogNumber c_const(int m, int n, int k);

/**
 * c(m) p^(m/2+1) m! 2^(-m/2) (k-1)^m k^((m^2+2m)/4).
 *
 * The upper bound on the probability that an m-dimensional projection is
 * internally spanned. It is proven for m <= D only; callers evaluating
 * larger m should label the output accordingly. Throws InputDomainError
 * unless 0 < p < 1.
 */
LogNumber phi(int m, int n, int k, LogNumber p);
LogNumber phi(int m, int n, int k, double p);

struct AdmissibleIndex
{
    int ell;
    int i;
    int j;
    int d;

    friend bool operator==(AdmissibleIndex const&, AdmissibleIndex const&) = default;
    friend auto operator<=>(AdmissibleIndex const&, AdmissibleIndex const&) = default;
};

// t <= ell <= min(i+j+d, dim), j <= i < t, i+d <= ell, d in {0,1,2}.
bool is_admissible(int dim, int t, AdmissibleIndex const& idx);
// Lexicographic in (ell, i, j, d). Requires 1 <= t <= dim.
std::vector<AdmissibleIndex> admissible_indices(int dim, int t);

using BinomFn = BigCount (*)(std::int64_t, std::int64_t);

/**
 * Number of candidate quadruples with the given indices inside an
 * m-dimensional Hamming graph at threshold t:
 *
 *   C(m,ell) C(ell,i) C(ell-i,d) C(i,i+j+d-ell) k^(m+ell-i-j-d) (k-1)^d,
 *
 * halved when i = j. Zero for inadmissible indices. The binomial can be
 * substituted for mutation testing.
 */
BigCount count_quadruples(int m, int k, int t, AdmissibleIndex const& idx, BinomFn binomial = &binom);
// The same count evaluated in log space.
LogNumber count_quadruples_log(int m, int k, int t, AdmissibleIndex const& idx);

// U(idx) Phi(i) Phi(j) on the n-dimensional graph.
LogNumber f_value(int n, int k, LogNumber p, int t, AdmissibleIndex const& idx);

struct LowerBoundReport
{
    int D;
    LogNumber sum_T1;         // ell <= 3 sqrt(n)
    LogNumber sum_T2;         // ell > 3 sqrt(n)
    std::size_t terms_T1 = 0; // admissible indices with nonzero U
    std::size_t terms_T2 = 0;
    LogNumber dominant;       // f(D, D-2, 0, 2)
    LogNumber expected_D;     // C(n,D) k^(n-D+1/2) Phi(D)
    LogNumber bottleneck;     // 5 C(n,D) k^(n-D+1/2) Phi(D)
    LogNumber total_rhs;      // bottleneck + sum_T2
};

// t = D on the full n-dimensional graph. Throws InputDomainError if D < 1.
LowerBoundReport lower_bound_report(int n, int k, LogNumber p);

// C_ell = C(n-2ell+2, 2) (k-1)^2 k^(2ell-2), for 1 <= ell <= floor(n/2).
BigCount seq_extension_count(int n, int k, int ell);
// |S_ell| = n!/(n-2ell)! (k-1)^(2ell) 2^(-ell) k^(n+ell^2-ell).
BigCount seq_count(int n, int k, int ell);
LogNumber seq_count_log(int n, int k, int ell);
// p^(ell+1) |S_ell|.
LogNumber expected_sequences(int n, int k, int ell, LogNumber p);

// D-hat_1 = C_1, D-hat_j = max(C_j, 3 D-hat_(j-1)), 1 <= j <= floor(n/2).
BigCount dhat(int j, int n, int k);

/**
 * Psi(m, i, s) from the overlap estimates. Equals 1 for s = 0; otherwise a
 * product of (2m-i+2-j)^2 / D-hat_j^2 and 1 / D-hat_j factors, with the
 * branch chosen by m-i+1 < s/2. Throws InputDomainError when i > m+1 or a D-hat index
 * falls outside [1, floor(n/2)].
 */
LogNumber psi(int m, int i, int s, int n, int k);
// The same product in exact arithmetic.
Rational psi_exact(int m, int i, int s, int n, int k);

// Explicit constant in the overlap bound: 4 * 3^42.
LogNumber overlap_constant();
// 4 * 3^42 * 8^i (ell+1)^3 |S_ell|^2 / |S_(i-1)|, for 1 <= i <= ell+1 <= L+1.
LogNumber overlap_bound(int n, int k, int ell, int i);

struct SecondMomentReport
{
    int L;
    LogNumber expected_XL;
    LogNumber min_scaled;     // min over i in [1, L+1] of 8^-i E[X_(i-1)]
    int argmin_i = 0;         // smallest minimizing i
    LogNumber ratio_bound;    // 4 * 3^42 * n^4 / min_scaled
    bool ratio_infinite = false;
    LogNumber odd_case_exact; // n k (1-p)^((k-1) k^(n-1))
    LogNumber odd_case_bound; // n k exp(-p (k-1) k^(n-1))
    std::vector<LogNumber> scaled; // 8^-i E[X_(i-1)] for i = 1..L+1
};

// Requires n >= 4 and 0 <= p < 1.
SecondMomentReport second_moment_report(int n, int k, LogNumber p);

} // namespace hamperc

#endif
