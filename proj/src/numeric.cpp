#include "hamperc/numeric.hpp"

#include "hamperc/errors.hpp"

#include <algorithm>

namespace hamperc {

BigCount big_pow(std::uint64_t base, std::uint64_t exp)
{
    return boost::multiprecision::pow(BigCount(base), static_cast<unsigned>(exp));
}

BigCount binom(std::int64_t n, std::int64_t r)
{
    if (n < 0 || r < 0 || r > n)
        return 0;
    r = std::min(r, n - r);
    BigCount result = 1;
    for (std::int64_t i = 1; i <= r; ++i)
    {
        result *= n - r + i;
        result /= i;
    }
    return result;
}

LogNumber LogNumber::from_value(real x)
{
    if (!(x >= 0) || !std::isfinite(x))
        throw InputDomainError("LogNumber requires a finite nonnegative value");
    return x == 0 ? zero() : from_log(std::log(x));
}

LogNumber LogNumber::from_count(BigCount const& c)
{
    if (c < 0)
        throw InputDomainError("LogNumber requires a nonnegative count");
    if (c == 0)
        return zero();
    unsigned bits = boost::multiprecision::msb(c) + 1;
    if (bits <= 64)
        return from_log(std::log(static_cast<real>(static_cast<std::uint64_t>(c))));
    unsigned shift = bits - 64;
    auto top = static_cast<std::uint64_t>(c >> shift);
    return from_log(std::log(static_cast<real>(top)) + shift * std::log(real(2)));
}

LogNumber LogNumber::from_rational(Rational const& q)
{
    if (q < 0)
        throw InputDomainError("LogNumber requires a nonnegative rational");
    return from_count(boost::multiprecision::numerator(q))
           / from_count(boost::multiprecision::denominator(q));
}

LogNumber& LogNumber::operator+=(LogNumber const& o)
{
    if (o.zero_)
        return *this;
    if (zero_)
        return *this = o;
    real hi = std::max(ln_, o.ln_);
    real lo = std::min(ln_, o.ln_);
    if (std::isinf(hi))
    {
        ln_ = hi;
        return *this;
    }
    ln_ = hi + std::log1p(std::exp(lo - hi));
    return *this;
}

LogNumber::real log_factorial(std::int64_t n)
{
    return std::lgamma(static_cast<LogNumber::real>(n) + 1);
}

LogNumber::real log_binom(std::int64_t n, std::int64_t r)
{
    if (n < 0 || r < 0 || r > n)
        return -std::numeric_limits<LogNumber::real>::infinity();
    return log_factorial(n) - log_factorial(r) - log_factorial(n - r);
}

std::string to_string(BigCount const& c)
{
    return c.str();
}

} // namespace hamperc
