#ifndef HAMPERC_NUMERIC_HPP
#define HAMPERC_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace hamperc {

using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigCount big_pow(std::uint64_t base, std::uint64_t exp);
BigCount binom(std::int64_t n, std::int64_t r);

/**
 * Nonnegative real stored as its natural logarithm in long double.
 *
 * Zero is a distinguished state. There is no subtraction.
 */
class LogNumber
{
  public:
    using real = long double;

    LogNumber() = default; // zero

    static LogNumber zero() { return {}; }
    static LogNumber one() { return from_log(0); }
    static LogNumber from_log(real ln)
    {
        LogNumber r;
        r.zero_ = false;
        r.ln_ = ln;
        return r;
    }
    // Throws InputDomainError on negative or non-finite input.
    static LogNumber from_value(real x);
    static LogNumber from_count(BigCount const& c);
    static LogNumber from_rational(Rational const& q);

    bool is_zero() const { return zero_; }
    real ln() const { return zero_ ? -std::numeric_limits<real>::infinity() : ln_; }
    real log10() const { return ln() / std::log(real(10)); }
    // May underflow to 0 or overflow to infinity.
    double to_double() const { return zero_ ? 0.0 : static_cast<double>(std::exp(ln_)); }

    LogNumber& operator*=(LogNumber const& o)
    {
        if (o.zero_)
            zero_ = true;
        if (!zero_)
            ln_ += o.ln_;
        return *this;
    }
    // Division by zero yields infinity, by convention of report code.
    LogNumber& operator/=(LogNumber const& o)
    {
        if (zero_)
            return *this;
        ln_ = o.zero_ ? std::numeric_limits<real>::infinity() : ln_ - o.ln_;
        return *this;
    }
    LogNumber& operator+=(LogNumber const& o);

    LogNumber pow(real e) const
    {
        if (zero_)
            return e == 0 ? one() : zero();
        return from_log(ln_ * e);
    }

    friend LogNumber operator*(LogNumber a, LogNumber const& b) { return a *= b; }
    friend LogNumber operator/(LogNumber a, LogNumber const& b) { return a /= b; }
    friend LogNumber operator+(LogNumber a, LogNumber const& b) { return a += b; }

    friend bool operator<(LogNumber const& a, LogNumber const& b)
    {
        if (a.zero_ || b.zero_)
            return a.zero_ && !b.zero_;
        return a.ln_ < b.ln_;
    }
    friend bool operator>(LogNumber const& a, LogNumber const& b) { return b < a; }
    friend bool operator<=(LogNumber const& a, LogNumber const& b) { return !(b < a); }
    friend bool operator>=(LogNumber const& a, LogNumber const& b) { return !(a < b); }
    friend bool operator==(LogNumber const& a, LogNumber const& b)
    {
        return a.zero_ == b.zero_ && (a.zero_ || a.ln_ == b.ln_);
    }

  private:
    bool zero_ = true;
    real ln_ = 0;
};

// ln(n!) via lgammal.
LogNumber::real log_factorial(std::int64_t n);
// ln binom(n, r); -inf when r is outside [0, n].
LogNumber::real log_binom(std::int64_t n, std::int64_t r);

std::string to_string(BigCount const& c);

} // namespace hamperc

#endif
