#pragma once

// Exact integer and rational arithmetic used for every count and bound.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace subposet {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when an operation's precondition is violated.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline BigInt factorial(int n)
{
    if (n < 0)
        throw PreconditionError("factorial of negative number");
    BigInt r = 1;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

/// C(n,k); zero outside 0 <= k <= n.
inline BigInt binomial(int n, int k)
{
    if (n < 0)
        throw PreconditionError("binomial: n must be non-negative");
    if (k < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

/// Same as binomial() for small arguments that fit a machine word.
inline std::uint64_t binomial_u64(int n, int k)
{
    return binomial(n, k).convert_to<std::uint64_t>();
}

inline Rational make_rational(const BigInt& num, const BigInt& den = 1)
{
    if (den == 0)
        throw PreconditionError("zero denominator");
    return Rational(num, den);
}

/// "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string to_string(const Rational& q)
{
    const BigInt& num = boost::multiprecision::numerator(q);
    const BigInt& den = boost::multiprecision::denominator(q);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

inline std::string to_string(const BigInt& v) { return v.str(); }

/// Floor division for possibly negative numerators; divisor must be positive.
constexpr int floor_div(int a, int b)
{
    int q = a / b;
    if ((a % b != 0) && (a < 0))
        --q;
    return q;
}

constexpr int ceil_div(int a, int b) { return -floor_div(-a, b); }

} // namespace subposet
