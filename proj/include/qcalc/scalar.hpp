// Scalar kernel layer: every algebraic routine in this library is generic over a
// scalar kernel S, which is either Rational (exact arbitrary-precision rationals)
// or double (IEEE-754 binary64). Identity suites run exactly in the rational
// kernel; series, spectra and integrals run in the float kernel.
#ifndef QCALC_SCALAR_HPP
#define QCALC_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <concepts>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace qcalc {

// Expression templates stay off so arithmetic yields concrete values, which
// generic kernel code (template deduction, std::max, ==) relies on.
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::backends::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::cpp_int;

template <typename S>
concept ScalarKernel = requires(S a, S b) {
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { a / b } -> std::convertible_to<S>;
    { a == b } -> std::convertible_to<bool>;
    { a < b } -> std::convertible_to<bool>;
    S(1);
    S(0);
};

template <typename S>
inline constexpr bool is_exact_kernel_v = std::is_same_v<S, Rational>;

template <typename S>
constexpr std::string_view kernel_name()
{
    if constexpr (is_exact_kernel_v<S>)
        return "exact";
    else
        return "float";
}

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline double abs_value(double x) { return std::fabs(x); }
inline double abs_value(const Rational& x) { return to_double(abs(x)); }

/// base^e with integer exponent; negative exponents invert (base must be nonzero).
template <ScalarKernel S>
S pow_int(const S& base, long long e)
{
    if (e < 0) {
        if (base == S(0))
            throw std::domain_error("pow_int: negative power of zero");
        return S(1) / pow_int(base, -e);
    }
    S result(1);
    S b = base;
    unsigned long long n = static_cast<unsigned long long>(e);
    while (n != 0) {
        if (n & 1ull)
            result = result * b;
        b = b * b;
        n >>= 1;
    }
    return result;
}

inline std::string format_scalar(const Rational& x)
{
    if (denominator(x) == 1)
        return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

inline std::string format_scalar(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Parses "p/q", "p", or (exact binary value of) a decimal literal when
/// allow_decimal is set. Used by the CLI to keep exact suites free of silent
/// float contamination.
inline Rational parse_rational(const std::string& text, bool allow_decimal = false)
{
    if (text.empty())
        throw std::invalid_argument("parse_rational: empty string");
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("parse_rational: zero denominator");
        return Rational(num, den);
    }
    if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
        text.find('E') != std::string::npos) {
        if (!allow_decimal)
            throw std::invalid_argument(
                "parse_rational: decimal literal '" + text +
                "' needs explicit opt-in (it would be converted to the nearest binary rational)");
        return Rational(std::stod(text));
    }
    return Rational(BigInt(text));
}

template <ScalarKernel S>
S scalar_from_text(const std::string& text, bool allow_decimal = false)
{
    if constexpr (is_exact_kernel_v<S>) {
        return parse_rational(text, allow_decimal);
    } else {
        if (text.find('/') != std::string::npos)
            return to_double(parse_rational(text));
        return std::stod(text);
    }
}

} // namespace qcalc

#endif // QCALC_SCALAR_HPP
