// Scalar-level q-arithmetic: q-brackets, q-factorials, Gaussian binomials,
// q-Pochhammer symbols and the three q-exponential series.
//
// Conventions used throughout:
//   [n]_q   = 1 + q + ... + q^(n-1)        (= n at q = 1)
//   [n]_q!  = [1]_q [2]_q ... [n]_q
//   (a;q)_k = prod_{j<k} (1 - a q^j)
//   e_q(x)  = sum x^n / [n]_q!             (|x| < 1/(1-q) when q < 1)
//   E_q(x)  = sum q^(n(n-1)/2) x^n / [n]_q!  (entire when q < 1)
//   e_{1/q}(x) = e with deformation base 1/q; identically equal to E_q.
#ifndef QCALC_QCORE_HPP
#define QCALC_QCORE_HPP

#include "qcalc/scalar.hpp"

#include <complex>
#include <limits>
#include <stdexcept>

namespace qcalc {

enum class Regime { SubCritical, ClassicalLimit, SuperCritical };

constexpr std::string_view regime_name(Regime r)
{
    switch (r) {
    case Regime::SubCritical: return "sub-critical";
    case Regime::ClassicalLimit: return "classical-limit";
    case Regime::SuperCritical: return "super-critical";
    }
    return "?";
}

/// Validated deformation parameter. q = 1 is a first-class regime in which all
/// q-numbers reduce to their integer counterparts instead of evaluating the
/// singular quotient (1-q^n)/(1-q).
template <ScalarKernel S>
class QParam {
public:
    explicit QParam(S q)
        : q_(std::move(q))
    {
        if (!(q_ > S(0)))
            throw std::domain_error("QParam: q must be positive");
        if (q_ < S(1))
            regime_ = Regime::SubCritical;
        else if (q_ == S(1))
            regime_ = Regime::ClassicalLimit;
        else
            regime_ = Regime::SuperCritical;
    }

    const S& q() const { return q_; }
    Regime regime() const { return regime_; }
    bool classical() const { return regime_ == Regime::ClassicalLimit; }

    /// True when the e_q disk has finite radius, i.e. q < 1.
    bool has_finite_radius() const { return regime_ == Regime::SubCritical; }

    /// Convergence radius R = 1/(1-q) of e_q; only defined in the sub-critical
    /// regime (the series is entire for q >= 1).
    S radius() const
    {
        if (!has_finite_radius())
            throw std::logic_error("QParam::radius: infinite for q >= 1");
        return S(1) / (S(1) - q_);
    }

    QParam<S> inverse() const { return QParam<S>(S(1) / q_); }
    QParam<S> squared() const { return QParam<S>(q_ * q_); }

    friend bool operator==(const QParam& a, const QParam& b) { return a.q_ == b.q_; }

private:
    S q_;
    Regime regime_;
};

/// q-bracket with its undeformed index attached; next() steps the recurrence
/// [n+1]_q = 1 + q [n]_q.
template <ScalarKernel S>
struct QInt {
    unsigned n = 0;
    S value = S(0);

    QInt next(const QParam<S>& qp) const { return {n + 1, S(1) + qp.q() * value}; }
};

/// [n]_q as the geometric sum; exact in the rational kernel.
template <ScalarKernel S>
S q_bracket(const QParam<S>& qp, unsigned n)
{
    if (qp.classical())
        return S(static_cast<int>(n));
    S sum(0);
    S power(1);
    for (unsigned j = 0; j < n; ++j) {
        sum = sum + power;
        power = power * qp.q();
    }
    return sum;
}

template <ScalarKernel S>
QInt<S> q_int(const QParam<S>& qp, unsigned n)
{
    return {n, q_bracket(qp, n)};
}

template <ScalarKernel S>
S q_factorial(const QParam<S>& qp, unsigned n)
{
    S prod(1);
    for (unsigned k = 1; k <= n; ++k)
        prod = prod * q_bracket(qp, k);
    return prod;
}

/// Gaussian binomial [n over k]_q = [n]_q! / ([k]_q! [n-k]_q!).
template <ScalarKernel S>
S q_binomial(const QParam<S>& qp, unsigned n, unsigned k)
{
    if (k > n)
        throw std::invalid_argument("q_binomial: k > n");
    return q_factorial(qp, n) / (q_factorial(qp, k) * q_factorial(qp, n - k));
}

/// Finite q-Pochhammer (a;q)_k.
template <ScalarKernel S>
S q_pochhammer(const QParam<S>& qp, const S& a, unsigned k)
{
    S prod(1);
    S aq = a;
    for (unsigned j = 0; j < k; ++j) {
        prod = prod * (S(1) - aq);
        aq = aq * qp.q();
    }
    return prod;
}

/// (a;q)_inf, truncated once the deviation |a q^j| of a factor from 1 drops
/// below eps. Float kernel only; requires q < 1 for convergence.
inline double q_pochhammer_inf(const QParam<double>& qp, double a, double eps = 1e-15)
{
    if (qp.regime() != Regime::SubCritical)
        throw std::domain_error("q_pochhammer_inf: requires q < 1");
    double prod = 1.0;
    double aq = a;
    while (std::fabs(aq) >= eps) {
        prod *= (1.0 - aq);
        aq *= qp.q();
    }
    return prod;
}

/// Stop rule for the q-exponential series: terminate when the next term falls
/// below rel_tol of the running sum; exceeding max_terms is an error rather
/// than a silent truncation.
struct SeriesLimits {
    double rel_tol = 1e-16;
    int max_terms = 500;
};

namespace detail {

inline double magnitude(double x) { return std::fabs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }
inline double magnitude(const Rational& x) { return abs_value(x); }

// Shared series driver: term_{n+1} = term_n * x * f(n) with f(n) the
// reciprocal-bracket update of the flavor at hand.
template <typename T, typename Update>
T sum_q_exp_series(const T& x, Update next_factor, const SeriesLimits& lim)
{
    T term(1);
    T sum(0);
    for (int n = 0; n < lim.max_terms; ++n) {
        sum = sum + term;
        term = term * x * next_factor(n);
        if (magnitude(term) < lim.rel_tol * magnitude(sum))
            return sum;
    }
    throw std::runtime_error("q-exponential series: term cap reached before convergence");
}

template <ScalarKernel S, typename T>
void require_inside_disk(const QParam<S>& qp, const T& x)
{
    if (!qp.has_finite_radius())
        return;
    if constexpr (std::is_same_v<T, S>) {
        if (!(abs(x) < qp.radius()))
            throw std::domain_error("e_q: argument outside the convergence disk |x| < 1/(1-q)");
    } else {
        if (!(magnitude(x) < to_double(qp.radius())))
            throw std::domain_error("e_q: argument outside the convergence disk |x| < 1/(1-q)");
    }
}

} // namespace detail

/// e_q(x). T may be the kernel scalar or std::complex<double> over the float
/// kernel (coherent-state overlaps need complex arguments).
template <ScalarKernel S, typename T = S>
T q_exp_small(const QParam<S>& qp, const T& x, const SeriesLimits& lim = {})
{
    detail::require_inside_disk(qp, x);
    return detail::sum_q_exp_series(
        x, [&](int n) { return T(1) / T(q_bracket(qp, static_cast<unsigned>(n) + 1)); }, lim);
}

/// E_q(x): the q^(n(n-1)/2)-damped flavor; entire for q <= 1.
template <ScalarKernel S, typename T = S>
T q_exp_big(const QParam<S>& qp, const T& x, const SeriesLimits& lim = {})
{
    S qpow(1);
    return detail::sum_q_exp_series(
        x,
        [&, qpow](int n) mutable {
            // Carries q^n into the step n -> n+1, accumulating q^(n(n-1)/2).
            T f = T(qpow) / T(q_bracket(qp, static_cast<unsigned>(n) + 1));
            qpow = qpow * qp.q();
            return f;
        },
        lim);
}

/// e_{1/q}(x), the series with deformation base 1/q.
template <ScalarKernel S, typename T = S>
T q_exp_inv(const QParam<S>& qp, const T& x, const SeriesLimits& lim = {})
{
    QParam<S> inv = qp.inverse();
    detail::require_inside_disk(inv, x);
    return detail::sum_q_exp_series(
        x, [&](int n) { return T(1) / T(q_bracket(inv, static_cast<unsigned>(n) + 1)); }, lim);
}

} // namespace qcalc

#endif // QCALC_QCORE_HPP
