// Dense univariate polynomials over a scalar kernel, the Jackson q-derivative
// as an exact operator, and the q-addition / mixed q-subtraction power
// expansions.
#ifndef QCALC_POLYNOMIAL_HPP
#define QCALC_POLYNOMIAL_HPP

#include "qcalc/qcore.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qcalc {

/// Degree reported for the zero polynomial (stands in for -infinity).
inline constexpr int kZeroPolyDegree = -1;

/// Coefficient list in increasing powers of x, canonical (no trailing zeros),
/// tied to the QParam it was built under. Binary operations reject operands
/// with mismatched q.
template <ScalarKernel S>
class Polynomial {
public:
    explicit Polynomial(QParam<S> qp)
        : qp_(std::move(qp))
    {
    }

    Polynomial(QParam<S> qp, std::vector<S> coeffs)
        : qp_(std::move(qp))
        , coeffs_(std::move(coeffs))
    {
        normalize();
    }

    static Polynomial constant(const QParam<S>& qp, S c)
    {
        return Polynomial(qp, std::vector<S>{std::move(c)});
    }

    static Polynomial monomial(const QParam<S>& qp, S c, unsigned degree)
    {
        std::vector<S> coeffs(degree + 1, S(0));
        coeffs[degree] = std::move(c);
        return Polynomial(qp, std::move(coeffs));
    }

    /// The identity-coefficient polynomial x.
    static Polynomial variable(const QParam<S>& qp) { return monomial(qp, S(1), 1); }

    const QParam<S>& qp() const { return qp_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return coeffs_.empty() ? kZeroPolyDegree : static_cast<int>(coeffs_.size()) - 1; }

    /// Coefficient of x^k; zero beyond the degree.
    const S& coeff(unsigned k) const
    {
        static const S zero(0);
        return k < coeffs_.size() ? coeffs_[k] : zero;
    }

    const std::vector<S>& coeffs() const { return coeffs_; }

    S eval(const S& x) const
    {
        S acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    Polynomial scaled(const S& factor) const
    {
        std::vector<S> c = coeffs_;
        for (S& v : c)
            v = v * factor;
        return Polynomial(qp_, std::move(c));
    }

    /// Multiplication by x^power.
    Polynomial shifted_up(unsigned power) const
    {
        if (is_zero())
            return *this;
        std::vector<S> c(coeffs_.size() + power, S(0));
        for (size_t k = 0; k < coeffs_.size(); ++k)
            c[k + power] = coeffs_[k];
        return Polynomial(qp_, std::move(c));
    }

    /// f(factor * x): coefficient k picks up factor^k.
    Polynomial dilated(const S& factor) const
    {
        std::vector<S> c = coeffs_;
        S p(1);
        for (size_t k = 0; k < c.size(); ++k) {
            c[k] = c[k] * p;
            p = p * factor;
        }
        return Polynomial(qp_, std::move(c));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
    {
        a.require_same_q(b);
        std::vector<S> c(std::max(a.coeffs_.size(), b.coeffs_.size()), S(0));
        for (size_t k = 0; k < c.size(); ++k)
            c[k] = a.coeff(static_cast<unsigned>(k)) + b.coeff(static_cast<unsigned>(k));
        return Polynomial(a.qp_, std::move(c));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b)
    {
        a.require_same_q(b);
        std::vector<S> c(std::max(a.coeffs_.size(), b.coeffs_.size()), S(0));
        for (size_t k = 0; k < c.size(); ++k)
            c[k] = a.coeff(static_cast<unsigned>(k)) - b.coeff(static_cast<unsigned>(k));
        return Polynomial(a.qp_, std::move(c));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        a.require_same_q(b);
        if (a.is_zero() || b.is_zero())
            return Polynomial(a.qp_);
        std::vector<S> c(a.coeffs_.size() + b.coeffs_.size() - 1, S(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] = c[i + j] + a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(a.qp_, std::move(c));
    }

    Polynomial operator-() const { return scaled(S(-1)); }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        return a.qp_ == b.qp_ && a.coeffs_ == b.coeffs_;
    }

private:
    void normalize()
    {
        while (!coeffs_.empty() && coeffs_.back() == S(0))
            coeffs_.pop_back();
    }

    void require_same_q(const Polynomial& other) const
    {
        if (!(qp_ == other.qp_))
            throw std::invalid_argument("Polynomial: operands built under different q");
    }

    QParam<S> qp_;
    std::vector<S> coeffs_;
};

/// Jackson derivative by the monomial rule x^n -> [n]_q x^(n-1); exact at x = 0
/// and reduces to the classical derivative at q = 1. The difference quotient
/// (f(x) - f(qx)) / ((1-q)x) is kept separate as a test oracle.
template <ScalarKernel S>
Polynomial<S> jackson_derivative(const Polynomial<S>& p)
{
    if (p.degree() < 1)
        return Polynomial<S>(p.qp());
    std::vector<S> c(static_cast<size_t>(p.degree()), S(0));
    for (unsigned k = 1; k <= static_cast<unsigned>(p.degree()); ++k)
        c[k - 1] = q_bracket(p.qp(), k) * p.coeff(k);
    return Polynomial<S>(p.qp(), std::move(c));
}

template <ScalarKernel S>
Polynomial<S> jackson_derivative(const Polynomial<S>& p, unsigned times)
{
    Polynomial<S> r = p;
    for (unsigned i = 0; i < times; ++i)
        r = jackson_derivative(r);
    return r;
}

/// (a +_q b)^n as the product (a+b)(a+qb)...(a+q^(n-1)b); n = 0 gives 1.
template <ScalarKernel S>
S q_addition_power(const QParam<S>& qp, const S& a, const S& b, unsigned n)
{
    S prod(1);
    S bq = b;
    for (unsigned j = 0; j < n; ++j) {
        prod = prod * (a + bq);
        bq = bq * qp.q();
    }
    return prod;
}

/// Same quantity through the q-binomial expansion
/// sum_k [n over k]_q q^(k(k-1)/2) a^(n-k) b^k; this is the form that lifts to
/// series arguments, and the product form above is its scalar cross-check.
template <ScalarKernel S>
S q_addition_power_expanded(const QParam<S>& qp, const S& a, const S& b, unsigned n)
{
    S sum(0);
    for (unsigned k = 0; k <= n; ++k) {
        S term = q_binomial(qp, n, k) * pow_int(qp.q(), static_cast<long long>(k) * (static_cast<long long>(k) - 1) / 2) *
                 pow_int(a, n - k) * pow_int(b, k);
        sum = sum + term;
    }
    return sum;
}

/// (a -_q b)^n = (a +_q (-b))^n.
template <ScalarKernel S>
S q_subtraction_power(const QParam<S>& qp, const S& a, const S& b, unsigned n)
{
    return q_addition_power(qp, a, S(0) - b, n);
}

/// (a x +_q b)^n expanded as a polynomial in x.
template <ScalarKernel S>
Polynomial<S> q_addition_power_poly(const QParam<S>& qp, const S& a, const S& b, unsigned n)
{
    std::vector<S> c(n + 1, S(0));
    for (unsigned k = 0; k <= n; ++k)
        c[n - k] = q_binomial(qp, n, k) * pow_int(qp.q(), static_cast<long long>(k) * (static_cast<long long>(k) - 1) / 2) *
                   pow_int(a, n - k) * pow_int(b, k);
    return Polynomial<S>(qp, std::move(c));
}

/// Mixed-base power (a -_{q,q^2} b)^n =
///   sum_k [n]_q! / ([n-k]_q! [k]_{q^2}!) (-1)^k q^(k(k-1)) a^(n-k) b^k,
/// the expansion whose exponential transcription is e_q(a)E_{q^2}(-b).
template <ScalarKernel S>
S mixed_q_subtraction_power(const QParam<S>& qp, const S& a, const S& b, unsigned n)
{
    QParam<S> qp2 = qp.squared();
    S sum(0);
    S sign(1);
    for (unsigned k = 0; k <= n; ++k) {
        S term = q_factorial(qp, n) / (q_factorial(qp, n - k) * q_factorial(qp2, k));
        term = term * sign * pow_int(qp.q(), static_cast<long long>(k) * (static_cast<long long>(k) - 1)) *
               pow_int(a, n - k) * pow_int(b, k);
        sum = sum + term;
        sign = S(0) - sign;
    }
    return sum;
}

} // namespace qcalc

#endif // QCALC_POLYNOMIAL_HPP
