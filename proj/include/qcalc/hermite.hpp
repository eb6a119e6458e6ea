// The deformed Hermite family H_n built by four independent routes that must
// agree coefficient-for-coefficient:
//   recurrence   H_{n+1} = [2]_q x H_n - [2]_q [n]_q q^(n-1) H_{n-1}
//   series form  H_n = sum_k (-1)^k q^(k(k-1)) [n]_q!/([n-2k]_q! [k]_{q^2}!) ([2]_q x)^(n-2k)
//   generating   e_q([2]_q t x) E_{q^2}(-t^2) = sum H_n t^n / [n]_q!
//   operator     H_n = ([2]_q x - q^(n-2) D) ... ([2]_q x - q^(-1) D) 1
// plus the classical and Rogers-Szego reference families and the iterated
// q-chain-rule coefficient table a_k^n.
#ifndef QCALC_HERMITE_HPP
#define QCALC_HERMITE_HPP

#include "qcalc/series.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qcalc {

enum class HermiteKind { Classical, RogersSzego, NewQHermite };

/// Incrementally built, memoized polynomial family. Completed prefixes are
/// immutable; poly(n) extends the cache as needed.
template <ScalarKernel S>
class HermiteFamily {
public:
    HermiteFamily(HermiteKind kind, QParam<S> qp)
        : kind_(kind)
        , qp_(std::move(qp))
    {
        polys_.push_back(Polynomial<S>::constant(qp_, S(1)));
    }

    HermiteKind kind() const { return kind_; }
    const QParam<S>& qp() const { return qp_; }
    unsigned built_up_to() const { return static_cast<unsigned>(polys_.size()) - 1; }

    const Polynomial<S>& poly(unsigned n)
    {
        while (built_up_to() < n)
            extend();
        return polys_[n];
    }

private:
    void extend()
    {
        const unsigned n = built_up_to(); // building index n+1
        const Polynomial<S> x = Polynomial<S>::variable(qp_);
        switch (kind_) {
        case HermiteKind::Classical: {
            // H_{n+1} = 2 x H_n - 2 n H_{n-1}
            Polynomial<S> next = x.scaled(S(2)) * polys_[n];
            if (n >= 1)
                next = next - polys_[n - 1].scaled(S(2 * static_cast<int>(n)));
            polys_.push_back(std::move(next));
            break;
        }
        case HermiteKind::RogersSzego: {
            // Direct Gaussian-binomial coefficients; the three-term recurrence
            // is checked against this construction in the verification suite.
            std::vector<S> c(n + 2, S(0));
            for (unsigned k = 0; k <= n + 1; ++k)
                c[k] = q_binomial(qp_, n + 1, k);
            polys_.emplace_back(qp_, std::move(c));
            break;
        }
        case HermiteKind::NewQHermite: {
            const S two_q = q_bracket(qp_, 2);
            Polynomial<S> next = x.scaled(two_q) * polys_[n];
            if (n >= 1) {
                S coeff = two_q * q_bracket(qp_, n) *
                          pow_int(qp_.q(), static_cast<long long>(n) - 1);
                next = next - polys_[n - 1].scaled(coeff);
            }
            polys_.push_back(std::move(next));
            break;
        }
        }
    }

    HermiteKind kind_;
    QParam<S> qp_;
    std::vector<Polynomial<S>> polys_;
};

template <ScalarKernel S>
Polynomial<S> classical_hermite(const QParam<S>& qp, unsigned n)
{
    HermiteFamily<S> fam(HermiteKind::Classical, qp);
    return fam.poly(n);
}

template <ScalarKernel S>
Polynomial<S> rogers_szego(const QParam<S>& qp, unsigned n)
{
    HermiteFamily<S> fam(HermiteKind::RogersSzego, qp);
    return fam.poly(n);
}

template <ScalarKernel S>
Polynomial<S> new_q_hermite_recurrence(const QParam<S>& qp, unsigned n)
{
    HermiteFamily<S> fam(HermiteKind::NewQHermite, qp);
    return fam.poly(n);
}

/// Series form (the closed sum over k).
template <ScalarKernel S>
Polynomial<S> new_q_hermite_series(const QParam<S>& qp, unsigned n)
{
    const QParam<S> qp2 = qp.squared();
    const S two_q = q_bracket(qp, 2);
    const S n_fact = q_factorial(qp, n);
    std::vector<S> c(n + 1, S(0));
    S sign(1);
    for (unsigned k = 0; 2 * k <= n; ++k) {
        const unsigned deg = n - 2 * k;
        S term = sign * pow_int(qp.q(), static_cast<long long>(k) * (static_cast<long long>(k) - 1)) *
                 n_fact / (q_factorial(qp, deg) * q_factorial(qp2, k)) * pow_int(two_q, deg);
        c[deg] = term;
        sign = S(0) - sign;
    }
    return Polynomial<S>(qp, std::move(c));
}

/// The generating-function product e_q([2]_q t x) E_{q^2}(-t^2) as a truncated
/// series in t; the coefficient of t^n times [n]_q! is H_n.
template <ScalarKernel S>
TruncatedSeries<S> generating_function_series(const QParam<S>& qp, unsigned order)
{
    const S two_q = q_bracket(qp, 2);
    auto small_arg = TruncatedSeries<S>::term(qp, order, 1, Polynomial<S>::monomial(qp, two_q, 1));
    auto big_arg = TruncatedSeries<S>::term(qp, order, 2, Polynomial<S>::constant(qp, S(-1)));
    return series_q_exp_compose(qp, QExpSeriesKind::SmallQ, small_arg) *
           series_q_exp_compose(qp, QExpSeriesKind::BigQSquared, big_arg);
}

/// All of H_0..H_{n_max} read off the generating function.
template <ScalarKernel S>
std::vector<Polynomial<S>> new_q_hermite_generating_function(const QParam<S>& qp, unsigned n_max)
{
    const auto product = generating_function_series(qp, n_max);
    std::vector<Polynomial<S>> out;
    out.reserve(n_max + 1);
    for (unsigned n = 0; n <= n_max; ++n)
        out.push_back(product.coeff(n).scaled(q_factorial(qp, n)));
    return out;
}

/// Ordered first-order factor product: apply ([2]_q x - q^j D) for
/// j = -1, 0, ..., n-2 (right factor first) to the constant 1.
template <ScalarKernel S>
Polynomial<S> new_q_hermite_operator_product(const QParam<S>& qp, unsigned n)
{
    const S two_q = q_bracket(qp, 2);
    const Polynomial<S> x = Polynomial<S>::variable(qp);
    Polynomial<S> p = Polynomial<S>::constant(qp, S(1));
    for (long long j = -1; j <= static_cast<long long>(n) - 2; ++j)
        p = x.scaled(two_q) * p - jackson_derivative(p).scaled(pow_int(qp.q(), j));
    return p;
}

/// Exponential-operator form: E_{q^2}(-(1/[2]_q^2) D^2) applied to ([2]_q x)^n.
/// The sum truncates naturally because D^(2k) annihilates degree n for 2k > n.
template <ScalarKernel S>
Polynomial<S> new_q_hermite_exp_operator(const QParam<S>& qp, unsigned n)
{
    const QParam<S> qp2 = qp.squared();
    const S two_q = q_bracket(qp, 2);
    const Polynomial<S> base = Polynomial<S>::monomial(qp, pow_int(two_q, n), n);
    Polynomial<S> result(qp);
    S sign(1);
    for (unsigned k = 0; 2 * k <= n; ++k) {
        S coeff = sign * pow_int(qp.q(), static_cast<long long>(k) * (static_cast<long long>(k) - 1)) /
                  (q_factorial(qp2, k) * pow_int(two_q, 2 * k));
        result = result + jackson_derivative(base, 2 * k).scaled(coeff);
        sign = S(0) - sign;
    }
    return result;
}

/// a_k^n table for the iterated q-chain rule
///   D^n f(x^2) = sum_k a_k^n ([2]_q x)^(n-2k) (d/du)_{q^2}^(n-k) f(u),  u = x^2.
/// The u-side derivative carries base q^2; that is what makes the n = 1 case
/// D x^(2m) = [2m]_q x^(2m-1) = [2]_q [m]_{q^2} x^(2m-1) close, via
/// [2]_q [k]_{q^2} = [2k]_q.
template <ScalarKernel S>
struct ChainRuleCoeffs {
    unsigned n = 0;
    std::vector<S> a; // a[k], 0 <= k <= n/2

    const S& at(unsigned k) const
    {
        static const S zero(0);
        return k < a.size() ? a[k] : zero;
    }
};

/// Rows 0..n_max built by the recurrence
/// a_k^{n+1} = q^(n-2k) a_k^n + [2]_q [n-2k+2]_q a_{k-1}^n from a_0^0 = 1.
template <ScalarKernel S>
std::vector<ChainRuleCoeffs<S>> chain_rule_table(const QParam<S>& qp, unsigned n_max)
{
    const S two_q = q_bracket(qp, 2);
    std::vector<ChainRuleCoeffs<S>> rows;
    rows.push_back({0, {S(1)}});
    for (unsigned n = 0; n < n_max; ++n) {
        const auto& prev = rows.back();
        ChainRuleCoeffs<S> row{n + 1, std::vector<S>((n + 1) / 2 + 1, S(0))};
        for (unsigned k = 0; k < row.a.size(); ++k) {
            S value = pow_int(qp.q(), static_cast<long long>(n) - 2 * static_cast<long long>(k)) *
                      prev.at(k);
            if (k >= 1)
                value = value + two_q * q_bracket(qp, n - 2 * k + 2) * prev.at(k - 1);
            row.a[k] = value;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Closed form a_k^n = q^((n-2k-1)(n-2k)/2) [n]_q! / ([n-2k]_q! [k]_{q^2}!).
template <ScalarKernel S>
S chain_rule_coeff_closed_form(const QParam<S>& qp, unsigned n, unsigned k)
{
    if (2 * k > n)
        return S(0);
    const long long d = static_cast<long long>(n) - 2 * static_cast<long long>(k);
    // Factorial ratio first: the q-power times [n]_q! can overflow the float
    // kernel even when the coefficient itself is representable.
    const S ratio = q_factorial(qp, n) / (q_factorial(qp, n - 2 * k) * q_factorial(qp.squared(), k));
    return ratio * pow_int(qp.q(), (d - 1) * d / 2);
}

/// Same coefficient through the q-double-factorial form
/// q^(...) [n]_q! [2]_q^k / ([n-2k]_q! [2k]_q!!) with [2k]_q!! = [2k]_q [2k-2]_q ... [2]_q.
template <ScalarKernel S>
S chain_rule_coeff_double_factorial_form(const QParam<S>& qp, unsigned n, unsigned k)
{
    if (2 * k > n)
        return S(0);
    S double_fact(1);
    for (unsigned j = 1; j <= k; ++j)
        double_fact = double_fact * q_bracket(qp, 2 * j);
    const long long d = static_cast<long long>(n) - 2 * static_cast<long long>(k);
    const S ratio =
        q_factorial(qp, n) * pow_int(q_bracket(qp, 2), k) / (q_factorial(qp, n - 2 * k) * double_fact);
    return ratio * pow_int(qp.q(), (d - 1) * d / 2);
}

/// Right-hand side of the chain rule for f(u) = u^m, expanded in x: the term
/// (d/du)^(n-k) u^m is the falling factorial [m]_b [m-1]_b ... over the given
/// u-side base (q^2 for the true identity; the base is a parameter so tests
/// can demonstrate that base q fails).
template <ScalarKernel S>
Polynomial<S> chain_rule_expansion(const QParam<S>& qp, const ChainRuleCoeffs<S>& row, unsigned m,
                                   const QParam<S>& u_base)
{
    const S two_q = q_bracket(qp, 2);
    const unsigned n = row.n;
    Polynomial<S> result(qp);
    for (unsigned k = 0; 2 * k <= n; ++k) {
        const unsigned du_order = n - k;
        if (du_order > m)
            continue;
        S falling(1);
        for (unsigned i = 0; i < du_order; ++i)
            falling = falling * q_bracket(u_base, m - i);
        const unsigned x_power = (n - 2 * k) + 2 * (m - du_order);
        S coeff = row.at(k) * pow_int(two_q, n - 2 * k) * falling;
        result = result + Polynomial<S>::monomial(qp, coeff, x_power);
    }
    return result;
}

/// D H_n = [2]_q [n]_q H_{n-1}, exactly.
template <ScalarKernel S>
bool verify_lowering(HermiteFamily<S>& fam, unsigned n)
{
    if (n == 0)
        throw std::invalid_argument("verify_lowering: needs n >= 1");
    const S factor = q_bracket(fam.qp(), 2) * q_bracket(fam.qp(), n);
    return jackson_derivative(fam.poly(n)) == fam.poly(n - 1).scaled(factor);
}

/// (D^2 - [2]_q x q^(2-n) D + [2]_q [n]_q q^(2-n)) H_n = 0, exactly. At q = 1
/// with the classical family this is the classical second-order equation.
template <ScalarKernel S>
bool verify_second_order(HermiteFamily<S>& fam, unsigned n)
{
    const QParam<S>& qp = fam.qp();
    const S two_q = q_bracket(qp, 2);
    const S qpow = pow_int(qp.q(), 2 - static_cast<long long>(n));
    const Polynomial<S>& h = fam.poly(n);
    const Polynomial<S> first = jackson_derivative(h);
    Polynomial<S> lhs = jackson_derivative(first) -
                        (Polynomial<S>::variable(qp) * first).scaled(two_q * qpow) +
                        h.scaled(two_q * q_bracket(qp, n) * qpow);
    return lhs.is_zero();
}

/// psi_n = H_n / sqrt([2]_q^n [n]_q!), float kernel.
inline Polynomial<double> normalized_psi(HermiteFamily<double>& fam, unsigned n)
{
    const auto& qp = fam.qp();
    const double norm = std::sqrt(pow_int(q_bracket(qp, 2), n) * q_factorial(qp, n));
    return fam.poly(n).scaled(1.0 / norm);
}

} // namespace qcalc

#endif // QCALC_HERMITE_HPP
