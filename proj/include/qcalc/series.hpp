// Truncated formal power series in t whose coefficients are polynomials in x.
// Carrier for generating-function verification: all arithmetic discards terms
// of t-degree above the truncation order.
#ifndef QCALC_SERIES_HPP
#define QCALC_SERIES_HPP

#include "qcalc/polynomial.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace qcalc {

template <ScalarKernel S>
class TruncatedSeries {
public:
    TruncatedSeries(QParam<S> qp, unsigned order)
        : qp_(std::move(qp))
        , coeffs_(order + 1, Polynomial<S>(qp_))
    {
    }

    static TruncatedSeries one(const QParam<S>& qp, unsigned order)
    {
        TruncatedSeries s(qp, order);
        s.coeffs_[0] = Polynomial<S>::constant(qp, S(1));
        return s;
    }

    /// p * t^n.
    static TruncatedSeries term(const QParam<S>& qp, unsigned order, unsigned n, Polynomial<S> p)
    {
        TruncatedSeries s(qp, order);
        if (n <= order)
            s.coeffs_[n] = std::move(p);
        return s;
    }

    unsigned order() const { return static_cast<unsigned>(coeffs_.size()) - 1; }
    const QParam<S>& qp() const { return qp_; }

    const Polynomial<S>& coeff(unsigned n) const { return coeffs_.at(n); }
    void set_coeff(unsigned n, Polynomial<S> p) { coeffs_.at(n) = std::move(p); }

    bool is_zero() const
    {
        for (const auto& c : coeffs_)
            if (!c.is_zero())
                return false;
        return true;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        a.require_compatible(b);
        TruncatedSeries r(a.qp_, a.order());
        for (unsigned n = 0; n <= a.order(); ++n)
            r.coeffs_[n] = a.coeffs_[n] + b.coeffs_[n];
        return r;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        a.require_compatible(b);
        TruncatedSeries r(a.qp_, a.order());
        for (unsigned i = 0; i <= a.order(); ++i) {
            if (a.coeffs_[i].is_zero())
                continue;
            for (unsigned j = 0; i + j <= a.order(); ++j)
                r.coeffs_[i + j] = r.coeffs_[i + j] + a.coeffs_[i] * b.coeffs_[j];
        }
        return r;
    }

    TruncatedSeries scaled(const S& factor) const
    {
        TruncatedSeries r(qp_, order());
        for (unsigned n = 0; n <= order(); ++n)
            r.coeffs_[n] = coeffs_[n].scaled(factor);
        return r;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        return a.qp_ == b.qp_ && a.coeffs_ == b.coeffs_;
    }

private:
    void require_compatible(const TruncatedSeries& other) const
    {
        if (!(qp_ == other.qp_))
            throw std::invalid_argument("TruncatedSeries: operands built under different q");
        if (order() != other.order())
            throw std::invalid_argument("TruncatedSeries: mismatched truncation orders");
    }

    QParam<S> qp_;
    std::vector<Polynomial<S>> coeffs_;
};

/// Which q-exponential to compose: e with base q, E with base q, or E with
/// base q^2 (whose phase q^2*n(n-1)/2 collapses to q^(n(n-1))).
enum class QExpSeriesKind { SmallQ, BigQ, BigQSquared };

/// Formal composition of the chosen q-exponential with a series argument of
/// zero constant term, truncated at the argument's order. Exact in the
/// rational kernel: only finitely many powers of the argument contribute.
template <ScalarKernel S>
TruncatedSeries<S> series_q_exp_compose(const QParam<S>& qp, QExpSeriesKind kind,
                                        const TruncatedSeries<S>& arg)
{
    if (!arg.coeff(0).is_zero())
        throw std::invalid_argument("series_q_exp_compose: argument must have zero constant term");

    const QParam<S> base = (kind == QExpSeriesKind::BigQSquared) ? qp.squared() : qp;
    const bool phased = kind != QExpSeriesKind::SmallQ;

    TruncatedSeries<S> result = TruncatedSeries<S>::one(qp, arg.order());
    TruncatedSeries<S> power = TruncatedSeries<S>::one(qp, arg.order());
    for (unsigned n = 1; n <= arg.order(); ++n) {
        power = power * arg;
        if (power.is_zero())
            break;
        S c = S(1) / q_factorial(base, n);
        if (phased)
            c = c * pow_int(base.q(), static_cast<long long>(n) * (static_cast<long long>(n) - 1) / 2);
        result = result + power.scaled(c);
    }
    return result;
}

} // namespace qcalc

#endif // QCALC_SERIES_HPP
