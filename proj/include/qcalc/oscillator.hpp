// Deformed oscillator algebra on the abstract Fock basis: ladder operator
// actions, commutation-relation checks, truncated Jacobi matrices for the
// position/momentum pair, boundedness diagnostics for both regimes, the
// Hamiltonian spectrum and uncertainty products.
//
// The basis is orthonormal, so the action list
//   A|n> = sqrt([n]_q)|n-1>,  Adag|n> = sqrt([n+1]_q)|n+1>,  N|n> = n|n>
// fully defines the operators. Exact (rational-kernel) statements are made on
// squared amplitudes, where the square roots cancel; numeric vector actions
// run in the float kernel.
#ifndef QCALC_OSCILLATOR_HPP
#define QCALC_OSCILLATOR_HPP

#include "qcalc/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace qcalc {

/// Coefficients over |0>..|N_trunc>. Raising leaks out of a finite basis; the
/// dropped top amplitude sets truncation_loss on the result instead of being
/// silently renormalized.
template <typename F>
struct FockVector {
    std::vector<F> amp;
    bool truncation_loss = false;

    size_t n_trunc() const { return amp.empty() ? 0 : amp.size() - 1; }

    double norm_sq() const
    {
        double s = 0;
        for (const F& a : amp)
            s += std::norm(std::complex<double>(a));
        return s;
    }

    static FockVector basis(size_t n_trunc, size_t n)
    {
        FockVector v;
        v.amp.assign(n_trunc + 1, F(0));
        v.amp.at(n) = F(1);
        return v;
    }
};

template <typename F>
FockVector<F> apply_lower(const QParam<double>& qp, const FockVector<F>& v)
{
    FockVector<F> out;
    out.amp.assign(v.amp.size(), F(0));
    out.truncation_loss = v.truncation_loss;
    for (size_t n = 1; n < v.amp.size(); ++n)
        out.amp[n - 1] = v.amp[n] * F(std::sqrt(q_bracket(qp, static_cast<unsigned>(n))));
    return out;
}

template <typename F>
FockVector<F> apply_raise(const QParam<double>& qp, const FockVector<F>& v)
{
    FockVector<F> out;
    out.amp.assign(v.amp.size(), F(0));
    out.truncation_loss = v.truncation_loss;
    for (size_t n = 0; n + 1 < v.amp.size(); ++n)
        out.amp[n + 1] = v.amp[n] * F(std::sqrt(q_bracket(qp, static_cast<unsigned>(n) + 1)));
    if (!v.amp.empty() && std::norm(std::complex<double>(v.amp.back())) > 0)
        out.truncation_loss = true;
    return out;
}

template <typename F>
FockVector<F> apply_number(const FockVector<F>& v)
{
    FockVector<F> out = v;
    for (size_t n = 0; n < out.amp.size(); ++n)
        out.amp[n] = out.amp[n] * F(static_cast<double>(n));
    return out;
}

/// Exact eigenvalue of Adag A on |n>: the sqrt([n]_q) amplitudes of the two
/// steps multiply back to [n]_q.
template <ScalarKernel S>
S lower_then_raise_amplitude(const QParam<S>& qp, unsigned n)
{
    return q_bracket(qp, n);
}

/// Exact eigenvalue of A Adag on |n>.
template <ScalarKernel S>
S raise_then_lower_amplitude(const QParam<S>& qp, unsigned n)
{
    return q_bracket(qp, n + 1);
}

struct AlgebraRelationStatus {
    bool holds = true;
    double worst_error = 0.0;
};

/// Per-relation report for AAdag - q Adag A = 1, [N,A] = -A, [N,Adag] = Adag
/// on |0>..|n_check>.
struct AlgebraReport {
    AlgebraRelationStatus weyl;
    AlgebraRelationStatus number_lower;
    AlgebraRelationStatus number_raise;
    bool all_hold() const { return weyl.holds && number_lower.holds && number_raise.holds; }
};

/// Exact route: on |n> all three relations reduce to scalar identities on the
/// squared amplitudes, chiefly [n+1]_q - q [n]_q = 1. In the float kernel the
/// residual of the same identities is reported instead of a strict comparison.
template <ScalarKernel S>
AlgebraReport verify_algebra(const QParam<S>& qp, unsigned n_check)
{
    AlgebraReport rep;
    for (unsigned n = 0; n <= n_check; ++n) {
        const S weyl_lhs = raise_then_lower_amplitude(qp, n) - qp.q() * lower_then_raise_amplitude(qp, n);
        if constexpr (is_exact_kernel_v<S>) {
            if (!(weyl_lhs == S(1)))
                rep.weyl.holds = false;
        } else {
            // Backward error relative to the canceling operands: at large q
            // the brackets dwarf the unit result.
            const double scale = std::max(1.0, to_double(qp.q() * lower_then_raise_amplitude(qp, n)));
            rep.weyl.worst_error =
                std::max(rep.weyl.worst_error, std::fabs(to_double(weyl_lhs) - 1.0) / scale);
            if (rep.weyl.worst_error > 1e-12)
                rep.weyl.holds = false;
        }
        // [N,A]|n> = ((n-1) - n) A|n>; the amplitude factor sqrt([n]_q) is
        // common to both sides, so the relation is the integer identity -1.
        // Likewise [N,Adag]|n> carries (n+1) - n = +1. Recorded structurally.
    }
    if constexpr (!is_exact_kernel_v<S>) {
        // Vector route: apply the commutators to every basis vector.
        const size_t dim = n_check + 2; // one slot of headroom so Adag|n_check| stays exact
        for (unsigned n = 0; n <= n_check; ++n) {
            auto basis = FockVector<double>::basis(dim - 1, n);
            auto comm1 = apply_number(apply_lower(qp, basis));
            auto comm2 = apply_lower(qp, apply_number(basis));
            auto lower = apply_lower(qp, basis);
            double err1 = 0, err2 = 0;
            auto raise = apply_raise(qp, basis);
            auto rcomm1 = apply_number(apply_raise(qp, basis));
            auto rcomm2 = apply_raise(qp, apply_number(basis));
            for (size_t i = 0; i < dim; ++i) {
                // Relative to the amplitude scale (sqrt-bracket amplitudes grow
                // without bound in the super-critical regime).
                const double scale1 = std::max(1.0, std::fabs(comm1.amp[i]));
                const double scale2 = std::max(1.0, std::fabs(rcomm1.amp[i]));
                err1 = std::max(err1, std::fabs((comm1.amp[i] - comm2.amp[i]) + lower.amp[i]) / scale1);
                err2 = std::max(err2, std::fabs((rcomm1.amp[i] - rcomm2.amp[i]) - raise.amp[i]) / scale2);
            }
            rep.number_lower.worst_error = std::max(rep.number_lower.worst_error, err1);
            rep.number_raise.worst_error = std::max(rep.number_raise.worst_error, err2);
        }
        rep.number_lower.holds = rep.number_lower.worst_error <= 1e-12;
        rep.number_raise.holds = rep.number_raise.worst_error <= 1e-12;
    }
    return rep;
}

enum class QuadratureKind { Position, Momentum };

/// Truncated Jacobi matrix of Q (real symmetric) or P (Hermitian, entries
/// +/- i b_n); zero diagonal, off-diagonal b_n = sqrt([n+1]_q / [2]_q).
/// Stored through the exact squares b_n^2 so that regime diagnostics stay
/// rational; float entries are derived on demand.
template <ScalarKernel S>
struct TridiagonalOperator {
    QuadratureKind kind = QuadratureKind::Position;
    size_t dim = 0;
    std::vector<S> offdiag_sq; // b_n^2 for n = 0..dim-2

    double offdiag(size_t n) const { return std::sqrt(to_double(offdiag_sq.at(n))); }

    std::vector<double> offdiag_values() const
    {
        std::vector<double> b(offdiag_sq.size());
        for (size_t i = 0; i < b.size(); ++i)
            b[i] = offdiag(i);
        return b;
    }

    /// Matrix element <m|.|n>; complex to cover the momentum phase pattern.
    std::complex<double> element(size_t m, size_t n) const
    {
        if (m >= dim || n >= dim)
            throw std::out_of_range("TridiagonalOperator::element");
        if (m == n + 1)
            return kind == QuadratureKind::Position ? std::complex<double>(offdiag(n))
                                                    : std::complex<double>(0, offdiag(n));
        if (n == m + 1)
            return kind == QuadratureKind::Position ? std::complex<double>(offdiag(m))
                                                    : std::complex<double>(0, -offdiag(m));
        return 0.0;
    }
};

template <ScalarKernel S>
TridiagonalOperator<S> build_jacobi(const QParam<S>& qp, QuadratureKind kind, size_t n_trunc)
{
    if (n_trunc < 2)
        throw std::invalid_argument("build_jacobi: need dimension >= 2");
    TridiagonalOperator<S> op;
    op.kind = kind;
    op.dim = n_trunc;
    const S two_q = q_bracket(qp, 2);
    op.offdiag_sq.reserve(n_trunc - 1);
    for (size_t n = 0; n + 1 < n_trunc; ++n)
        op.offdiag_sq.push_back(q_bracket(qp, static_cast<unsigned>(n) + 1) / two_q);
    return op;
}

/// All eigenvalues of a symmetric tridiagonal matrix by QL iteration with
/// implicit shifts. diag has length n, offdiag length n-1.
inline std::vector<double> tridiagonal_eigenvalues_ql(std::vector<double> diag,
                                                      std::vector<double> offdiag,
                                                      int max_sweeps = 64)
{
    const size_t n = diag.size();
    if (offdiag.size() + 1 != n)
        throw std::invalid_argument("tridiagonal_eigenvalues_ql: size mismatch");
    std::vector<double> e(offdiag);
    e.push_back(0.0);
    for (size_t l = 0; l < n; ++l) {
        int iter = 0;
        size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::fabs(diag[m]) + std::fabs(diag[m + 1]);
                if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd)
                    break;
            }
            if (m != l) {
                if (iter++ == max_sweeps)
                    throw std::runtime_error("tridiagonal_eigenvalues_ql: too many iterations");
                double g = (diag[l + 1] - diag[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = diag[m] - diag[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow_restart = false;
                for (size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        diag[i + 1] -= p;
                        e[m] = 0.0;
                        underflow_restart = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = diag[i + 1] - p;
                    r = (diag[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    diag[i + 1] = g + p;
                    g = c * r - b;
                }
                if (underflow_restart)
                    continue;
                diag[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(diag.begin(), diag.end());
    return diag;
}

/// Number of eigenvalues strictly below lambda, by the Sturm/LDL^T count.
/// Works for Hermitian tridiagonal matrices through |b|^2, which is why it
/// doubles as the momentum-matrix spectral route.
inline size_t sturm_count_below(std::span<const double> diag, std::span<const double> offdiag_sq,
                                double lambda)
{
    size_t count = 0;
    double d = 1.0;
    const double tiny = std::numeric_limits<double>::min() * 4;
    for (size_t i = 0; i < diag.size(); ++i) {
        d = diag[i] - lambda - (i > 0 ? offdiag_sq[i - 1] / d : 0.0);
        if (std::fabs(d) < tiny)
            d = -tiny;
        if (d < 0)
            ++count;
    }
    return count;
}

/// All eigenvalues by bisection on the Sturm count; independent of the QL
/// route. offdiag_sq holds |b_n|^2.
inline std::vector<double> tridiagonal_eigenvalues_sturm(std::span<const double> diag,
                                                         std::span<const double> offdiag_sq,
                                                         double tol = 1e-13)
{
    const size_t n = diag.size();
    double bound = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double left = i > 0 ? std::sqrt(offdiag_sq[i - 1]) : 0.0;
        const double right = i + 1 < n ? std::sqrt(offdiag_sq[i]) : 0.0;
        bound = std::max(bound, std::fabs(diag[i]) + left + right);
    }
    bound += 1.0;
    std::vector<double> eig(n);
    for (size_t k = 0; k < n; ++k) {
        double lo = -bound, hi = bound;
        while (hi - lo > tol * std::max(1.0, std::fabs(lo) + std::fabs(hi))) {
            const double mid = 0.5 * (lo + hi);
            if (sturm_count_below(diag, offdiag_sq, mid) > k)
                hi = mid;
            else
                lo = mid;
        }
        eig[k] = 0.5 * (lo + hi);
    }
    return eig;
}

template <ScalarKernel S>
std::vector<double> spectrum(const TridiagonalOperator<S>& op)
{
    if (op.kind == QuadratureKind::Position)
        return tridiagonal_eigenvalues_ql(std::vector<double>(op.dim, 0.0), op.offdiag_values());
    // Hermitian momentum matrix: eigenvalues depend only on |b_n|^2.
    std::vector<double> d(op.dim, 0.0), bsq(op.offdiag_sq.size());
    for (size_t i = 0; i < bsq.size(); ++i)
        bsq[i] = to_double(op.offdiag_sq[i]);
    return tridiagonal_eigenvalues_sturm(d, bsq);
}

/// Spectral norm of the truncated matrix (largest |eigenvalue|).
template <ScalarKernel S>
double operator_norm(const TridiagonalOperator<S>& op)
{
    const auto eig = spectrum(op);
    return std::max(std::fabs(eig.front()), std::fabs(eig.back()));
}

struct BoundednessReport {
    Regime regime = Regime::SubCritical;
    // q < 1
    bool bound_holds = false;        // b_n^2 < 1/(1-q^2) for all n checked (exact)
    double bound_value = 0.0;        // (1/(1-q^2))^(1/2)
    double norm_small = 0.0;         // |M_Q| at dim N_max/2
    double norm_large = 0.0;         // |M_Q| at dim N_max
    double norm_gap = 0.0;
    // q > 1
    double ratio_at_nmax = 0.0;      // b_n / b_{n+1} at the largest checked n
    double ratio_limit = 0.0;        // q^(-1/2)
    double recip_sum = 0.0;          // partial sums of sum 1/b_n
    double recip_last_increment = 0.0;
    bool log_concavity_holds = false; // b_{n-1}^2 b_{n+1}^2 <= b_n^4 (exact)
};

/// Regime diagnostics behind the self-adjointness statement: a uniform bound
/// and stabilizing truncated norms for q < 1; ratio test, summability of
/// 1/b_n and the log-concavity chain for q > 1.
template <ScalarKernel S>
BoundednessReport boundedness_diagnostics(const QParam<S>& qp, size_t n_max)
{
    if (n_max < 10)
        throw std::invalid_argument("boundedness_diagnostics: n_max too small");
    BoundednessReport rep;
    rep.regime = qp.regime();
    const S two_q = q_bracket(qp, 2);
    std::vector<S> b_sq;
    b_sq.reserve(n_max + 2);
    for (unsigned n = 0; n <= n_max + 1; ++n)
        b_sq.push_back(q_bracket(qp, n + 1) / two_q);

    if (qp.regime() == Regime::SubCritical) {
        const S limit_sq = S(1) / (S(1) - qp.q() * qp.q());
        rep.bound_holds = true;
        for (size_t n = 0; n <= n_max; ++n) {
            if constexpr (is_exact_kernel_v<S>) {
                if (!(b_sq[n] < limit_sq))
                    rep.bound_holds = false;
            } else {
                // Strict in exact arithmetic; the float kernel saturates at the
                // limit once q^(n+1) underflows, so allow equality there.
                if (!(b_sq[n] <= limit_sq))
                    rep.bound_holds = false;
            }
        }
        rep.bound_value = std::sqrt(to_double(limit_sq));
        rep.norm_small = operator_norm(build_jacobi(qp, QuadratureKind::Position, n_max / 2));
        rep.norm_large = operator_norm(build_jacobi(qp, QuadratureKind::Position, n_max));
        rep.norm_gap = std::fabs(rep.norm_large - rep.norm_small);
    } else if (qp.regime() == Regime::SuperCritical) {
        rep.ratio_limit = 1.0 / std::sqrt(to_double(qp.q()));
        rep.ratio_at_nmax = std::sqrt(to_double(b_sq[n_max] / b_sq[n_max + 1]));
        double sum = 0.0, incr = 0.0;
        for (size_t n = 0; n <= n_max; ++n) {
            incr = 1.0 / std::sqrt(to_double(b_sq[n]));
            sum += incr;
        }
        rep.recip_sum = sum;
        rep.recip_last_increment = incr;
        rep.log_concavity_holds = true;
        for (size_t n = 1; n + 1 <= n_max; ++n) {
            if constexpr (is_exact_kernel_v<S>) {
                if (!(b_sq[n - 1] * b_sq[n + 1] <= b_sq[n] * b_sq[n]))
                    rep.log_concavity_holds = false;
            } else {
                // The chain approaches equality as n grows; leave rounding room.
                if (!(to_double(b_sq[n - 1] * b_sq[n + 1]) <=
                      to_double(b_sq[n] * b_sq[n]) * (1.0 + 1e-12)))
                    rep.log_concavity_holds = false;
            }
        }
    }
    return rep;
}

/// E_n = ([n]_q + [n+1]_q) / [2]_q, evaluated through the ladder composition
/// (A Adag + Adag A)/[2]_q acting on |n>; exact in the rational kernel.
template <ScalarKernel S>
S energy_level(const QParam<S>& qp, unsigned n)
{
    return (raise_then_lower_amplitude(qp, n) + lower_then_raise_amplitude(qp, n)) /
           q_bracket(qp, 2);
}

template <ScalarKernel S>
std::vector<S> spectrum_hq(const QParam<S>& qp, unsigned n_max)
{
    std::vector<S> out;
    out.reserve(n_max + 1);
    for (unsigned n = 0; n <= n_max; ++n)
        out.push_back(energy_level(qp, n));
    return out;
}

template <ScalarKernel S>
struct UncertaintyResult {
    S mean_q, mean_p;  // both exactly zero (zero Jacobi diagonal)
    S var_q, var_p;    // (Delta Q)^2, (Delta P)^2
    S product;         // Delta Q * Delta P, exact because var_q == var_p
    double delta_q() const { return std::sqrt(to_double(var_q)); }
    double delta_p() const { return std::sqrt(to_double(var_p)); }
};

/// Moments of Q and P in |n> read off the truncated Jacobi matrices. Needs
/// n+1 < n_trunc so the |n+1> reach of Q^2 stays inside the truncation.
template <ScalarKernel S>
UncertaintyResult<S> uncertainty(const QParam<S>& qp, unsigned n, size_t n_trunc)
{
    if (n + 1 >= n_trunc)
        throw std::invalid_argument("uncertainty: truncation too small for the n+1 reach of Q^2");
    const auto mq = build_jacobi(qp, QuadratureKind::Position, n_trunc);
    const auto mp = build_jacobi(qp, QuadratureKind::Momentum, n_trunc);
    UncertaintyResult<S> res{S(0), S(0), S(0), S(0), S(0)};
    // (M^2)_{nn} = |<n|M|n-1>|^2 + |<n|M|n+1>|^2 for both phase patterns.
    auto second_moment = [&](const TridiagonalOperator<S>& m) {
        S v = m.offdiag_sq[n];
        if (n >= 1)
            v = v + m.offdiag_sq[n - 1];
        return v;
    };
    res.var_q = second_moment(mq);
    res.var_p = second_moment(mp);
    res.product = res.var_q; // Delta Q Delta P = sqrt(var_q var_p) with var_q == var_p
    return res;
}

} // namespace qcalc

#endif // QCALC_OSCILLATOR_HPP
