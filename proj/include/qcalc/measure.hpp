// Jackson integration (finite and bilateral improper), the q-Gamma function,
// Barut-Girardello coherent states and the numerical resolution of the
// associated Hausdorff (q < 1) / Stieltjes (q > 1) moment problems.
//
// All lattice machinery is anchored at c = 1/|1-q|:
//     integral_0^inf f d_q x = sum_{j in Z} q^j f(q^j c),
// one term per lattice point. For q < 1 the anchored points above R = 1/(1-q)
// carry exactly zero weight against the N_q^{-1}(q x) damping, which is what
// makes Gamma_q(n+1) = [n]_q! hold for every q and not just when R happens to
// be a power of q.
#ifndef QCALC_MEASURE_HPP
#define QCALC_MEASURE_HPP

#include "qcalc/qcore.hpp"

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcalc {

class NonConvergenceError : public std::runtime_error {
public:
    explicit NonConvergenceError(const std::string& what)
        : std::runtime_error(what)
    {
    }
};

struct TailPolicy {
    double rel_tol = 1e-14;
    size_t max_terms = 1'000'000;
};

/// N_q(x) = sum x^n/[n]_q!, the coherent-state normalization series. For q < 1
/// arguments at or beyond the convergence radius return +infinity (the series
/// diverges to it for positive x); that convention is what gives the lattice
/// points above R zero weight.
inline double normalization_series(const QParam<double>& qp, double x)
{
    if (qp.has_finite_radius() && x >= qp.radius())
        return std::numeric_limits<double>::infinity();
    return q_exp_small(qp, x);
}

/// 1 / N_q(x) for x >= 0, overflow-proof in both regimes.
///   q < 1: Euler product form ( (1-q)x ; q )_inf, zero at and beyond R.
///   q > 1: N_q = E_{1/q}, inverted in log space so astronomically large
///          lattice arguments cannot overflow.
inline double nq_inverse(const QParam<double>& qp, double x)
{
    if (x < 0)
        throw std::domain_error("nq_inverse: negative argument");
    switch (qp.regime()) {
    case Regime::SubCritical: {
        if (x >= qp.radius())
            return 0.0;
        return q_pochhammer_inf(qp, (1.0 - qp.q()) * x);
    }
    case Regime::ClassicalLimit:
        return std::exp(-x);
    case Regime::SuperCritical: {
        if (!std::isfinite(x))
            return 0.0;
        const double p = 1.0 / qp.q();
        double log_sum = 0.0;
        double factor = (1.0 - p) * x;
        while (factor >= 1e-17) {
            log_sum += std::log1p(factor);
            factor *= p;
        }
        return std::exp(-log_sum);
    }
    }
    return 0.0;
}

/// Radial weight of the sub-critical moment problem: the function w with
/// integral_0^R x^n w(x) d_q x = [n]_q!, namely N_q^{-1}(q x) = (q(1-q)x;q)_inf.
inline double subcritical_moment_weight(const QParam<double>& qp, double x)
{
    if (qp.regime() != Regime::SubCritical)
        throw std::domain_error("subcritical_moment_weight: requires q < 1");
    return nq_inverse(qp, qp.q() * x);
}

/// Full-measure density N_q(x)/N_q(qx) (the moment weight with the
/// coherent-state normalization reattached); diverges as x -> R^-.
inline double measure_density_ratio(const QParam<double>& qp, double x)
{
    if (qp.regime() != Regime::SubCritical)
        throw std::domain_error("measure_density_ratio: requires q < 1");
    return q_pochhammer_inf(qp, qp.q() * (1.0 - qp.q()) * x) /
           q_pochhammer_inf(qp, (1.0 - qp.q()) * x);
}

/// Finite Jackson integral (1-q) a sum_{k>=0} q^k f(a q^k), 0 < q < 1.
inline double jackson_integral_finite(const std::function<double(double)>& f, double a,
                                      const QParam<double>& qp, const TailPolicy& tail = {})
{
    if (qp.regime() != Regime::SubCritical)
        throw std::domain_error("jackson_integral_finite: requires 0 < q < 1");
    const double q = qp.q();
    double sum = 0.0;
    double qk = 1.0;
    size_t small_streak = 0;
    for (size_t k = 0; k < tail.max_terms; ++k) {
        const double term = (1.0 - q) * a * qk * f(a * qk);
        sum += term;
        qk *= q;
        if (std::fabs(term) < tail.rel_tol * std::fabs(sum)) {
            if (++small_streak >= 3)
                return sum;
        } else {
            small_streak = 0;
        }
    }
    throw NonConvergenceError("jackson_integral_finite: tail did not settle within term cap");
}

struct LatticeSumResult {
    double value = 0.0;
    size_t terms = 0;
    double last_increment = 0.0;
    bool converged = false;
};

namespace detail {

// One direction of the bilateral lattice sum starting at exponent j0 and
// stepping j0 + dir, j0 + 2 dir, ... Divergence = 10 consecutive growing
// increments.
inline LatticeSumResult half_lattice_sum(const std::function<double(double)>& f, double q,
                                         double anchor, long long j0, int dir,
                                         const TailPolicy& tail, const char* tail_name)
{
    LatticeSumResult res;
    double prev_mag = 0.0;
    size_t growth_streak = 0, small_streak = 0;
    for (long long step = 0; static_cast<size_t>(step) < tail.max_terms; ++step) {
        const long long j = j0 + dir * step;
        const double weight = std::pow(q, static_cast<double>(j));
        const double fx = f(weight * anchor);
        const double term = fx == 0.0 ? 0.0 : weight * fx;
        res.value += term;
        res.terms += 1;
        res.last_increment = std::fabs(term);
        if (!std::isfinite(res.value))
            throw NonConvergenceError(std::string("improper_q_integral: overflow in ") + tail_name);
        if (res.last_increment > prev_mag && res.last_increment > 0) {
            if (++growth_streak >= 10)
                throw NonConvergenceError(std::string("improper_q_integral: diverging ") + tail_name);
        } else {
            growth_streak = 0;
        }
        prev_mag = res.last_increment;
        if (res.last_increment < tail.rel_tol * std::max(std::fabs(res.value), 1e-300)) {
            if (++small_streak >= 3) {
                res.converged = true;
                return res;
            }
        } else {
            small_streak = 0;
        }
    }
    return res; // term cap reached without settling
}

} // namespace detail

/// Improper bilateral Jackson integral over [0, inf):
/// sum_{j in Z} q^j f(q^j / |1-q|), valid in both regimes. The two tails are
/// summed independently; divergence is reported with its direction.
inline LatticeSumResult improper_q_integral(const std::function<double(double)>& f,
                                            const QParam<double>& qp, const TailPolicy& tail = {})
{
    if (qp.classical())
        throw std::domain_error("improper_q_integral: q = 1 has no Jackson lattice");
    const double q = qp.q();
    const double anchor = 1.0 / std::fabs(1.0 - q);
    const char* down_name = q < 1 ? "x->0 tail" : "x->infinity tail";
    const char* up_name = q < 1 ? "x->infinity tail" : "x->0 tail";
    const auto down = detail::half_lattice_sum(f, q, anchor, 0, +1, tail, down_name);
    const auto up = detail::half_lattice_sum(f, q, anchor, -1, -1, tail, up_name);
    LatticeSumResult res;
    res.value = down.value + up.value;
    res.terms = down.terms + up.terms;
    res.last_increment = std::max(down.last_increment, up.last_increment);
    res.converged = down.converged && up.converged;
    return res;
}

/// Gamma_q(n) by the closed product form (q;q)_inf / (q^n;q)_inf (1-q)^(1-n),
/// 0 < q < 1, n > 0. For integer n this equals [n-1]_q!, and the Jackson
/// integral of x^(n-1) N_q^{-1}(q x) over [0, R] gives the same value; the
/// three routes are compared in the verification suite.
inline double q_gamma(const QParam<double>& qp, double n)
{
    if (qp.regime() != Regime::SubCritical)
        throw std::domain_error("q_gamma: closed form requires 0 < q < 1");
    if (!(n > 0))
        throw std::domain_error("q_gamma: requires n > 0");
    const double q = qp.q();
    return q_pochhammer_inf(qp, q) / q_pochhammer_inf(qp, std::pow(q, n)) *
           std::pow(1.0 - q, 1.0 - n);
}

/// Gamma_q(n) through the Lemma-route Jackson integral (integer n >= 1).
inline double q_gamma_integral(const QParam<double>& qp, unsigned n, const TailPolicy& tail = {})
{
    if (n == 0)
        throw std::domain_error("q_gamma_integral: requires n >= 1");
    return jackson_integral_finite(
        [&](double x) { return std::pow(x, static_cast<double>(n) - 1) * nq_inverse(qp, qp.q() * x); },
        qp.radius(), qp, tail);
}

// ---------------------------------------------------------------------------
// Radial measure atoms
// ---------------------------------------------------------------------------

/// One atom of the discretized radial measure: sum_k weight_k * x_k^n
/// reproduces [n]_q! in both regimes.
struct RadialAtom {
    double x = 0.0;
    double weight = 0.0;
};

/// Lattice description of the radial measure behind the resolution of the
/// identity. Sub-critical: Jackson lattice on [0, R) against the
/// N_q^{-1}(q x) weight. Super-critical: the bilateral atoms q^j / |1-q|.
struct QMeasureSpec {
    Regime regime = Regime::SubCritical;
    double lattice_anchor = 0.0; // 1/|1-q|
    std::vector<RadialAtom> atoms;
};

/// The stopping rule keeps atoms until the weight times x^max_moment is
/// negligible, so moments up to that order stay accurate.
inline QMeasureSpec make_radial_measure(const QParam<double>& qp, const TailPolicy& tail = {},
                                        unsigned max_moment = 12)
{
    if (qp.classical())
        throw std::domain_error("make_radial_measure: q = 1 not supported");
    QMeasureSpec spec;
    spec.regime = qp.regime();
    const double q = qp.q();
    spec.lattice_anchor = 1.0 / std::fabs(1.0 - q);
    if (qp.regime() == Regime::SubCritical) {
        const double r = qp.radius();
        double qk = 1.0;
        for (size_t k = 0; k < tail.max_terms; ++k) {
            const double x = r * qk;
            const double w = (1.0 - q) * r * qk * subcritical_moment_weight(qp, x);
            if (w > 0 || k == 0)
                spec.atoms.push_back({x, w});
            qk *= q;
            if (qk < tail.rel_tol)
                break;
        }
    } else {
        auto push_side = [&](int dir) {
            size_t settled = 0;
            for (long long step = dir > 0 ? 0 : 1; static_cast<size_t>(step) < tail.max_terms;
                 ++step) {
                const double qj = std::pow(q, static_cast<double>(dir * step));
                const double x = qj * spec.lattice_anchor;
                if (!std::isfinite(x))
                    break;
                const double w = qj * nq_inverse(qp, q * x);
                spec.atoms.push_back({x, w});
                const double top_moment_term =
                    w == 0.0 ? 0.0
                             : w * std::pow(std::max(x, 1.0), static_cast<double>(max_moment));
                if (top_moment_term < tail.rel_tol && step > 2) {
                    if (++settled >= 3)
                        break;
                } else {
                    settled = 0;
                }
            }
        };
        push_side(+1);
        push_side(-1);
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Moment reports
// ---------------------------------------------------------------------------

struct MomentRow {
    unsigned n = 0;
    double target = 0.0;   // [n]_q!
    double computed = 0.0;
    double rel_error = 0.0;
    size_t terms = 0;
    bool conclusive = true;
};

struct MomentReport {
    Regime regime = Regime::SubCritical;
    std::vector<MomentRow> rows;

    double worst_rel_error() const
    {
        double w = 0.0;
        for (const auto& r : rows)
            w = std::max(w, r.rel_error);
        return w;
    }
    bool all_conclusive() const
    {
        for (const auto& r : rows)
            if (!r.conclusive)
                return false;
        return true;
    }
    bool all_within(double tol) const
    {
        for (const auto& r : rows)
            if (!r.conclusive || r.rel_error > tol)
                return false;
        return true;
    }
};

/// Hausdorff side: integral_0^R x^n w(x) d_q x = [n]_q! with w = N_q^{-1}(qx).
inline MomentReport resolve_identity_subcritical(const QParam<double>& qp, unsigned n_max,
                                                 const TailPolicy& tail = {})
{
    if (qp.regime() != Regime::SubCritical)
        throw std::domain_error("resolve_identity_subcritical: requires 0 < q < 1");
    MomentReport rep;
    rep.regime = qp.regime();
    const double r = qp.radius();
    for (unsigned n = 0; n <= n_max; ++n) {
        MomentRow row;
        row.n = n;
        row.target = q_factorial(qp, n);
        size_t count = 0;
        row.computed = jackson_integral_finite(
            [&](double x) {
                ++count;
                return std::pow(x, static_cast<double>(n)) * subcritical_moment_weight(qp, x);
            },
            r, qp, tail);
        row.terms = count;
        row.rel_error = std::fabs(row.computed - row.target) / row.target;
        rep.rows.push_back(row);
    }
    return rep;
}

/// Stieltjes side: the bilateral lattice moments against N_q^{-1}(q x),
/// truncated at +-K_cut. Non-decaying increments are flagged inconclusive
/// rather than failed.
inline MomentReport resolve_identity_supercritical(const QParam<double>& qp, unsigned n_max,
                                                   size_t k_cut = 200,
                                                   double increment_tol = 1e-14)
{
    if (qp.regime() != Regime::SuperCritical)
        throw std::domain_error("resolve_identity_supercritical: requires q > 1");
    MomentReport rep;
    rep.regime = qp.regime();
    const double q = qp.q();
    const double anchor = 1.0 / std::fabs(1.0 - q);
    for (unsigned n = 0; n <= n_max; ++n) {
        MomentRow row;
        row.n = n;
        row.target = q_factorial(qp, n);
        double sum = 0.0;
        bool settled_up = false, settled_down = false;
        size_t terms = 0;
        auto lattice_term = [&](long long j) {
            const double qj = std::pow(q, static_cast<double>(j));
            const double x = qj * anchor;
            const double w = nq_inverse(qp, q * x);
            return w == 0.0 ? 0.0 : qj * std::pow(x, static_cast<double>(n)) * w;
        };
        for (long long j = 0; static_cast<size_t>(j) <= k_cut; ++j) {
            const double term = lattice_term(j);
            sum += term;
            ++terms;
            if (term < increment_tol * std::max(sum, 1e-300) && j > 1) {
                settled_up = true;
                break;
            }
        }
        for (long long j = -1; static_cast<size_t>(-j) <= k_cut; --j) {
            const double term = lattice_term(j);
            sum += term;
            ++terms;
            if (term < increment_tol * std::max(sum, 1e-300)) {
                settled_down = true;
                break;
            }
        }
        row.computed = sum;
        row.terms = terms;
        row.conclusive = settled_up && settled_down;
        row.rel_error = std::fabs(row.computed - row.target) / row.target;
        rep.rows.push_back(row);
    }
    return rep;
}

struct LeibnizRow {
    double x = 0.0;
    double residual_inverse = 0.0; // [d/dx]_q N^{-1}(x) + N^{-1}(qx)
    double residual_direct = 0.0;  // [d/dx]_q N(x) - N(x)
};

struct LeibnizReport {
    std::vector<LeibnizRow> rows;
    double worst() const
    {
        double w = 0.0;
        for (const auto& r : rows)
            w = std::max(w, std::max(r.residual_inverse, r.residual_direct));
        return w;
    }
};

/// Pointwise lattice check of [d/dx]_q N_q^{-1}(x) = -N_q^{-1}(q x) and
/// [d/dx]_q N_q(x) = N_q(x) on x = R q^j, j = 1..n_max.
inline LeibnizReport leibniz_derivative_check(const QParam<double>& qp, unsigned n_max)
{
    if (qp.regime() != Regime::SubCritical)
        throw std::domain_error("leibniz_derivative_check: requires 0 < q < 1");
    LeibnizReport rep;
    const double q = qp.q();
    const double r = qp.radius();
    for (unsigned j = 1; j <= n_max; ++j) {
        LeibnizRow row;
        row.x = r * std::pow(q, static_cast<double>(j));
        const double x = row.x;
        const double inv_x = nq_inverse(qp, x);
        const double inv_qx = nq_inverse(qp, q * x);
        row.residual_inverse = std::fabs((inv_x - inv_qx) / ((1.0 - q) * x) + inv_qx);
        const double n_x = normalization_series(qp, x);
        const double n_qx = normalization_series(qp, q * x);
        row.residual_direct = std::fabs((n_x - n_qx) / ((1.0 - q) * x) - n_x) / std::max(1.0, n_x);
        rep.rows.push_back(row);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Coherent states
// ---------------------------------------------------------------------------

/// |z> = N_q^{-1/2}(|z|^2) sum_n z^n / sqrt([n]_q!) |n>, truncated adaptively.
/// For q < 1 the label must satisfy |z| < R, and the normalization series
/// additionally requires |z|^2 < R (it diverges otherwise).
struct CoherentState {
    std::complex<double> z;
    QParam<double> qp;
    double norm_factor = 1.0; // N_q(|z|^2)^(-1/2)
    std::vector<std::complex<double>> amp;

    double norm_sq() const
    {
        double s = 0.0;
        for (const auto& a : amp)
            s += std::norm(a);
        return s;
    }
};

inline CoherentState make_coherent_state(std::complex<double> z, const QParam<double>& qp,
                                         double tail_tol = 1e-30, size_t max_terms = 100'000)
{
    if (qp.has_finite_radius() && !(std::abs(z) < qp.radius()))
        throw std::domain_error("make_coherent_state: |z| >= 1/(1-q)");
    const double x = std::norm(z);
    CoherentState cs{z, qp, 1.0 / std::sqrt(q_exp_small(qp, x)), {}};
    std::complex<double> zn(1.0, 0.0);
    double fact = 1.0;
    double sum_sq = 0.0;
    for (size_t n = 0; n < max_terms; ++n) {
        const std::complex<double> a = cs.norm_factor * zn / std::sqrt(fact);
        cs.amp.push_back(a);
        sum_sq += std::norm(a);
        if (std::norm(a) < tail_tol * sum_sq && n > 2)
            return cs;
        zn *= z;
        fact *= q_bracket(qp, static_cast<unsigned>(n) + 1);
    }
    throw NonConvergenceError("make_coherent_state: amplitude tail did not settle");
}

/// <cs2|cs1> by direct amplitude contraction.
inline std::complex<double> overlap(const CoherentState& cs1, const CoherentState& cs2)
{
    if (!(cs1.qp == cs2.qp))
        throw std::invalid_argument("overlap: coherent states built under different q");
    std::complex<double> s(0.0, 0.0);
    const size_t n = std::min(cs1.amp.size(), cs2.amp.size());
    for (size_t k = 0; k < n; ++k)
        s += std::conj(cs2.amp[k]) * cs1.amp[k];
    return s;
}

/// <z2|z1> = N^{-1/2}(|z1|^2) N^{-1/2}(|z2|^2) N(z1 conj(z2)).
inline std::complex<double> overlap_closed_form(std::complex<double> z1, std::complex<double> z2,
                                                const QParam<double>& qp)
{
    const std::complex<double> cross = q_exp_small<double, std::complex<double>>(qp, z1 * std::conj(z2));
    return cross / std::sqrt(q_exp_small(qp, std::norm(z1)) * q_exp_small(qp, std::norm(z2)));
}

/// || |z1> - |z2> ||^2 = 2 (1 - Re <z2|z1>) for normalized states; computed
/// from the amplitude contraction.
inline double coherent_distance_sq(const CoherentState& cs1, const CoherentState& cs2)
{
    return 2.0 * (1.0 - std::real(overlap(cs1, cs2)));
}

/// Matrix element <n| integral |z><z| dmu |m> of the resolved identity, with
/// the angular integral done by trapezoid on a uniform theta grid (exact for
/// trigonometric polynomials up to the grid's Nyquist order). Diagonal
/// elements reproduce 1; off-diagonal ones vanish with the angular average.
inline std::complex<double> identity_matrix_element(const QParam<double>& qp, unsigned n, unsigned m,
                                                    size_t theta_nodes = 64,
                                                    const TailPolicy& tail = {})
{
    const auto measure = make_radial_measure(qp, tail);
    // Angular average of e^{i(n-m)theta} over the uniform grid.
    std::complex<double> angular(0.0, 0.0);
    for (size_t t = 0; t < theta_nodes; ++t) {
        const double theta = 2.0 * M_PI * static_cast<double>(t) / static_cast<double>(theta_nodes);
        angular += std::exp(std::complex<double>(0.0, theta * (static_cast<double>(n) - static_cast<double>(m))));
    }
    angular /= static_cast<double>(theta_nodes);
    double radial = 0.0;
    for (const auto& atom : measure.atoms)
        radial += atom.weight * std::pow(atom.x, 0.5 * static_cast<double>(n + m));
    radial /= std::sqrt(q_factorial(qp, n) * q_factorial(qp, m));
    return radial * angular;
}

} // namespace qcalc

#endif // QCALC_MEASURE_HPP
