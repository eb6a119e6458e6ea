// Identity/property suites behind `qcalc verify`: every check records what it
// states, the parameters it ran at, its status and a worst-case error. Exact
// kernels assert equality; the float kernel bounds residuals by the
// configured tolerances.
#ifndef QCALC_VERIFY_HPP
#define QCALC_VERIFY_HPP

#include "qcalc/config.hpp"
#include "qcalc/hermite.hpp"
#include "qcalc/io.hpp"
#include "qcalc/measure.hpp"
#include "qcalc/oscillator.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace qcalc {

enum class CheckStatus { Pass, Fail, Inconclusive };

struct CheckResult {
    std::string id;
    std::string statement;
    std::string params;
    CheckStatus status = CheckStatus::Pass;
    double error = 0.0;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::string kernel;
    std::string q_text;
    std::vector<CheckResult> checks;

    bool all_passed() const
    {
        for (const auto& c : checks)
            if (c.status == CheckStatus::Fail)
                return false;
        return true;
    }
    bool any_inconclusive() const
    {
        for (const auto& c : checks)
            if (c.status == CheckStatus::Inconclusive)
                return true;
        return false;
    }
};

inline json report_to_json(const SuiteReport& rep)
{
    json checks = json::array();
    for (const auto& c : rep.checks) {
        const char* status = c.status == CheckStatus::Pass   ? "pass"
                             : c.status == CheckStatus::Fail ? "fail"
                                                             : "inconclusive";
        checks.push_back(json{{"id", c.id},
                              {"statement", c.statement},
                              {"params", c.params},
                              {"status", status},
                              {"error", c.error},
                              {"detail", c.detail}});
    }
    return json{{"suite", rep.suite}, {"kernel", rep.kernel}, {"q", rep.q_text}, {"checks", checks}};
}

namespace detail {

class SuiteBuilder {
public:
    SuiteBuilder(std::string suite, std::string kernel, std::string q_text, const Tolerances& tol)
        : tol_(tol)
    {
        rep_.suite = std::move(suite);
        rep_.kernel = std::move(kernel);
        rep_.q_text = std::move(q_text);
    }

    const Tolerances& tol() const { return tol_; }

    void record(CheckResult c) { rep_.checks.push_back(std::move(c)); }

    void boolean_check(const std::string& id, const std::string& statement,
                       const std::string& params, bool ok, const std::string& detail = "")
    {
        record({id, statement, params, ok ? CheckStatus::Pass : CheckStatus::Fail,
                ok ? 0.0 : 1.0, detail});
    }

    void numeric_check(const std::string& id, const std::string& statement,
                       const std::string& params, double err, double bound,
                       const std::string& detail = "")
    {
        record({id, statement, params, err <= bound ? CheckStatus::Pass : CheckStatus::Fail, err,
                detail});
    }

    void inconclusive(const std::string& id, const std::string& statement,
                      const std::string& params, const std::string& detail)
    {
        record({id, statement, params, CheckStatus::Inconclusive, 0.0, detail});
    }

    /// Kernel-aware scalar equality: exact kernels compare exactly; the float
    /// kernel bounds the relative residual by tol.identity.
    template <ScalarKernel S>
    bool eq(const S& lhs, const S& rhs) const
    {
        if constexpr (is_exact_kernel_v<S>) {
            return lhs == rhs;
        } else {
            const double l = to_double(lhs), r = to_double(rhs);
            // Values at the double range limit: identical overflow counts as
            // agreement at representable precision, anything else fails.
            if (!std::isfinite(l) || !std::isfinite(r))
                return l == r;
            const double scale = std::max(1.0, std::fabs(r));
            return std::fabs(l - r) <= tol_.identity * scale;
        }
    }

    template <ScalarKernel S>
    bool eq(const Polynomial<S>& lhs, const Polynomial<S>& rhs) const
    {
        if constexpr (is_exact_kernel_v<S>)
            return lhs == rhs;
        else
            return poly_residual(lhs, rhs) <= tol_.identity;
    }

    template <ScalarKernel S>
    void scalar_check(const std::string& id, const std::string& statement,
                      const std::string& params, const S& lhs, const S& rhs)
    {
        boolean_check(id, statement, params, eq(lhs, rhs));
    }

    /// Error-path probe: passes when fn throws.
    void rejection_check(const std::string& id, const std::string& statement,
                         const std::string& params, const std::function<void()>& fn)
    {
        bool threw = false;
        try {
            fn();
        } catch (const std::exception&) {
            threw = true;
        }
        boolean_check(id, statement, params, threw);
    }

    SuiteReport take() { return std::move(rep_); }

    /// Largest coefficient deviation normalized by the largest coefficient of
    /// the reference polynomial.
    template <ScalarKernel S>
    static double poly_residual(const Polynomial<S>& a, const Polynomial<S>& b)
    {
        double worst = 0.0;
        double scale = 1.0;
        const int deg = std::max(a.degree(), b.degree());
        for (int k = 0; k <= deg; ++k)
            scale = std::max(scale, std::fabs(to_double(b.coeff(static_cast<unsigned>(k)))));
        for (int k = 0; k <= deg; ++k)
            worst = std::max(worst, std::fabs(to_double(a.coeff(static_cast<unsigned>(k))) -
                                              to_double(b.coeff(static_cast<unsigned>(k)))));
        return worst / scale;
    }

private:
    Tolerances tol_;
    SuiteReport rep_;
};

template <ScalarKernel S>
std::string param_range(const QParam<S>& qp, const std::string& range)
{
    std::string out = "q=" + format_scalar(qp.q());
    if (!range.empty())
        out += " " + range;
    return out;
}

/// Difference-quotient route to the Jackson derivative, valid for q != 1:
/// (f(x) - f(qx)) / ((1-q)x) expanded as a polynomial.
template <ScalarKernel S>
Polynomial<S> jackson_difference_quotient(const Polynomial<S>& p)
{
    const QParam<S>& qp = p.qp();
    if (qp.classical())
        throw std::domain_error("jackson_difference_quotient: undefined at q = 1");
    const Polynomial<S> diff = p - p.dilated(qp.q());
    std::vector<S> c(std::max(diff.degree(), 0), S(0));
    const S denom = S(1) - qp.q();
    for (int k = 1; k <= diff.degree(); ++k)
        c[static_cast<size_t>(k) - 1] = diff.coeff(static_cast<unsigned>(k)) / denom;
    return Polynomial<S>(qp, std::move(c));
}

template <ScalarKernel S>
Polynomial<S> formal_derivative(const Polynomial<S>& p)
{
    if (p.degree() < 1)
        return Polynomial<S>(p.qp());
    std::vector<S> c(static_cast<size_t>(p.degree()), S(0));
    for (int k = 1; k <= p.degree(); ++k)
        c[static_cast<size_t>(k) - 1] = S(k) * p.coeff(static_cast<unsigned>(k));
    return Polynomial<S>(p.qp(), std::move(c));
}

} // namespace detail

// ---------------------------------------------------------------------------
// core suite
// ---------------------------------------------------------------------------

template <ScalarKernel S>
SuiteReport run_core_suite(const QParam<S>& qp, const RunConfig& cfg)
{
    detail::SuiteBuilder b("core", std::string(kernel_name<S>()), format_scalar(qp.q()), cfg.tol);
    const unsigned n_small = 30;

    {
        bool recurrence_ok = true, closed_ok = true;
        QInt<S> walker = q_int(qp, 0);
        for (unsigned n = 0; n <= n_small; ++n) {
            if (!b.eq(q_bracket(qp, n), walker.value))
                recurrence_ok = false;
            if (!qp.classical() &&
                !b.eq((S(1) - pow_int(qp.q(), n)) / (S(1) - qp.q()), q_bracket(qp, n)))
                closed_ok = false;
            walker = walker.next(qp);
        }
        b.boolean_check("core/bracket-recurrence", "[n+1]_q = 1 + q [n]_q",
                        detail::param_range(qp, "n<=30"), recurrence_ok);
        b.boolean_check("core/bracket-closed-form", "[n]_q = (1-q^n)/(1-q) (q != 1)",
                        detail::param_range(qp, "n<=30"), closed_ok);
    }

    if (!qp.classical()) {
        const QParam<S> qinv = qp.inverse();
        bool ok = true;
        for (unsigned n = 0; n <= n_small; ++n)
            if (!b.eq(q_bracket(qinv, n),
                      pow_int(qp.q(), 1 - static_cast<long long>(n)) * q_bracket(qp, n)))
                ok = false;
        b.boolean_check("core/bracket-duality", "[n]_{1/q} = q^(1-n) [n]_q",
                        detail::param_range(qp, "n<=30"), ok);
    }

    {
        const QParam<S> qp2 = qp.squared();
        const S two_q = q_bracket(qp, 2);
        bool ok = true;
        for (unsigned k = 0; k <= n_small; ++k)
            if (!b.eq(two_q * q_bracket(qp2, k), q_bracket(qp, 2 * k)))
                ok = false;
        b.boolean_check("core/bracket-double-base", "[2]_q [k]_{q^2} = [2k]_q",
                        detail::param_range(qp, "k<=30"), ok);
    }

    {
        bool ok = true;
        S fact(1);
        for (unsigned n = 1; n <= n_small; ++n) {
            fact = fact * q_bracket(qp, n);
            if (!b.eq(q_factorial(qp, n), fact))
                ok = false;
        }
        b.boolean_check("core/factorial-product", "[n]_q! = [n]_q [n-1]_q!",
                        detail::param_range(qp, "n<=30"), ok);
    }

    {
        bool pascal_ok = true, symmetry_ok = true;
        for (unsigned n = 1; n <= 20; ++n) {
            for (unsigned k = 0; k <= n; ++k) {
                const S lhs = q_binomial(qp, n, k);
                if (!b.eq(lhs, q_binomial(qp, n, n - k)))
                    symmetry_ok = false;
                S rule1 = (k >= 1 ? q_binomial(qp, n - 1, k - 1) : S(0));
                if (k <= n - 1)
                    rule1 = rule1 + pow_int(qp.q(), k) * q_binomial(qp, n - 1, k);
                S rule2 = (k <= n - 1 ? q_binomial(qp, n - 1, k) : S(0));
                if (k >= 1)
                    rule2 = rule2 + pow_int(qp.q(), n - k) * q_binomial(qp, n - 1, k - 1);
                if (!b.eq(lhs, rule1) || !b.eq(lhs, rule2))
                    pascal_ok = false;
            }
        }
        b.boolean_check("core/binomial-pascal", "both q-Pascal recurrences",
                        detail::param_range(qp, "n<=20"), pascal_ok);
        b.boolean_check("core/binomial-symmetry", "[n over k]_q = [n over n-k]_q",
                        detail::param_range(qp, "n<=20"), symmetry_ok);
    }

    {
        bool ok = true;
        const S samples[] = {S(1) / S(2), S(-2) / S(3), S(3)};
        for (const S& a : samples)
            for (unsigned m = 0; m <= 6; ++m)
                for (unsigned n = 0; n <= 6; ++n)
                    if (!b.eq(q_pochhammer(qp, a, m + n),
                              q_pochhammer(qp, a, m) *
                                  q_pochhammer(qp, a * pow_int(qp.q(), m), n)))
                        ok = false;
        b.boolean_check("core/pochhammer-split", "(a;q)_{m+n} = (a;q)_m (a q^m;q)_n",
                        detail::param_range(qp, "m,n<=6"), ok);
    }

    {
        const QParam<S> one(S(1));
        const bool ok = q_bracket(one, 5) == S(5) && q_factorial(one, 4) == S(24) &&
                        q_binomial(one, 5, 2) == S(10);
        b.boolean_check("core/classical-limit", "[5]_1 = 5, [4]_1! = 24, [5 over 2]_1 = 10",
                        "q=1 (internal)", ok);
    }

    {
        // Float-evaluated exponential identities at the configured q. The
        // shared convergence disk is |x| < 1/(1-q) for q < 1 (e_q side) and
        // |x| < q/(q-1) for q > 1 (E_q = e_{1/q} side).
        const QParam<double> qf(to_double(qp.q()));
        double worst = 0.0;
        if (!qf.classical()) {
            const double r =
                qf.has_finite_radius() ? qf.radius() : qf.q() / (qf.q() - 1.0);
            for (double x : {0.3 * r, -0.45 * r, 0.7 * r}) {
                worst = std::max(worst, std::fabs(q_exp_small(qf, x) * q_exp_big(qf, -x) - 1.0));
                worst = std::max(worst, std::fabs(q_exp_inv(qf, x) - q_exp_big(qf, x)) /
                                            std::max(1.0, std::fabs(q_exp_big(qf, x))));
            }
        } else {
            worst = std::fabs(q_exp_small(qf, 1.0) - std::exp(1.0));
        }
        // The alternating E_q side cancels heavily near the disk edge for q
        // close to 1, so the bound leaves headroom above machine precision.
        b.numeric_check("core/qexp-inverse-pair", "e_q(x) E_q(-x) = 1 and e_{1/q} = E_q",
                        detail::param_range(qp, "float evaluation"), worst, 1e-10);
    }

    if (qp.has_finite_radius())
        b.rejection_check("core/qexp-domain", "e_q rejects |x| >= 1/(1-q)",
                          detail::param_range(qp, "x=R"),
                          [&] { (void)q_exp_small(qp, qp.radius()); });
    b.rejection_check("core/pochhammer-inf-domain", "(a;q)_inf rejects q >= 1", "q=2 (internal)",
                      [&] { (void)q_pochhammer_inf(QParam<double>(2.0), 0.5); });

    return b.take();
}

// ---------------------------------------------------------------------------
// poly suite
// ---------------------------------------------------------------------------

template <ScalarKernel S>
SuiteReport run_poly_suite(const QParam<S>& qp, const RunConfig& cfg)
{
    detail::SuiteBuilder b("poly", std::string(kernel_name<S>()), format_scalar(qp.q()), cfg.tol);
    const Polynomial<S> x = Polynomial<S>::variable(qp);
    const Polynomial<S> one = Polynomial<S>::constant(qp, S(1));

    b.boolean_check("poly/ring-basics", "(x+1)(x-1) = x^2-1; eval(x^2,3) = 9",
                    detail::param_range(qp, ""),
                    (x + one) * (x - one) == Polynomial<S>::monomial(qp, S(1), 2) - one &&
                        Polynomial<S>::monomial(qp, S(1), 2).eval(S(3)) == S(9));

    {
        const Polynomial<S> p(qp, {S(3), S(-2), S(0), S(5), S(7)});
        const S x0 = S(4) / S(3);
        S naive(0);
        for (unsigned k = 0; k <= 4; ++k)
            naive = naive + p.coeff(k) * pow_int(x0, k);
        b.scalar_check("poly/eval-horner", "Horner evaluation = naive power sum",
                       detail::param_range(qp, "deg=4"), p.eval(x0), naive);
    }

    if (!qp.classical()) {
        bool ok = true;
        for (unsigned i = 0; i <= 5; ++i)
            for (unsigned j = 0; j <= 5; ++j) {
                const auto f = Polynomial<S>::monomial(qp, S(2), i) + one;
                const auto g = Polynomial<S>::monomial(qp, S(1), j) - Polynomial<S>::constant(qp, S(3));
                const auto prod = f * g;
                if (!b.eq(jackson_derivative(prod), detail::jackson_difference_quotient(prod)))
                    ok = false;
            }
        b.boolean_check("poly/jackson-quotient", "monomial rule = difference quotient on products",
                        detail::param_range(qp, "deg<=10"), ok);
    }

    {
        const QParam<S> one_q(S(1));
        const Polynomial<S> p(one_q, {S(1), S(-4), S(0), S(2), S(9)});
        b.boolean_check("poly/jackson-classical", "Jackson derivative at q=1 = formal derivative",
                        "q=1 (internal)", jackson_derivative(p) == detail::formal_derivative(p));
    }

    {
        bool ok = true;
        const S a = S(2) / S(3), bb = S(-3) / S(4);
        for (unsigned n = 0; n <= 15; ++n)
            if (!b.eq(q_addition_power(qp, a, bb, n), q_addition_power_expanded(qp, a, bb, n)))
                ok = false;
        for (unsigned n = 1; n <= 8; ++n)
            if (!b.eq(q_subtraction_power(qp, S(5) / S(7), S(5) / S(7), n), S(0)))
                ok = false;
        b.boolean_check("poly/q-addition-two-route",
                        "(a+_q b)^n: product = q-binomial expansion; (c-_q c)^n = 0",
                        detail::param_range(qp, "n<=15"), ok);
    }

    {
        bool ok = true;
        const S a = S(3) / S(2), bb = S(-1) / S(3);
        for (unsigned n = 1; n <= 12; ++n) {
            const auto lhs = jackson_derivative(q_addition_power_poly(qp, a, bb, n));
            const auto rhs = q_addition_power_poly(qp, a, bb, n - 1).scaled(q_bracket(qp, n) * a);
            if (!b.eq(lhs, rhs))
                ok = false;
        }
        b.boolean_check("poly/q-addition-jackson", "D (a x +_q b)^n = [n]_q a (a x +_q b)^(n-1)",
                        detail::param_range(qp, "n<=12"), ok);
    }

    {
        const S a = S(5) / S(4), bb = S(2) / S(7);
        const bool ok = b.eq(mixed_q_subtraction_power(qp, a, bb, 0), S(1)) &&
                        b.eq(mixed_q_subtraction_power(qp, a, bb, 1), a - bb);
        b.boolean_check("poly/mixed-subtraction-low-orders",
                        "(a -_{q,q^2} b)^0 = 1 and (a -_{q,q^2} b)^1 = a - b",
                        detail::param_range(qp, ""), ok);
    }

    {
        const unsigned order = 12;
        const S y = S(-2) / S(3);
        const auto ex = series_q_exp_compose(
            qp, QExpSeriesKind::SmallQ, TruncatedSeries<S>::term(qp, order, 1, x));
        const auto ey = series_q_exp_compose(
            qp, QExpSeriesKind::BigQ,
            TruncatedSeries<S>::term(qp, order, 1, Polynomial<S>::constant(qp, y)));
        const auto product = ex * ey;
        bool ok = true;
        for (unsigned n = 0; n <= order; ++n)
            if (!b.eq(product.coeff(n),
                      q_addition_power_poly(qp, S(1), y, n).scaled(S(1) / q_factorial(qp, n))))
                ok = false;
        b.boolean_check("poly/series-exp-product-rule",
                        "e_q(x t) E_q(y t) = sum (x +_q y)^n t^n/[n]_q!",
                        detail::param_range(qp, "order<=12"), ok);
    }

    b.rejection_check("poly/series-compose-rejects-constant",
                      "q-exp composition rejects nonzero constant term",
                      detail::param_range(qp, ""), [&] {
                          (void)series_q_exp_compose(qp, QExpSeriesKind::SmallQ,
                                                     TruncatedSeries<S>::one(qp, 4));
                      });

    b.rejection_check("poly/mixed-q-rejected", "ring ops reject operands with different q",
                      detail::param_range(qp, ""), [&] {
                          const QParam<S> other(qp.q() + S(1));
                          (void)(Polynomial<S>::variable(qp) + Polynomial<S>::variable(other));
                      });

    return b.take();
}

// ---------------------------------------------------------------------------
// hermite suite
// ---------------------------------------------------------------------------

template <ScalarKernel S>
SuiteReport run_hermite_suite(const QParam<S>& qp, const RunConfig& cfg)
{
    detail::SuiteBuilder b("hermite", std::string(kernel_name<S>()), format_scalar(qp.q()), cfg.tol);
    const unsigned n_max = cfg.n_max;
    HermiteFamily<S> fam(HermiteKind::NewQHermite, qp);

    {
        bool ok = true;
        const auto gen = new_q_hermite_generating_function(qp, n_max);
        for (unsigned n = 0; n <= n_max && ok; ++n) {
            const auto& ref = fam.poly(n);
            if (!b.eq(ref, new_q_hermite_series(qp, n)) || !b.eq(ref, gen[n]) ||
                !b.eq(ref, new_q_hermite_operator_product(qp, n)) ||
                !b.eq(ref, new_q_hermite_exp_operator(qp, n)))
                ok = false;
        }
        b.boolean_check("hermite/four-route-equality",
                        "recurrence = series = generating function = operator product "
                        "(+ exponential operator)",
                        detail::param_range(qp, "n<=" + std::to_string(n_max)), ok);
    }

    {
        const S two = q_bracket(qp, 2), three = q_bracket(qp, 3), four = q_bracket(qp, 4);
        const S& q = qp.q();
        bool ok = b.eq(fam.poly(1), Polynomial<S>::monomial(qp, two, 1));
        ok = ok && b.eq(fam.poly(2), Polynomial<S>(qp, {S(0) - two, S(0), two * two}));
        ok = ok &&
             b.eq(fam.poly(3), Polynomial<S>(qp, {S(0), S(0) - two * two * three, S(0), pow_int(two, 3)}));
        ok = ok && b.eq(fam.poly(4), Polynomial<S>(qp, {q * q * three * two * two, S(0),
                                                        S(0) - two * two * three * four, S(0),
                                                        pow_int(two, 4)}));
        b.boolean_check("hermite/explicit-low-orders",
                        "H_1 = [2]x, H_2 = [2]^2 x^2 - [2], H_3 = [2]^3 x^3 - [2]^2 [3] x, "
                        "H_4 = [2]^4 x^4 - [2]^2 [3][4] x^2 + q^2 [3][2]^2",
                        detail::param_range(qp, "n<=4"), ok);
    }

    {
        bool lowering_ok = true, second_ok = true;
        const S two_q = q_bracket(qp, 2);
        for (unsigned n = 1; n <= n_max; ++n) {
            if constexpr (is_exact_kernel_v<S>) {
                if (!verify_lowering(fam, n))
                    lowering_ok = false;
            } else {
                if (!b.eq(jackson_derivative(fam.poly(n)),
                          fam.poly(n - 1).scaled(two_q * q_bracket(qp, n))))
                    lowering_ok = false;
            }
        }
        for (unsigned n = 0; n <= n_max; ++n) {
            if constexpr (is_exact_kernel_v<S>) {
                if (!verify_second_order(fam, n))
                    second_ok = false;
            } else {
                // Per-coefficient backward-error check: the constant
                // coefficient of the identity is a pure cancellation, so each
                // residual is measured against the magnitudes of the three
                // operator terms entering it.
                const S qpow = pow_int(qp.q(), 2 - static_cast<long long>(n));
                const auto& h = fam.poly(n);
                const auto first = jackson_derivative(h);
                const auto second = jackson_derivative(first);
                const auto mixed = (Polynomial<S>::variable(qp) * first).scaled(two_q * qpow);
                const auto zeroth = h.scaled(two_q * q_bracket(qp, n) * qpow);
                const int deg = std::max({second.degree(), mixed.degree(), zeroth.degree()});
                for (int k = 0; k <= deg; ++k) {
                    const unsigned ku = static_cast<unsigned>(k);
                    const double residual = to_double(second.coeff(ku)) -
                                            to_double(mixed.coeff(ku)) +
                                            to_double(zeroth.coeff(ku));
                    const double scale = std::max({1.0, std::fabs(to_double(second.coeff(ku))),
                                                   std::fabs(to_double(mixed.coeff(ku))),
                                                   std::fabs(to_double(zeroth.coeff(ku)))});
                    if (std::fabs(residual) > cfg.tol.identity * scale)
                        second_ok = false;
                }
            }
        }
        b.boolean_check("hermite/lowering", "D H_n = [2]_q [n]_q H_{n-1}",
                        detail::param_range(qp, "n<=" + std::to_string(n_max)), lowering_ok);
        b.boolean_check("hermite/second-order",
                        "(D^2 - [2]_q x q^(2-n) D + [2]_q [n]_q q^(2-n)) H_n = 0",
                        detail::param_range(qp, "n<=" + std::to_string(n_max)), second_ok);
    }

    {
        bool parity_ok = true, degree_ok = true;
        const S two = q_bracket(qp, 2);
        for (unsigned n = 0; n <= n_max; ++n) {
            const auto& h = fam.poly(n);
            for (int k = 0; k <= h.degree(); ++k)
                if ((static_cast<unsigned>(k) % 2) != (n % 2) &&
                    !(h.coeff(static_cast<unsigned>(k)) == S(0)))
                    parity_ok = false;
            if (h.degree() != static_cast<int>(n) || !b.eq(h.coeff(n), pow_int(two, n)))
                degree_ok = false;
        }
        b.boolean_check("hermite/parity", "H_n(-x) = (-1)^n H_n(x)",
                        detail::param_range(qp, "n<=" + std::to_string(n_max)), parity_ok);
        b.boolean_check("hermite/degree-leading", "deg H_n = n with leading coefficient [2]_q^n",
                        detail::param_range(qp, "n<=" + std::to_string(n_max)), degree_ok);
    }

    {
        bool closed_ok = true, brute_ok = true;
        const auto rows = chain_rule_table(qp, 20);
        for (unsigned n = 0; n <= 20; ++n)
            for (unsigned k = 0; 2 * k <= n; ++k)
                if (!b.eq(rows[n].at(k), chain_rule_coeff_closed_form(qp, n, k)) ||
                    !b.eq(rows[n].at(k), chain_rule_coeff_double_factorial_form(qp, n, k)))
                    closed_ok = false;
        const QParam<S> u_base = qp.squared();
        for (unsigned n = 0; n <= 10; ++n)
            for (unsigned m = 0; m <= 6; ++m) {
                const auto lhs = jackson_derivative(Polynomial<S>::monomial(qp, S(1), 2 * m), n);
                if (!b.eq(lhs, chain_rule_expansion(qp, rows[n], m, u_base)))
                    brute_ok = false;
            }
        b.boolean_check("hermite/chain-rule-closed-forms", "a_k^n recurrence = both closed forms",
                        detail::param_range(qp, "n<=20"), closed_ok);
        b.boolean_check("hermite/chain-rule-brute-force",
                        "D^n x^(2m) = sum_k a_k^n ([2]_q x)^(n-2k) (d/du)_{q^2}^(n-k) u^m",
                        detail::param_range(qp, "n<=10 m<=6"), brute_ok);
    }

    {
        HermiteFamily<S> rs(HermiteKind::RogersSzego, qp);
        bool rec_ok = true, ladder_ok = true;
        const Polynomial<S> z = Polynomial<S>::variable(qp);
        const Polynomial<S> one = Polynomial<S>::constant(qp, S(1));
        for (unsigned n = 1; n <= 16; ++n)
            if (!b.eq(rs.poly(n + 1), (one + z) * rs.poly(n) -
                                          z.scaled(S(1) - pow_int(qp.q(), n)) * rs.poly(n - 1)))
                rec_ok = false;
        for (unsigned n = 0; n <= 10; ++n) {
            const auto raised = (one + z) * rs.poly(n) -
                                (z * jackson_derivative(rs.poly(n))).scaled(S(1) - qp.q());
            if (!b.eq(raised, rs.poly(n + 1)))
                ladder_ok = false;
            if (n >= 1 &&
                !b.eq(jackson_derivative(rs.poly(n)), rs.poly(n - 1).scaled(q_bracket(qp, n))))
                ladder_ok = false;
        }
        b.boolean_check("hermite/rogers-szego-recurrence",
                        "H_{n+1}(z;q) = (1+z)H_n - z(1-q^n)H_{n-1}",
                        detail::param_range(qp, "n<=16"), rec_ok);
        b.boolean_check("hermite/rogers-szego-ladder",
                        "(1+z-(1-q)zD) H_n = H_{n+1} and D H_n = [n]_q H_{n-1}",
                        detail::param_range(qp, "n<=10"), ladder_ok);
    }

    {
        // Normalized-psi ladder in float arithmetic: D psi_n = sqrt([2][n]) psi_{n-1}
        // and [2]x psi_n = sqrt([2][n+1]) psi_{n+1} + q^(n-1) sqrt([2][n]) psi_{n-1}.
        const QParam<double> qf(to_double(qp.q()));
        HermiteFamily<double> famf(HermiteKind::NewQHermite, qf);
        double worst = 0.0;
        for (unsigned n = 1; n <= 10; ++n) {
            const auto psi_n = normalized_psi(famf, n);
            worst = std::max(
                worst, detail::SuiteBuilder::poly_residual(
                           jackson_derivative(psi_n),
                           normalized_psi(famf, n - 1)
                               .scaled(std::sqrt(q_bracket(qf, 2) * q_bracket(qf, n)))) /
                           cfg.tol.identity);
            const auto three_term_lhs =
                (Polynomial<double>::variable(qf) * psi_n).scaled(q_bracket(qf, 2));
            const auto three_term_rhs =
                normalized_psi(famf, n + 1)
                    .scaled(std::sqrt(q_bracket(qf, 2) * q_bracket(qf, n + 1))) +
                normalized_psi(famf, n - 1)
                    .scaled(std::pow(qf.q(), static_cast<double>(n) - 1) *
                            std::sqrt(q_bracket(qf, 2) * q_bracket(qf, n)));
            // The q^(n-1) term amplifies rounding in the super-critical
            // regime; the bound scales with that conditioning factor.
            const double bound =
                cfg.tol.identity *
                std::max(1.0, std::pow(qf.q(), static_cast<double>(n) - 1));
            worst = std::max(worst, detail::SuiteBuilder::poly_residual(three_term_lhs,
                                                                        three_term_rhs) /
                                        bound);
        }
        b.numeric_check("hermite/psi-ladder",
                        "D psi_n = sqrt([2][n]) psi_{n-1}; three-term recurrence in psi "
                        "(residual / conditioning-scaled bound)",
                        detail::param_range(qp, "n<=10 float"), worst, 1.0);
    }

    {
        HermiteFamily<double> classical(HermiteKind::Classical, QParam<double>(1.0));
        double previous = std::numeric_limits<double>::infinity();
        bool monotone = true;
        for (int k = 2; k <= 4; ++k) {
            const QParam<double> qk(1.0 - std::pow(10.0, -k));
            HermiteFamily<double> famk(HermiteKind::NewQHermite, qk);
            double err = 0.0;
            for (unsigned n = 0; n <= 8; ++n)
                err = std::max(err, detail::SuiteBuilder::poly_residual(famk.poly(n),
                                                                        classical.poly(n)));
            if (!(err < previous))
                monotone = false;
            previous = err;
        }
        b.boolean_check("hermite/classical-limit-convergence",
                        "coefficient error vs classical family decreases at q = 1-10^-k, k=2,3,4",
                        "q=1-10^-k (internal, float)", monotone);
    }

    {
        const QParam<S> one_q(S(1));
        HermiteFamily<S> famq(HermiteKind::NewQHermite, one_q);
        HermiteFamily<S> famc(HermiteKind::Classical, one_q);
        bool ok = true;
        for (unsigned n = 0; n <= 10; ++n) {
            if (!b.eq(famq.poly(n), famc.poly(n)))
                ok = false;
            if constexpr (is_exact_kernel_v<S>) {
                if (!verify_second_order(famc, n))
                    ok = false;
            }
        }
        HermiteFamily<S> rs1(HermiteKind::RogersSzego, one_q);
        for (unsigned n = 0; n <= 8; ++n) {
            Polynomial<S> binom(one_q);
            for (unsigned k = 0; k <= n; ++k)
                binom = binom + Polynomial<S>::monomial(one_q, q_binomial(one_q, n, k), k);
            if (!b.eq(rs1.poly(n), binom))
                ok = false;
        }
        b.boolean_check("hermite/classical-reduction",
                        "q=1: family = classical Hermite, (d^2-2xd+2n)H_n = 0, "
                        "Rogers-Szego = (1+z)^n",
                        "q=1 (internal)", ok);
    }

    return b.take();
}

// ---------------------------------------------------------------------------
// oscillator suite
// ---------------------------------------------------------------------------

template <ScalarKernel S>
SuiteReport run_oscillator_suite(const QParam<S>& qp, const RunConfig& cfg)
{
    detail::SuiteBuilder b("oscillator", std::string(kernel_name<S>()), format_scalar(qp.q()),
                           cfg.tol);
    const QParam<double> qf(to_double(qp.q()));

    {
        const auto rep = verify_algebra(qp, 20);
        b.boolean_check("oscillator/weyl-relation", "A Adag - q Adag A = 1 on |0..20>",
                        detail::param_range(qp, "n<=20"), rep.weyl.holds);
        const auto repf = verify_algebra(qf, 20);
        b.numeric_check("oscillator/number-commutators",
                        "[N,A] = -A and [N,Adag] = Adag on |0..20>",
                        detail::param_range(qp, "n<=20 float"),
                        std::max(repf.number_lower.worst_error, repf.number_raise.worst_error),
                        cfg.tol.identity);
    }

    {
        const auto mq = build_jacobi(qp, QuadratureKind::Position, 12);
        bool ok = true;
        const S two_q = q_bracket(qp, 2);
        for (unsigned n = 0; n + 1 < 12; ++n)
            if (!b.eq(mq.offdiag_sq[n], q_bracket(qp, n + 1) / two_q))
                ok = false;
        const auto mqf = build_jacobi(qf, QuadratureKind::Position, 12);
        const auto mpf = build_jacobi(qf, QuadratureKind::Momentum, 12);
        double worst = 0.0;
        for (size_t m = 0; m < 12; ++m)
            for (size_t n = 0; n < 12; ++n) {
                std::complex<double> expect_q = 0.0, expect_p = 0.0;
                if (m == n + 1) {
                    expect_q = mqf.offdiag(n);
                    expect_p = std::complex<double>(0, mqf.offdiag(n));
                }
                if (n == m + 1) {
                    expect_q = mqf.offdiag(m);
                    expect_p = std::complex<double>(0, -mqf.offdiag(m));
                }
                worst = std::max({worst, std::abs(mqf.element(m, n) - expect_q),
                                  std::abs(mpf.element(m, n) - expect_p)});
            }
        b.boolean_check("oscillator/jacobi-squares", "b_n^2 = [n+1]_q / [2]_q",
                        detail::param_range(qp, "n<12"), ok);
        b.numeric_check("oscillator/jacobi-pattern",
                        "<m|Q|n> = b_n d_{m,n+1} + b_{n-1} d_{m,n-1}; P carries the +-i phases",
                        detail::param_range(qp, "dim=12"), worst, 1e-15);
    }

    {
        bool exact_ok = true;
        const S two_q = q_bracket(qp, 2);
        for (unsigned n = 0; n <= 20; ++n) {
            const auto unc = uncertainty(qp, n, 24);
            const S expected = energy_level(qp, n);
            if (!(unc.mean_q == S(0)) || !(unc.mean_p == S(0)))
                exact_ok = false;
            if (!b.eq(unc.var_q, expected) || !b.eq(unc.var_p, expected) ||
                !b.eq(unc.product, expected))
                exact_ok = false;
            if (!b.eq(expected, (q_bracket(qp, n) + q_bracket(qp, n + 1)) / two_q))
                exact_ok = false;
        }
        const auto vacuum = uncertainty(qp, 0, 8);
        exact_ok = exact_ok && b.eq(vacuum.product, S(1) / (S(1) + qp.q()));
        const auto classical_vacuum = uncertainty(QParam<S>(S(1)), 0, 8);
        exact_ok = exact_ok && classical_vacuum.product == S(1) / S(2);
        b.boolean_check("oscillator/spectrum-uncertainty",
                        "E_n = ([n]+[n+1])/[2] from the ladder composition; "
                        "var Q = var P = E_n; vacuum product = 1/(1+q); q=1 gives 1/2",
                        detail::param_range(qp, "n<=20"), exact_ok);
    }

    {
        double worst = 0.0;
        const double two_q = q_bracket(qf, 2);
        for (unsigned n = 0; n <= 12; ++n) {
            auto basis = FockVector<double>::basis(16, n);
            auto h = apply_lower(qf, apply_raise(qf, basis));
            auto h2 = apply_raise(qf, apply_lower(qf, basis));
            const double expected = to_double(energy_level(qf, n));
            for (size_t i = 0; i < h.amp.size(); ++i) {
                const double value = (h.amp[i] + h2.amp[i]) / two_q;
                worst = std::max(worst, std::fabs(value - (i == n ? expected : 0.0)) /
                                            std::max(1.0, expected));
            }
        }
        b.numeric_check("oscillator/hamiltonian-action",
                        "(A Adag + Adag A)/[2]_q |n> = E_n |n> on float vectors",
                        detail::param_range(qp, "n<=12 float"), worst, cfg.tol.identity);
    }

    if (qp.regime() == Regime::SubCritical) {
        const auto diag = boundedness_diagnostics(qp, 200);
        b.boolean_check("oscillator/subcritical-bound", "b_n^2 < 1/(1-q^2) for all n (exact)",
                        detail::param_range(qp, "n<=200"), diag.bound_holds);
        b.boolean_check("oscillator/norm-monotone-bounded",
                        "truncated |M_Q| increases with the truncation and stays below "
                        "2 (1-q^2)^(-1/2)",
                        detail::param_range(qp, "N=100,200"),
                        diag.norm_small <= diag.norm_large &&
                            diag.norm_large < 2.0 * diag.bound_value,
                        "norm(N/2)=" + format_scalar(diag.norm_small) +
                            " norm(N)=" + format_scalar(diag.norm_large));
    } else if (qp.regime() == Regime::SuperCritical) {
        const auto diag = boundedness_diagnostics(qp, 200);
        b.numeric_check("oscillator/supercritical-ratio", "b_n / b_{n+1} -> q^(-1/2)",
                        detail::param_range(qp, "n=200"),
                        std::fabs(diag.ratio_at_nmax - diag.ratio_limit), 1e-8);
        b.numeric_check("oscillator/supercritical-cauchy", "sum 1/b_n increments vanish",
                        detail::param_range(qp, "n=200"), diag.recip_last_increment, 1e-12);
        b.boolean_check("oscillator/log-concavity", "b_{n-1}^2 b_{n+1}^2 <= b_n^4",
                        detail::param_range(qp, "n<=200"), diag.log_concavity_holds);
    }

    {
        const size_t dim = 40;
        const auto mq = build_jacobi(qf, QuadratureKind::Position, dim);
        const auto mp = build_jacobi(qf, QuadratureKind::Momentum, dim);
        const std::complex<double> i_unit(0.0, 1.0);
        std::vector<std::complex<double>> u(dim);
        u[0] = 1.0;
        for (size_t n = 1; n < dim; ++n)
            u[n] = u[n - 1] * i_unit;
        double worst = 0.0;
        for (size_t m = 0; m < dim; ++m)
            for (size_t n = 0; n < dim; ++n)
                worst = std::max(worst, std::abs(u[m] * mq.element(m, n) * std::conj(u[n]) -
                                                 mp.element(m, n)));
        b.numeric_check("oscillator/momentum-unitary-equivalence",
                        "M_P = U M_Q U* with U = diag(i^n)", detail::param_range(qp, "dim=40"),
                        worst, cfg.tol.identity);

        const auto eq_spec = spectrum(mq);
        const auto ep_spec = spectrum(mp);
        double spec_err = 0.0, symmetry = 0.0;
        for (size_t k = 0; k < dim; ++k) {
            const double scale = std::max(1.0, std::fabs(eq_spec[k]));
            spec_err = std::max(spec_err, std::fabs(eq_spec[k] - ep_spec[k]) / scale);
            symmetry = std::max(symmetry, std::fabs(eq_spec[k] + eq_spec[dim - 1 - k]) / scale);
        }
        b.numeric_check("oscillator/spectra-agreement",
                        "QL spectrum of M_Q = Sturm spectrum of M_P (relative)",
                        detail::param_range(qp, "dim=40"), spec_err, 1e-10);
        b.numeric_check("oscillator/spectrum-symmetry", "spectrum symmetric about 0 (relative)",
                        detail::param_range(qp, "dim=40"), symmetry, 1e-10);
    }

    b.rejection_check("oscillator/uncertainty-truncation",
                      "uncertainty rejects truncations too small for the n+1 reach",
                      detail::param_range(qp, "n=6 dim=7"), [&] { (void)uncertainty(qp, 6, 7); });

    return b.take();
}

// ---------------------------------------------------------------------------
// measure suite (float arithmetic by nature)
// ---------------------------------------------------------------------------

inline SuiteReport run_measure_suite(const QParam<double>& qp, const RunConfig& cfg)
{
    detail::SuiteBuilder b("measure", "float", format_scalar(qp.q()), cfg.tol);
    const TailPolicy tail{cfg.tol.tail, 1'000'000};

    if (qp.classical()) {
        b.record({"measure/skipped", "lattice machinery undefined at q = 1", "q=1",
                  CheckStatus::Pass, 0.0, "skipped: no Jackson lattice at q = 1"});
        return b.take();
    }

    if (qp.regime() == Regime::SubCritical) {
        {
            double worst = 0.0;
            for (unsigned n = 1; n <= 12; ++n) {
                const double closed = q_gamma(qp, static_cast<double>(n));
                const double factorial = q_factorial(qp, n - 1);
                const double integral = q_gamma_integral(qp, n, tail);
                worst = std::max(worst, std::fabs(closed - factorial) / factorial);
                worst = std::max(worst, std::fabs(integral - factorial) / factorial);
            }
            b.numeric_check("measure/gamma-three-route",
                            "Gamma_q(n) closed form = [n-1]_q! = Jackson integral",
                            detail::param_range(qp, "n<=12"), worst, cfg.tol.gamma);
            double ratio_worst = 0.0;
            for (unsigned n = 1; n <= 10; ++n) {
                const double ratio = q_gamma(qp, n + 1.0) / q_gamma(qp, static_cast<double>(n));
                ratio_worst = std::max(ratio_worst,
                                       std::fabs(ratio - q_bracket(qp, n)) / q_bracket(qp, n));
            }
            b.numeric_check("measure/gamma-functional-equation",
                            "Gamma_q(n+1)/Gamma_q(n) = [n]_q",
                            detail::param_range(qp, "n<=10"), ratio_worst, cfg.tol.gamma);
        }

        {
            const auto rep = resolve_identity_subcritical(qp, std::min(cfg.n_max, 10u), tail);
            b.numeric_check("measure/subcritical-moments",
                            "integral_0^R x^n w(x) d_q x = [n]_q! (Hausdorff side)",
                            detail::param_range(qp, "n<=10"), rep.worst_rel_error(),
                            cfg.tol.moment_sub);
        }

        {
            const auto spec_atoms = make_radial_measure(qp, tail);
            bool positive = true;
            for (const auto& atom : spec_atoms.atoms)
                if (!(atom.weight > 0.0) || !(atom.x > 0.0))
                    positive = false;
            b.boolean_check("measure/weight-positivity", "radial weights positive on the lattice",
                            detail::param_range(qp, ""), positive);

            double euler_worst = 0.0;
            for (double frac : {0.15, 0.4, 0.7, 0.9}) {
                const double x = frac * qp.radius();
                euler_worst = std::max(euler_worst,
                                       std::fabs(nq_inverse(qp, x) * q_exp_small(qp, x) - 1.0));
            }
            b.numeric_check("measure/euler-product-vs-series",
                            "((1-q)x;q)_inf = 1 / sum x^n/[n]_q!",
                            detail::param_range(qp, "x<0.9R"), euler_worst, 1e-12);
        }

        {
            // Deep lattice points suffer catastrophic cancellation in the
            // difference quotient (values are O(1), the quotient divides by
            // (1-q)x), so the depth keeps x above ~1e-4.
            unsigned depth = 1;
            while (depth < 20 && qp.radius() * std::pow(qp.q(), depth + 1) > 1e-4)
                ++depth;
            const auto rep = leibniz_derivative_check(qp, depth);
            b.numeric_check("measure/leibniz-lattice",
                            "[d/dx]_q N^{-1}(x) = -N^{-1}(qx) and [d/dx]_q N(x) = N(x) "
                            "on the lattice",
                            detail::param_range(qp, "j<=" + std::to_string(depth)), rep.worst(),
                            1e-10);
        }
    } else {
        const auto rep = resolve_identity_supercritical(qp, std::min(cfg.n_max, 8u), cfg.k_cut);
        if (!rep.all_conclusive())
            b.inconclusive("measure/supercritical-moments",
                           "bilateral lattice moments = [n]_q! (Stieltjes side)",
                           detail::param_range(qp, "n<=8"),
                           "increments had not settled by the lattice cutoff");
        else
            b.numeric_check("measure/supercritical-moments",
                            "bilateral lattice moments = [n]_q! (Stieltjes side)",
                            detail::param_range(qp, "n<=8"), rep.worst_rel_error(),
                            cfg.tol.moment_super);
    }

    {
        std::vector<std::complex<double>> grid;
        if (qp.regime() == Regime::SubCritical) {
            const double rmax = 0.9 * std::sqrt(qp.radius());
            for (double frac : {0.1, 0.45, 0.8, 1.0})
                grid.push_back(std::polar(frac * rmax, 0.7 * frac));
        } else {
            for (double mag : {0.3, 1.0, 2.0, 3.0})
                grid.push_back(std::polar(mag, 0.5 * mag));
        }
        double norm_worst = 0.0;
        for (const auto& z : grid)
            norm_worst = std::max(norm_worst,
                                  std::fabs(make_coherent_state(z, qp).norm_sq() - 1.0));
        b.numeric_check("measure/coherent-normalization", "<z|z> = 1",
                        detail::param_range(qp, "grid"), norm_worst, cfg.tol.normalization);

        double overlap_worst = 0.0;
        for (size_t i = 0; i + 1 < grid.size(); ++i) {
            const auto cs1 = make_coherent_state(grid[i], qp);
            const auto cs2 = make_coherent_state(grid[i + 1], qp);
            overlap_worst = std::max(overlap_worst,
                                     std::abs(overlap(cs1, cs2) -
                                              overlap_closed_form(grid[i], grid[i + 1], qp)));
        }
        b.numeric_check("measure/overlap-two-route",
                        "<z'|z> contraction = N^{-1/2} N^{-1/2} N(z conj(z')) closed form",
                        detail::param_range(qp, "grid"), overlap_worst, cfg.tol.overlap);

        const std::complex<double> z0 = grid[1];
        const auto cs0 = make_coherent_state(z0, qp);
        double previous = std::numeric_limits<double>::infinity();
        bool monotone = true;
        for (int m = 2; m <= 6; ++m) {
            const auto nearby = make_coherent_state(z0 + std::pow(10.0, -m), qp);
            const double dist = coherent_distance_sq(cs0, nearby);
            if (!(dist < previous))
                monotone = false;
            previous = dist;
        }
        monotone = monotone && previous < 1e-10;
        b.boolean_check("measure/coherent-continuity",
                        "|| |z> - |z'> ||^2 decreases monotonically as |z - z'| -> 0",
                        detail::param_range(qp, "|z-z'|=10^-2..10^-6"), monotone);
    }

    {
        const auto offdiag = identity_matrix_element(qp, 1, 3, 64, tail);
        const auto diag = identity_matrix_element(qp, 4, 4, 64, tail);
        b.numeric_check("measure/identity-angular-offdiagonal",
                        "<1| integral |z><z| dmu |3> vanishes by angular integration",
                        detail::param_range(qp, "(n,m)=(1,3)"), std::abs(offdiag),
                        cfg.tol.angular);
        b.numeric_check("measure/identity-diagonal", "<4| integral |z><z| dmu |4> = 1",
                        detail::param_range(qp, "(n,m)=(4,4)"), std::abs(diag - 1.0), 1e-8);
    }

    b.rejection_check("measure/coherent-domain", "|z| >= R rejected for q < 1", "q=1/2 (internal)",
                      [] { (void)make_coherent_state({2.5, 0.0}, QParam<double>(0.5)); });

    return b.take();
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

template <ScalarKernel S>
std::vector<SuiteReport> run_suites_kernel(const std::string& suite, const RunConfig& cfg)
{
    const QParam<S> qp(scalar_from_text<S>(cfg.q_text, cfg.allow_decimal_q));
    const QParam<double> qf(to_double(qp.q()));
    std::vector<SuiteReport> reports;
    if (suite == "core" || suite == "all")
        reports.push_back(run_core_suite(qp, cfg));
    if (suite == "poly" || suite == "all")
        reports.push_back(run_poly_suite(qp, cfg));
    if (suite == "hermite" || suite == "all")
        reports.push_back(run_hermite_suite(qp, cfg));
    if (suite == "oscillator" || suite == "all")
        reports.push_back(run_oscillator_suite(qp, cfg));
    if (suite == "measure" || suite == "all")
        reports.push_back(run_measure_suite(qf, cfg));
    if (reports.empty())
        throw std::invalid_argument("unknown suite: " + suite);
    return reports;
}

inline std::vector<SuiteReport> run_suites(const std::string& suite, const RunConfig& cfg)
{
    cfg.validate();
    if (cfg.kernel == KernelChoice::Exact)
        return run_suites_kernel<Rational>(suite, cfg);
    return run_suites_kernel<double>(suite, cfg);
}

} // namespace qcalc

#endif // QCALC_VERIFY_HPP
