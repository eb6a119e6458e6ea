#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcalc/oscillator.hpp"
#include "test_oracles.hpp"

#include <cmath>

using namespace qcalc;

TEST_CASE("ladder actions on basis vectors")
{
    const QParam<double> qp(0.5);
    const auto vac = FockVector<double>::basis(8, 0);
    CHECK(apply_lower(qp, vac).norm_sq() == 0.0);

    for (unsigned n = 0; n <= 6; ++n) {
        const auto basis = FockVector<double>::basis(8, n);
        const auto up_down = apply_lower(qp, apply_raise(qp, basis));
        const auto down_up = apply_raise(qp, apply_lower(qp, basis));
        for (size_t i = 0; i < up_down.amp.size(); ++i) {
            const double adag_a = (i == n) ? q_bracket(qp, n) : 0.0;
            const double a_adag = (i == n) ? q_bracket(qp, n + 1) : 0.0;
            CHECK(down_up.amp[i] == doctest::Approx(adag_a).epsilon(1e-14));
            CHECK(up_down.amp[i] == doctest::Approx(a_adag).epsilon(1e-14));
            // Weyl relation on vectors: (A Adag - q Adag A)|n> = |n>.
            CHECK(up_down.amp[i] - qp.q() * down_up.amp[i] ==
                  doctest::Approx(i == n ? 1.0 : 0.0).epsilon(1e-14));
        }
    }

    // Raising the top basis state flags truncation loss.
    const auto top = FockVector<double>::basis(8, 8);
    CHECK(apply_raise(qp, top).truncation_loss);
    CHECK(!apply_raise(qp, vac).truncation_loss);

    const auto counted = apply_number(FockVector<double>::basis(8, 5));
    CHECK(counted.amp[5] == 5.0);
}

TEST_CASE("algebra relations hold exactly in the rational kernel")
{
    for (const auto& q : oracles::exact_q_values()) {
        const QParam<Rational> qp(q);
        CHECK(verify_algebra(qp, 20).all_hold());
        for (unsigned n = 0; n <= 50; ++n)
            CHECK(q_bracket(qp, n + 1) - q * q_bracket(qp, n) == Rational(1));
    }
    CHECK(verify_algebra(QParam<Rational>(Rational(1)), 20).all_hold());
    CHECK(verify_algebra(QParam<Rational>(Rational(3)), 20).all_hold());

    const auto rep = verify_algebra(QParam<double>(0.5), 20);
    CHECK(rep.all_hold());
    CHECK(rep.number_lower.worst_error < 1e-13);
}

TEST_CASE("Jacobi matrix construction")
{
    const QParam<Rational> half(Rational(1, 2));
    const auto mq = build_jacobi(half, QuadratureKind::Position, 16);
    CHECK(mq.offdiag_sq[0] == Rational(2, 3));
    for (unsigned n = 0; n + 1 < 16; ++n)
        CHECK(mq.offdiag_sq[n] == q_bracket(half, n + 1) / q_bracket(half, 2));

    // <m|Q|n> pattern and the momentum phases.
    const QParam<double> qf(0.5);
    const auto mqf = build_jacobi(qf, QuadratureKind::Position, 6);
    const auto mpf = build_jacobi(qf, QuadratureKind::Momentum, 6);
    CHECK(mqf.element(1, 0) == std::complex<double>(mqf.offdiag(0)));
    CHECK(mqf.element(0, 1) == std::complex<double>(mqf.offdiag(0)));
    CHECK(mqf.element(3, 1) == std::complex<double>(0.0));
    CHECK(mpf.element(1, 0) == std::complex<double>(0.0, mpf.offdiag(0)));
    CHECK(mpf.element(0, 1) == std::complex<double>(0.0, -mpf.offdiag(0)));
    CHECK_THROWS_AS(mqf.element(7, 0), std::out_of_range);
    CHECK_THROWS_AS(build_jacobi(qf, QuadratureKind::Position, 1), std::invalid_argument);

    // Sub-critical uniform bound, exact on squares, n <= 500.
    const Rational limit_sq = Rational(1) / (Rational(1) - half.q() * half.q());
    CHECK(limit_sq == Rational(4, 3));
    for (unsigned n = 0; n <= 500; ++n)
        CHECK(q_bracket(half, n + 1) / q_bracket(half, 2) < limit_sq);

    // Super-critical squares grow as (2^(n+1)-1)/3 at q = 2.
    const QParam<Rational> two(Rational(2));
    const auto m2 = build_jacobi(two, QuadratureKind::Position, 12);
    for (unsigned n = 0; n + 1 < 12; ++n)
        CHECK(m2.offdiag_sq[n] == (pow_int(Rational(2), n + 1) - Rational(1)) / Rational(3));
}

TEST_CASE("tridiagonal eigensolvers agree with the closed form and each other")
{
    // Free matrix: diag 0, offdiag 1, dimension 12; eigenvalues 2cos(k pi / 13).
    const size_t n = 12;
    std::vector<double> d(n, 0.0), e(n - 1, 1.0), esq(n - 1, 1.0);
    const auto ql = tridiagonal_eigenvalues_ql(d, e);
    const auto sturm = tridiagonal_eigenvalues_sturm(d, esq);
    for (size_t k = 0; k < n; ++k) {
        const double exact = 2.0 * std::cos(M_PI * static_cast<double>(n - k) /
                                            static_cast<double>(n + 1));
        CHECK(ql[k] == doctest::Approx(exact).epsilon(1e-12));
        CHECK(sturm[k] == doctest::Approx(exact).epsilon(1e-12));
    }

    // Dual-route agreement on the oscillator matrices.
    for (double q : {0.5, 2.0}) {
        const QParam<double> qp(q);
        const auto mq = build_jacobi(qp, QuadratureKind::Position, 50);
        const auto mp = build_jacobi(qp, QuadratureKind::Momentum, 50);
        const auto eq = spectrum(mq);
        const auto ep = spectrum(mp);
        for (size_t k = 0; k < 50; ++k) {
            const double scale = std::max(1.0, std::fabs(eq[k]));
            CHECK(std::fabs(eq[k] - ep[k]) / scale < 1e-11);
            CHECK(std::fabs(eq[k] + eq[50 - 1 - k]) / scale < 1e-11);
        }
    }
}

TEST_CASE("boundedness diagnostics per regime")
{
    const QParam<Rational> half(Rational(1, 2));
    const auto sub = boundedness_diagnostics(half, 200);
    CHECK(sub.bound_holds);
    CHECK(sub.bound_value == doctest::Approx(std::sqrt(4.0 / 3.0)));
    CHECK(sub.norm_small <= sub.norm_large);
    CHECK(sub.norm_large < 2.0 * sub.bound_value);

    const QParam<Rational> two(Rational(2));
    const auto super = boundedness_diagnostics(two, 100);
    CHECK(super.ratio_limit == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::fabs(super.ratio_at_nmax - super.ratio_limit) < 1e-8);
    CHECK(super.recip_last_increment < 1e-12);
    CHECK(super.log_concavity_holds);

    // Log-concavity chain on exact squares, n <= 500, plus the worked value
    // b_0^2 b_2^2 = 7/9 <= b_1^4 = 1 at q = 2.
    std::vector<Rational> bsq;
    for (unsigned n = 0; n <= 501; ++n)
        bsq.push_back(q_bracket(two, n + 1) / q_bracket(two, 2));
    CHECK(bsq[0] * bsq[2] == Rational(7, 9));
    CHECK(bsq[1] * bsq[1] == Rational(1));
    for (unsigned n = 1; n <= 500; ++n)
        CHECK(bsq[n - 1] * bsq[n + 1] <= bsq[n] * bsq[n]);

    CHECK_THROWS_AS(boundedness_diagnostics(half, 5), std::invalid_argument);
}

TEST_CASE("momentum matrix is unitarily equivalent to the position matrix")
{
    const QParam<double> qp(0.5);
    const size_t dim = 40;
    const auto mq = build_jacobi(qp, QuadratureKind::Position, dim);
    const auto mp = build_jacobi(qp, QuadratureKind::Momentum, dim);
    std::vector<std::complex<double>> u(dim);
    u[0] = 1.0;
    for (size_t n = 1; n < dim; ++n)
        u[n] = u[n - 1] * std::complex<double>(0.0, 1.0);
    for (size_t m = 0; m < dim; ++m)
        for (size_t n = 0; n < dim; ++n)
            CHECK(std::abs(u[m] * mq.element(m, n) * std::conj(u[n]) - mp.element(m, n)) < 1e-12);
}

TEST_CASE("spectrum of the deformed Hamiltonian")
{
    const QParam<Rational> half(Rational(1, 2));
    CHECK(energy_level(half, 0) == Rational(2, 3));
    const auto spec = spectrum_hq(QParam<Rational>(Rational(2)), 5);
    CHECK(spec[3] == Rational(22, 3));

    // q = 1: E_n = n + 1/2.
    const QParam<Rational> one(Rational(1));
    for (unsigned n = 0; n <= 20; ++n)
        CHECK(energy_level(one, n) == Rational(2 * n + 1, 2));

    // Operator-composition route equals the closed formula, exactly.
    for (const auto& q : oracles::exact_q_values()) {
        const QParam<Rational> qp(q);
        for (unsigned n = 0; n <= 20; ++n)
            CHECK(energy_level(qp, n) ==
                  (q_bracket(qp, n) + q_bracket(qp, n + 1)) / q_bracket(qp, 2));
    }
}

TEST_CASE("uncertainty products")
{
    const QParam<Rational> half(Rational(1, 2));
    const auto vacuum = uncertainty(half, 0, 8);
    CHECK(vacuum.mean_q == Rational(0));
    CHECK(vacuum.mean_p == Rational(0));
    CHECK(vacuum.product == Rational(2, 3));

    CHECK(uncertainty(QParam<Rational>(Rational(1)), 0, 8).product == Rational(1, 2));
    CHECK(uncertainty(half, 2, 8).product == Rational(13, 6));

    // Variance identity chain: var = b_{n-1}^2 + b_n^2 = E_n, exact.
    for (const auto& q : oracles::exact_q_values()) {
        const QParam<Rational> qp(q);
        const auto mq = build_jacobi(qp, QuadratureKind::Position, 24);
        for (unsigned n = 0; n <= 20; ++n) {
            const auto unc = uncertainty(qp, n, 24);
            Rational via_matrix = mq.offdiag_sq[n];
            if (n >= 1)
                via_matrix = via_matrix + mq.offdiag_sq[n - 1];
            CHECK(unc.var_q == via_matrix);
            CHECK(unc.var_p == via_matrix);
            CHECK(via_matrix == energy_level(qp, n));
            CHECK(unc.product == energy_level(qp, n));
        }
    }

    CHECK(uncertainty(half, 0, 8).delta_q() ==
          doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(uncertainty(half, 7, 8), std::invalid_argument);
}
