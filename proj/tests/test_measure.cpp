#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcalc/measure.hpp"
#include "test_oracles.hpp"

#include <cmath>
#include <complex>

using namespace qcalc;

namespace {

// Independent lattice-sum oracle for the finite Jackson integral.
double jackson_sum_oracle(const std::function<double(double)>& f, double a, double q, int terms)
{
    double sum = 0.0;
    for (int k = 0; k < terms; ++k)
        sum += (1.0 - q) * a * std::pow(q, k) * f(a * std::pow(q, k));
    return sum;
}

} // namespace

TEST_CASE("finite Jackson integral")
{
    const QParam<double> half(0.5);
    CHECK(jackson_integral_finite([](double) { return 1.0; }, 1.0, half) ==
          doctest::Approx(1.0).epsilon(1e-13));
    // integral_0^1 x d_q x = 1/[2]_q = 2/3 at q = 1/2.
    const double linear = jackson_integral_finite([](double x) { return x; }, 1.0, half);
    CHECK(linear == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(linear ==
          doctest::Approx(jackson_sum_oracle([](double x) { return x; }, 1.0, 0.5, 100))
              .epsilon(1e-13));

    // Lemma-route integrand at n = 2, q = 1/2 integrates to [2]_q! = 3/2.
    const auto integrand = [&](double x) { return x * x * nq_inverse(half, 0.5 * x); };
    CHECK(jackson_integral_finite(integrand, half.radius(), half) ==
          doctest::Approx(1.5).epsilon(1e-12));

    CHECK_THROWS_AS(jackson_integral_finite([](double) { return 1.0; }, 1.0, QParam<double>(2.0)),
                    std::domain_error);

    // A non-integrable tail never settles: the term cap is an error, not a
    // silent truncation.
    CHECK_THROWS_AS(jackson_integral_finite([](double x) { return 1.0 / x; }, 1.0, half,
                                            TailPolicy{1e-14, 20000}),
                    NonConvergenceError);
}

TEST_CASE("normalization series and its inverse")
{
    const QParam<double> half(0.5);
    // Euler product route equals the reciprocal series inside the disk.
    for (double x : {0.1, 0.5, 1.0, 1.5, 1.8})
        CHECK(nq_inverse(half, x) * q_exp_small(half, x) == doctest::Approx(1.0).epsilon(1e-13));
    // At and beyond the radius the series diverges and the weight vanishes.
    CHECK(normalization_series(half, 2.0) == std::numeric_limits<double>::infinity());
    CHECK(nq_inverse(half, 2.0) == 0.0);
    CHECK(nq_inverse(half, 5.0) == 0.0);

    // Super-critical inverse via the log product equals the series route for
    // moderate arguments, and survives astronomically large ones.
    const QParam<double> two(2.0);
    for (double x : {0.3, 2.0, 9.0})
        CHECK(nq_inverse(two, x) * q_exp_small(two, x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nq_inverse(two, 1e200) >= 0.0);
    CHECK(std::isfinite(nq_inverse(two, 1e200)));

    CHECK(nq_inverse(QParam<double>(1.0), 2.0) == doctest::Approx(std::exp(-2.0)));
    CHECK_THROWS_AS(nq_inverse(half, -1.0), std::domain_error);
}

TEST_CASE("q-Gamma: closed form, factorial and integral routes")
{
    const QParam<double> half(0.5);
    CHECK(q_gamma(half, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q_gamma(half, 3.0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(q_gamma_integral(half, 3) == doctest::Approx(1.5).epsilon(1e-10));

    for (double q : {1.0 / 3.0, 0.5, 2.0 / 3.0}) {
        const QParam<double> qp(q);
        for (unsigned n = 1; n <= 12; ++n) {
            const double fact = q_factorial(qp, n - 1);
            CHECK(std::fabs(q_gamma(qp, n) - fact) / fact < 1e-9);
            CHECK(std::fabs(q_gamma_integral(qp, n) - fact) / fact < 1e-9);
        }
        for (unsigned n = 1; n <= 10; ++n)
            CHECK(q_gamma(qp, n + 1.0) / q_gamma(qp, static_cast<double>(n)) ==
                  doctest::Approx(q_bracket(qp, n)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(q_gamma(QParam<double>(2.0), 3.0), std::domain_error);
    CHECK_THROWS_AS(q_gamma(half, 0.0), std::domain_error);
}

TEST_CASE("improper bilateral Jackson integral")
{
    const QParam<double> half(0.5);
    // x^3 N^{-1}(qx) integrates to [3]_q! = 21/8 (= 2.625).
    const auto lemma_integrand = [&](double x) {
        return x * x * x * nq_inverse(half, 0.5 * x);
    };
    const auto res = improper_q_integral(lemma_integrand, half);
    CHECK(res.converged);
    CHECK(res.value == doctest::Approx(21.0 / 8.0).epsilon(1e-12));

    const auto zero = improper_q_integral([](double) { return 0.0; }, half);
    CHECK(zero.value == 0.0);
    CHECK(zero.converged);

    const QParam<double> two(2.0);
    const auto super = improper_q_integral(
        [&](double x) { return x * x * nq_inverse(two, 2.0 * x); }, two);
    CHECK(super.converged);
    CHECK(super.value == doctest::Approx(3.0).epsilon(1e-8));

    // Divergence at the x -> 0 tail is reported with its direction.
    try {
        (void)improper_q_integral([](double x) { return 1.0 / (x * x); }, half);
        CHECK(false);
    } catch (const NonConvergenceError& e) {
        CHECK(std::string(e.what()).find("x->0") != std::string::npos);
    }

    CHECK_THROWS_AS(improper_q_integral([](double) { return 1.0; }, QParam<double>(1.0)),
                    std::domain_error);
}

TEST_CASE("moment problems reproduce the q-factorials")
{
    for (double q : {0.5, 2.0 / 3.0}) {
        const QParam<double> qp(q);
        const auto rep = resolve_identity_subcritical(qp, 10);
        CHECK(rep.rows.size() == 11);
        for (const auto& row : rep.rows) {
            CHECK(row.conclusive);
            CHECK(row.rel_error < 1e-9);
            CHECK(row.target == doctest::Approx(q_factorial(qp, row.n)).epsilon(1e-15));
        }
    }

    for (double q : {1.5, 2.0}) {
        const QParam<double> qp(q);
        const auto rep = resolve_identity_supercritical(qp, 8);
        CHECK(rep.all_conclusive());
        CHECK(rep.worst_rel_error() < 1e-8);
    }

    // Worked super-critical values at q = 2: moments 0 and 3.
    const auto rep2 = resolve_identity_supercritical(QParam<double>(2.0), 3);
    CHECK(rep2.rows[0].computed == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rep2.rows[3].computed == doctest::Approx(21.0).epsilon(1e-8));

    // A tiny lattice cutoff is reported inconclusive, not failed.
    const auto small_cut = resolve_identity_supercritical(QParam<double>(1.5), 8, 3);
    CHECK(!small_cut.all_conclusive());

    CHECK_THROWS_AS(resolve_identity_subcritical(QParam<double>(2.0), 4), std::domain_error);
    CHECK_THROWS_AS(resolve_identity_supercritical(QParam<double>(0.5), 4), std::domain_error);
}

TEST_CASE("radial measure atoms")
{
    const QParam<double> half(0.5);
    const auto sub = make_radial_measure(half);
    CHECK(sub.regime == Regime::SubCritical);
    for (const auto& atom : sub.atoms) {
        CHECK(atom.x > 0.0);
        CHECK(atom.x <= half.radius());
        CHECK(atom.weight > 0.0);
    }
    // Moments of the atom list match the factorials.
    for (unsigned n = 0; n <= 8; ++n) {
        double moment = 0.0;
        for (const auto& atom : sub.atoms)
            moment += atom.weight * std::pow(atom.x, n);
        CHECK(moment == doctest::Approx(q_factorial(half, n)).epsilon(1e-9));
    }

    const QParam<double> two(2.0);
    const auto super = make_radial_measure(two);
    CHECK(super.lattice_anchor == 1.0);
    for (unsigned n = 0; n <= 8; ++n) {
        double moment = 0.0;
        for (const auto& atom : super.atoms)
            moment += atom.weight * std::pow(atom.x, n);
        CHECK(moment == doctest::Approx(q_factorial(two, n)).epsilon(1e-8));
    }
}

TEST_CASE("lattice Leibniz checks")
{
    const QParam<double> half(0.5);
    const auto rep = leibniz_derivative_check(half, 14);
    CHECK(rep.worst() < 1e-10);

    // Small-x limit: [d/dx]_q N^{-1} approaches -1 as x -> 0.
    const double x = half.radius() * std::pow(0.5, 16);
    const double quotient =
        (nq_inverse(half, x) - nq_inverse(half, 0.5 * x)) / ((1.0 - 0.5) * x);
    CHECK(quotient == doctest::Approx(-1.0).epsilon(1e-4));

    // Residuals at the worked points x = 0.5 and x = 1.5.
    for (double x0 : {0.5, 1.5}) {
        const double r1 = (nq_inverse(half, x0) - nq_inverse(half, 0.5 * x0)) / (0.5 * x0) +
                          nq_inverse(half, 0.5 * x0);
        CHECK(std::fabs(r1) < 1e-10);
        const double r2 = (normalization_series(half, x0) - normalization_series(half, 0.5 * x0)) /
                              (0.5 * x0) -
                          normalization_series(half, x0);
        CHECK(std::fabs(r2) < 1e-10);
    }
    CHECK_THROWS_AS(leibniz_derivative_check(QParam<double>(2.0), 5), std::domain_error);
}

TEST_CASE("coherent states")
{
    const QParam<double> half(0.5);

    // z = 0 is the vacuum exactly.
    const auto vac = make_coherent_state({0.0, 0.0}, half);
    CHECK(vac.amp[0] == std::complex<double>(1.0));
    for (size_t n = 1; n < vac.amp.size(); ++n)
        CHECK(std::abs(vac.amp[n]) == 0.0);

    // Normalization at z = 0.9 (R = 2).
    const auto cs = make_coherent_state({0.9, 0.0}, half);
    CHECK(std::fabs(cs.norm_sq() - 1.0) < 1e-12);

    // Eigen-relation on stored amplitudes: sqrt([n+1]) c_{n+1} = z c_n.
    for (size_t n = 0; n + 1 < cs.amp.size(); ++n) {
        const auto lhs = std::sqrt(q_bracket(half, static_cast<unsigned>(n) + 1)) * cs.amp[n + 1];
        const auto rhs = 0.9 * cs.amp[n];
        CHECK(std::abs(lhs - rhs) <= 1e-14 * std::max(1.0, std::abs(rhs)));
    }

    // Overlap: closed form vs contraction, worked pair z = 0.5, z' = 0.3i.
    const auto cs1 = make_coherent_state({0.5, 0.0}, half);
    const auto cs2 = make_coherent_state({0.0, 0.3}, half);
    CHECK(std::abs(overlap(cs1, cs1) - 1.0) < 1e-13);
    CHECK(std::abs(overlap(cs1, cs2) - overlap_closed_form({0.5, 0.0}, {0.0, 0.3}, half)) < 1e-12);

    // Super-critical pair from the worked example.
    const QParam<double> two(2.0);
    const auto d1 = make_coherent_state({1.7, 0.0}, two);
    const auto d2 = make_coherent_state({-0.4, 0.0}, two);
    CHECK(std::abs(overlap(d1, d2) - overlap_closed_form({1.7, 0.0}, {-0.4, 0.0}, two)) < 1e-10);

    // Continuity: distance decreases monotonically along |z - z'| = 10^-m.
    double previous = std::numeric_limits<double>::infinity();
    for (int m = 2; m <= 6; ++m) {
        const auto nearby = make_coherent_state({0.5 + std::pow(10.0, -m), 0.0}, half);
        const double dist = coherent_distance_sq(cs1, nearby);
        CHECK(dist < previous);
        previous = dist;
    }
    CHECK(previous < 1e-10);

    // Domain rejections: |z| >= R for q < 1, and mismatched q overlaps.
    CHECK_THROWS_AS(make_coherent_state({2.0, 0.0}, half), std::domain_error);
    CHECK_THROWS_AS(make_coherent_state({1.5, 0.0}, half), std::domain_error); // |z|^2 >= R
    CHECK_THROWS_AS(overlap(cs1, d1), std::invalid_argument);
}

TEST_CASE("resolution of the identity: matrix elements")
{
    for (double q : {0.5, 2.0}) {
        const QParam<double> qp(q);
        CHECK(std::abs(identity_matrix_element(qp, 1, 3)) < 1e-12);
        CHECK(std::abs(identity_matrix_element(qp, 2, 5)) < 1e-12);
        CHECK(std::abs(identity_matrix_element(qp, 4, 4) - 1.0) < 1e-8);
        CHECK(std::abs(identity_matrix_element(qp, 0, 0) - 1.0) < 1e-10);
    }
}
