#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcalc/qcore.hpp"
#include "test_oracles.hpp"

#include <cmath>
#include <complex>

using namespace qcalc;

TEST_CASE("QParam validates and classifies the regime")
{
    CHECK(QParam<Rational>(Rational(1, 2)).regime() == Regime::SubCritical);
    CHECK(QParam<Rational>(Rational(1)).regime() == Regime::ClassicalLimit);
    CHECK(QParam<Rational>(Rational(3, 2)).regime() == Regime::SuperCritical);
    CHECK_THROWS_AS(QParam<Rational>(Rational(0)), std::domain_error);
    CHECK_THROWS_AS(QParam<double>(-0.5), std::domain_error);

    const QParam<Rational> half(Rational(1, 2));
    CHECK(half.radius() == Rational(2));
    CHECK(!QParam<Rational>(Rational(2)).has_finite_radius());
    CHECK_THROWS_AS(QParam<Rational>(Rational(2)).radius(), std::logic_error);
}

TEST_CASE("q_bracket frozen values and recurrence")
{
    CHECK(q_bracket(QParam<Rational>(Rational(1)), 5) == Rational(5));
    CHECK(q_bracket(QParam<Rational>(Rational(1, 2)), 3) == Rational(7, 4));
    // Direct-summation oracle value for the super-critical case.
    const Rational expected = oracles::bracket_by_summation(Rational(3, 2), 4);
    CHECK(expected == Rational(65, 8));
    CHECK(q_bracket(QParam<Rational>(Rational(3, 2)), 4) == expected);

    for (const auto& q : oracles::exact_q_values()) {
        const QParam<Rational> qp(q);
        QInt<Rational> walker = q_int(qp, 0);
        for (unsigned n = 0; n <= 30; ++n) {
            CHECK(q_bracket(qp, n) == oracles::bracket_by_summation(q, n));
            CHECK(q_bracket(qp, n) == walker.value);
            walker = walker.next(qp);
        }
    }
}

TEST_CASE("q_bracket duality and double-base identities")
{
    for (const auto& q : oracles::exact_q_values()) {
        const QParam<Rational> qp(q);
        const QParam<Rational> qinv = qp.inverse();
        const QParam<Rational> qsq = qp.squared();
        for (unsigned n = 0; n <= 30; ++n) {
            CHECK(q_bracket(qinv, n) ==
                  pow_int(q, 1 - static_cast<long long>(n)) * q_bracket(qp, n));
            CHECK(q_bracket(qp, 2) * q_bracket(qsq, n) == q_bracket(qp, 2 * n));
        }
    }
}

TEST_CASE("q_factorial frozen values")
{
    CHECK(q_factorial(QParam<Rational>(Rational(2)), 0) == Rational(1));
    CHECK(q_factorial(QParam<Rational>(Rational(1, 2)), 3) == Rational(21, 8));
    CHECK(q_factorial(QParam<Rational>(Rational(1)), 4) == Rational(24));
    for (const auto& q : oracles::exact_q_values())
        for (unsigned n = 0; n <= 20; ++n)
            CHECK(q_factorial(QParam<Rational>(q), n) == oracles::factorial_by_products(q, n));
}

TEST_CASE("q_binomial frozen values, symmetry and Pascal oracle")
{
    const QParam<Rational> half(Rational(1, 2));
    CHECK(q_binomial(half, 2, 1) == Rational(3, 2));
    CHECK(q_binomial(half, 4, 2) == Rational(35, 16));
    CHECK(q_binomial(QParam<Rational>(Rational(1)), 5, 2) == Rational(10));
    CHECK_THROWS_AS(q_binomial(half, 3, 4), std::invalid_argument);

    for (const auto& q : oracles::exact_q_values()) {
        const QParam<Rational> qp(q);
        for (unsigned n = 0; n <= 12; ++n)
            for (unsigned k = 0; k <= n; ++k) {
                CHECK(q_binomial(qp, n, k) == oracles::binomial_by_pascal(q, n, k));
                CHECK(q_binomial(qp, n, k) == q_binomial(qp, n, n - k));
            }
    }
}

TEST_CASE("q_pochhammer finite and infinite")
{
    const QParam<Rational> half(Rational(1, 2));
    CHECK(q_pochhammer(half, Rational(7, 3), 0) == Rational(1));
    CHECK(q_pochhammer(half, Rational(1, 2), 2) == Rational(3, 8));
    for (const auto& q : oracles::exact_q_values())
        for (unsigned k = 0; k <= 12; ++k)
            CHECK(q_pochhammer(QParam<Rational>(q), Rational(-3, 5), k) ==
                  oracles::pochhammer_by_products(q, Rational(-3, 5), k));

    // (1/2; 1/2)_inf, frozen from the truncated-product oracle.
    const QParam<double> qf(0.5);
    double oracle = 1.0;
    for (int j = 0; j < 60; ++j)
        oracle *= 1.0 - 0.5 * std::pow(0.5, j);
    CHECK(oracle == doctest::Approx(0.2887880950866024).epsilon(1e-13));
    CHECK(q_pochhammer_inf(qf, 0.5) == doctest::Approx(oracle).epsilon(1e-14));
    CHECK_THROWS_AS(q_pochhammer_inf(QParam<double>(2.0), 0.5), std::domain_error);
    CHECK_THROWS_AS(q_pochhammer_inf(QParam<double>(1.0), 0.5), std::domain_error);
}

TEST_CASE("q-exponential series")
{
    const QParam<double> qf(0.5);
    CHECK(q_exp_small(qf, 0.0) == 1.0);
    CHECK(std::fabs(q_exp_small(qf, 0.3) * q_exp_big(qf, -0.3) - 1.0) < 1e-12);
    CHECK(std::fabs(q_exp_small(QParam<double>(1.0), 1.0) - std::exp(1.0)) < 1e-12);

    // e_{1/q} is the same series as E_q.
    for (double x : {-1.2, 0.4, 1.7})
        CHECK(q_exp_inv(qf, x) == doctest::Approx(q_exp_big(qf, x)).epsilon(1e-14));

    // Outside the disk |x| < 1/(1-q) the series is rejected.
    CHECK_THROWS_AS(q_exp_small(qf, 2.0), std::domain_error);
    CHECK_THROWS_AS(q_exp_small(qf, -2.5), std::domain_error);
    const QParam<Rational> half(Rational(1, 2));
    CHECK_THROWS_AS(q_exp_small(half, Rational(2)), std::domain_error);

    // Inside but too close to the boundary: the 500-term cap trips instead of
    // silently truncating.
    CHECK_THROWS_AS(q_exp_small(qf, 2.0 * (1.0 - 1e-9)), std::runtime_error);

    // Complex arguments follow the same series.
    const std::complex<double> z(0.4, 0.3);
    const auto direct = q_exp_small<double, std::complex<double>>(qf, z);
    std::complex<double> series_sum(0.0), term(1.0);
    for (unsigned n = 1; n <= 60; ++n) {
        series_sum += term;
        term *= z / q_bracket(qf, n);
    }
    CHECK(std::abs(direct - series_sum) < 1e-13);
}

TEST_CASE("q=1 exponential matches exp and super-critical e_q is entire")
{
    CHECK(std::fabs(q_exp_small(QParam<double>(2.0), 7.5) -
                    (1.0 + 7.5 + 7.5 * 7.5 / 3.0 + std::pow(7.5, 3) / 21.0 +
                     std::pow(7.5, 4) / 315.0 + std::pow(7.5, 5) / 9765.0 +
                     std::pow(7.5, 6) / (9765.0 * 63.0) +
                     std::pow(7.5, 7) / (9765.0 * 63.0 * 127.0) +
                     std::pow(7.5, 8) / (9765.0 * 63.0 * 127.0 * 255.0) +
                     std::pow(7.5, 9) / (9765.0 * 63.0 * 127.0 * 255.0 * 511.0) +
                     std::pow(7.5, 10) / (9765.0 * 63.0 * 127.0 * 255.0 * 511.0 * 1023.0))) <
          1e-9 * q_exp_small(QParam<double>(2.0), 7.5));
}

TEST_CASE("scalar text round trip")
{
    CHECK(parse_rational("21/8") == Rational(21, 8));
    CHECK(parse_rational("-5") == Rational(-5));
    CHECK(format_scalar(Rational(21, 8)) == "21/8");
    CHECK(format_scalar(Rational(3)) == "3");
    CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
    CHECK(parse_rational("0.5", true) == Rational(1, 2));
    CHECK(scalar_from_text<double>("1/2") == 0.5);
}
