#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcalc/hermite.hpp"
#include "test_oracles.hpp"

#include <cmath>

using namespace qcalc;

TEST_CASE("classical Hermite family")
{
    const QParam<Rational> one(Rational(1));
    HermiteFamily<Rational> fam(HermiteKind::Classical, one);
    CHECK(fam.poly(0) == Polynomial<Rational>::constant(one, Rational(1)));
    CHECK(fam.poly(2) == Polynomial<Rational>(one, {Rational(-2), Rational(0), Rational(4)}));
    // d/dz H_3 = 6 H_2.
    CHECK(jackson_derivative(fam.poly(3)) == fam.poly(2).scaled(Rational(6)));
}

TEST_CASE("Rogers-Szego family")
{
    const QParam<Rational> half(Rational(1, 2));
    HermiteFamily<Rational> rs(HermiteKind::RogersSzego, half);
    CHECK(rs.poly(1) == Polynomial<Rational>(half, {Rational(1), Rational(1)}));
    CHECK(rs.poly(2) == Polynomial<Rational>(half, {Rational(1), Rational(3, 2), Rational(1)}));

    // Three-term recurrence holds exactly.
    const auto z = Polynomial<Rational>::variable(half);
    const auto one = Polynomial<Rational>::constant(half, Rational(1));
    for (unsigned n = 1; n <= 16; ++n)
        CHECK(rs.poly(n + 1) ==
              (one + z) * rs.poly(n) -
                  z.scaled(Rational(1) - pow_int(half.q(), n)) * rs.poly(n - 1));

    // D H_n(z;q) = [n]_q H_{n-1}(z;q).
    for (unsigned n = 1; n <= 12; ++n)
        CHECK(jackson_derivative(rs.poly(n)) == rs.poly(n - 1).scaled(q_bracket(half, n)));

    // q = 1 collapses to (1+z)^n.
    const QParam<Rational> qone(Rational(1));
    HermiteFamily<Rational> rs1(HermiteKind::RogersSzego, qone);
    auto binom_pow = Polynomial<Rational>::constant(qone, Rational(1));
    const auto one_plus_z = Polynomial<Rational>(qone, {Rational(1), Rational(1)});
    for (unsigned n = 0; n <= 8; ++n) {
        CHECK(rs1.poly(n) == binom_pow);
        binom_pow = binom_pow * one_plus_z;
    }
}

TEST_CASE("explicit low orders of the deformed family")
{
    for (const auto& q : oracles::exact_q_values()) {
        const QParam<Rational> qp(q);
        HermiteFamily<Rational> fam(HermiteKind::NewQHermite, qp);
        const Rational two = q_bracket(qp, 2), three = q_bracket(qp, 3), four = q_bracket(qp, 4);
        CHECK(fam.poly(1) == Polynomial<Rational>::monomial(qp, two, 1));
        CHECK(fam.poly(2) == Polynomial<Rational>(qp, {-two, Rational(0), two * two}));
        CHECK(fam.poly(3) ==
              Polynomial<Rational>(qp, {Rational(0), -two * two * three, Rational(0),
                                        pow_int(two, 3)}));
        CHECK(fam.poly(4) ==
              Polynomial<Rational>(qp, {q * q * three * two * two, Rational(0),
                                        -two * two * three * four, Rational(0), pow_int(two, 4)}));
    }

    // q = 1, n = 3 gives the classical 8x^3 - 12x.
    const QParam<Rational> one(Rational(1));
    CHECK(new_q_hermite_recurrence(one, 3) ==
          Polynomial<Rational>(one, {Rational(0), Rational(-12), Rational(0), Rational(8)}));
}

TEST_CASE("four independent construction routes agree exactly")
{
    for (const auto& q : oracles::exact_q_values()) {
        const QParam<Rational> qp(q);
        HermiteFamily<Rational> fam(HermiteKind::NewQHermite, qp);
        const auto gen = new_q_hermite_generating_function(qp, 12);
        for (unsigned n = 0; n <= 12; ++n) {
            const auto& ref = fam.poly(n);
            CHECK(ref == new_q_hermite_series(qp, n));
            CHECK(ref == gen[n]);
            CHECK(ref == new_q_hermite_operator_product(qp, n));
            CHECK(ref == new_q_hermite_exp_operator(qp, n));
        }
    }
}

TEST_CASE("generating function details")
{
    const QParam<Rational> half(Rational(1, 2));
    const auto series = generating_function_series(half, 16);
    CHECK(series.coeff(0) == Polynomial<Rational>::constant(half, Rational(1)));
    HermiteFamily<Rational> fam(HermiteKind::NewQHermite, half);
    // [2]_q! times the t^2 coefficient is H_2, and so on through order 16.
    for (unsigned n = 0; n <= 16; ++n)
        CHECK(series.coeff(n).scaled(q_factorial(half, n)) == fam.poly(n));

    const auto gen = new_q_hermite_generating_function(half, 16);
    for (unsigned n = 0; n <= 16; ++n)
        CHECK(gen[n] == fam.poly(n));
}

TEST_CASE("operator routes in isolation")
{
    const QParam<Rational> half(Rational(1, 2));
    CHECK(new_q_hermite_operator_product(half, 1) ==
          Polynomial<Rational>::monomial(half, Rational(3, 2), 1));
    CHECK(new_q_hermite_operator_product(half, 2) ==
          Polynomial<Rational>(half, {Rational(-3, 2), Rational(0), Rational(9, 4)}));

    const QParam<Rational> q32(Rational(3, 2));
    CHECK(new_q_hermite_exp_operator(q32, 5) == new_q_hermite_recurrence(q32, 5));
}

TEST_CASE("parity, degree and leading coefficient")
{
    for (const auto& q : oracles::exact_q_values()) {
        const QParam<Rational> qp(q);
        HermiteFamily<Rational> fam(HermiteKind::NewQHermite, qp);
        const Rational two = q_bracket(qp, 2);
        for (unsigned n = 0; n <= 16; ++n) {
            const auto& h = fam.poly(n);
            CHECK(h.degree() == static_cast<int>(n));
            CHECK(h.coeff(n) == pow_int(two, n));
            for (int k = 0; k <= h.degree(); ++k)
                if (static_cast<unsigned>(k) % 2 != n % 2)
                    CHECK(h.coeff(static_cast<unsigned>(k)) == Rational(0));
        }
    }
}

TEST_CASE("lowering and second-order identities")
{
    for (const auto& q : {Rational(1, 2), Rational(5, 3), Rational(2, 5)}) {
        const QParam<Rational> qp(q);
        HermiteFamily<Rational> fam(HermiteKind::NewQHermite, qp);
        CHECK(verify_lowering(fam, 1));
        CHECK(verify_lowering(fam, 7));
        for (unsigned n = 1; n <= 16; ++n)
            CHECK(verify_lowering(fam, n));
        for (unsigned n = 0; n <= 16; ++n)
            CHECK(verify_second_order(fam, n));
        CHECK_THROWS_AS(verify_lowering(fam, 0), std::invalid_argument);
    }

    // q = 1 reduction: the classical family satisfies the classical equation.
    const QParam<Rational> one(Rational(1));
    HermiteFamily<Rational> classical(HermiteKind::Classical, one);
    for (unsigned n = 0; n <= 12; ++n)
        CHECK(verify_second_order(classical, n));
}

TEST_CASE("chain-rule coefficients: recurrence, closed forms, brute force")
{
    for (const auto& q : oracles::exact_q_values()) {
        const QParam<Rational> qp(q);
        const auto rows = chain_rule_table(qp, 20);

        // a_0^n = q^(n(n-1)/2).
        for (unsigned n = 0; n <= 20; ++n)
            CHECK(rows[n].at(0) ==
                  pow_int(q, static_cast<long long>(n) * (static_cast<long long>(n) - 1) / 2));
        CHECK(rows[2].at(1) == q_bracket(qp, 2));

        for (unsigned n = 0; n <= 20; ++n)
            for (unsigned k = 0; 2 * k <= n; ++k) {
                CHECK(rows[n].at(k) == chain_rule_coeff_closed_form(qp, n, k));
                CHECK(rows[n].at(k) == chain_rule_coeff_double_factorial_form(qp, n, k));
            }
    }

    // Brute force: D^n x^(2m) equals the expansion with u-base q^2.
    for (const auto& q : {Rational(1, 2), Rational(2)}) {
        const QParam<Rational> qp(q);
        const auto rows = chain_rule_table(qp, 10);
        for (unsigned n = 0; n <= 10; ++n)
            for (unsigned m = 0; m <= 6; ++m) {
                const auto lhs =
                    jackson_derivative(Polynomial<Rational>::monomial(qp, Rational(1), 2 * m), n);
                CHECK(lhs == chain_rule_expansion(qp, rows[n], m, qp.squared()));
            }
    }

    // The u-side base must be q^2: base q fails already at n = 1, m = 2.
    const QParam<Rational> two(Rational(2));
    const auto rows = chain_rule_table(two, 2);
    const auto lhs = jackson_derivative(Polynomial<Rational>::monomial(two, Rational(1), 4), 1);
    CHECK(lhs == chain_rule_expansion(two, rows[1], 2, two.squared()));
    CHECK(!(lhs == chain_rule_expansion(two, rows[1], 2, two)));
}

TEST_CASE("classical-limit convergence of coefficients")
{
    HermiteFamily<double> classical(HermiteKind::Classical, QParam<double>(1.0));
    double previous = std::numeric_limits<double>::infinity();
    for (int k = 2; k <= 4; ++k) {
        const QParam<double> qk(1.0 - std::pow(10.0, -k));
        HermiteFamily<double> fam(HermiteKind::NewQHermite, qk);
        double err = 0.0;
        for (unsigned n = 0; n <= 8; ++n) {
            double scale = 1.0;
            for (unsigned c = 0; c <= n; ++c)
                scale = std::max(scale, std::fabs(classical.poly(n).coeff(c)));
            for (unsigned c = 0; c <= n; ++c)
                err = std::max(err, std::fabs(fam.poly(n).coeff(c) - classical.poly(n).coeff(c)) /
                                        scale);
        }
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous < 0.05);
}

TEST_CASE("normalized psi ladder in float arithmetic")
{
    const QParam<double> qp(0.5);
    HermiteFamily<double> fam(HermiteKind::NewQHermite, qp);
    for (unsigned n = 1; n <= 8; ++n) {
        const auto lhs = jackson_derivative(normalized_psi(fam, n));
        const auto rhs =
            normalized_psi(fam, n - 1).scaled(std::sqrt(q_bracket(qp, 2) * q_bracket(qp, n)));
        for (int k = 0; k <= std::max(lhs.degree(), rhs.degree()); ++k)
            CHECK(lhs.coeff(static_cast<unsigned>(k)) ==
                  doctest::Approx(rhs.coeff(static_cast<unsigned>(k))).epsilon(1e-12));
    }
}
