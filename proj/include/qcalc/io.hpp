// JSON/CSV serialization. Scalars are tagged by kernel: exact values travel as
// "p/q" strings, float values as IEEE-754 doubles; polynomials as
// {"q": ..., "coeffs": [...]}.
#ifndef QCALC_IO_HPP
#define QCALC_IO_HPP

#include "qcalc/polynomial.hpp"

#include <json.hpp>

#include <string>

namespace qcalc {

using json = nlohmann::json;

template <ScalarKernel S>
json scalar_to_json(const S& x)
{
    if constexpr (is_exact_kernel_v<S>)
        return format_scalar(x);
    else
        return x;
}

template <ScalarKernel S>
S scalar_from_json(const json& j)
{
    if constexpr (is_exact_kernel_v<S>)
        return parse_rational(j.get<std::string>());
    else
        return j.get<double>();
}

template <ScalarKernel S>
json poly_to_json(const Polynomial<S>& p)
{
    json coeffs = json::array();
    for (int k = 0; k <= p.degree(); ++k)
        coeffs.push_back(scalar_to_json(p.coeff(static_cast<unsigned>(k))));
    return json{{"kernel", kernel_name<S>()}, {"q", scalar_to_json(p.qp().q())}, {"coeffs", coeffs}};
}

template <ScalarKernel S>
Polynomial<S> poly_from_json(const json& j)
{
    if (j.at("kernel").get<std::string>() != kernel_name<S>())
        throw std::invalid_argument("poly_from_json: kernel tag mismatch");
    QParam<S> qp(scalar_from_json<S>(j.at("q")));
    std::vector<S> coeffs;
    for (const auto& c : j.at("coeffs"))
        coeffs.push_back(scalar_from_json<S>(c));
    return Polynomial<S>(qp, std::move(coeffs));
}

/// One CSV row per polynomial: n followed by coefficients of x^0..x^n.
template <ScalarKernel S>
std::string poly_csv_row(unsigned n, const Polynomial<S>& p)
{
    std::string row = std::to_string(n);
    for (int k = 0; k <= std::max(p.degree(), 0); ++k) {
        row += ',';
        row += format_scalar(p.coeff(static_cast<unsigned>(k)));
    }
    return row;
}

} // namespace qcalc

#endif // QCALC_IO_HPP
