// Run configuration shared by the verification suites, table emitters and the
// CLI: deformation parameter, kernel choice, ranges and named tolerances.
#ifndef QCALC_CONFIG_HPP
#define QCALC_CONFIG_HPP

#include "qcalc/scalar.hpp"

#include <stdexcept>
#include <string>

namespace qcalc {

enum class KernelChoice { Exact, Float };

inline KernelChoice kernel_from_text(const std::string& text)
{
    if (text == "exact")
        return KernelChoice::Exact;
    if (text == "float")
        return KernelChoice::Float;
    throw std::invalid_argument("kernel must be 'exact' or 'float'");
}

/// Named tolerances with their defaults. The source material never states a
/// convergence tolerance for any infinite series; every epsilon here is an
/// implementation decision surfaced through configuration.
struct Tolerances {
    double poch = 1e-15;        // infinite q-Pochhammer factor cutoff
    double series = 1e-16;      // q-exponential relative term stop
    double tail = 1e-14;        // lattice-sum relative increment stop
    double eig = 1e-12;         // eigensolver relative tolerance
    double identity = 1e-12;    // float-kernel identity residual bound
    double gamma = 1e-9;        // q-Gamma route agreement
    double moment_sub = 1e-8;   // sub-critical moment relative error
    double moment_super = 1e-7; // super-critical moment relative error
    double overlap = 1e-10;     // coherent overlap two-route agreement
    double normalization = 1e-12;
    double angular = 1e-12;

    double& by_name(const std::string& name)
    {
        if (name == "poch") return poch;
        if (name == "series") return series;
        if (name == "tail") return tail;
        if (name == "eig") return eig;
        if (name == "identity") return identity;
        if (name == "gamma") return gamma;
        if (name == "moment-sub") return moment_sub;
        if (name == "moment-super") return moment_super;
        if (name == "overlap") return overlap;
        if (name == "normalization") return normalization;
        if (name == "angular") return angular;
        throw std::invalid_argument("unknown tolerance name: " + name);
    }
};

struct RunConfig {
    KernelChoice kernel = KernelChoice::Exact;
    std::string q_text = "1/2";
    bool allow_decimal_q = false; // opt-in decimal -> nearest-rational conversion
    unsigned n_max = 16;
    size_t n_trunc = 64;
    size_t k_cut = 200;
    Tolerances tol;
    std::string format = "json"; // json | csv
    std::string out_path;        // empty = stdout

    Rational q_exact() const { return parse_rational(q_text, allow_decimal_q); }

    double q_float() const
    {
        if (q_text.find('/') != std::string::npos)
            return to_double(parse_rational(q_text));
        return std::stod(q_text);
    }

    void validate() const
    {
        if (kernel == KernelChoice::Exact)
            (void)q_exact(); // throws on decimal text without the opt-in flag
        const double q = q_float();
        if (!(q > 0))
            throw std::invalid_argument("q must be positive");
        if (!(tol.poch > 0) || !(tol.series > 0) || !(tol.tail > 0) || !(tol.eig > 0) ||
            !(tol.identity > 0) || !(tol.gamma > 0) || !(tol.moment_sub > 0) ||
            !(tol.moment_super > 0) || !(tol.overlap > 0) || !(tol.normalization > 0) ||
            !(tol.angular > 0))
            throw std::invalid_argument("tolerances must be positive");
        if (format != "json" && format != "csv")
            throw std::invalid_argument("format must be 'json' or 'csv'");
        if (n_trunc < 4)
            throw std::invalid_argument("N-trunc must be at least 4");
    }
};

} // namespace qcalc

#endif // QCALC_CONFIG_HPP
