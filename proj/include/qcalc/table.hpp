// Table emitters behind `qcalc table`: polynomial coefficients, oscillator
// spectra, Jacobi off-diagonals, moment reports and coherent-state amplitude
// dumps, as CSV or JSON. Output is deterministic for a fixed configuration
// (bit-exact in the exact kernel, 17 significant digits in float).
#ifndef QCALC_TABLE_HPP
#define QCALC_TABLE_HPP

#include "qcalc/config.hpp"
#include "qcalc/hermite.hpp"
#include "qcalc/io.hpp"
#include "qcalc/measure.hpp"
#include "qcalc/oscillator.hpp"

#include <complex>
#include <string>

namespace qcalc {

struct TableOutput {
    std::string csv;
    json as_json;
};

/// One row per polynomial: n followed by the coefficients of x^0..x^n.
template <ScalarKernel S>
TableOutput table_hermite_coeffs(const QParam<S>& qp, unsigned n_max)
{
    HermiteFamily<S> fam(HermiteKind::NewQHermite, qp);
    TableOutput out;
    out.csv = "n,coefficients...\n";
    json rows = json::array();
    for (unsigned n = 0; n <= n_max; ++n) {
        out.csv += poly_csv_row(n, fam.poly(n)) + "\n";
        json coeffs = json::array();
        for (unsigned k = 0; k <= n; ++k)
            coeffs.push_back(scalar_to_json(fam.poly(n).coeff(k)));
        rows.push_back(json{{"n", n}, {"coeffs", coeffs}});
    }
    out.as_json = json{{"table", "hermite-coeffs"},
                       {"kernel", kernel_name<S>()},
                       {"q", scalar_to_json(qp.q())},
                       {"rows", rows}};
    return out;
}

template <ScalarKernel S>
TableOutput table_spectrum(const QParam<S>& qp, unsigned n_max)
{
    TableOutput out;
    out.csv = "n,energy\n";
    json rows = json::array();
    for (unsigned n = 0; n <= n_max; ++n) {
        const S e = energy_level(qp, n);
        out.csv += std::to_string(n) + "," + format_scalar(e) + "\n";
        rows.push_back(json{{"n", n}, {"energy", scalar_to_json(e)}});
    }
    out.as_json = json{{"table", "spectrum"},
                       {"kernel", kernel_name<S>()},
                       {"q", scalar_to_json(qp.q())},
                       {"rows", rows}};
    return out;
}

template <ScalarKernel S>
TableOutput table_bn(const QParam<S>& qp, unsigned n_max)
{
    const S two_q = q_bracket(qp, 2);
    TableOutput out;
    out.csv = "n,b_squared,b\n";
    json rows = json::array();
    for (unsigned n = 0; n <= n_max; ++n) {
        const S b_sq = q_bracket(qp, n + 1) / two_q;
        const double bn = std::sqrt(to_double(b_sq));
        out.csv += std::to_string(n) + "," + format_scalar(b_sq) + "," + format_scalar(bn) + "\n";
        rows.push_back(json{{"n", n}, {"b_squared", scalar_to_json(b_sq)}, {"b", bn}});
    }
    out.as_json = json{{"table", "bn"},
                       {"kernel", kernel_name<S>()},
                       {"q", scalar_to_json(qp.q())},
                       {"rows", rows}};
    return out;
}

/// Eigenvalues of the truncated position matrix at a ladder of truncation
/// sizes, with the regime diagnostics attached to the JSON form.
template <ScalarKernel S>
TableOutput table_jacobi_eigenvalues(const QParam<S>& qp, size_t n_trunc)
{
    TableOutput out;
    out.csv = "N_trunc,index,eigenvalue\n";
    json rows = json::array();
    for (size_t dim : {n_trunc / 2, n_trunc}) {
        if (dim < 2)
            continue;
        const auto eig = spectrum(build_jacobi(qp, QuadratureKind::Position, dim));
        for (size_t k = 0; k < eig.size(); ++k) {
            out.csv += std::to_string(dim) + "," + std::to_string(k) + "," +
                       format_scalar(eig[k]) + "\n";
            rows.push_back(json{{"N_trunc", dim}, {"index", k}, {"eigenvalue", eig[k]}});
        }
    }
    const auto diag = boundedness_diagnostics(qp, std::max<size_t>(n_trunc, 10));
    json diagnostics{{"regime", std::string(regime_name(qp.regime()))}};
    if (qp.regime() == Regime::SubCritical) {
        diagnostics["bound"] = diag.bound_value;
        diagnostics["max_bn"] = std::sqrt(to_double(
            q_bracket(qp, static_cast<unsigned>(n_trunc)) / q_bracket(qp, 2)));
        diagnostics["norm_small"] = diag.norm_small;
        diagnostics["norm_large"] = diag.norm_large;
    } else if (qp.regime() == Regime::SuperCritical) {
        diagnostics["ratio_limit"] = diag.ratio_limit;
        diagnostics["sum_reciprocal_bn"] = diag.recip_sum;
    }
    out.as_json = json{{"table", "jacobi-eigenvalues"},
                       {"kernel", kernel_name<S>()},
                       {"q", scalar_to_json(qp.q())},
                       {"diagnostics", diagnostics},
                       {"rows", rows}};
    return out;
}

/// Regime-appropriate moment report: n, target [n]_q!, computed moment,
/// relative error and the number of lattice terms used.
inline TableOutput table_moments(const QParam<double>& qp, unsigned n_max, const RunConfig& cfg)
{
    const MomentReport rep = qp.regime() == Regime::SubCritical
                                 ? resolve_identity_subcritical(qp, n_max,
                                                                TailPolicy{cfg.tol.tail, 1'000'000})
                                 : resolve_identity_supercritical(qp, n_max, cfg.k_cut);
    TableOutput out;
    out.csv = "n,target,computed,rel_error,terms_used\n";
    json rows = json::array();
    for (const auto& row : rep.rows) {
        out.csv += std::to_string(row.n) + "," + format_scalar(row.target) + "," +
                   format_scalar(row.computed) + "," + format_scalar(row.rel_error) + "," +
                   std::to_string(row.terms) + "\n";
        rows.push_back(json{{"n", row.n},
                            {"target", row.target},
                            {"computed", row.computed},
                            {"rel_error", row.rel_error},
                            {"terms_used", row.terms},
                            {"conclusive", row.conclusive}});
    }
    out.as_json = json{{"table", "moments"},
                       {"kernel", "float"},
                       {"q", qp.q()},
                       {"regime", std::string(regime_name(qp.regime()))},
                       {"rows", rows}};
    return out;
}

inline TableOutput table_coherent_amplitudes(const QParam<double>& qp, std::complex<double> z)
{
    const CoherentState cs = make_coherent_state(z, qp);
    TableOutput out;
    out.csv = "n,re,im\n";
    json amps = json::array();
    for (size_t n = 0; n < cs.amp.size(); ++n) {
        out.csv += std::to_string(n) + "," + format_scalar(cs.amp[n].real()) + "," +
                   format_scalar(cs.amp[n].imag()) + "\n";
        amps.push_back(json{{"n", n}, {"re", cs.amp[n].real()}, {"im", cs.amp[n].imag()}});
    }
    out.as_json = json{{"table", "coherent-amplitudes"},
                       {"kernel", "float"},
                       {"q", qp.q()},
                       {"z", json{{"re", z.real()}, {"im", z.imag()}}},
                       {"norm_factor", cs.norm_factor},
                       {"norm_check", cs.norm_sq()},
                       {"amplitudes", amps}};
    return out;
}

} // namespace qcalc

#endif // QCALC_TABLE_HPP
