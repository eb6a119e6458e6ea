// qcalc: verification and tabulation front end.
//
//   qcalc verify <core|poly|hermite|oscillator|measure|all> [options]
//   qcalc table  <hermite-coeffs|spectrum|bn|moments|coherent-amplitudes> [options]
//
// Exit codes: 0 all checks pass, 1 identity failure, 2 configuration error,
// 3 numerical non-convergence / inconclusive result.

#include "qcalc/table.hpp"
#include "qcalc/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNonConvergence = 3;

void add_common_options(CLI::App& cmd, qcalc::RunConfig& cfg, std::string& kernel_text)
{
    cmd.add_option("--q", cfg.q_text, "deformation parameter, rational 'p/q' or integer")
        ->capture_default_str();
    cmd.add_option("--kernel", kernel_text, "scalar kernel: exact | float")
        ->capture_default_str();
    cmd.add_flag("--decimal-q", cfg.allow_decimal_q,
                 "allow decimal q, converted to the nearest binary rational");
    cmd.add_option("--n-max", cfg.n_max, "largest index n covered")->capture_default_str();
    cmd.add_option("--N-trunc", cfg.n_trunc, "Fock/Jacobi truncation dimension")
        ->capture_default_str();
    cmd.add_option("--k-cut", cfg.k_cut, "bilateral lattice cutoff for q > 1")
        ->capture_default_str();
    cmd.add_option("--out", cfg.out_path, "output file (stdout when omitted)");
    cmd.add_option("--format", cfg.format, "output format: json | csv")->capture_default_str();
    cmd.add_option("--tol.poch", cfg.tol.poch, "infinite q-Pochhammer factor cutoff")
        ->capture_default_str();
    cmd.add_option("--tol.series", cfg.tol.series, "q-exponential relative term stop")
        ->capture_default_str();
    cmd.add_option("--tol.tail", cfg.tol.tail, "lattice-sum relative increment stop")
        ->capture_default_str();
    cmd.add_option("--tol.eig", cfg.tol.eig, "eigensolver relative tolerance")
        ->capture_default_str();
    cmd.add_option("--tol.identity", cfg.tol.identity, "float-kernel identity residual bound")
        ->capture_default_str();
    cmd.add_option("--tol.gamma", cfg.tol.gamma, "q-Gamma route agreement")->capture_default_str();
    cmd.add_option("--tol.moment-sub", cfg.tol.moment_sub, "sub-critical moment relative error")
        ->capture_default_str();
    cmd.add_option("--tol.moment-super", cfg.tol.moment_super,
                   "super-critical moment relative error")
        ->capture_default_str();
    cmd.add_option("--tol.overlap", cfg.tol.overlap, "coherent overlap route agreement")
        ->capture_default_str();
    cmd.add_option("--tol.normalization", cfg.tol.normalization,
                   "coherent normalization tolerance")
        ->capture_default_str();
    cmd.add_option("--tol.angular", cfg.tol.angular, "angular off-diagonal bound")
        ->capture_default_str();
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open output file: " + path);
    out << text;
    if (!out)
        throw std::invalid_argument("write failed: " + path);
}

int run_verify(const std::string& suite, const qcalc::RunConfig& cfg)
{
    const auto reports = qcalc::run_suites(suite, cfg);

    qcalc::json doc = qcalc::json::array();
    bool any_fail = false, any_inconclusive = false;
    std::ostream& summary = cfg.out_path.empty() ? std::cerr : std::cout;
    for (const auto& rep : reports) {
        doc.push_back(qcalc::report_to_json(rep));
        for (const auto& check : rep.checks) {
            const char* tag = check.status == qcalc::CheckStatus::Pass           ? "PASS"
                              : check.status == qcalc::CheckStatus::Fail         ? "FAIL"
                                                                                 : "INCONCLUSIVE";
            summary << "[" << tag << "] " << check.id << " (" << check.params << ")";
            if (check.error != 0.0)
                summary << " error=" << qcalc::format_scalar(check.error);
            if (!check.detail.empty())
                summary << " -- " << check.detail;
            summary << "\n";
            any_fail = any_fail || check.status == qcalc::CheckStatus::Fail;
            any_inconclusive =
                any_inconclusive || check.status == qcalc::CheckStatus::Inconclusive;
        }
    }
    write_text(cfg.out_path, doc.dump(2) + "\n");
    if (any_fail)
        return kExitIdentityFailure;
    if (any_inconclusive)
        return kExitNonConvergence;
    return kExitPass;
}

int run_table(const std::string& what, const qcalc::RunConfig& cfg, double z_re, double z_im)
{
    cfg.validate();
    qcalc::TableOutput out;
    if (what == "hermite-coeffs" || what == "spectrum" || what == "bn" ||
        what == "jacobi-eigenvalues") {
        if (cfg.kernel == qcalc::KernelChoice::Exact) {
            const qcalc::QParam<qcalc::Rational> qp(cfg.q_exact());
            out = what == "hermite-coeffs"     ? qcalc::table_hermite_coeffs(qp, cfg.n_max)
                  : what == "spectrum"         ? qcalc::table_spectrum(qp, cfg.n_max)
                  : what == "jacobi-eigenvalues" ? qcalc::table_jacobi_eigenvalues(qp, cfg.n_trunc)
                                                 : qcalc::table_bn(qp, cfg.n_max);
        } else {
            const qcalc::QParam<double> qp(cfg.q_float());
            out = what == "hermite-coeffs"     ? qcalc::table_hermite_coeffs(qp, cfg.n_max)
                  : what == "spectrum"         ? qcalc::table_spectrum(qp, cfg.n_max)
                  : what == "jacobi-eigenvalues" ? qcalc::table_jacobi_eigenvalues(qp, cfg.n_trunc)
                                                 : qcalc::table_bn(qp, cfg.n_max);
        }
    } else if (what == "moments") {
        out = qcalc::table_moments(qcalc::QParam<double>(cfg.q_float()), cfg.n_max, cfg);
    } else if (what == "coherent-amplitudes") {
        out = qcalc::table_coherent_amplitudes(qcalc::QParam<double>(cfg.q_float()),
                                               {z_re, z_im});
    } else {
        throw std::invalid_argument("unknown table: " + what);
    }
    write_text(cfg.out_path, cfg.format == "csv" ? out.csv : out.as_json.dump(2) + "\n");
    return kExitPass;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"q-deformed Hermite / oscillator / coherent-state toolkit"};
    app.require_subcommand(1);

    qcalc::RunConfig cfg;
    std::string kernel_text = "exact";

    std::string suite = "all";
    CLI::App* verify = app.add_subcommand("verify", "run an identity/property suite");
    verify->add_option("suite", suite, "core | poly | hermite | oscillator | measure | all")
        ->required();
    add_common_options(*verify, cfg, kernel_text);

    std::string what;
    double z_re = 0.5, z_im = 0.0;
    CLI::App* table = app.add_subcommand("table", "emit a data table");
    table->add_option("what", what,
                      "hermite-coeffs | spectrum | bn | jacobi-eigenvalues | moments | "
                      "coherent-amplitudes")
        ->required();
    add_common_options(*table, cfg, kernel_text);
    table->add_option("--z-re", z_re, "coherent-state label, real part")->capture_default_str();
    table->add_option("--z-im", z_im, "coherent-state label, imaginary part")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfigError;
    }

    try {
        cfg.kernel = qcalc::kernel_from_text(kernel_text);
        if (verify->parsed())
            return run_verify(suite, cfg);
        return run_table(what, cfg, z_re, z_im);
    } catch (const qcalc::NonConvergenceError& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::domain_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}
