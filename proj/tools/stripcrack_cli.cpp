// Command-line front end: config-driven solves, parameter sweeps, convergence
// tables, kernel probes and validation reports, with deterministic CSV/JSON
// output (every numeric field carries 17 significant digits).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stripcrack/config.hpp"
#include "stripcrack/diagnostics.hpp"
#include "stripcrack/kernel.hpp"
#include "stripcrack/linsolve.hpp"
#include "stripcrack/postprocess.hpp"

namespace fs = std::filesystem;
using namespace stripcrack;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

std::string sibling(const std::string& path, const std::string& name) {
    const fs::path p(path);
    return (p.has_parent_path() ? p.parent_path() / name : fs::path(name)).string();
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = stripcrack::detail::trim(item);
        if (item.empty()) continue;
        out.push_back(stripcrack::detail::parse_number("list item", item));
    }
    if (out.empty()) throw config_error("empty value list");
    return out;
}

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format;  // "", "csv", "json"
    std::optional<double> time;
};

RunConfig load_with_overrides(const CommonOpts& c, const char* default_out) {
    RunConfig cfg = load_config(c.config_path);
    if (!c.out_path.empty()) cfg.output.path = c.out_path;
    if (cfg.output.path.empty()) cfg.output.path = default_out;
    if (c.format == "csv")
        cfg.output.format = OutFormat::Csv;
    else if (c.format == "json")
        cfg.output.format = OutFormat::Json;
    else if (!c.format.empty())
        throw config_error("--format must be csv or json");
    if (c.time) cfg.output.t = *c.time;
    return cfg;
}

// ---------------------------------------------------------------- solve ----

void write_solve_outputs(const RunConfig& cfg, const SpectralSolution& sol, const SifResult& K) {
    if (cfg.output.format == OutFormat::Csv) {
        std::string main_csv = "N,K_re,K_im,K_abs,residual\n";
        main_csv += std::to_string(sol.n) + "," + fmt17(K.k_complex.real()) + "," +
                    fmt17(K.k_complex.imag()) + "," + fmt17(K.magnitude) + "," +
                    fmt17(sol.residual) + "\n";
        write_file(cfg.output.path, main_csv);

        std::string coeffs = "m,a_re,a_im\n";
        for (int m = 1; m <= sol.n; ++m)
            coeffs += std::to_string(m) + "," + fmt17(sol.coeffs[m - 1].real()) + "," +
                      fmt17(sol.coeffs[m - 1].imag()) + "\n";
        write_file(sibling(cfg.output.path, "coeffs.csv"), coeffs);

        std::string hist = "N,sum_re,sum_im\n";
        for (const auto& [n, s] : sol.history)
            hist += std::to_string(n) + "," + fmt17(s.real()) + "," + fmt17(s.imag()) + "\n";
        write_file(sibling(cfg.output.path, "history.csv"), hist);
    } else {
        std::string j = "{\n";
        j += "  \"N\": " + std::to_string(sol.n) + ",\n";
        j += "  \"K_re\": " + fmt17(K.k_complex.real()) + ",\n";
        j += "  \"K_im\": " + fmt17(K.k_complex.imag()) + ",\n";
        j += "  \"K_abs\": " + fmt17(K.magnitude) + ",\n";
        j += "  \"residual\": " + fmt17(sol.residual) + ",\n";
        j += "  \"coeffs\": [";
        for (int m = 1; m <= sol.n; ++m) {
            if (m > 1) j += ",";
            j += "\n    {\"m\": " + std::to_string(m) + ", \"a_re\": " +
                 fmt17(sol.coeffs[m - 1].real()) + ", \"a_im\": " +
                 fmt17(sol.coeffs[m - 1].imag()) + "}";
        }
        j += "\n  ],\n  \"history\": [";
        for (std::size_t i = 0; i < sol.history.size(); ++i) {
            if (i) j += ",";
            j += "\n    {\"N\": " + std::to_string(sol.history[i].first) + ", \"sum_re\": " +
                 fmt17(sol.history[i].second.real()) + ", \"sum_im\": " +
                 fmt17(sol.history[i].second.imag()) + "}";
        }
        j += "\n  ]\n}\n";
        write_file(cfg.output.path, j);
    }
}

int cmd_solve(const CommonOpts& c) {
    const RunConfig cfg = load_with_overrides(c, "result.csv");
    SpectralSolution sol;
    try {
        sol = reduction_solve(cfg.material, cfg.quadrature, cfg.solver.N0, cfg.solver.N_max,
                              cfg.solver.sif_tol);
    } catch (const no_convergence_error& e) {
        std::string hist = "N,sum_re,sum_im\n";
        for (const auto& [n, s] : e.partial.history)
            hist += std::to_string(n) + "," + fmt17(s.real()) + "," + fmt17(s.imag()) + "\n";
        write_file(sibling(cfg.output.path, "history.csv"), hist);
        std::cerr << "solve: " << e.what() << " (ladder history written)\n";
        return 3;
    }
    const SifResult K = sif(sol, cfg.material, cfg.output.t);
    write_solve_outputs(cfg, sol, K);
    std::cout << "solve: N=" << sol.n << " |K|=" << fmt17(K.magnitude) << " -> "
              << cfg.output.path << "\n";
    return 0;
}

// ---------------------------------------------------------------- sweep ----

int cmd_sweep(const CommonOpts& c, const std::string& axis, const std::string& values) {
    RunConfig cfg = load_with_overrides(c, "sweep.csv");
    double MaterialParams::*field = nullptr;
    if (axis == "G")
        field = &MaterialParams::G;
    else if (axis == "G0")
        field = &MaterialParams::G0;
    else if (axis == "rho")
        field = &MaterialParams::rho;
    else if (axis == "k")
        field = &MaterialParams::k;
    else if (axis == "tau0")
        field = &MaterialParams::tau0;
    else
        throw config_error("sweep: unknown axis '" + axis + "' (use G, G0, rho, k or tau0)");

    const std::vector<double> vals = parse_double_list(values);
    std::string csv = "parameter,K_re,K_im,K_abs,N_used\n";
    std::string json = "[";
    for (std::size_t i = 0; i < vals.size(); ++i) {
        MaterialParams mp = cfg.material;
        mp.*field = vals[i];
        const SpectralSolution sol = reduction_solve(mp, cfg.quadrature, cfg.solver.N0,
                                                     cfg.solver.N_max, cfg.solver.sif_tol);
        const SifResult K = sif(sol, mp, cfg.output.t);
        csv += fmt17(vals[i]) + "," + fmt17(K.k_complex.real()) + "," +
               fmt17(K.k_complex.imag()) + "," + fmt17(K.magnitude) + "," +
               std::to_string(sol.n) + "\n";
        if (i) json += ",";
        json += "\n  {\"parameter\": " + fmt17(vals[i]) + ", \"K_re\": " +
                fmt17(K.k_complex.real()) + ", \"K_im\": " + fmt17(K.k_complex.imag()) +
                ", \"K_abs\": " + fmt17(K.magnitude) + ", \"N_used\": " + std::to_string(sol.n) +
                "}";
    }
    json += "\n]\n";
    write_file(cfg.output.path, cfg.output.format == OutFormat::Csv ? csv : json);
    std::cout << "sweep: " << vals.size() << " rows -> " << cfg.output.path << "\n";
    return 0;
}

// ---------------------------------------------------------- convergence ----

int cmd_convergence(const CommonOpts& c, const std::string& n_list) {
    const RunConfig cfg = load_with_overrides(c, "convergence.csv");
    std::vector<int> Ns;
    for (double v : parse_double_list(n_list)) Ns.push_back(static_cast<int>(v));
    const ConvergenceStudy study = convergence_study(cfg.material, cfg.quadrature, Ns);

    std::string csv = "N,sum_re,sum_im,K_abs,increment\n";
    std::string json = "{\n  \"rows\": [";
    for (std::size_t i = 0; i < study.rows.size(); ++i) {
        const ConvergenceRow& r = study.rows[i];
        csv += std::to_string(r.n) + "," + fmt17(r.coeff_sum.real()) + "," +
               fmt17(r.coeff_sum.imag()) + "," + fmt17(r.k_abs) + "," + fmt17(r.increment) + "\n";
        if (i) json += ",";
        json += "\n    {\"N\": " + std::to_string(r.n) + ", \"sum_re\": " +
                fmt17(r.coeff_sum.real()) + ", \"sum_im\": " + fmt17(r.coeff_sum.imag()) +
                ", \"K_abs\": " + fmt17(r.k_abs) + ", \"increment\": " + fmt17(r.increment) + "}";
    }
    json += "\n  ],\n  \"fitted_order\": " + fmt17(study.fitted_order) + "\n}\n";
    write_file(cfg.output.path, cfg.output.format == OutFormat::Csv ? csv : json);
    std::cout << "convergence: fitted order " << fmt17(study.fitted_order) << " -> "
              << cfg.output.path << "\n";
    return 0;
}

// ---------------------------------------------------------- kernel-probe ----

int cmd_kernel_probe(const CommonOpts& c, const std::string& values) {
    const RunConfig cfg = load_with_overrides(c, "probe.csv");
    const ComplexWaveParams wp = derive_wave_params(cfg.material);

    std::vector<std::pair<std::optional<double>, double>> probes;  // (x?, s)
    std::stringstream ss(values);
    std::string item;
    bool any_field = false, any_plain = false;
    while (std::getline(ss, item, ',')) {
        item = stripcrack::detail::trim(item);
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            probes.push_back({std::nullopt, stripcrack::detail::parse_number("s", item)});
            any_plain = true;
        } else {
            probes.push_back({stripcrack::detail::parse_number("x", item.substr(0, colon)),
                              stripcrack::detail::parse_number("s", item.substr(colon + 1))});
            any_field = true;
        }
    }
    if (probes.empty() || (any_field && any_plain))
        throw config_error("kernel-probe: --values must be all 's' or all 'x:s' entries");

    std::string csv = any_field ? "x,s,value_re,value_im,est_error,cutoff,panels\n"
                                : "s,value_re,value_im,est_error,cutoff,panels\n";
    for (const auto& [x, s] : probes) {
        const KernelEval v = x ? field_kernel(*x, s, wp, cfg.quadrature)
                               : rho0(s, wp, cfg.quadrature);
        if (x) csv += fmt17(*x) + ",";
        csv += fmt17(s) + "," + fmt17(v.value.real()) + "," + fmt17(v.value.imag()) + "," +
               fmt17(v.est_error) + "," + fmt17(v.cutoff_used) + "," +
               std::to_string(v.panels_used) + "\n";
    }
    write_file(cfg.output.path, csv);
    std::cout << "kernel-probe: " << probes.size() << " rows -> " << cfg.output.path << "\n";
    return 0;
}

// -------------------------------------------------------------- validate ----

struct RefCase {
    double G, G0;
    double k_abs_ref;
};

int cmd_validate(const CommonOpts& c) {
    const RunConfig cfg = load_with_overrides(c, "validate_report.txt");
    std::ostringstream rep;
    int failures = 0;
    auto check = [&](bool ok, const std::string& what) {
        rep << (ok ? "  [pass] " : "  [FAIL] ") << what << "\n";
        if (!ok) ++failures;
    };

    rep << "validation report\n=================\n";
    rep << "material: G=" << fmt17(cfg.material.G) << " G0=" << fmt17(cfg.material.G0)
        << " rho=" << fmt17(cfg.material.rho) << " k=" << fmt17(cfg.material.k)
        << " tau0=" << fmt17(cfg.material.tau0) << "\n\n";

    // matrix decay diagnostics at N = 25, stability of the Frobenius norm 20 -> 25
    const GalerkinSystem sys25 = assemble(25, cfg.material, cfg.quadrature);
    const GalerkinSystem sys20 = assemble(20, cfg.material, cfg.quadrature);
    const DecayReport rep25 = regularity_report(sys25);
    rep << "matrix decay (N=25):\n";
    rep << "  row-sum slope      " << fmt17(rep25.slope_rowsum) << "\n";
    rep << "  entry slope (rows) " << fmt17(rep25.slope_n) << "\n";
    rep << "  entry slope (cols) " << fmt17(rep25.slope_m) << "\n";
    check(rep25.pass_rowsum, "row-sum slope < 0");
    check(rep25.pass_n, "row entry-decay slope <= -1.5");
    check(rep25.pass_m, "column entry-decay slope <= -1.5");

    double fro20 = 0.0, fro25 = 0.0;
    for (const cplx& v : sys20.matrix_r) fro20 += std::norm(v);
    for (const cplx& v : sys25.matrix_r) fro25 += std::norm(v);
    const double fro_change = fro20 > 0.0 ? (fro25 - fro20) / fro20 : 0.0;
    rep << "  sum|R|^2 change 20->25: " << fmt17(fro_change) << "\n";
    check(std::abs(fro_change) < 0.01, "sum|R|^2 changes < 1% from N=20 to N=25");

    // independent collocation discretization against the Galerkin solve
    {
        const std::vector<cplx> A = stripcrack::detail::lhs_matrix(sys25);
        SpectralSolution gal;
        gal.coeffs = solve_dense(A, sys25.rhs);
        gal.n = 25;
        const SpectralSolution col = collocation_oracle(cfg.material, cfg.quadrature, 25);
        const double kg = sif(gal, cfg.material, 0.0).magnitude;
        const double kc = sif(col, cfg.material, 0.0).magnitude;
        const double kdiff = std::abs(kc - kg) / kg;
        double num = 0.0, den = 0.0;
        for (int i = 0; i < 25; ++i) {
            num += std::norm(col.coeffs[i] - gal.coeffs[i]);
            den += std::norm(gal.coeffs[i]);
        }
        const double l2 = std::sqrt(num / den);
        rep << "cross-discretization (N=25):\n";
        rep << "  |K| galerkin    " << fmt17(kg) << "\n";
        rep << "  |K| collocation " << fmt17(kc) << "\n";
        rep << "  |K| rel diff    " << fmt17(kdiff) << "\n";
        rep << "  coeff l2 rel    " << fmt17(l2) << "\n";
        check(kdiff <= 1e-4, "collocation |K| agrees to 1e-4");
        check(l2 <= 1e-3, "coefficient vectors agree to 1e-3 in l2");

        // reference comparison for the bundled example materials
        static const RefCase refs[] = {
            {80e9, 65e9, 0.37259652}, {65e9, 50e9, 0.33514642}, {55e9, 40e9, 0.32343909}};
        for (const RefCase& rc : refs) {
            if (cfg.material.G == rc.G && cfg.material.G0 == rc.G0) {
                rep << "reference comparison:\n";
                rep << "  computed |K|          " << fmt17(kg) << "\n";
                rep << "  reference |K|         " << fmt17(rc.k_abs_ref) << "\n";
                rep << "  scale factor ref/comp " << fmt17(rc.k_abs_ref / kg) << "\n";
                rep << "  (computed magnitudes sit near sqrt(2)*tau0; the bundled reference\n"
                       "   values follow a different normalization, so only ordering and\n"
                       "   ratios are comparable -- see README)\n";
            }
        }
    }

    // kernel tolerance honesty on a small s sample
    {
        const ComplexWaveParams wp = derive_wave_params(cfg.material);
        QuadratureSpec tight = cfg.quadrature;
        tight.abs_tol *= 0.5;
        tight.rel_tol *= 0.5;
        bool honest = true;
        for (double s : {0.0, 0.4, 0.9, 1.5, 2.0}) {
            const KernelEval a = rho0(s, wp, cfg.quadrature);
            const KernelEval b = rho0(s, wp, tight);
            if (wp.k0_sq != cplx{} && std::abs(a.value - b.value) >= std::max(a.est_error, 5e-17))
                honest = false;
        }
        check(honest, "rho0 error estimates bound the tolerance-halving shift");
    }

    // truncation convergence
    {
        const ConvergenceStudy study =
            convergence_study(cfg.material, cfg.quadrature, {10, 15, 20, 25});
        rep << "convergence (N = 10,15,20,25):\n";
        for (const ConvergenceRow& r : study.rows)
            rep << "  N=" << r.n << " |K|=" << fmt17(r.k_abs) << " increment=" << fmt17(r.increment)
                << "\n";
        rep << "  fitted order " << fmt17(study.fitted_order) << "\n";
        bool mono = true;
        for (std::size_t i = 2; i < study.rows.size(); ++i)
            if (study.rows[i].increment > study.rows[i - 1].increment) mono = false;
        check(mono, "coefficient-sum increments decrease monotonically");
        check(study.fitted_order <= -1.0, "fitted convergence order <= -1");
    }

    rep << "\n" << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed")
        << "\n";
    write_file(cfg.output.path, rep.str());
    std::cout << rep.str();
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic strip-crack solver for a damped shear half-space"};
    app.require_subcommand(1);

    CommonOpts c;
    std::string axis, values, n_list;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", c.config_path, "run configuration file")->required();
        sub->add_option("--out", c.out_path, "output path");
        sub->add_option("--format", c.format, "csv|json");
        sub->add_option("--time", c.time, "SIF evaluation time");
    };

    CLI::App* solve = app.add_subcommand("solve", "solve and write SIF, coefficients, history");
    add_common(solve);
    CLI::App* sweep = app.add_subcommand("sweep", "sweep one material parameter");
    add_common(sweep);
    sweep->add_option("--axis", axis, "G|G0|rho|k|tau0")->required();
    sweep->add_option("--values", values, "comma-separated values")->required();
    CLI::App* conv = app.add_subcommand("convergence", "truncation ladder table");
    add_common(conv);
    conv->add_option("--n-list", n_list, "comma-separated truncation sizes")->required();
    CLI::App* probe = app.add_subcommand("kernel-probe", "evaluate kernel integrals");
    add_common(probe);
    probe->add_option("--values", values, "s list, or x:s pairs for the field kernel")->required();
    CLI::App* validate = app.add_subcommand("validate", "diagnostic report; nonzero exit on failed thresholds");
    add_common(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(solve)) return cmd_solve(c);
        if (app.got_subcommand(sweep)) return cmd_sweep(c, axis, values);
        if (app.got_subcommand(conv)) return cmd_convergence(c, n_list);
        if (app.got_subcommand(probe)) return cmd_kernel_probe(c, values);
        if (app.got_subcommand(validate)) return cmd_validate(c);
    } catch (const config_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const no_convergence_error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const non_convergence_error& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const unsupported_regime_error& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
