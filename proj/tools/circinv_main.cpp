// circinv: build symbols, solve Toeplitz systems, and compare the exact
// entries with their closed-form predictions. Exit codes: 0 success,
// 2 config error, 3 numeric failure.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "circinv/asymptotics.hpp"
#include "circinv/coefficients.hpp"
#include "circinv/experiment.hpp"
#include "circinv/inversion.hpp"
#include "circinv/toeplitz.hpp"

using namespace circinv;

namespace {

int guarded(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file: " + path);
    out << text;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toeplitz inverses and orthogonal polynomials for symbols with "
                 "two conjugate zeros on the unit circle"};
    app.require_subcommand(1);

    // ---- fourier ----
    std::string sym_path, out_path, method = "both";
    int nmax = 512;
    auto* c_fourier = app.add_subcommand("fourier", "symbol Fourier coefficients by both methods");
    c_fourier->add_option("--symbol", sym_path)->required();
    c_fourier->add_option("--nmax", nmax);
    c_fourier->add_option("--method", method)->check(CLI::IsMember({"analytic", "quadrature", "both"}));
    c_fourier->add_option("--out", out_path);

    // ---- solve ----
    int N_solve = 1024;
    std::string column = "first", solve_out;
    std::string sym_solve;
    auto* c_solve = app.add_subcommand("solve", "first inverse column by Levinson recursion");
    c_solve->add_option("--symbol", sym_solve)->required();
    c_solve->add_option("--N", N_solve);
    c_solve->add_option("--column", column)->check(CLI::IsMember({"first"}));
    c_solve->add_option("--out", solve_out);

    // ---- polpred-check ----
    std::string sym_pol;
    int N_pol = 256;
    auto* c_pol = app.add_subcommand("polpred-check", "predictor polynomial identity residual");
    c_pol->add_option("--symbol", sym_pol)->required();
    c_pol->add_option("--N", N_pol);

    // ---- predict ----
    std::string sym_pred, formula = "deux";
    int N_pred = 2048;
    double x_pred = 0.5, y_pred = -1.0;
    auto* c_pred = app.add_subcommand("predict", "closed-form prediction vs the exact value");
    c_pred->add_option("--symbol", sym_pred)->required();
    c_pred->add_option("--N", N_pred);
    c_pred->add_option("--formula", formula)
        ->check(CLI::IsMember({"deux", "coef", "coef2", "demi", "toep1", "toep2", "gegen"}));
    c_pred->add_option("--x", x_pred);
    c_pred->add_option("--y", y_pred);

    // ---- kernel ----
    double ka = 0.25, kx = 0.25, ky = 0.5;
    auto* c_kernel = app.add_subcommand("kernel", "limiting kernel G_alpha(x, y)");
    c_kernel->add_option("--alpha", ka);
    c_kernel->add_option("--x", kx);
    c_kernel->add_option("--y", ky);

    // ---- series-invert ----
    std::string sym_ser;
    int N_ser = 32, M_ser = 256;
    double tol_ser = 1e-8;
    auto* c_ser = app.add_subcommand("series-invert",
                                     "first inverse column through the Neumann series formula");
    c_ser->add_option("--symbol", sym_ser)->required();
    c_ser->add_option("--N", N_ser);
    c_ser->add_option("--M", M_ser);
    c_ser->add_option("--tol", tol_ser);

    // ---- f-function ----
    double fa = 0.25, fz = 0.0;
    int N_f = 512;
    auto* c_f = app.add_subcommand("f-function", "F_{N,alpha}(z) kernel-chain sum");
    c_f->add_option("--alpha", fa);
    c_f->add_option("--N", N_f);
    c_f->add_option("--z", fz);

    // ---- jacobi ----
    std::string sym_jac;
    double th1 = 1.5707963, th2 = 0.5235988;
    int N_jac = 64;
    auto* c_jac = app.add_subcommand("jacobi", "two-zero diagonal conjugation check");
    c_jac->add_option("--symbol", sym_jac)->required();
    c_jac->add_option("--theta1", th1);
    c_jac->add_option("--theta2", th2);
    c_jac->add_option("--N", N_jac);

    // ---- converge ----
    std::string cfg_path, conv_out;
    int threads = 4;
    auto* c_conv = app.add_subcommand("converge", "prediction-error sweep over a size ladder");
    c_conv->add_option("--config", cfg_path)->required();
    c_conv->add_option("--out", conv_out)->required();
    c_conv->add_option("--threads", threads);

    CLI11_PARSE(app, argc, argv);

    if (c_fourier->parsed())
        return guarded([&] {
            auto sym = GegenbauerSymbol::from_json_file(sym_path);
            std::string csv = "s,analytic_re,analytic_im,quadrature_re,quadrature_im,abs_diff\n";
            FourierTable ta, tq;
            if (method != "quadrature") ta = symbol_fourier(sym, nmax, FourierMethod::analytic);
            if (method != "analytic") tq = symbol_fourier(sym, nmax, FourierMethod::quadrature);
            double worst = 0.0;
            for (int s = 0; s <= nmax; ++s) {
                const cplx a = method != "quadrature" ? ta.coeffs[s] : cplx(0);
                const cplx q = method != "analytic" ? tq.coeffs[s] : cplx(0);
                const double d = (method == "both") ? std::abs(a - q) : 0.0;
                worst = std::max(worst, d);
                csv += std::to_string(s) + ',' + fmt(a.real()) + ',' + fmt(a.imag()) + ',' +
                       fmt(q.real()) + ',' + fmt(q.imag()) + ',' + fmt(d) + '\n';
            }
            if (!out_path.empty()) write_file(out_path, csv);
            std::cout << "n_max " << nmax << " method " << method << " max_cross_diff " << worst
                      << "\n";
            if (method == "both" && worst > 1e-8)
                throw NoConvergence("cross-method disagreement above 1e-8");
        });

    if (c_solve->parsed())
        return guarded([&] {
            auto sym = GegenbauerSymbol::from_json_file(sym_solve);
            auto sys = build_system(sym, N_solve);
            auto col = first_column_inverse(sys);
            std::string csv = "k,value_re,value_im\n";
            for (std::size_t k = 0; k < col.size(); ++k)
                csv += std::to_string(k) + ',' + fmt(col[k].real()) + ',' + fmt(col[k].imag()) + '\n';
            if (!solve_out.empty()) write_file(solve_out, csv);
            std::cout << "N " << N_solve << " (T^-1)_{11} " << fmt(col[0].real()) << "\n";
        });

    if (c_pol->parsed())
        return guarded([&] {
            auto sym = GegenbauerSymbol::from_json_file(sym_pol);
            auto sys = build_system(sym, N_pol);
            auto pred = predictor(sys);
            const double err = verify_polpred(pred, sys);
            std::cout << "N " << N_pol << " polpred_max_err " << fmt(err) << "\n";
            if (err > 1e-7) throw NumericError("predictor identity residual above 1e-7");
        });

    if (c_pred->parsed())
        return guarded([&] {
            auto sym = GegenbauerSymbol::from_json_file(sym_pred);
            const int k = static_cast<int>(std::lround(x_pred * N_pred));
            if (formula == "toep1" || formula == "toep2") {
                if (y_pred <= 0.0) throw ConfigError("toep formulas need --y");
                const int l = static_cast<int>(std::lround(y_pred * N_pred));
                auto sys = build_system(sym, N_pred);
                auto p = predictor(sys);
                const double exact = gs_entry(p, k, l).real();
                const double pr = predict_inverse_entry(
                    sym, k, l, N_pred,
                    formula == "toep1" ? EntryBaseline::exact : EntryBaseline::kernel);
                std::cout << "N " << N_pred << " k " << k << " l " << l << " exact " << fmt(exact)
                          << " pred " << fmt(pr) << "\n";
                return;
            }
            auto sys = build_system(sym, N_pred);
            auto col = first_column_inverse(sys);
            double exact = col[k].real(), pr = 0.0;
            if (formula == "deux") pr = predict_first_column(sym, k, N_pred);
            else if (formula == "coef")
                pr = predict_first_column_via_baseline(sym, k, N_pred, FirstColumnBaseline::exact);
            else if (formula == "coef2") pr = predict_small_k(sym, k, N_pred).real();
            else if (formula == "demi") pr = predict_half(sym, k, N_pred);
            else {
                exact = col[N_pred - k].real() / col[0].real();
                pr = predict_gegenbauer_coeff(sym, k, N_pred, col[0].real());
            }
            std::cout << "N " << N_pred << " k " << k << " exact " << fmt(exact) << " pred "
                      << fmt(pr) << "\n";
        });

    if (c_kernel->parsed())
        return guarded([&] {
            const double v = kernel_g(ka, kx, ky);
            std::cout << "G_alpha " << fmt(v) << "\n";
        });

    if (c_ser->parsed())
        return guarded([&] {
            auto sym = GegenbauerSymbol::from_json_file(sym_ser);
            std::vector<cplx> P{1.0};
            auto col = apply_inversion(sym, P, N_ser, M_ser, tol_ser);
            auto sys = build_system(sym, N_ser);
            auto lev = first_column_inverse(sys);
            double worst = 0.0;
            for (int i = 0; i <= N_ser; ++i) worst = std::max(worst, std::abs(col[i] - lev[i]));
            std::cout << "N " << N_ser << " M " << M_ser << " series_vs_levinson " << fmt(worst)
                      << "\n";
            if (worst > 10.0 * tol_ser && worst > 1e-6)
                throw NumericError("series inversion drifted from the Levinson column");
        });

    if (c_f->parsed())
        return guarded([&] {
            const double v = eval_f(N_f, fa, fz);
            std::cout << "F " << fmt(v) << "\n";
        });

    if (c_jac->parsed())
        return guarded([&] {
            auto sym = GegenbauerSymbol::from_json_file(sym_jac);
            auto conj = jacobi_conjugation(sym.alpha, th1, th2, sym.regular, N_jac);
            auto tab = two_zero_general_fourier(sym.alpha, th1, th2, sym.regular, N_jac);
            ToeplitzSystem sys(tab, N_jac);
            DenseOracle oracle(sys);
            double worst = 0.0;
            for (int l = 0; l <= N_jac; ++l) {
                auto col = oracle.solve_unit(l);
                for (int k = 0; k <= N_jac; ++k)
                    worst = std::max(worst, std::abs(col[k] - conj.conjugated_inverse[k][l]));
            }
            std::cout << "N " << N_jac << " conjugation_max_err " << fmt(worst) << "\n";
            if (worst > 1e-8) throw NumericError("conjugation identity residual above 1e-8");
        });

    if (c_conv->parsed())
        return guarded([&] {
            auto cfg = ExperimentConfig::from_json_file(cfg_path);
            auto res = run_experiment(cfg, threads);
            std::filesystem::create_directories(conv_out);
            write_file((std::filesystem::path(conv_out) / "rows.csv").string(), res.to_csv());
            write_file((std::filesystem::path(conv_out) / "rows.json").string(), res.to_json());
            std::cout << "rows " << res.rows.size() << " written to " << conv_out << "\n";
        });

    return 0;
}
