#include "doctest.h"

#include <cmath>
#include <numbers>

#include "circinv/asymptotics.hpp"
#include "circinv/coefficients.hpp"

using namespace circinv;
using std::numbers::pi;

TEST_CASE("asymptotic constants") {
    SUBCASE("theta0 = pi/2, c1 == 1") {
        auto c = constants(GegenbauerSymbol(0.25, pi / 2));
        CHECK(c.K == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-13));
        CHECK(c.omega == doctest::Approx(0.0).epsilon(1e-13));
        CHECK(c.phi0 == 0.0);
        CHECK(c.err_exponent == doctest::Approx(0.25));
        CHECK(c.norm0 == doctest::Approx(1.0));
    }
    SUBCASE("frozen plug-in value at pi/3") {
        auto c = constants(GegenbauerSymbol(0.25, pi / 3));
        const double want = std::pow(2.0, 0.75) * std::pow(std::sqrt(3.0) / 2.0, -0.25);
        CHECK(c.K == doctest::Approx(want).epsilon(1e-13));
    }
    SUBCASE("rational part divides K by sqrt(c1(chi0)) = sqrt(7)") {
        auto plain = constants(GegenbauerSymbol(0.25, pi / 3));
        auto rich = constants(
            GegenbauerSymbol(0.25, pi / 3, RationalRegularPart({2.0, 1.0}, {1.0})));
        CHECK(rich.K == doctest::Approx(plain.K / std::sqrt(7.0)).epsilon(1e-12));
        CHECK(rich.norm0 == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("negative alpha error exponent") {
        CHECK(constants(GegenbauerSymbol(-0.25, pi / 3)).err_exponent ==
              doctest::Approx(-0.75));
    }
    SUBCASE("gamma reflection") {
        CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-13));
        CHECK(gamma_fn(-0.25) == doctest::Approx(std::tgamma(-0.25)).epsilon(1e-12));
    }
}

TEST_CASE("first-column predictions") {
    GegenbauerSymbol sym(0.25, pi / 3);
    SUBCASE("formula baseline reproduces the closed form exactly") {
        for (int k : {100, 317, 900}) {
            CHECK(predict_first_column(sym, k, 2048) ==
                  doctest::Approx(predict_first_column_via_baseline(
                                      sym, k, 2048, FirstColumnBaseline::formula))
                      .epsilon(1e-12));
        }
    }
    SUBCASE("N scaling at fixed fraction") {
        const double r = predict_first_column(sym, 512, 1024) / predict_first_column(sym, 1024, 2048);
        // cosine factors differ; compare envelope scaling via the ratio of laws
        const double want = std::cos(512 * sym.theta0 + constants(sym).omega) /
                            std::cos(1024 * sym.theta0 + constants(sym).omega) *
                            std::pow(0.5, sym.alpha - 1.0);
        CHECK(r == doctest::Approx(want).epsilon(1e-10));
    }
    SUBCASE("cosine node gives zero") {
        // engineered k with cos(k theta0 + omega) ~ 0 is fiddly on the integer
        // grid; check the factor directly instead
        auto c = constants(sym);
        const double val = predict_first_column(sym, 100, 400);
        const double mod = std::cos(100 * sym.theta0 + c.omega);
        CHECK(val / mod == doctest::Approx((1.0 / c.norm0) * c.K / gamma_fn(sym.alpha) *
                                           std::pow(100.0, sym.alpha - 1.0) *
                                           std::pow(0.75, sym.alpha))
                               .epsilon(1e-12));
    }
    SUBCASE("envelope agreement with the exact column at moderate size") {
        const int N = 1024;
        auto sys = build_system(sym, N);
        auto col = first_column_inverse(sys);
        std::vector<double> exact(col.size()), pred(col.size(), 0.0);
        for (std::size_t i = 0; i < col.size(); ++i) exact[i] = col[i].real();
        for (int k = 1; k < N; ++k) pred[k] = predict_first_column(sym, k, N);
        CHECK(envelope_rel_error(exact, pred, N / 2, sym.theta0) < 0.15);
    }
    SUBCASE("the exact one-zero baseline absorbs finite-N error of the formula") {
        const int N = 2048;
        const int w = envelope_window(sym.theta0);
        auto col = first_column_inverse(build_system(sym, N));
        std::vector<double> exact(col.size()), via_exact(col.size(), 0.0),
            via_formula(col.size(), 0.0);
        for (std::size_t i = 0; i < col.size(); ++i) exact[i] = col[i].real();
        for (int k = N / 2 - w; k <= N / 2 + w; ++k) {
            via_exact[k] =
                predict_first_column_via_baseline(sym, k, N, FirstColumnBaseline::exact);
            via_formula[k] =
                predict_first_column_via_baseline(sym, k, N, FirstColumnBaseline::formula);
        }
        const double ee = envelope_rel_error(exact, via_exact, N / 2, sym.theta0);
        const double ef = envelope_rel_error(exact, via_formula, N / 2, sym.theta0);
        CHECK(ee <= 0.10);
        CHECK(ee <= ef + 1e-12);
    }
    SUBCASE("negative alpha keeps the same structure") {
        GegenbauerSymbol neg(-0.25, pi / 3);
        const int N = 1024;
        const int w = envelope_window(neg.theta0);
        auto col = first_column_inverse(build_system(neg, N));
        std::vector<double> exact(col.size()), pred(col.size(), 0.0);
        for (std::size_t i = 0; i < col.size(); ++i) exact[i] = col[i].real();
        for (int k = N / 2 - w; k <= N / 2 + w; ++k)
            pred[k] = predict_first_column_via_baseline(neg, k, N, FirstColumnBaseline::exact);
        CHECK(envelope_rel_error(exact, pred, N / 2, neg.theta0) < 0.15);
    }
}

TEST_CASE("small-k and gegenbauer predictions") {
    GegenbauerSymbol sym(0.25, pi / 3);
    SUBCASE("k = 0 normalization and k = 1 closed form") {
        CHECK(predict_small_k(sym, 0, 512).real() == doctest::Approx(1.0));
        CHECK(predict_small_k(sym, 1, 512).real() ==
              doctest::Approx(2.0 * 0.25 * std::cos(pi / 3)).epsilon(1e-12));
    }
    SUBCASE("k = 1 against the exact entry") {
        const int N = 2048;
        auto col = first_column_inverse(build_system(sym, N));
        CHECK(std::abs(col[1].real() - predict_small_k(sym, 1, N).real()) < 5e-3);
    }
    SUBCASE("gegenbauer prediction is the reversed first-column law") {
        const int N = 512;
        auto col = first_column_inverse(build_system(sym, N));
        const double norm = col[0].real();
        for (int j : {200, 300}) {
            CHECK(std::abs(predict_gegenbauer_coeff(sym, j, N, norm)) ==
                  doctest::Approx(std::abs(predict_first_column(sym, N - j, N)) / norm)
                      .epsilon(1e-12));
        }
    }
    SUBCASE("oscillation frequency of the coefficients sits at theta0") {
        const int N = 1024;
        auto col = first_column_inverse(build_system(sym, N));
        std::vector<double> seq(col.size());
        for (std::size_t i = 0; i < col.size(); ++i) seq[i] = col[i].real();
        const double peak = oscillation_peak_frequency(seq, sym.alpha);
        CHECK(std::abs(peak - sym.theta0) < 2.0 * pi * 4.0 / N);
    }
}

TEST_CASE("predict_half endpoint behavior") {
    GegenbauerSymbol sym(0.5, pi / 2);
    CHECK(predict_half(sym, 512, 512) == doctest::Approx(0.0));
    const auto c = constants(sym);
    const double limit = c.K * std::cos(8 * sym.theta0 + c.omega) / std::sqrt(8.0);
    CHECK(predict_half(sym, 8, 100000000) == doctest::Approx(limit).epsilon(1e-3));
    SUBCASE("recorded empirical amplitude relation against the exact entries") {
        // The printed endpoint formula K cos(k th0 + w) sqrt(1/k - 1/N) carries
        // no 1/Gamma(1/2); measured envelopes show the exact entries follow the
        // general first-column law continued to alpha = 1/2, i.e. the printed
        // amplitude divided by Gamma(1/2) = sqrt(pi). Freeze that finding.
        const int N = 1024;
        auto col = first_column_inverse(build_system(sym, N));
        std::vector<double> exact(col.size()), pred(col.size(), 0.0);
        for (std::size_t i = 0; i < col.size(); ++i) exact[i] = col[i].real();
        for (int k = 1; k < N; ++k) pred[k] = predict_half(sym, k, N) / std::sqrt(pi);
        const double err = envelope_rel_error(exact, pred, N / 2, sym.theta0);
        CHECK(err < 0.15);
    }
}

TEST_CASE("kernel G") {
    SUBCASE("symmetry") {
        CHECK(kernel_g(0.25, 0.25, 0.5) ==
              doctest::Approx(kernel_g(0.25, 0.5, 0.25)).epsilon(1e-10));
    }
    SUBCASE("vanishing window as y -> 1") {
        const double v1 = kernel_g(0.25, 0.3, 0.99);
        const double v2 = kernel_g(0.25, 0.3, 0.999);
        const double v3 = kernel_g(0.25, 0.3, 0.9999);
        CHECK(v2 < v1);
        CHECK(v3 < v2);
        CHECK(v3 < 0.05);
    }
    SUBCASE("brute-force oracle") {
        const double a = 0.25, x = 0.25, y = 0.5;
        const double m = std::max(x, y);
        const double smax = std::pow(1.0 - m, a);
        const long P = 1'000'000;
        double acc = 0.0;
        for (long i = 0; i < P; ++i) {
            const double s = smax * (i + 0.5) / P;
            const double t = m + std::pow(s, 1.0 / a);
            acc += std::pow(t - std::min(x, y), a - 1.0) * std::pow(t, -2.0 * a) / a;
        }
        acc *= smax / P;
        const double want =
            std::pow(x, a) * std::pow(y, a) / std::pow(gamma_fn(a), 2) * acc;
        CHECK(kernel_g(a, x, y) == doctest::Approx(want).epsilon(2e-5));
    }
    SUBCASE("error paths") {
        CHECK_THROWS_AS(kernel_g(0.25, 0.5, 0.5), DiagonalSingularity);
        CHECK_THROWS_AS(kernel_g(0.25, 0.0, 0.5), DomainError);
        CHECK_THROWS_AS(kernel_g(-0.1, 0.25, 0.5), DomainError);
    }
}

TEST_CASE("entry predictions") {
    GegenbauerSymbol sym(0.25, pi / 3);
    SUBCASE("cosine node") {
        // theta0 (k-l) = pi/2 mod pi gives an exact zero of the modulation;
        // pi/3 * 3 = pi -> cos = -1, use theta0 = pi/2 and odd k-l instead
        GegenbauerSymbol s2(0.25, pi / 2);
        CHECK(predict_inverse_entry(s2, 100, 101, 512, EntryBaseline::kernel) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("the two baselines estimate the same limit") {
        const int N = 512;
        const int k = 128, l = 256;
        const double a = predict_inverse_entry(sym, k, l, N, EntryBaseline::exact);
        const double b = predict_inverse_entry(sym, k, l, N, EntryBaseline::kernel);
        CHECK(std::abs(a - b) <= 0.15 * std::max(std::abs(a), std::abs(b)));
    }
    SUBCASE("baseline_toepmoinsdeux scaling and symmetry") {
        const double v1 = baseline_toepmoinsdeux(0.25, 0.25, 0.5, 1024);
        const double v2 = baseline_toepmoinsdeux(0.25, 0.25, 0.5, 2048);
        CHECK(v2 / v1 == doctest::Approx(std::pow(2.0, 2.0 * 0.25 - 1.0)).epsilon(1e-12));
        CHECK(baseline_toepmoinsdeux(0.25, 0.5, 0.25, 1024) == doctest::Approx(v1).epsilon(1e-10));
    }
    SUBCASE("one-zero baseline against the exact solver") {
        const int N = 1024;
        const double a = 0.25;
        FourierTable tab;
        tab.n_max = N;
        auto w = one_zero_coeffs(a, N);
        tab.coeffs.assign(w.begin(), w.end());
        ToeplitzSystem sys(tab, N);
        auto p = predictor(sys);
        const int k = N / 4, l = N / 2;
        const double exact = gs_entry(p, k, l).real();
        const double pred = baseline_toepmoinsdeux(a, 0.25, 0.5, N);
        CHECK(std::abs(pred - exact) <= 0.15 * std::abs(exact));
    }
    SUBCASE("domain checks") {
        CHECK_THROWS_AS(predict_inverse_entry(sym, 10, 10, 64, EntryBaseline::exact),
                        DiagonalSingularity);
        CHECK_THROWS_AS(predict_inverse_entry(GegenbauerSymbol(-0.25, pi / 3), 3, 9, 64,
                                              EntryBaseline::exact),
                        DomainError);
    }
    SUBCASE("measured two-zero reduction carries an extra 1/2") {
        // The printed reduction constant |K|^2 disagrees with the exact solver
        // by exactly 2: the cosine-product averaging in the derivation keeps a
        // 1/2 the final statement drops. Freeze the measured law
        //   two-zero entry = (|K|^2/2) cos(theta0 (k-l)) one-zero entry + o.
        const int N = 1024;
        auto p2 = predictor(build_system(sym, N));
        FourierTable tab;
        tab.n_max = N;
        auto w = one_zero_coeffs(sym.alpha, N);
        tab.coeffs.assign(w.begin(), w.end());
        auto p1 = predictor(ToeplitzSystem(tab, N));
        const double K2 = std::pow(constants(sym).K, 2);
        for (auto [k, l] : {std::pair{300, 600}, {256, 700}, {410, 520}}) {
            const double cf = std::cos(sym.theta0 * (k - l));
            if (std::abs(cf) < 0.3) continue;
            const double ratio =
                gs_entry(p2, k, l).real() / (0.5 * K2 * cf * gs_entry(p1, k, l).real());
            CHECK(std::abs(ratio - 1.0) < 0.02);
        }
    }
}

TEST_CASE("jacobi conjugation") {
    SUBCASE("centered case is the identity conjugation") {
        const int N = 16;
        auto conj = jacobi_conjugation(0.25, pi / 3, -pi / 3, RationalRegularPart(), N);
        auto sys = build_system(conj.centered, N);
        DenseOracle oracle(sys);
        double worst = 0.0;
        for (int l = 0; l <= N; ++l) {
            auto col = oracle.solve_unit(l);
            for (int k = 0; k <= N; ++k)
                worst = std::max(worst, std::abs(col[k] - conj.conjugated_inverse[k][l]));
        }
        CHECK(worst < 1e-10);
    }
    SUBCASE("general two-zero inverse equals the conjugated centered inverse") {
        const int N = 24;
        const double th1 = pi / 2, th2 = pi / 6;
        auto conj = jacobi_conjugation(0.25, th1, th2, RationalRegularPart(), N);
        auto tab = two_zero_general_fourier(0.25, th1, th2, RationalRegularPart(), N);
        ToeplitzSystem sys(tab, N);
        DenseOracle oracle(sys);
        double worst = 0.0;
        for (int l = 0; l <= N; ++l) {
            auto col = oracle.solve_unit(l);
            for (int k = 0; k <= N; ++k)
                worst = std::max(worst, std::abs(col[k] - conj.conjugated_inverse[k][l]));
        }
        CHECK(worst < 1e-8);
    }
    SUBCASE("jacobi coefficient prediction has the centered magnitude") {
        const double th1 = pi / 2, th2 = pi / 6;
        const auto pj = predict_jacobi_coeff(0.25, th1, th2, RationalRegularPart(), 100, 256, 1.0);
        GegenbauerSymbol centered(0.25, (th1 - th2) / 2.0);
        CHECK(std::abs(pj) ==
              doctest::Approx(std::abs(predict_gegenbauer_coeff(centered, 100, 256, 1.0)))
                  .epsilon(1e-12));
    }
    SUBCASE("degenerate zeros rejected") {
        CHECK_THROWS_AS(jacobi_conjugation(0.25, 1.0, 1.0, RationalRegularPart(), 8),
                        DegenerateZeros);
    }
    SUBCASE("non-constant regular parts rejected") {
        // centering rotates the regular part off the real-rational class
        CHECK_THROWS_AS(
            jacobi_conjugation(0.25, pi / 2, pi / 6, RationalRegularPart({2.0, 1.0}, {1.0}), 8),
            DomainError);
    }
}

TEST_CASE("prediction error shrinks from N=512 to N=2048 across the symbol matrix") {
    auto env_err = [](const GegenbauerSymbol& sym, int N) {
        auto col = first_column_inverse(build_system(sym, N));
        std::vector<double> exact(col.size()), pred(col.size(), 0.0);
        for (std::size_t i = 0; i < col.size(); ++i) exact[i] = col[i].real();
        for (int k = 1; k < N; ++k) pred[k] = predict_first_column(sym, k, N);
        return envelope_rel_error(exact, pred, N / 2, sym.theta0);
    };
    for (double a : {-0.25, 0.25, 0.4}) {
        for (double th : {pi / 3, pi / 2, 2.5}) {
            for (int variant = 0; variant < 2; ++variant) {
                GegenbauerSymbol sym =
                    variant == 0
                        ? GegenbauerSymbol(a, th)
                        : GegenbauerSymbol(a, th, RationalRegularPart({2.0, 1.0}, {1.0}));
                const double e512 = env_err(sym, 512);
                const double e2048 = env_err(sym, 2048);
                CAPTURE(a);
                CAPTURE(th);
                CAPTURE(variant);
                CHECK(e2048 < e512);
            }
        }
    }
}

TEST_CASE("envelope fitting") {
    const double th = 1.1, A = 3.7, psi = 0.4;
    std::vector<double> y(200);
    for (int k = 0; k < 200; ++k) y[k] = A * std::cos(k * th + psi);
    auto f = fit_envelope(y, 50, 40, th);
    CHECK(f.amplitude == doctest::Approx(A).epsilon(1e-12));
    CHECK(f.phase == doctest::Approx(psi).epsilon(1e-12));
    CHECK(envelope_window(pi / 3) == 24);
}
