#include "doctest.h"

#include <cmath>
#include <numbers>

#include "circinv/symbol.hpp"

using namespace circinv;
using std::numbers::pi;

namespace {
GegenbauerSymbol sym_c1(double a, double th) { return GegenbauerSymbol(a, th); }
GegenbauerSymbol sym_rat(double a, double th) {
    return GegenbauerSymbol(a, th, RationalRegularPart({2.0, 1.0}, {1.0}));  // c1 = 5 + 4 cos
}
}  // namespace

TEST_CASE("eval_symbol closed form") {
    CHECK(eval_symbol(sym_c1(0.5, pi / 2), 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(eval_symbol(sym_c1(0.25, pi / 3), pi / 3) == 0.0);
    CHECK(eval_symbol(sym_c1(0.25, pi / 3), pi) ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("regular part invariants") {
    CHECK_THROWS_AS(RationalRegularPart({1.0, 1.0}, {1.0}), RootOnCircle);  // root at -1
    CHECK_THROWS_AS(GegenbauerSymbol(0.6, 1.0), DomainError);
    CHECK_THROWS_AS(GegenbauerSymbol(0.25, 0.0), DomainError);
    CHECK_THROWS_AS(GegenbauerSymbol(0.25, pi), DomainError);
    const RationalRegularPart reg({2.0, 1.0}, {1.0});
    CHECK(reg.eval(pi / 2) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("outer factorization") {
    SUBCASE("identity") {
        auto f = outer_factorize(RationalRegularPart());
        CHECK(f.is_trivial());
        CHECK(f.value_at_zero() == doctest::Approx(1.0));
    }
    SUBCASE("root outside: 2 + chi is already outer") {
        auto f = outer_factorize(RationalRegularPart({2.0, 1.0}, {1.0}));
        CHECK(f.taylor[0] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(f.taylor[1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(f.taylor[2]) < 1e-12);
    }
    SUBCASE("root inside is reflected: 1 + 2 chi -> 2 + chi") {
        auto f = outer_factorize(RationalRegularPart({1.0, 2.0}, {1.0}));
        CHECK(f.taylor[0] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(f.taylor[1] == doctest::Approx(1.0).epsilon(1e-12));
        // |1 + 2 e^{i t}| = |2 + e^{-i t}| pointwise
        for (double th : {0.3, 1.1, 2.9}) {
            const auto v = f.eval(std::polar(1.0, th));
            CHECK(std::norm(v) ==
                  doctest::Approx(std::norm(cplx(1.0, 0.0) + 2.0 * std::polar(1.0, th)))
                      .epsilon(1e-12));
        }
    }
    SUBCASE("denominator roots") {
        auto f = outer_factorize(RationalRegularPart({1.0}, {3.0, 1.0}));  // 1/|3+chi|^2
        const double got = std::norm(f.eval(std::polar(1.0, 0.7)));
        CHECK(got == doctest::Approx(1.0 / std::norm(3.0 + std::polar(1.0, 0.7))).epsilon(1e-12));
    }
}

TEST_CASE("point data") {
    SUBCASE("trivial regular part") {
        auto sym = sym_c1(0.25, 1.0);
        auto pd = point_data(sym, outer_factorize(sym.regular));
        CHECK(pd.c1_at_chi0 == doctest::Approx(1.0));
        CHECK(pd.phi0 == doctest::Approx(0.0));
        CHECK(pd.phi0_prime == doctest::Approx(0.0));
    }
    SUBCASE("5 + 4 cos at theta0 = pi/2") {
        auto sym = sym_rat(0.25, pi / 2);
        auto pd = point_data(sym, outer_factorize(sym.regular));
        CHECK(pd.c1_at_chi0 == doctest::Approx(5.0).epsilon(1e-12));
        CHECK(pd.phi0 == doctest::Approx(std::atan(0.5)).epsilon(1e-12));
        CHECK(pd.phi0_prime == doctest::Approx(2.0 * std::atan(0.5)).epsilon(1e-12));
    }
}

TEST_CASE("one-zero weight coefficients match quadrature") {
    // (2 - 2cos t)^(1/2) = |2 sin(t/2)| -> hat(0) = 4/pi
    auto w = one_zero_coeffs(0.5, 4);
    CHECK(w[0] == doctest::Approx(4.0 / pi).epsilon(1e-13));
}

TEST_CASE("symbol_fourier analytic vs quadrature") {
    SUBCASE("hat h(0) = 4/pi for |2 cos theta|") {
        auto sym = sym_c1(0.5, pi / 2);
        auto ta = symbol_fourier(sym, 8, FourierMethod::analytic);
        auto tq = symbol_fourier(sym, 8, FourierMethod::quadrature);
        CHECK(ta.coeffs[0].real() == doctest::Approx(4.0 / pi).epsilon(1e-9));
        CHECK(tq.coeffs[0].real() == doctest::Approx(4.0 / pi).epsilon(1e-9));
    }
    SUBCASE("real and even for symmetric symbols") {
        auto tab = symbol_fourier(sym_c1(0.25, pi / 3), 32, FourierMethod::analytic);
        for (int s = 0; s <= 32; ++s) CHECK(std::abs(tab.coeffs[s].imag()) < 1e-12);
    }
    SUBCASE("cross-method agreement to 1e-8") {
        for (auto sym : {sym_c1(0.25, pi / 3), sym_c1(-0.25, pi / 2), sym_rat(0.25, pi / 3),
                         sym_c1(0.4, 2.5)}) {
            auto ta = symbol_fourier(sym, 48, FourierMethod::analytic);
            auto tq = symbol_fourier(sym, 48, FourierMethod::quadrature);
            double worst = 0.0;
            for (int s = 0; s <= 48; ++s) worst = std::max(worst, std::abs(ta.coeffs[s] - tq.coeffs[s]));
            CAPTURE(sym.alpha);
            CAPTURE(sym.theta0);
            CHECK(worst < 1e-8);
        }
    }
    SUBCASE("Parseval partial sums bounded by the L2 norm (alpha > 1/4)") {
        auto sym = sym_c1(0.4, pi / 3);
        auto tab = symbol_fourier(sym, 256, FourierMethod::analytic);
        // (1/2pi) Int h^2 by midpoint quadrature (h^2 has exponent 4a > -1)
        const int G = 1 << 20;
        double l2 = 0.0;
        for (int j = 0; j < G; ++j) {
            const double h = eval_symbol(sym, 2.0 * pi * (j + 0.5) / G);
            l2 += h * h;
        }
        l2 /= G;
        double partial = tab.coeffs[0].real() * tab.coeffs[0].real();
        double prev = partial;
        for (int s = 1; s <= 256; ++s) {
            partial += 2.0 * std::norm(tab.coeffs[s]);
            CHECK(partial >= prev);
            prev = partial;
        }
        CHECK(partial <= l2 * (1.0 + 1e-9));
        CHECK(partial > 0.98 * l2);  // approached from below
    }
}

TEST_CASE("symbol JSON round trip") {
    auto sym = sym_rat(0.25, pi / 3);
    auto back = GegenbauerSymbol::from_json_text(sym.to_json_text());
    CHECK(back.alpha == sym.alpha);
    CHECK(back.theta0 == sym.theta0);
    CHECK(back.regular.numerator == sym.regular.numerator);
    CHECK_THROWS_AS(GegenbauerSymbol::from_json_text("{\"alpha\": 0.25}"), ConfigError);
    CHECK_THROWS_AS(GegenbauerSymbol::from_json_text("not json"), ConfigError);
}
