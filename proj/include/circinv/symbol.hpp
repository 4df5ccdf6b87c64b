// Singular symbol family f(theta) = 2^{2a} |cos(theta) - cos(theta0)|^{2a} c1(theta)
// with a rational regular part c1 = |P/Q|^2, its outer factorization, and
// Fourier coefficient computation by two independent methods.
#ifndef CIRCINV_SYMBOL_HPP
#define CIRCINV_SYMBOL_HPP

#include <complex>
#include <string>
#include <vector>

#include "circinv/errors.hpp"
#include "circinv/fft.hpp"

namespace circinv {

// Real-coefficient rational function P/Q, no roots on the unit circle.
// The regular part of the symbol is c1(theta) = |P(e^{i theta})/Q(e^{i theta})|^2,
// which makes c1 = c11 * conj(c11) with the outer factor c11 literally true.
struct RationalRegularPart {
    std::vector<double> numerator;    // P, ascending coefficients
    std::vector<double> denominator;  // Q, ascending coefficients

    RationalRegularPart() : numerator{1.0}, denominator{1.0} {}
    RationalRegularPart(std::vector<double> num, std::vector<double> den);

    double eval(double theta) const;  // c1(theta) = |P/Q|^2 on the circle
    bool is_one() const;              // c1 identically 1
    void validate() const;            // root-distance and positivity invariants
};

struct GegenbauerSymbol {
    double alpha = 0.25;   // in (-1/2, 1/2]
    double theta0 = 1.0;   // in (0, pi)
    RationalRegularPart regular;

    GegenbauerSymbol() = default;
    GegenbauerSymbol(double a, double t0, RationalRegularPart reg = {});

    static GegenbauerSymbol from_json_file(const std::string& path);
    static GegenbauerSymbol from_json_text(const std::string& text);
    std::string to_json_text() const;
};

// f(theta) = 2^{2a} |cos theta - cos theta0|^{2a} c1(theta); exactly 0 at
// theta = +-theta0 for a > 0.
double eval_symbol(const GegenbauerSymbol& sym, double theta);

// Outer factor c11 of c1: analytic and zero free in the closed unit disk,
// |c11|^2 = c1 on the circle, c11(0) > 0. Kept in factored rational form
// (roots reflected outside the disk) plus a Taylor expansion at 0.
struct OuterFactor {
    std::vector<double> num;     // outer numerator, real coefficients, roots outside disk
    std::vector<double> den;     // outer denominator, likewise
    double scale = 1.0;          // positive modulus compensation
    std::vector<double> taylor;      // Taylor coefficients of c11, length M
    std::vector<double> inv_taylor;  // Taylor coefficients of 1/c11, length M

    std::complex<double> eval(std::complex<double> z) const;  // via the rational form
    double value_at_zero() const { return taylor.empty() ? 1.0 : taylor[0]; }
    bool is_trivial() const;  // c11 identically 1

    // Fourier coefficients of the unimodular ratio c11/conj(c11) at indices
    // -win..win (index i+win). Decays geometrically.
    std::vector<cplx> ratio_coeffs(int win) const;
};

// Spectral factorization by root reflection; M = Taylor truncation length.
OuterFactor outer_factorize(const RationalRegularPart& reg, int taylor_len = 8192);

enum class FourierMethod { analytic, quadrature };

struct FourierTable {
    int n_max = 0;
    std::vector<cplx> coeffs;  // index s = 0..n_max; hat h(-s) = conj(hat h(s))
    FourierMethod method = FourierMethod::analytic;

    cplx at(int s) const {
        int a = s < 0 ? -s : s;
        if (a > n_max) throw IndexOutOfRange("FourierTable: |s| > n_max");
        return s < 0 ? std::conj(coeffs[a]) : coeffs[a];
    }
};

// Fourier coefficients of the symbol, |s| <= n_max.
// analytic: exact coefficient convolution of the two shifted one-zero weights
//   (2-2cos(theta -+ theta0))^a with the rational part, Abel-corrected tails.
// quadrature: oversampled midpoint-rule FFT with Richardson acceleration at the
//   known singularity exponent; refinement stop at 1e-10 between doublings.
FourierTable symbol_fourier(const GegenbauerSymbol& sym, int n_max, FourierMethod method);

// Fourier coefficients of the one-zero weight (2 - 2 cos theta)^a for
// k = 0..n (symmetric in k). w_0 = Gamma(2a+1)/Gamma(1+a)^2,
// w_{k+1} = w_k (k-a)/(k+1+a).
std::vector<double> one_zero_coeffs(double alpha, int n);

struct PointData {
    double c1_at_chi0 = 1.0;  // c1(e^{i theta0}) > 0
    double phi0 = 0.0;        // arg c11(e^{i theta0})
    double phi0_prime = 0.0;  // arg (c11/conj c11)(e^{i theta0}) = 2 phi0 in (-pi, pi]
};

PointData point_data(const GegenbauerSymbol& sym, const OuterFactor& outer);

double wrap_angle(double a);  // reduce to (-pi, pi]

}  // namespace circinv

#endif
