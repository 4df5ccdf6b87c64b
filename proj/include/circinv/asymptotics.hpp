// Closed-form asymptotic predictions for the inverse entries and the
// orthogonal-polynomial coefficients, the limiting kernel G_alpha, the
// two-zero diagonal conjugation, and the envelope-fit comparison protocol.
#ifndef CIRCINV_ASYMPTOTICS_HPP
#define CIRCINV_ASYMPTOTICS_HPP

#include <vector>

#include "circinv/symbol.hpp"
#include "circinv/toeplitz.hpp"

namespace circinv {

struct AsymptoticConstants {
    double K = 0.0;           // K_{a,theta0,c1} = 2^{1-a} (sin theta0)^{-a} / sqrt(c1(chi0))
    double omega = 0.0;       // a theta0 + phi0 - pi a / 2, reduced to (-pi, pi]
    double omega_prime = 0.0; // phi_alpha + phi0', with phi_alpha = a (2 theta0 - pi)
    double phi_alpha = 0.0;
    double phi0 = 0.0;
    double phi0_prime = 0.0;
    double err_exponent = 0.0;  // a - 1/2 for a < 0, a for a > 0
    double norm0 = 1.0;         // c11(0); predictions for the first column carry 1/norm0
};

AsymptoticConstants constants(const GegenbauerSymbol& sym);

// Gamma with the reflection formula on the negative axis.
double gamma_fn(double x);

// Prediction of (T_N^{-1})_{k+1,1}:
//   (1/c11(0)) K/Gamma(a) cos(k theta0 + omega) k^{a-1} (1 - k/N)^a.
double predict_first_column(const GegenbauerSymbol& sym, int k, int N);

enum class FirstColumnBaseline { exact, formula };

// Same prediction with the one-zero factor either from the exact Levinson
// column of T_N(|chi-1|^{2a}) or from the closed-form N^{a-1} x^{a-1} (1-x)^a
// baseline law.
double predict_first_column_via_baseline(const GegenbauerSymbol& sym, int k, int N,
                                         FirstColumnBaseline baseline);

// Prediction for the coefficient delta_j of the monic orthogonal polynomial
// Phi_N, via index reversal k = N - j and persymmetry; 'normalization' is the
// (T^{-1})_{11} value used to undo the predictor scaling (pass the exact value
// or its asymptotic surrogate).
double predict_gegenbauer_coeff(const GegenbauerSymbol& sym, int j, int N, double normalization);

// Small-k regime: (T_N^{-1})_{k+1,1} = beta0 * beta_k + O(1/N) (unnormalized
// coefficients of 1/g; equals the normalized beta_k when c11(0) = 1).
cplx predict_small_k(const GegenbauerSymbol& sym, int k, int N);

// alpha = 1/2 endpoint: K cos(k theta0 + omega) sqrt(1/k - 1/N) / c11(0).
double predict_half(const GegenbauerSymbol& sym, int k, int N);

// G_alpha(x,y) = x^a y^a / Gamma(a)^2 Int_{max(x,y)}^1 (t-x)^{a-1} (t-y)^{a-1} t^{-2a} dt,
// endpoint singularity removed by the substitution t = max + s^{1/a}.
double kernel_g(double alpha, double x, double y);

enum class EntryBaseline { exact, kernel };

// Prediction of (T_N^{-1})_{k+1,l+1} for k != l:
//   exact:  |K|^2 cos(theta0 (k-l)) (T_N(|chi-1|^{2a})^{-1})_{k+1,l+1}
//   kernel: N^{2a-1} |K|^2 cos(theta0 (k-l)) G_a(k/N, l/N)
// (G_a already carries its 1/Gamma^2 factor exactly once).
double predict_inverse_entry(const GegenbauerSymbol& sym, int k, int l, int N,
                             EntryBaseline baseline);

// One-zero baseline law N^{2a-1} G_a(x,y); the Gamma convention matches
// kernel_g (no extra 1/Gamma^2).
double baseline_toepmoinsdeux(double alpha, double x, double y, int N);

// Two zeros at e^{i theta1}, e^{i theta2}: the inverse equals the diagonal
// conjugation of the centered-symbol inverse. Returns the conjugated entries
// (dense path) for verification, and the Jacobi coefficient prediction.
struct JacobiConjugation {
    GegenbauerSymbol centered;      // zeros at +- (theta1 - theta2)/2
    double mid = 0.0;               // (theta1 + theta2)/2
    std::vector<std::vector<cplx>> conjugated_inverse;  // Delta T_c^{-1} Delta^{-1}
};

JacobiConjugation jacobi_conjugation(double alpha, double theta1, double theta2,
                                     const RationalRegularPart& reg, int N);

// Fourier table of |chi - e^{i theta1}|^{2a} |chi - e^{i theta2}|^{2a} c1
// computed directly (no centering), for the independent cross-check.
FourierTable two_zero_general_fourier(double alpha, double theta1, double theta2,
                                      const RationalRegularPart& reg, int n_max);

cplx predict_jacobi_coeff(double alpha, double theta1, double theta2,
                          const RationalRegularPart& reg, int j, int N, double normalization);

// Windowed least-squares fit of y_k ~ A cos(k theta0 + psi) over k in
// [k0, k0+len); returns amplitude and phase.
struct EnvelopeFit {
    double amplitude = 0.0;
    double phase = 0.0;
};

EnvelopeFit fit_envelope(const std::vector<double>& y, int k0, int len, double theta0);

// Window width ceil(2 pi / theta0) * 4 used by the comparison protocol.
int envelope_window(double theta0);

// Relative envelope error between two sequences around center k_c.
double envelope_rel_error(const std::vector<double>& exact, const std::vector<double>& predicted,
                          int k_c, double theta0);

// Index of the dominant positive-frequency FFT bin of a real sequence after
// envelope flattening by k^{1-a}; returns the frequency in radians.
double oscillation_peak_frequency(const std::vector<double>& seq, double alpha);

}  // namespace circinv

#endif
